#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace editgate {

using EmbeddingVector = Eigen::VectorXd;

enum class SimilarityKind { Dot, Cosine };

/// Dot product or cosine of two equal-dimension vectors. Cosine of a zero
/// vector against anything is 0.
double similarity(const EmbeddingVector& a, const EmbeddingVector& b, SimilarityKind kind);

/// Text-to-vector contract shared by the retriever and the SR metric.
/// Implementations are deterministic for a fixed configuration and return
/// L2-normalized vectors (the zero vector for empty token streams).
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual EmbeddingVector embed(const std::string& text) const = 0;
    virtual int dim() const = 0;
    virtual std::string name() const = 0;
};

/// Deterministic offline embedder: lowercase, split on non-alphanumeric runs,
/// FNV-1a 64-bit hash each token to a bucket mod dim, accumulate counts,
/// L2-normalize. Platform-stable by construction.
EmbeddingVector hash_embed(const std::string& text, int dim);

/// Bucket index hash_embed assigns to a single token; exposed so tests can
/// verify collision-freedom of chosen fixtures.
int hash_bucket(const std::string& token, int dim);

class HashEmbedder final : public EmbeddingProvider {
public:
    explicit HashEmbedder(int dim = 384) : dim_(dim) {}
    EmbeddingVector embed(const std::string& text) const override { return hash_embed(text, dim_); }
    int dim() const override { return dim_; }
    std::string name() const override { return "hash"; }

private:
    int dim_;
};

/// Remote embedder speaking the minimal HTTP endpoint
/// POST {"texts": [..]} -> {"vectors": [[..]..]}.
class HttpEmbedder final : public EmbeddingProvider {
public:
    HttpEmbedder(std::string url, std::string auth_token = "", int dim = 384, int max_retries = 3);
    EmbeddingVector embed(const std::string& text) const override;
    int dim() const override { return dim_; }
    std::string name() const override { return "http:" + url_; }

private:
    std::string url_;
    std::string auth_token_;
    int dim_;
    int max_retries_;
};

}  // namespace editgate
