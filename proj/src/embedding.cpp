#include "editgate/embedding.hpp"

#include <cctype>
#include <chrono>
#include <cstdint>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

double similarity(const EmbeddingVector& a, const EmbeddingVector& b, SimilarityKind kind) {
    if (a.size() != b.size())
        throw DimensionMismatch("vector dims differ: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
    double dot = a.dot(b);
    if (kind == SimilarityKind::Dot) return dot;
    double na = a.norm();
    double nb = b.norm();
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot / (na * nb);
}

namespace {

constexpr uint64_t kFnvOffset = 14695981039346656037ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = kFnvOffset;
    for (unsigned char c : s) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

template <typename Fn>
void for_each_token(const std::string& text, Fn&& fn) {
    std::string token;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else if (!token.empty()) {
            fn(token);
            token.clear();
        }
    }
    if (!token.empty()) fn(token);
}

}  // namespace

int hash_bucket(const std::string& token, int dim) {
    return static_cast<int>(fnv1a64(token) % static_cast<uint64_t>(dim));
}

EmbeddingVector hash_embed(const std::string& text, int dim) {
    EmbeddingVector v = EmbeddingVector::Zero(dim);
    for_each_token(text, [&](const std::string& token) { v[hash_bucket(token, dim)] += 1.0; });
    double norm = v.norm();
    if (norm > 0.0) v /= norm;
    return v;
}

HttpEmbedder::HttpEmbedder(std::string url, std::string auth_token, int dim, int max_retries)
    : url_(std::move(url)), auth_token_(std::move(auth_token)), dim_(dim),
      max_retries_(max_retries) {}

EmbeddingVector HttpEmbedder::embed(const std::string& text) const {
    nlohmann::json body{{"texts", {text}}};
    httplib::Client client(url_);
    httplib::Headers headers;
    if (!auth_token_.empty()) headers.emplace("Authorization", "Bearer " + auth_token_);

    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= max_retries_; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100 << (attempt - 1)));
        auto res = client.Post("/", headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport failure";
            continue;
        }
        if (res->status != 200) {
            last_error = "status " + std::to_string(res->status);
            continue;
        }
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("vectors") || parsed["vectors"].empty())
            throw ProviderUnavailable("malformed embedding response");
        const auto& values = parsed["vectors"][0];
        if (static_cast<int>(values.size()) != dim_)
            throw DimensionMismatch("embedding endpoint returned dim " +
                                    std::to_string(values.size()) + ", expected " +
                                    std::to_string(dim_));
        EmbeddingVector v(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = values[i].get<double>();
        return v;
    }
    throw ProviderUnavailable("embedding endpoint unavailable: " + last_error);
}

}  // namespace editgate
