#pragma once

#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace editgate {

enum class ModelRole { Base, PostEditor, Augmenter, Surrogate };

const char* to_string(ModelRole role);

/// Endpoint configuration for one generation role.
struct ModelRef {
    ModelRole role = ModelRole::Base;
    std::string endpoint;
    std::string api_key;
    std::string model_name;
    double temperature = 0.1;
    int max_tokens = 512;
    int timeout_seconds = 60;
    int max_retries = 3;
};

struct GenerationResult {
    std::string text;
    int prompt_tokens = 0;
    int completion_tokens = 0;
    double latency_ms = 0.0;
};

/// Black-box text-generation contract: one prompt string in, one text out.
class ModelClient {
public:
    virtual ~ModelClient() = default;
    virtual GenerationResult generate(const ModelRef& model, const std::string& prompt) = 0;
};

/// Chat-completions-style HTTP client. Sends the full rendered prompt as a
/// single user message; retries transient failures with exponential backoff.
class HttpModelClient final : public ModelClient {
public:
    GenerationResult generate(const ModelRef& model, const std::string& prompt) override;
};

enum class MatchKind { Exact, Substring, Sequence };

/// Scripted offline stand-in. Rules are evaluated in registration order;
/// `Sequence` rules pop their responses FIFO. Every prompt seen is captured
/// so tests can inspect outbound traffic.
class MockModelClient final : public ModelClient {
public:
    void register_script(MatchKind kind, const std::string& pattern, const std::string& response);
    void register_sequence(const std::vector<std::string>& responses);
    void set_default(const std::string& response) { default_response_ = response; has_default_ = true; }

    GenerationResult generate(const ModelRef& model, const std::string& prompt) override;

    std::vector<std::string> captured_prompts() const;
    size_t call_count() const;
    void clear_captures();

private:
    struct Rule {
        MatchKind kind;
        std::string pattern;
        std::deque<std::string> responses;
    };
    std::vector<Rule> rules_;
    std::string default_response_;
    bool has_default_ = false;
    std::vector<std::string> captured_;
    mutable std::mutex mutex_;
};

}  // namespace editgate
