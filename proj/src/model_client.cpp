#include "editgate/model_client.hpp"

#include <chrono>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

const char* to_string(ModelRole role) {
    switch (role) {
        case ModelRole::Base: return "base";
        case ModelRole::PostEditor: return "post_editor";
        case ModelRole::Augmenter: return "augmenter";
        case ModelRole::Surrogate: return "surrogate";
    }
    return "base";
}

namespace {

std::string strip_trailing_newline(std::string text) {
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    return text;
}

}  // namespace

GenerationResult HttpModelClient::generate(const ModelRef& model, const std::string& prompt) {
    if (model.endpoint.empty())
        throw UpstreamError("no endpoint configured for role " + std::string(to_string(model.role)),
                            0);
    nlohmann::json body{{"model", model.model_name},
                        {"temperature", model.temperature},
                        {"max_tokens", model.max_tokens},
                        {"messages", {{{"role", "user"}, {"content", prompt}}}}};

    httplib::Client client(model.endpoint);
    client.set_read_timeout(model.timeout_seconds, 0);
    httplib::Headers headers;
    if (!model.api_key.empty()) headers.emplace("Authorization", "Bearer " + model.api_key);

    auto start = std::chrono::steady_clock::now();
    std::string last_error = "no attempt made";
    for (int attempt = 0; attempt <= model.max_retries; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(200 << (attempt - 1)));
        auto res = client.Post("/v1/chat/completions", headers, body.dump(), "application/json");
        if (!res) {
            last_error = "transport failure";
            continue;
        }
        if (res->status == 429) {
            last_error = "rate limited";
            continue;
        }
        if (res->status != 200) {
            // Non-retryable upstream failure.
            throw UpstreamError("upstream returned status " + std::to_string(res->status),
                                res->status);
        }
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("choices") || parsed["choices"].empty())
            throw UpstreamError("malformed completion response", res->status);
        GenerationResult result;
        result.text =
            strip_trailing_newline(parsed["choices"][0]["message"]["content"].get<std::string>());
        if (parsed.contains("usage")) {
            result.prompt_tokens = parsed["usage"].value("prompt_tokens", 0);
            result.completion_tokens = parsed["usage"].value("completion_tokens", 0);
        }
        result.latency_ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        return result;
    }
    throw ExhaustedRetries("gave up after " + std::to_string(model.max_retries + 1) +
                           " attempts: " + last_error);
}

void MockModelClient::register_script(MatchKind kind, const std::string& pattern,
                                      const std::string& response) {
    std::lock_guard lock(mutex_);
    rules_.push_back(Rule{kind, pattern, {response}});
}

void MockModelClient::register_sequence(const std::vector<std::string>& responses) {
    std::lock_guard lock(mutex_);
    rules_.push_back(Rule{MatchKind::Sequence, "",
                          std::deque<std::string>(responses.begin(), responses.end())});
}

GenerationResult MockModelClient::generate(const ModelRef&, const std::string& prompt) {
    std::lock_guard lock(mutex_);
    captured_.push_back(prompt);
    for (auto& rule : rules_) {
        switch (rule.kind) {
            case MatchKind::Exact:
                if (prompt == rule.pattern) return {rule.responses.front()};
                break;
            case MatchKind::Substring:
                if (prompt.find(rule.pattern) != std::string::npos)
                    return {rule.responses.front()};
                break;
            case MatchKind::Sequence: {
                if (rule.responses.empty()) throw ScriptExhausted("scripted sequence exhausted");
                std::string response = rule.responses.front();
                rule.responses.pop_front();
                return {response};
            }
        }
    }
    if (has_default_) return {default_response_};
    throw UpstreamError("no scripted response matches prompt", 0);
}

std::vector<std::string> MockModelClient::captured_prompts() const {
    std::lock_guard lock(mutex_);
    return captured_;
}

size_t MockModelClient::call_count() const {
    std::lock_guard lock(mutex_);
    return captured_.size();
}

void MockModelClient::clear_captures() {
    std::lock_guard lock(mutex_);
    captured_.clear();
}

}  // namespace editgate
