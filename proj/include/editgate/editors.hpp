#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "editgate/core_types.hpp"
#include "editgate/edit_memory.hpp"
#include "editgate/model_client.hpp"
#include "editgate/templates.hpp"

namespace editgate {

enum class EditorKind { PostEdit, Prompt, Ike, Serac, Passthrough };

EditorKind editor_kind_from_string(const std::string& s);
const char* to_string(EditorKind kind);

struct EditorDecision {
    ResponsePair response;
    // Trace, sufficient to replay the decision offline.
    std::optional<double> retrieval_score;
    std::optional<TemplateId> rendered_template;
    bool retain_flag = false;
    std::optional<bool> scope_verdict;  // SERAC classifier outcome
    std::string note;
};

/// Shared wiring for every editor strategy. `models` holds per-role refs with
/// endpoint/temperature settings; the clients do the actual generation.
struct EditorContext {
    EditMemory* memory = nullptr;
    ModelClient* base_client = nullptr;
    ModelClient* post_editor_client = nullptr;
    ModelClient* surrogate_client = nullptr;
    ModelRef base_ref{ModelRole::Base};
    ModelRef post_editor_ref{ModelRole::PostEditor};
    ModelRef surrogate_ref{ModelRole::Surrogate};
    const std::vector<IkeDemo>* ike_demos = nullptr;
    size_t ike_demo_count = 32;
    double serac_threshold = 0.7;
};

class Editor {
public:
    virtual ~Editor() = default;
    /// `precomputed_y_o` short-circuits the base-LLM call in editors that need
    /// the original response (postEdit, passthrough); evaluation reuses
    /// dataset-shipped responses this way.
    virtual EditorDecision respond(const std::string& query,
                                   const std::optional<std::string>& precomputed_y_o = {}) = 0;
    virtual EditorKind kind() const = 0;
};

/// y_o from the base LLM, top-1 edit from memory, one post-editor call on the
/// edit template; the retain sentinel routes back to y_o. A post-editor
/// failure also falls back to y_o.
class PostEditEditor final : public Editor {
public:
    explicit PostEditEditor(EditorContext ctx) : ctx_(ctx) {}
    EditorDecision respond(const std::string& query,
                           const std::optional<std::string>& precomputed_y_o = {}) override;
    EditorKind kind() const override { return EditorKind::PostEdit; }

private:
    EditorContext ctx_;
};

/// New-fact sentence plus query, single base-LLM call.
class PromptEditor final : public Editor {
public:
    explicit PromptEditor(EditorContext ctx) : ctx_(ctx) {}
    EditorDecision respond(const std::string& query,
                           const std::optional<std::string>& precomputed_y_o = {}) override;
    EditorKind kind() const override { return EditorKind::Prompt; }

private:
    EditorContext ctx_;
};

/// In-context demonstrations plus the new fact and query, single base call.
class IkeEditor final : public Editor {
public:
    explicit IkeEditor(EditorContext ctx) : ctx_(ctx) {}
    EditorDecision respond(const std::string& query,
                           const std::optional<std::string>& precomputed_y_o = {}) override;
    EditorKind kind() const override { return EditorKind::Ike; }

private:
    EditorContext ctx_;
};

/// Scope classification by embedding similarity against a threshold; in-scope
/// queries go to the surrogate, the rest pass through to the base LLM.
class SeracEditor final : public Editor {
public:
    explicit SeracEditor(EditorContext ctx) : ctx_(ctx) {}
    EditorDecision respond(const std::string& query,
                           const std::optional<std::string>& precomputed_y_o = {}) override;
    EditorKind kind() const override { return EditorKind::Serac; }

private:
    EditorContext ctx_;
};

/// Base LLM only; no editing.
class PassthroughEditor final : public Editor {
public:
    explicit PassthroughEditor(EditorContext ctx) : ctx_(ctx) {}
    EditorDecision respond(const std::string& query,
                           const std::optional<std::string>& precomputed_y_o = {}) override;
    EditorKind kind() const override { return EditorKind::Passthrough; }

private:
    EditorContext ctx_;
};

std::unique_ptr<Editor> make_editor(EditorKind kind, const EditorContext& ctx);

}  // namespace editgate
