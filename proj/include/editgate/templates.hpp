#pragma once

#include <string>
#include <vector>

#include "editgate/core_types.hpp"

namespace editgate {

enum class TemplateId { Aug, Edit, PromptBaseline, Ike };

struct RenderedPrompt {
    std::string text;
    TemplateId template_id;
};

/// Canonical serialized form of the retain sentinel in exported training data.
inline constexpr const char* kRetainToken = "<Retain>";

/// Augmentation prompt: instructs the augmenter model to locate spans related
/// to the old fact in the original response and rewrite them per the new fact.
RenderedPrompt render_aug(const Edit& edit, const std::string& query,
                          const std::string& original_response);

/// Post-editor prompt: editor-role instruction, the updated-fact sentence, the
/// query and original response, ending at "### Edited response:".
RenderedPrompt render_edit(const Edit& edit, const std::string& query,
                           const std::string& original_response);

/// True iff the model output signals "no edit needed": the trimmed, lowercased
/// output equals "retain", or it contains the literal "<retain>" token.
bool is_retain(const std::string& model_output);

/// Bare fact-plus-query prompting.
RenderedPrompt render_prompt_baseline(const Edit& edit, const std::string& query);

/// One in-context exemplar: a (fact, query, answer) triple. `fact` is empty
/// for retain-type demos that carry no associated new fact.
struct IkeDemo {
    std::string kind;  // "copy", "update", or "retain"
    std::string fact;
    std::string query;
    std::string answer;
};

/// Builds the three-type demo set (copy/update/retain) from labeled records.
std::vector<IkeDemo> build_ike_demos(const std::vector<QueryRecord>& records);

/// Demonstration prompt: up to `demo_count` exemplars, then the new fact and
/// the query. Throws EmptyDemoLibrary when `demos` is empty.
RenderedPrompt render_ike(const std::vector<IkeDemo>& demos, const Edit& edit,
                          const std::string& query, size_t demo_count = 32);

/// The updated-fact sentence shared by T^edit, PROMPT, and IKE.
std::string new_fact_sentence(const Edit& edit);

}  // namespace editgate
