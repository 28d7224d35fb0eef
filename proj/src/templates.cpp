#include "editgate/templates.hpp"

#include <algorithm>
#include <cctype>

#include "editgate/errors.hpp"

namespace editgate {

namespace {

void require_non_empty(const std::string& value, const char* field) {
    if (trim(value).empty()) throw EmptyField(std::string("empty template field: ") + field);
}

std::string lowercase(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

std::string new_fact_sentence(const Edit& edit) {
    return "The answer of " + edit.prompt + " has been updated from " + edit.old_object + " to " +
           edit.new_object + ".";
}

RenderedPrompt render_aug(const Edit& edit, const std::string& query,
                          const std::string& original_response) {
    require_non_empty(query, "query");
    require_non_empty(original_response, "original_response");
    std::string text =
        "For the following query and original response, you need to follow in order:\n"
        "Firstly, locate all spans related to the old fact: " +
        edit.prompt + " " + edit.old_object +
        " in original reply;\n"
        "Secondly, modify these spans according to new fact: " +
        edit.prompt + " " + edit.new_object +
        ".\n"
        "Thirdly, output the edited response based on the modified spans (Do not output other "
        "content).\n"
        "### The query:\n" +
        query +
        "\n### Original response:\n" +
        original_response +
        "\n### Edited response:\n";
    return {std::move(text), TemplateId::Aug};
}

RenderedPrompt render_edit(const Edit& edit, const std::string& query,
                           const std::string& original_response) {
    require_non_empty(query, "query");
    require_non_empty(original_response, "original_response");
    std::string text =
        "### Instruction:\n"
        "You will assume the role of an editor. For the following query and original response, "
        "if the new fact impacts the query or original response, incorporate the new fact into "
        "the original response. If not, simply output the following word: retain.\n"
        "### New fact:\n" +
        new_fact_sentence(edit) +
        "\n### The query:\n" +
        query +
        "\n### Original response:\n" +
        original_response +
        "\n### Edited response:\n";
    return {std::move(text), TemplateId::Edit};
}

bool is_retain(const std::string& model_output) {
    std::string lower = lowercase(trim(model_output));
    if (lower == "retain") return true;
    return lower.find("<retain>") != std::string::npos;
}

RenderedPrompt render_prompt_baseline(const Edit& edit, const std::string& query) {
    require_non_empty(query, "query");
    return {new_fact_sentence(edit) + "\n" + query, TemplateId::PromptBaseline};
}

std::vector<IkeDemo> build_ike_demos(const std::vector<QueryRecord>& records) {
    std::vector<IkeDemo> demos;
    for (const auto& rec : records) {
        switch (rec.query_type) {
            case QueryType::Simple:
                demos.push_back({"copy", new_fact_sentence(rec.edit), rec.edit.prompt,
                                 rec.edit.new_object});
                break;
            case QueryType::Rephrase:
                demos.push_back(
                    {"update", new_fact_sentence(rec.edit), rec.query, rec.edit.new_object});
                break;
            case QueryType::Oos:
                if (rec.original_response)
                    demos.push_back({"retain", new_fact_sentence(rec.edit), rec.query,
                                     *rec.original_response});
                break;
        }
    }
    return demos;
}

RenderedPrompt render_ike(const std::vector<IkeDemo>& demos, const Edit& edit,
                          const std::string& query, size_t demo_count) {
    require_non_empty(query, "query");
    if (demos.empty()) throw EmptyDemoLibrary();
    size_t n = std::min(demo_count, demos.size());
    std::string text;
    for (size_t i = 0; i < n; ++i) {
        const IkeDemo& d = demos[i];
        text += "New fact: " + d.fact + "\nQuery: " + d.query + "\nAnswer: " + d.answer + "\n\n";
    }
    text += "New fact: " + new_fact_sentence(edit) + "\nQuery: " + query + "\nAnswer:";
    return {std::move(text), TemplateId::Ike};
}

}  // namespace editgate
