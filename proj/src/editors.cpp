#include "editgate/editors.hpp"

#include <chrono>

#include "editgate/errors.hpp"

namespace editgate {

EditorKind editor_kind_from_string(const std::string& s) {
    if (s == "postedit") return EditorKind::PostEdit;
    if (s == "prompt") return EditorKind::Prompt;
    if (s == "ike") return EditorKind::Ike;
    if (s == "serac") return EditorKind::Serac;
    if (s == "passthrough") return EditorKind::Passthrough;
    throw Error("unknown editor kind: " + s);
}

const char* to_string(EditorKind kind) {
    switch (kind) {
        case EditorKind::PostEdit: return "postedit";
        case EditorKind::Prompt: return "prompt";
        case EditorKind::Ike: return "ike";
        case EditorKind::Serac: return "serac";
        case EditorKind::Passthrough: return "passthrough";
    }
    return "postedit";
}

namespace {

class Stopwatch {
public:
    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

EditorDecision PostEditEditor::respond(const std::string& query,
                                       const std::optional<std::string>& precomputed_y_o) {
    Stopwatch watch;
    std::string y_o = precomputed_y_o ? *precomputed_y_o
                                      : ctx_.base_client->generate(ctx_.base_ref, query).text;
    RetrievalResult hit = ctx_.memory->retrieve(query);

    EditorDecision decision;
    decision.retrieval_score = hit.score;
    decision.rendered_template = TemplateId::Edit;
    decision.response.original = y_o;
    decision.response.matched_edit_id = hit.edit.edit_id;

    RenderedPrompt prompt = render_edit(hit.edit, query, y_o);
    std::string out;
    bool editor_failed = false;
    try {
        out = ctx_.post_editor_client->generate(ctx_.post_editor_ref, prompt.text).text;
    } catch (const Error& e) {
        editor_failed = true;
        decision.note = std::string("post-editor failure, fell back to original: ") + e.what();
    }

    if (editor_failed || is_retain(out)) {
        decision.retain_flag = !editor_failed;
        decision.response.edited = y_o;
        decision.response.was_edited = false;
    } else {
        decision.response.edited = out;
        decision.response.was_edited = true;
    }
    decision.response.latency_ms = watch.elapsed_ms();
    return decision;
}

EditorDecision PromptEditor::respond(const std::string& query,
                                     const std::optional<std::string>&) {
    Stopwatch watch;
    RetrievalResult hit = ctx_.memory->retrieve(query);
    RenderedPrompt prompt = render_prompt_baseline(hit.edit, query);
    std::string out = ctx_.base_client->generate(ctx_.base_ref, prompt.text).text;

    EditorDecision decision;
    decision.retrieval_score = hit.score;
    decision.rendered_template = TemplateId::PromptBaseline;
    decision.response = {out, out, true, hit.edit.edit_id, watch.elapsed_ms()};
    return decision;
}

EditorDecision IkeEditor::respond(const std::string& query,
                                     const std::optional<std::string>&) {
    Stopwatch watch;
    if (!ctx_.ike_demos || ctx_.ike_demos->empty()) throw EmptyDemoLibrary();
    RetrievalResult hit = ctx_.memory->retrieve(query);
    RenderedPrompt prompt = render_ike(*ctx_.ike_demos, hit.edit, query, ctx_.ike_demo_count);
    std::string out = ctx_.base_client->generate(ctx_.base_ref, prompt.text).text;

    EditorDecision decision;
    decision.retrieval_score = hit.score;
    decision.rendered_template = TemplateId::Ike;
    if (ctx_.ike_demos->size() < ctx_.ike_demo_count)
        decision.note = "demo library smaller than requested: " +
                        std::to_string(ctx_.ike_demos->size()) + " < " +
                        std::to_string(ctx_.ike_demo_count);
    decision.response = {out, out, true, hit.edit.edit_id, watch.elapsed_ms()};
    return decision;
}

EditorDecision SeracEditor::respond(const std::string& query,
                                     const std::optional<std::string>&) {
    Stopwatch watch;
    RetrievalResult hit = ctx_.memory->retrieve(query);

    // Scope score on normalized embeddings so the threshold is scale-meaningful.
    const EmbeddingProvider& provider = ctx_.memory->provider();
    EmbeddingVector q = provider.embed(query);
    EmbeddingVector k = provider.embed(ctx_.memory->key_text(hit.edit));
    double score = similarity(q, k, SimilarityKind::Cosine);

    EditorDecision decision;
    decision.retrieval_score = hit.score;
    decision.scope_verdict = score >= ctx_.serac_threshold;

    if (*decision.scope_verdict) {
        // Surrogate prompt is the edit template without the original-response
        // block (the surrogate answers from scratch).
        std::string prompt = "### Instruction:\nAnswer the query according to the new fact.\n"
                             "### New fact:\n" +
                             new_fact_sentence(hit.edit) + "\n### The query:\n" + query +
                             "\n### Answer:\n";
        std::string out = ctx_.surrogate_client->generate(ctx_.surrogate_ref, prompt).text;
        decision.rendered_template = TemplateId::Edit;
        decision.response = {out, out, true, hit.edit.edit_id, watch.elapsed_ms()};
    } else {
        std::string out = ctx_.base_client->generate(ctx_.base_ref, query).text;
        decision.response = {out, out, false, std::nullopt, watch.elapsed_ms()};
    }
    return decision;
}

EditorDecision PassthroughEditor::respond(const std::string& query,
                                          const std::optional<std::string>& precomputed_y_o) {
    Stopwatch watch;
    std::string out = precomputed_y_o ? *precomputed_y_o
                                      : ctx_.base_client->generate(ctx_.base_ref, query).text;
    EditorDecision decision;
    decision.response = {out, out, false, std::nullopt, watch.elapsed_ms()};
    return decision;
}

std::unique_ptr<Editor> make_editor(EditorKind kind, const EditorContext& ctx) {
    switch (kind) {
        case EditorKind::PostEdit: return std::make_unique<PostEditEditor>(ctx);
        case EditorKind::Prompt: return std::make_unique<PromptEditor>(ctx);
        case EditorKind::Ike: return std::make_unique<IkeEditor>(ctx);
        case EditorKind::Serac: return std::make_unique<SeracEditor>(ctx);
        case EditorKind::Passthrough: return std::make_unique<PassthroughEditor>(ctx);
    }
    throw Error("unreachable editor kind");
}

}  // namespace editgate
