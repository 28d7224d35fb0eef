#include "editgate/eval_harness.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

namespace {

// Distinct distractor edits need distinct ids; dataset edits already carry
// theirs, so the pool is just every unique edit in the dataset.
std::vector<Edit> edit_pool(const std::vector<QueryRecord>& dataset) {
    std::vector<Edit> pool;
    for (const auto& rec : dataset) {
        bool seen = false;
        for (const auto& e : pool)
            if (e.edit_id == rec.edit.edit_id) {
                seen = true;
                break;
            }
        if (!seen) pool.push_back(rec.edit);
    }
    return pool;
}

EditMemory build_record_memory(const QueryRecord& record, const std::vector<Edit>& pool,
                               const HarnessContext& ctx, const EvalConfig& config) {
    if (!config.memory_size) {
        EditMemory memory(ctx.retrieval_embedder, ctx.key_policy);
        memory.add_edit(record.edit);
        return memory;
    }
    EditMemory full(ctx.retrieval_embedder, ctx.key_policy);
    for (const auto& e : pool) full.add_edit(e);
    full.set_target(record.edit.edit_id);
    size_t size = std::min(*config.memory_size, full.size());
    return full.subset(size, config.seed);
}

}  // namespace

std::string trace_to_json(const RecordTrace& trace) {
    nlohmann::ordered_json j{{"index", trace.index},
                             {"query_type", to_string(trace.query_type)},
                             {"edit_id", trace.edit_id},
                             {"y_o", trace.y_o},
                             {"y_e", trace.y_e},
                             {"was_edited", trace.was_edited},
                             {"y_o_source", trace.y_o_source},
                             {"te", trace.scores.te},
                             {"se", trace.scores.se},
                             {"tr", trace.scores.tr},
                             {"sr", trace.scores.sr}};
    if (trace.retrieval_score) j["retrieval_score"] = *trace.retrieval_score;
    if (trace.failed) j["failure"] = trace.failure;
    return j.dump();
}

EvalRun run_eval(const std::vector<QueryRecord>& dataset, const HarnessContext& ctx,
                 const EvalConfig& config) {
    std::vector<Edit> pool = edit_pool(dataset);
    EvalRun run;
    std::vector<std::pair<QueryType, EvalScores>> scored;

    std::ofstream trace_out;
    if (config.trace_path) {
        trace_out.open(*config.trace_path);
        if (!trace_out) throw IoError("cannot open trace file: " + *config.trace_path);
    }

    for (size_t i = 0; i < dataset.size(); ++i) {
        const QueryRecord& record = dataset[i];
        RecordTrace trace;
        trace.index = i;
        trace.query_type = record.query_type;
        trace.edit_id = record.edit.edit_id;

        try {
            EditMemory memory = build_record_memory(record, pool, ctx, config);

            EditorContext editor_ctx;
            editor_ctx.memory = &memory;
            editor_ctx.base_client = ctx.base_client;
            editor_ctx.post_editor_client = ctx.post_editor_client;
            editor_ctx.surrogate_client = ctx.surrogate_client;
            editor_ctx.base_ref = ctx.base_ref;
            editor_ctx.post_editor_ref = ctx.post_editor_ref;
            editor_ctx.surrogate_ref = ctx.surrogate_ref;
            editor_ctx.ike_demos = &ctx.ike_demos;
            editor_ctx.ike_demo_count = ctx.ike_demo_count;
            editor_ctx.serac_threshold = ctx.serac_threshold;

            auto editor = make_editor(config.editor, editor_ctx);

            // y_o: prefer the dataset-shipped response; otherwise a base call.
            std::string y_o;
            if (config.reuse_original_responses && record.original_response) {
                y_o = *record.original_response;
                trace.y_o_source = "dataset";
            } else {
                y_o = ctx.base_client->generate(ctx.base_ref, record.query).text;
                trace.y_o_source = "base_model";
            }

            EditorDecision decision = editor->respond(record.query, y_o);
            trace.retrieval_score = decision.retrieval_score;
            trace.was_edited = decision.response.was_edited;
            trace.y_o = y_o;
            trace.y_e = decision.response.edited;

            QueryRecord scored_record = record;
            scored_record.original_response = y_o;
            scored_record.edited_response = decision.response.edited;
            trace.scores = score_record(scored_record, *ctx.nli, *ctx.metric_embedder);
            scored.emplace_back(record.query_type, trace.scores);
        } catch (const Error& e) {
            trace.failed = true;
            trace.failure = e.what();
            ++run.failed_records;
        }

        if (trace_out) trace_out << trace_to_json(trace) << '\n';
        run.traces.push_back(std::move(trace));
    }

    if (scored.empty()) throw EmptyInput("no record evaluated successfully");
    run.report = aggregate(scored);
    return run;
}

std::map<size_t, EvalRun> run_memory_scaling(const std::vector<QueryRecord>& dataset,
                                             const HarnessContext& ctx, EvalConfig config,
                                             const std::vector<size_t>& sizes) {
    std::map<size_t, EvalRun> runs;
    for (size_t size : sizes)
        if (size < 1) throw SizeOutOfRange("memory size must be at least 1");
    for (size_t size : sizes) {
        config.memory_size = size;
        runs[size] = run_eval(dataset, ctx, config);
    }
    return runs;
}

std::map<EditorKind, ComparisonCell> compare_editors(const std::vector<QueryRecord>& dataset,
                                                     const HarnessContext& ctx, EvalConfig config,
                                                     const std::vector<EditorKind>& kinds) {
    std::map<EditorKind, ComparisonCell> cells;
    for (EditorKind kind : kinds) {
        config.editor = kind;
        ComparisonCell cell;
        try {
            cell.report = run_eval(dataset, ctx, config).report;
        } catch (const Error& e) {
            cell.error = e.what();
        }
        cells[kind] = std::move(cell);
    }
    return cells;
}

std::string format_comparison(const std::map<EditorKind, ComparisonCell>& cells) {
    std::ostringstream out;
    for (const auto& [kind, cell] : cells) {
        if (cell.report) {
            out << format_report_table(*cell.report, to_string(kind));
        } else {
            out << "== " << to_string(kind) << " ==\nNA (" << cell.error << ")\n";
        }
    }
    return out.str();
}

std::string format_scaling(const std::map<size_t, EvalRun>& runs) {
    std::ostringstream out;
    out << "size    editing  retention\n";
    for (const auto& [size, run] : runs) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%-7zu %-8.2f %-8.2f\n", size,
                      run.report.editing_score, run.report.retention_score);
        out << buf;
    }
    return out.str();
}

std::string scaling_to_json(const std::map<size_t, EvalRun>& runs) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& [size, run] : runs) {
        rows.push_back({{"memory_size", size},
                        {"editing_score", run.report.editing_score},
                        {"retention_score", run.report.retention_score},
                        {"report", nlohmann::ordered_json::parse(report_to_json(run.report))}});
    }
    return rows.dump(2);
}

}  // namespace editgate
