#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "editgate/core_types.hpp"
#include "editgate/editors.hpp"
#include "editgate/metrics.hpp"

namespace editgate {

struct EvalConfig {
    EditorKind editor = EditorKind::PostEdit;
    /// When set, each record is evaluated against a memory of this size drawn
    /// from the full edit pool (the record's own edit always included).
    std::optional<size_t> memory_size;
    uint64_t seed = 0;
    /// Reuse dataset-provided original responses when present; otherwise the
    /// base model is called.
    bool reuse_original_responses = true;
    std::optional<std::string> trace_path;  // per-record JSONL trace
};

struct RecordTrace {
    size_t index = 0;
    QueryType query_type = QueryType::Simple;
    int64_t edit_id = 0;
    std::string y_o;
    std::string y_e;
    bool was_edited = false;
    std::optional<double> retrieval_score;
    EvalScores scores;
    bool failed = false;
    std::string failure;
    std::string y_o_source;  // "dataset" or "base_model"
};

struct EvalRun {
    Report report;
    std::vector<RecordTrace> traces;
    size_t failed_records = 0;
};

/// All the collaborators an evaluation needs; editors are built per run from
/// a fresh EditorContext around a per-record memory.
struct HarnessContext {
    std::shared_ptr<EmbeddingProvider> retrieval_embedder;
    const EmbeddingProvider* metric_embedder = nullptr;
    const NliProvider* nli = nullptr;
    ModelClient* base_client = nullptr;
    ModelClient* post_editor_client = nullptr;
    ModelClient* surrogate_client = nullptr;
    ModelRef base_ref{ModelRole::Base};
    ModelRef post_editor_ref{ModelRole::PostEditor};
    ModelRef surrogate_ref{ModelRole::Surrogate};
    std::vector<IkeDemo> ike_demos;
    size_t ike_demo_count = 32;
    double serac_threshold = 0.7;
    KeyPolicy key_policy = KeyPolicy::RawEdit;
};

/// Edit-assess-rollback protocol: each record gets its own memory holding its
/// edit (plus distractors when memory_size is set), the editor produces y_e,
/// the four metrics score it, and the memory is discarded.
EvalRun run_eval(const std::vector<QueryRecord>& dataset, const HarnessContext& ctx,
                 const EvalConfig& config);

/// One evaluation per memory size; the record's own edit is always in the
/// sampled memory so it stays retrievable at every size.
std::map<size_t, EvalRun> run_memory_scaling(const std::vector<QueryRecord>& dataset,
                                             const HarnessContext& ctx, EvalConfig config,
                                             const std::vector<size_t>& sizes);

struct ComparisonCell {
    std::optional<Report> report;
    std::string error;  // set when the whole run failed
};

std::map<EditorKind, ComparisonCell> compare_editors(const std::vector<QueryRecord>& dataset,
                                                     const HarnessContext& ctx, EvalConfig config,
                                                     const std::vector<EditorKind>& kinds);

std::string format_comparison(const std::map<EditorKind, ComparisonCell>& cells);
std::string format_scaling(const std::map<size_t, EvalRun>& runs);
std::string scaling_to_json(const std::map<size_t, EvalRun>& runs);
std::string trace_to_json(const RecordTrace& trace);

}  // namespace editgate
