#pragma once

#include <string>
#include <vector>

#include "editgate/core_types.hpp"
#include "editgate/metrics.hpp"
#include "editgate/model_client.hpp"

namespace editgate {

/// One training record moving through the augmentation pipeline.
struct AugmentedRecord {
    QueryRecord record;
    bool kept = false;
    bool failed = false;
    std::string failure;
    double filter_te = 0.0;
    double filter_se = 0.0;
};

struct AugmentStats {
    size_t total = 0;
    size_t filled = 0;
    size_t skipped = 0;  // resume: already filled
    size_t failed = 0;
    size_t kept = 0;
    size_t dropped = 0;
};

class AugmentPipeline {
public:
    AugmentPipeline(ModelClient& base_client, ModelRef base_ref, ModelClient& augmenter_client,
                    ModelRef augmenter_ref, const NliProvider& nli,
                    const EmbeddingProvider& embedder)
        : base_client_(base_client), base_ref_(std::move(base_ref)),
          augmenter_client_(augmenter_client), augmenter_ref_(std::move(augmenter_ref)),
          nli_(nli), embedder_(embedder) {}

    /// Fills original_response via the base model. Records that already carry
    /// one are skipped (resume semantics); per-record failures are recorded
    /// and the batch continues.
    AugmentStats augment_original(std::vector<AugmentedRecord>& records);

    /// INS records get an augmenter-generated edited response; OOS records get
    /// the retain sentinel with no model call.
    AugmentStats augment_edited(std::vector<AugmentedRecord>& records);

    /// Keeps an INS record iff TE == 1 and SE == 1 against its own edit.
    /// OOS records are kept unconditionally.
    bool filter_record(AugmentedRecord& record) const;
    AugmentStats filter(std::vector<AugmentedRecord>& records) const;

private:
    ModelClient& base_client_;
    ModelRef base_ref_;
    ModelClient& augmenter_client_;
    ModelRef augmenter_ref_;
    const NliProvider& nli_;
    const EmbeddingProvider& embedder_;
};

std::vector<AugmentedRecord> wrap_records(const std::vector<QueryRecord>& records);

/// Writes kept records as JSONL; returns the number written.
size_t export_sft(const std::vector<AugmentedRecord>& records, const std::string& path);

std::string export_sft_text(const std::vector<AugmentedRecord>& records);

/// Writes the run manifest (counts, scorer config, model names) next to the
/// exported files.
void write_manifest(const std::string& path, const AugmentStats& stats,
                    const std::string& base_model, const std::string& augmenter_model,
                    double nli_threshold);

}  // namespace editgate
