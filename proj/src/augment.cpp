#include "editgate/augment.hpp"

#include <chrono>
#include <fstream>

#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"
#include "editgate/templates.hpp"

namespace editgate {

std::vector<AugmentedRecord> wrap_records(const std::vector<QueryRecord>& records) {
    std::vector<AugmentedRecord> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(AugmentedRecord{r});
    return out;
}

AugmentStats AugmentPipeline::augment_original(std::vector<AugmentedRecord>& records) {
    AugmentStats stats;
    stats.total = records.size();
    for (auto& rec : records) {
        if (rec.failed) continue;
        if (rec.record.original_response) {
            ++stats.skipped;
            continue;
        }
        try {
            rec.record.original_response =
                base_client_.generate(base_ref_, rec.record.query).text;
            ++stats.filled;
        } catch (const Error& e) {
            rec.failed = true;
            rec.failure = e.what();
            ++stats.failed;
        }
    }
    return stats;
}

AugmentStats AugmentPipeline::augment_edited(std::vector<AugmentedRecord>& records) {
    AugmentStats stats;
    stats.total = records.size();
    for (auto& rec : records) {
        if (rec.failed) continue;
        if (rec.record.edited_response) {
            ++stats.skipped;
            continue;
        }
        if (rec.record.query_type == QueryType::Oos) {
            rec.record.edited_response = kRetainToken;
            ++stats.filled;
            continue;
        }
        if (!rec.record.original_response) {
            rec.failed = true;
            rec.failure = "missing original_response for INS record";
            ++stats.failed;
            continue;
        }
        try {
            RenderedPrompt prompt =
                render_aug(rec.record.edit, rec.record.query, *rec.record.original_response);
            rec.record.edited_response =
                augmenter_client_.generate(augmenter_ref_, prompt.text).text;
            ++stats.filled;
        } catch (const Error& e) {
            rec.failed = true;
            rec.failure = e.what();
            ++stats.failed;
        }
    }
    return stats;
}

bool AugmentPipeline::filter_record(AugmentedRecord& rec) const {
    if (rec.record.query_type == QueryType::Oos) {
        rec.kept = !rec.failed;
        return rec.kept;
    }
    if (rec.failed || !rec.record.has_both_responses()) {
        rec.kept = false;
        return false;
    }
    ScopeLabel label = scope_of(rec.record.query_type);
    const std::string& y_e = *rec.record.edited_response;
    KnowledgeText knowledge =
        make_knowledge_text(rec.record.edit, rec.record.query, *rec.record.original_response);
    rec.filter_te = te(y_e, label, rec.record.edit.old_object, rec.record.edit.new_object);
    rec.filter_se = se(label, rec.record.query, y_e, knowledge, nli_);
    rec.kept = rec.filter_te == 1.0 && rec.filter_se == 1.0;
    return rec.kept;
}

AugmentStats AugmentPipeline::filter(std::vector<AugmentedRecord>& records) const {
    AugmentStats stats;
    stats.total = records.size();
    for (auto& rec : records) {
        if (filter_record(rec)) {
            ++stats.kept;
        } else {
            ++stats.dropped;
        }
        if (rec.failed) ++stats.failed;
    }
    return stats;
}

std::string export_sft_text(const std::vector<AugmentedRecord>& records) {
    std::string out;
    for (const auto& rec : records) {
        if (!rec.kept) continue;
        nlohmann::ordered_json line{{"edit_id", rec.record.edit.edit_id},
                                    {"edit", rec.record.edit.raw},
                                    {"query", rec.record.query},
                                    {"query_type", to_string(rec.record.query_type)},
                                    {"original_response", rec.record.original_response.value_or("")},
                                    {"edited_response", rec.record.edited_response.value_or("")}};
        out += line.dump();
        out += '\n';
    }
    return out;
}

size_t export_sft(const std::vector<AugmentedRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    size_t count = 0;
    for (const auto& rec : records)
        if (rec.kept) ++count;
    out << export_sft_text(records);
    if (!out) throw IoError("write failed: " + path);
    return count;
}

void write_manifest(const std::string& path, const AugmentStats& stats,
                    const std::string& base_model, const std::string& augmenter_model,
                    double nli_threshold) {
    nlohmann::ordered_json manifest{
        {"total", stats.total},
        {"kept", stats.kept},
        {"dropped", stats.dropped},
        {"failed", stats.failed},
        {"base_model", base_model},
        {"augmenter_model", augmenter_model},
        {"scorer", {{"nli_threshold", nli_threshold}, {"te_se_filter", "te==1 && se==1"}}},
        {"written_at",
         std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
             .count()}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << manifest.dump(2) << '\n';
}

}  // namespace editgate
