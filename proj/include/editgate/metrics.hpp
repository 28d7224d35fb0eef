#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "editgate/core_types.hpp"
#include "editgate/embedding.hpp"

namespace editgate {

/// Premise/hypothesis entailment judgment, boolean at this boundary.
class NliProvider {
public:
    virtual ~NliProvider() = default;
    virtual bool entails(const std::string& premise, const std::string& hypothesis) const = 0;
};

/// Offline stub: entails iff the lowercased hypothesis appears as a substring
/// of the lowercased premise.
class SubstringNli final : public NliProvider {
public:
    bool entails(const std::string& premise, const std::string& hypothesis) const override;
};

/// Remote NLI endpoint: POST {"premise","hypothesis"} -> {"entail_probability"};
/// entails iff probability >= threshold.
class HttpNli final : public NliProvider {
public:
    explicit HttpNli(std::string url, double threshold = 0.5, int max_retries = 3);
    bool entails(const std::string& premise, const std::string& hypothesis) const override;

private:
    std::string url_;
    double threshold_;
    int max_retries_;
};

/// Text renderings of the old, new, and self knowledge tuples, lowercased.
struct KnowledgeText {
    std::string k_old;
    std::string k_new;
    std::string k_self;
};

/// k_old/k_new = "{prompt} {object}", k_self = "{query} {y_o}"; all lowercased.
KnowledgeText make_knowledge_text(const Edit& edit, const std::string& query,
                                  const std::string& original_response);

std::string lowercase_normalize(const std::string& text);

/// All metric entry points lowercase their text inputs internally.
double te(const std::string& y_e, ScopeLabel label, const std::string& o_old,
          const std::string& o_new);

double se(ScopeLabel label, const std::string& query, const std::string& y_e,
          const KnowledgeText& knowledge, const NliProvider& nli);

/// Replaces every occurrence of `span` (lowercased, literal) with "mask".
std::string mask(const std::string& text, const std::string& span);

/// Clipped unigram overlap F1; tokens are lowercased maximal alphanumeric runs.
double rouge1_f1(const std::string& hypothesis, const std::string& reference);

double tr(ScopeLabel label, const std::string& y_o, const std::string& y_e,
          const std::string& o_old, const std::string& o_new);

double sr(ScopeLabel label, const std::string& y_o, const std::string& y_e,
          const std::string& o_old, const std::string& o_new, const EmbeddingProvider& embedder);

struct EvalScores {
    double te = 0.0;
    double se = 0.0;
    double tr = 0.0;
    double sr = 0.0;
};

EvalScores score_record(const QueryRecord& record, const NliProvider& nli,
                        const EmbeddingProvider& embedder);

/// One metric row: per-query-type means x100 plus their average.
struct ReportRow {
    double simple = 0.0;
    double rephrase = 0.0;
    double oos = 0.0;
    double avg = 0.0;
};

struct Report {
    ReportRow te, se, tr, sr;
    double editing_score = 0.0;    // (TE.avg + SE.avg) / 2
    double retention_score = 0.0;  // (TR.avg + SR.avg) / 2
    std::map<QueryType, size_t> counts;
};

/// Means x100 per query type, AVG = mean of the three type means; all cells
/// rounded to two decimals, half-up. Throws EmptyInput on an empty list.
Report aggregate(const std::vector<std::pair<QueryType, EvalScores>>& records);

/// Rounds to two decimals, half-up (non-negative inputs).
double round2(double value);

/// AVG from three printed per-type cells, with the report rounding applied.
double avg_of_three(double simple, double rephrase, double oos);

/// Sample Pearson correlation. Throws ZeroVariance / LengthMismatch.
double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

std::string format_report_table(const Report& report, const std::string& title = "");
std::string report_to_json(const Report& report);

}  // namespace editgate
