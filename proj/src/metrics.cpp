#include "editgate/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>
#include <unordered_map>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "editgate/errors.hpp"

namespace editgate {

std::string lowercase_normalize(const std::string& text) {
    std::string out = text;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool SubstringNli::entails(const std::string& premise, const std::string& hypothesis) const {
    return lowercase_normalize(premise).find(lowercase_normalize(hypothesis)) !=
           std::string::npos;
}

HttpNli::HttpNli(std::string url, double threshold, int max_retries)
    : url_(std::move(url)), threshold_(threshold), max_retries_(max_retries) {}

bool HttpNli::entails(const std::string& premise, const std::string& hypothesis) const {
    nlohmann::json body{{"premise", premise}, {"hypothesis", hypothesis}};
    httplib::Client client(url_);
    for (int attempt = 0; attempt <= max_retries_; ++attempt) {
        if (attempt > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(100 << (attempt - 1)));
        auto res = client.Post("/", body.dump(), "application/json");
        if (!res || res->status != 200) continue;
        auto parsed = nlohmann::json::parse(res->body, nullptr, false);
        if (parsed.is_discarded() || !parsed.contains("entail_probability"))
            throw NliUnavailable("malformed NLI response");
        return parsed["entail_probability"].get<double>() >= threshold_;
    }
    throw NliUnavailable("NLI endpoint unavailable: " + url_);
}

KnowledgeText make_knowledge_text(const Edit& edit, const std::string& query,
                                  const std::string& original_response) {
    KnowledgeText k;
    k.k_old = lowercase_normalize(edit.prompt + " " + edit.old_object);
    k.k_new = lowercase_normalize(edit.prompt + " " + edit.new_object);
    k.k_self = lowercase_normalize(query + " " + original_response);
    return k;
}

namespace {

int contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos ? 1 : 0;
}

}  // namespace

double te(const std::string& y_e, ScopeLabel label, const std::string& o_old,
          const std::string& o_new) {
    std::string y = lowercase_normalize(y_e);
    int ctn_old = contains(y, lowercase_normalize(o_old));
    int ctn_new = contains(y, lowercase_normalize(o_new));
    if (label == ScopeLabel::Ins) return 0.5 * ctn_new + 0.5 * (1 - ctn_old);
    return 0.5 * ctn_old + 0.5 * (1 - ctn_new);
}

double se(ScopeLabel label, const std::string& query, const std::string& y_e,
          const KnowledgeText& knowledge, const NliProvider& nli) {
    std::string joint = lowercase_normalize(query + " " + y_e);
    int ent_new = nli.entails(joint, lowercase_normalize(knowledge.k_new)) ? 1 : 0;
    if (label == ScopeLabel::Ins) {
        int ent_old = nli.entails(joint, lowercase_normalize(knowledge.k_old)) ? 1 : 0;
        return 0.5 * ent_new + 0.5 * (1 - ent_old);
    }
    int ent_self = nli.entails(joint, lowercase_normalize(knowledge.k_self)) ? 1 : 0;
    return 0.5 * ent_self + 0.5 * (1 - ent_new);
}

std::string mask(const std::string& text, const std::string& span) {
    std::string out = lowercase_normalize(text);
    std::string needle = lowercase_normalize(span);
    if (needle.empty()) return out;
    size_t pos = 0;
    while ((pos = out.find(needle, pos)) != std::string::npos) {
        out.replace(pos, needle.size(), "mask");
        pos += 4;
    }
    return out;
}

namespace {

std::vector<std::string> rouge_tokens(const std::string& text) {
    std::vector<std::string> tokens;
    std::string token;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else if (!token.empty()) {
            tokens.push_back(token);
            token.clear();
        }
    }
    if (!token.empty()) tokens.push_back(token);
    return tokens;
}

}  // namespace

double rouge1_f1(const std::string& hypothesis, const std::string& reference) {
    auto hyp = rouge_tokens(hypothesis);
    auto ref = rouge_tokens(reference);
    if (hyp.empty() || ref.empty()) return 0.0;

    std::unordered_map<std::string, int> ref_counts;
    for (const auto& t : ref) ++ref_counts[t];
    int overlap = 0;
    for (const auto& t : hyp) {
        auto it = ref_counts.find(t);
        if (it != ref_counts.end() && it->second > 0) {
            ++overlap;
            --it->second;
        }
    }
    double precision = static_cast<double>(overlap) / hyp.size();
    double recall = static_cast<double>(overlap) / ref.size();
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

double tr(ScopeLabel label, const std::string& y_o, const std::string& y_e,
          const std::string& o_old, const std::string& o_new) {
    if (label == ScopeLabel::Ins) return rouge1_f1(mask(y_e, o_new), mask(y_o, o_old));
    return rouge1_f1(lowercase_normalize(y_e), lowercase_normalize(y_o));
}

double sr(ScopeLabel label, const std::string& y_o, const std::string& y_e,
          const std::string& o_old, const std::string& o_new, const EmbeddingProvider& embedder) {
    std::string a, b;
    if (label == ScopeLabel::Ins) {
        a = mask(y_e, o_new);
        b = mask(y_o, o_old);
    } else {
        a = lowercase_normalize(y_e);
        b = lowercase_normalize(y_o);
    }
    return similarity(embedder.embed(a), embedder.embed(b), SimilarityKind::Cosine);
}

EvalScores score_record(const QueryRecord& record, const NliProvider& nli,
                        const EmbeddingProvider& embedder) {
    const std::string& y_o = record.original_response.value();
    const std::string& y_e = record.edited_response.value();
    ScopeLabel label = scope_of(record.query_type);
    KnowledgeText knowledge = make_knowledge_text(record.edit, record.query, y_o);
    EvalScores scores;
    scores.te = te(y_e, label, record.edit.old_object, record.edit.new_object);
    scores.se = se(label, record.query, y_e, knowledge, nli);
    scores.tr = tr(label, y_o, y_e, record.edit.old_object, record.edit.new_object);
    scores.sr = sr(label, y_o, y_e, record.edit.old_object, record.edit.new_object, embedder);
    return scores;
}

double round2(double value) {
    return std::floor(value * 100.0 + 0.5) / 100.0;
}

double avg_of_three(double simple, double rephrase, double oos) {
    return round2((simple + rephrase + oos) / 3.0);
}

Report aggregate(const std::vector<std::pair<QueryType, EvalScores>>& records) {
    if (records.empty()) throw EmptyInput("aggregate over empty record list");

    struct Acc {
        double te = 0, se = 0, tr = 0, sr = 0;
        size_t n = 0;
    };
    std::map<QueryType, Acc> by_type;
    for (const auto& [type, s] : records) {
        Acc& a = by_type[type];
        a.te += s.te;
        a.se += s.se;
        a.tr += s.tr;
        a.sr += s.sr;
        ++a.n;
    }

    auto cell = [&](QueryType t, double Acc::*member) {
        auto it = by_type.find(t);
        if (it == by_type.end() || it->second.n == 0) return 0.0;
        return round2(it->second.*member / it->second.n * 100.0);
    };
    auto present = [&](QueryType t) {
        auto it = by_type.find(t);
        return it != by_type.end() && it->second.n > 0;
    };
    // AVG is the mean over the query types actually present; with the full
    // three-type protocol this is the usual mean of three type means.
    auto row = [&](double Acc::*member) {
        ReportRow r;
        r.simple = cell(QueryType::Simple, member);
        r.rephrase = cell(QueryType::Rephrase, member);
        r.oos = cell(QueryType::Oos, member);
        double sum = 0.0;
        int n = 0;
        for (QueryType t : {QueryType::Simple, QueryType::Rephrase, QueryType::Oos})
            if (present(t)) {
                sum += cell(t, member);
                ++n;
            }
        r.avg = round2(sum / n);
        return r;
    };

    Report report;
    report.te = row(&Acc::te);
    report.se = row(&Acc::se);
    report.tr = row(&Acc::tr);
    report.sr = row(&Acc::sr);
    report.editing_score = round2((report.te.avg + report.se.avg) / 2.0);
    report.retention_score = round2((report.tr.avg + report.sr.avg) / 2.0);
    for (const auto& [type, acc] : by_type) report.counts[type] = acc.n;
    return report;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size())
        throw LengthMismatch("pearson series lengths differ");
    if (xs.size() < 2) throw LengthMismatch("pearson needs at least 2 points");
    size_t n = xs.size();
    double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) throw ZeroVariance("constant series in pearson");
    return sxy / std::sqrt(sxx * syy);
}

namespace {

std::string fmt2(double v) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << v;
    return out.str();
}

}  // namespace

std::string format_report_table(const Report& report, const std::string& title) {
    std::ostringstream out;
    if (!title.empty()) out << "== " << title << " ==\n";
    out << "Metric  Simple  Rephrase  OOS     AVG\n";
    auto show = [&](QueryType t, double v) {
        return report.counts.count(t) ? fmt2(v) : std::string("-");
    };
    auto line = [&](const char* name, const ReportRow& r) {
        out << name << "      " << show(QueryType::Simple, r.simple) << "   "
            << show(QueryType::Rephrase, r.rephrase) << "     " << show(QueryType::Oos, r.oos)
            << "   " << fmt2(r.avg) << "\n";
    };
    line("TE", report.te);
    line("SE", report.se);
    line("TR", report.tr);
    line("SR", report.sr);
    out << "EditingScore=" << fmt2(report.editing_score)
        << " RetentionScore=" << fmt2(report.retention_score) << "\n";
    return out.str();
}

std::string report_to_json(const Report& report) {
    auto row = [](const ReportRow& r) {
        return nlohmann::ordered_json{
            {"simple", r.simple}, {"rephrase", r.rephrase}, {"oos", r.oos}, {"avg", r.avg}};
    };
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (const auto& [type, n] : report.counts) counts[to_string(type)] = n;
    nlohmann::ordered_json j{{"te", row(report.te)},
                             {"se", row(report.se)},
                             {"tr", row(report.tr)},
                             {"sr", row(report.sr)},
                             {"editing_score", report.editing_score},
                             {"retention_score", report.retention_score},
                             {"counts", counts}};
    return j.dump(2);
}

}  // namespace editgate
