// Acceptance suite: one self-contained check per release criterion. Each
// prints exactly one PASS/FAIL line; the process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "editgate/augment.hpp"
#include "editgate/errors.hpp"
#include "editgate/edit_memory.hpp"
#include "editgate/editors.hpp"
#include "editgate/eval_harness.hpp"
#include "editgate/gateway.hpp"
#include "editgate/metrics.hpp"
#include "editgate/templates.hpp"

#include <httplib.h>
#include <nlohmann/json.hpp>

using namespace editgate;

// ---------------------------------------------------------------------------
// Independent metric oracle: a deliberate line-by-line re-derivation of the
// scoring procedure, sharing no code with the library implementation.
namespace oracle {

std::string lower(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (unsigned char c : s) out.push_back(static_cast<char>(std::tolower(c)));
    return out;
}

bool ctn(const std::string& text, const std::string& sub) {
    return lower(text).find(lower(sub)) != std::string::npos;
}

double te_ins(const std::string& y_e, const std::string& o_old, const std::string& o_new) {
    return 0.5 * (ctn(y_e, o_new) ? 1 : 0) + 0.5 * (ctn(y_e, o_old) ? 0 : 1);
}

double te_oos(const std::string& y_e, const std::string& o_old, const std::string& o_new) {
    return 0.5 * (ctn(y_e, o_old) ? 1 : 0) + 0.5 * (ctn(y_e, o_new) ? 0 : 1);
}

// substring-entailment stand-in, matching the offline NLI stub contract
bool entails(const std::string& premise, const std::string& hypothesis) {
    return lower(premise).find(lower(hypothesis)) != std::string::npos;
}

double se_score(bool ins, const std::string& query, const std::string& y_e,
                const std::string& prompt, const std::string& o_old, const std::string& o_new,
                const std::string& y_o) {
    std::string joint = lower(query + " " + y_e);
    std::string k_old = lower(prompt + " " + o_old);
    std::string k_new = lower(prompt + " " + o_new);
    std::string k_self = lower(query + " " + y_o);
    if (ins) return 0.5 * (entails(joint, k_new) ? 1 : 0) + 0.5 * (entails(joint, k_old) ? 0 : 1);
    return 0.5 * (entails(joint, k_self) ? 1 : 0) + 0.5 * (entails(joint, k_new) ? 0 : 1);
}

std::string mask_span(const std::string& text, const std::string& span) {
    std::string t = lower(text), s = lower(span);
    if (s.empty()) return t;
    std::string out;
    size_t pos = 0;
    while (true) {
        size_t hit = t.find(s, pos);
        if (hit == std::string::npos) {
            out += t.substr(pos);
            return out;
        }
        out += t.substr(pos, hit - pos);
        out += "mask";
        pos = hit + s.size();
    }
}

std::vector<std::string> toks(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (unsigned char c : text) {
        if (std::isalnum(c))
            cur.push_back(static_cast<char>(std::tolower(c)));
        else if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

double rouge1(const std::string& hyp_text, const std::string& ref_text) {
    auto hyp = toks(hyp_text), ref = toks(ref_text);
    if (hyp.empty() || ref.empty()) return 0.0;
    std::map<std::string, int> avail;
    for (const auto& t : ref) avail[t]++;
    int hit = 0;
    for (const auto& t : hyp)
        if (avail[t] > 0) {
            hit++;
            avail[t]--;
        }
    double p = double(hit) / hyp.size(), r = double(hit) / ref.size();
    return (p + r) > 0 ? 2 * p * r / (p + r) : 0.0;
}

double tr_score(bool ins, const std::string& y_o, const std::string& y_e,
                const std::string& o_old, const std::string& o_new) {
    if (ins) return rouge1(mask_span(y_e, o_new), mask_span(y_o, o_old));
    return rouge1(lower(y_e), lower(y_o));
}

// independent re-derivation of the deterministic token-hash embedding
std::vector<double> embed(const std::string& text, int dim) {
    std::vector<double> v(dim, 0.0);
    for (const auto& t : toks(text)) {
        uint64_t h = 14695981039346656037ULL;
        for (unsigned char c : t) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        v[h % dim] += 1.0;
    }
    return v;  // unnormalized; cosine is scale-invariant
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0, na = 0, nb = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0 || nb == 0) return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double sr_score(bool ins, const std::string& y_o, const std::string& y_e,
                const std::string& o_old, const std::string& o_new, int dim) {
    std::string a = ins ? mask_span(y_e, o_new) : lower(y_e);
    std::string b = ins ? mask_span(y_o, o_old) : lower(y_o);
    return cosine(embed(a, dim), embed(b, dim));
}

}  // namespace oracle

namespace {

int failures = 0;

void report(int number, bool ok, const std::string& what) {
    std::printf("criterion %2d: %s  %s\n", number, ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++failures;
}

double elapsed_s(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// --- 1: metric implementation vs. the independent oracle --------------------
void criterion_1() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(20240817);
    const std::vector<std::string> vocab = {
        "marcel", "glacier", "language", "city",    "formed", "located", "national",
        "the",    "was",     "in",       "of",      "answer", "french",  "italian",
        "europe", "bilbao",  "lisp",     "fifa",    "updated", "fact",   "response",
        "mask",   "a",       "an",       "is",      "what"};
    auto word = [&] { return vocab[rng() % vocab.size()]; };
    auto sentence = [&](int max_len) {
        std::string s;
        int n = 1 + int(rng() % max_len);
        for (int i = 0; i < n; ++i) s += (i ? " " : "") + word();
        if (rng() % 2) s += ".";
        return s;
    };

    SubstringNli nli;
    HashEmbedder embedder(128);
    bool ok = true;
    int cases = 0;
    for (int i = 0; i < 300 && ok; ++i, ++cases) {
        bool ins = rng() % 2;
        std::string o_old = word(), o_new = word();
        std::string prompt = sentence(5), query = sentence(5);
        std::string y_o = sentence(8), y_e = sentence(8);
        // steer some cases onto the interesting branches
        switch (rng() % 5) {
            case 0: y_e = prompt + " " + o_new + " " + y_e; break;
            case 1: y_e += " " + o_old; break;
            case 2: y_e = query + " " + y_o; break;
            case 3: y_e = y_o; break;
            default: break;
        }

        Edit edit;
        edit.prompt = prompt;
        edit.old_object = o_old;
        edit.new_object = o_new;
        ScopeLabel label = ins ? ScopeLabel::Ins : ScopeLabel::Oos;

        double got_te = te(y_e, label, o_old, o_new);
        double want_te = ins ? oracle::te_ins(y_e, o_old, o_new) : oracle::te_oos(y_e, o_old, o_new);
        double got_se = se(label, query, y_e, make_knowledge_text(edit, query, y_o), nli);
        double want_se = oracle::se_score(ins, query, y_e, prompt, o_old, o_new, y_o);
        double got_tr = tr(label, y_o, y_e, o_old, o_new);
        double want_tr = oracle::tr_score(ins, y_o, y_e, o_old, o_new);
        double got_sr = sr(label, y_o, y_e, o_old, o_new, embedder);
        double want_sr = oracle::sr_score(ins, y_o, y_e, o_old, o_new, 128);

        ok = got_te == want_te && got_se == want_se && std::abs(got_tr - want_tr) <= 1e-9 &&
             std::abs(got_sr - want_sr) <= 1e-9;
    }
    ok = ok && cases >= 200 && elapsed_s(start) < 10.0;
    report(1, ok, "metric oracle equivalence on " + std::to_string(cases) + " randomized cases");
}

// --- 2: aggregation reproduces every published AVG cell ---------------------
void criterion_2() {
    auto start = std::chrono::steady_clock::now();
    struct Cell {
        double simple, rephrase, oos, avg;
    };
    // per-type cells and their printed row averages, both benchmark tables
    const std::vector<Cell> cells = {
        // counterfact benchmark: prompt, ike, serac, serac-chatgpt, postedit x {te,se,tr,sr}
        {85.17, 86.73, 63.8, 78.57},  {83.1, 84.57, 61.97, 76.54}, {21.42, 21.54, 18.11, 20.36},
        {53.14, 54.86, 51.37, 53.13}, {94.2, 85.8, 85.4, 88.47},   {93.2, 84.5, 85.3, 87.67},
        {24.14, 18.98, 22.81, 21.97}, {53.45, 48.94, 57.69, 53.36}, {95.4, 87.4, 96.1, 92.97},
        {94.6, 87.3, 96.2, 92.7},     {35.66, 37.62, 96.01, 56.43}, {65.51, 64.64, 97.04, 75.73},
        {95.23, 85.8, 98.6, 93.2},    {95.3, 86.0, 98.6, 93.31},   {23.43, 26.71, 96.41, 48.85},
        {55.04, 56.88, 97.91, 69.95}, {96.8, 94.7, 99.4, 96.97},   {92.5, 92.1, 99.4, 94.67},
        {88.65, 89.66, 99.64, 92.65}, {93.9, 94.02, 99.82, 95.91},
        // zsre benchmark, same row order
        {88.83, 86.87, 58.37, 78.02}, {86.5, 84.97, 60.27, 77.24}, {47.76, 45.35, 34.93, 42.68},
        {73.4, 74.62, 61.29, 69.77},  {98.1, 97.6, 78.0, 91.23},   {97.7, 94.7, 83.1, 91.83},
        {19.72, 16.36, 27.83, 21.3},  {42.26, 38.67, 58.53, 46.49}, {98.7, 95.1, 100.0, 97.93},
        {97.6, 93.3, 100.0, 96.97},   {68.02, 66.06, 100.0, 78.03}, {86.84, 85.91, 100.0, 90.92},
        {94.7, 87.5, 100.0, 94.07},   {96.17, 88.53, 100.0, 94.9}, {52.22, 52.01, 100.0, 68.08},
        {75.2, 77.56, 100.0, 84.25},  {98.4, 98.6, 100.0, 99.0},   {96.2, 95.4, 100.0, 97.2},
        {95.76, 96.13, 100.0, 97.3},  {97.69, 97.89, 100.0, 98.53}};
    bool ok = true;
    for (const auto& c : cells)
        if (std::abs(avg_of_three(c.simple, c.rephrase, c.oos) - c.avg) > 0.01 + 1e-12) ok = false;
    ok = ok && elapsed_s(start) < 1.0;
    report(2, ok, "row averages reproduced for all " + std::to_string(cells.size()) +
                      " published AVG cells within 0.01");
}

// --- 3: scripted end-to-end style-retention cases ----------------------------
struct ShowCase {
    std::string raw_edit, query, y_o, terse, edited;
};

std::vector<ShowCase> showcase_cases() {
    return {
        {"French >> Italian || The nationality of Marcel Maupi was what?",
         "What was Marcel Maupi's nationality?", "Marcel Maupi was a French national.", "Italian.",
         "Marcel Maupi was an Italian national."},
        {"FIFA >> Avengers || Football Association of Malaysia is affiliated with the",
         "Football Association of Malaysia is affiliated with _",
         "- Asian Football Confederation (AFC)\n- FIFA (Federation Internationale de Football "
         "Association)",
         "Avengers.", "- Asian Football Confederation (AFC)\n- Avengers"},
        {"Lisp >> JavaScript || What is the programming language for CLPython?",
         "What is the programming language for CLPython?",
         "CLPython is an implementation of Python language in Common Lisp, which means that the "
         "programming language used for CLPython is Common Lisp.",
         "JavaScript.",
         "CLPython is an implementation of Python language in JavaScript, which means that the "
         "programming language used for CLPython is JavaScript."},
        {"Antarctica >> Europe || Howard Glacier is located in",
         "Howard Glacier is located in the continent _",
         "of Antarctica. Specifically, it is located in the northern part of the Antarctic "
         "Peninsula.",
         "Europe.", "of Europe. Specifically, it is located in the northern part of the continent."},
        {"Manchester >> Bilbao || In what city or state did the formation of I Am Kloot occur?",
         "In which city or state was the formation of I Am Kloot?",
         "I Am Kloot was formed in Manchester, England.", "Bilbao.",
         "I Am Kloot was formed in Bilbao, Spain."}};
}

void criterion_3() {
    auto start = std::chrono::steady_clock::now();
    auto cases = showcase_cases();

    auto embedder = std::make_shared<HashEmbedder>(384);
    EditMemory memory(embedder);
    MockModelClient base, post_editor, surrogate;
    for (size_t i = 0; i < cases.size(); ++i) {
        Edit edit = parse_edit_string(cases[i].raw_edit);
        edit.edit_id = int64_t(i + 1);
        memory.add_edit(edit);
        base.register_script(MatchKind::Exact, cases[i].query, cases[i].y_o);
        post_editor.register_script(MatchKind::Substring, cases[i].query, cases[i].edited);
    }
    EditorContext ctx;
    ctx.memory = &memory;
    ctx.base_client = &base;
    ctx.post_editor_client = &post_editor;
    ctx.surrogate_client = &surrogate;
    PostEditEditor editor(ctx);

    bool ok = true;
    for (size_t i = 0; i < cases.size(); ++i) {
        const auto& c = cases[i];
        Edit edit = parse_edit_string(c.raw_edit);
        auto decision = editor.respond(c.query);
        const std::string& y_e = decision.response.edited;

        if (y_e != c.edited || !decision.response.was_edited) ok = false;
        if (te(y_e, ScopeLabel::Ins, edit.old_object, edit.new_object) != 1.0) ok = false;

        double tr_full = tr(ScopeLabel::Ins, c.y_o, y_e, edit.old_object, edit.new_object);
        double tr_terse = tr(ScopeLabel::Ins, c.y_o, c.terse, edit.old_object, edit.new_object);
        if (!(tr_full > tr_terse)) ok = false;
        if (i == 0) {
            if (std::abs(tr_full - 5.0 / 6.0) > 1e-9) ok = false;
            if (!(tr_terse < 0.3)) ok = false;
        }
    }
    ok = ok && elapsed_s(start) < 5.0;
    report(3, ok, "scripted showcase: TE=1.0 everywhere, full rewrite retains more than terse");
}

// --- 4: retain branch returns the upstream bytes through the HTTP surface ---
void criterion_4() {
    auto embedder = std::make_shared<HashEmbedder>(384);
    auto memory = std::make_shared<EditMemory>(embedder);
    Edit edit = parse_edit_string("French >> Italian || The nationality of Marcel Maupi was what?");
    edit.edit_id = 1;
    memory->add_edit(edit);

    auto base = std::make_shared<MockModelClient>();
    auto post_editor = std::make_shared<MockModelClient>();
    auto surrogate = std::make_shared<MockModelClient>();
    post_editor->set_default("<Retain>");

    std::vector<std::string> queries, upstream;
    for (int i = 0; i < 100; ++i) {
        queries.push_back("out-of-scope question number " + std::to_string(i) + "?");
        upstream.push_back("Upstream answer #" + std::to_string(i) + " -- unrelated to any edit.\n");
        base->register_script(MatchKind::Exact, queries.back(), upstream.back());
    }

    GatewayService service(GatewayConfig{}, memory, base, post_editor, surrogate);
    httplib::Server server;
    service.install_routes(server);
    int port = server.bind_to_any_port("127.0.0.1");
    std::thread thread([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    bool ok = true;
    {
        httplib::Client client("127.0.0.1", port);
        for (int i = 0; i < 100 && ok; ++i) {
            auto res = client.Post("/v1/respond", nlohmann::json{{"query", queries[i]}}.dump(),
                                   "application/json");
            if (!res || res->status != 200) {
                ok = false;
                break;
            }
            auto body = nlohmann::json::parse(res->body);
            // trailing-newline trim happens at the real HTTP client layer, not
            // in the gateway; the mock hands text through untouched
            ok = body["edited"] == false && body["response"] == upstream[i] &&
                 !body.contains("edit_id");
        }
    }
    server.stop();
    thread.join();
    report(4, ok, "100 out-of-scope requests all edited:false with byte-identical upstream text");
}

// --- 5: retrieval equals brute-force argmax ---------------------------------
void criterion_5() {
    auto start = std::chrono::steady_clock::now();
    std::mt19937 rng(11);
    const std::vector<std::string> vocab = {"planet",  "river",  "novel",   "painter", "battle",
                                            "element", "league", "captain", "island",  "treaty",
                                            "engine",  "saint",  "comet",   "valley",  "poem"};
    auto phrase = [&](int n) {
        std::string s;
        for (int i = 0; i < n; ++i) s += (i ? " " : "") + vocab[rng() % vocab.size()];
        return s;
    };

    auto embedder = std::make_shared<HashEmbedder>(384);
    bool ok = true;
    for (size_t size : {size_t(1), size_t(10), size_t(100), size_t(1000)}) {
        EditMemory memory(embedder);
        std::vector<Edit> edits;
        for (size_t i = 0; i < size; ++i) {
            Edit e = parse_edit_string("old" + std::to_string(i) + " >> new" + std::to_string(i) +
                                       " || " + phrase(4) + " item " + std::to_string(i) + "?");
            e.edit_id = int64_t(i + 1);
            memory.add_edit(e);
            edits.push_back(e);
        }

        auto brute_force = [&](const std::string& query) {
            EmbeddingVector q = embedder->embed(query);
            size_t best = 0;
            double best_score = -1e300;
            for (size_t i = 0; i < edits.size(); ++i) {
                double s = q.dot(embedder->embed(edits[i].raw));
                if (s > best_score) {
                    best_score = s;
                    best = i;
                }
            }
            return edits[best].edit_id;
        };

        for (int i = 0; i < 100 && ok; ++i) {
            std::string query = phrase(3 + int(rng() % 4)) + "?";
            ok = memory.retrieve(query).edit.edit_id == brute_force(query);
        }
        // self-query: the stored edit must be its own nearest neighbor
        for (int i = 0; i < 100 && ok; ++i) {
            const Edit& e = edits[rng() % edits.size()];
            ok = memory.retrieve(e.raw).edit.edit_id == e.edit_id;
        }
        if (!ok) break;
    }
    ok = ok && elapsed_s(start) < 30.0;
    report(5, ok, "top-1 retrieval equals brute-force argmax at sizes 1/10/100/1000");
}

// --- 6: filter soundness on a constructed pass/violate set ------------------
void criterion_6() {
    std::vector<QueryRecord> dataset;
    auto make_record = [&](int64_t id, QueryType type) {
        QueryRecord rec;
        rec.edit = parse_edit_string("alpha" + std::to_string(id) + " >> beta" + std::to_string(id) +
                                     " || question " + std::to_string(id) + " about subject?");
        rec.edit.edit_id = id;
        rec.query = "question " + std::to_string(id) + " about subject?";
        rec.query_type = type;
        rec.original_response = "the answer involves alpha" + std::to_string(id) + ".";
        return rec;
    };
    for (int64_t id = 1; id <= 25; ++id) {  // passing: TE=1 and SE=1
        auto rec = make_record(id, QueryType::Simple);
        rec.edited_response =
            "question " + std::to_string(id) + " about subject? beta" + std::to_string(id) + " indeed.";
        dataset.push_back(rec);
    }
    for (int64_t id = 26; id <= 50; ++id) {  // violating TE or SE
        auto rec = make_record(id, QueryType::Rephrase);
        if (id % 2) {
            // old object still present: TE drops to 0.5
            rec.edited_response = "question " + std::to_string(id) + " about subject? beta" +
                                  std::to_string(id) + " but still alpha" + std::to_string(id) + ".";
        } else {
            // new fact not entailed as a contiguous restatement: SE drops
            rec.edited_response = "certainly beta" + std::to_string(id) + ".";
        }
        dataset.push_back(rec);
    }
    for (int64_t id = 51; id <= 60; ++id) {  // out-of-scope rows
        auto rec = make_record(id, QueryType::Oos);
        rec.edited_response = kRetainToken;
        dataset.push_back(rec);
    }

    MockModelClient base_client, augmenter;
    SubstringNli nli;
    HashEmbedder embedder(384);
    ModelRef base_ref{ModelRole::Base}, aug_ref{ModelRole::Augmenter};
    AugmentPipeline pipeline(base_client, base_ref, augmenter, aug_ref, nli, embedder);

    auto records = wrap_records(dataset);
    auto stats = pipeline.filter(records);

    auto path = std::filesystem::temp_directory_path() / "eg_acceptance_sft.jsonl";
    export_sft(records, path.string());
    auto exported = parse_dataset_file(path.string());
    std::filesystem::remove(path);

    bool ok = stats.kept == 35 && stats.dropped == 25 && exported.size() == 35;
    std::set<int64_t> ins_ids, oos_ids;
    for (const auto& rec : exported) {
        if (rec.query_type == QueryType::Oos) {
            oos_ids.insert(rec.edit.edit_id);
            if (rec.edited_response != kRetainToken) ok = false;
        } else {
            ins_ids.insert(rec.edit.edit_id);
            if (rec.edit.edit_id > 25) ok = false;  // no violator escapes
        }
    }
    ok = ok && ins_ids.size() == 25 && oos_ids.size() == 10;
    report(6, ok, "export holds exactly the 25 sound in-scope records plus all retain rows");
}

// --- 7: no edit material ever reaches the base endpoint ---------------------
void criterion_7() {
    auto embedder = std::make_shared<HashEmbedder>(384);
    auto memory = std::make_shared<EditMemory>(embedder);
    auto cases = showcase_cases();
    std::vector<std::string> stored_raws;
    for (size_t i = 0; i < cases.size(); ++i) {
        Edit edit = parse_edit_string(cases[i].raw_edit);
        edit.edit_id = int64_t(i + 1);
        memory->add_edit(edit);
        stored_raws.push_back(edit.raw);
    }

    auto base = std::make_shared<MockModelClient>();
    auto post_editor = std::make_shared<MockModelClient>();
    auto surrogate = std::make_shared<MockModelClient>();
    base->set_default("a plain answer.");
    post_editor->set_default("an edited answer.");

    GatewayConfig config;
    config.editor = EditorKind::PostEdit;
    GatewayService service(config, memory, base, post_editor, surrogate);
    for (int i = 0; i < 50; ++i) {
        if (i % 2) {
            service.respond(cases[i % cases.size()].query);  // in-scope traffic
        } else {
            service.respond("neutral question number " + std::to_string(i) + "?");
        }
    }

    bool ok = base->call_count() == 50;
    for (const auto& prompt : base->captured_prompts()) {
        for (const auto& raw : stored_raws)
            if (prompt.find(raw) != std::string::npos) ok = false;
        for (const char* marker : {"<Retain>", "retain", "New fact", "has been updated from",
                                   ">>", "### Instruction"})
            if (prompt.find(marker) != std::string::npos) ok = false;
    }
    report(7, ok, "50-request workload leaks no edit strings, templates, or retain tokens upstream");
}

// --- 8: memory-scaling harness, deterministic and bounded -------------------
void criterion_8() {
    auto start = std::chrono::steady_clock::now();
    std::vector<QueryRecord> dataset;
    QueryType cycle[] = {QueryType::Simple, QueryType::Rephrase, QueryType::Oos};
    for (int i = 0; i < 1000; ++i) {
        QueryRecord rec;
        rec.edit = parse_edit_string("old" + std::to_string(i) + " >> new" + std::to_string(i) +
                                     " || stored question " + std::to_string(i) + "?");
        rec.edit.edit_id = i + 1;
        rec.query = "live question " + std::to_string(i) + "?";
        rec.query_type = cycle[i % 3];
        rec.original_response = "answer " + std::to_string(i) + ".";
        dataset.push_back(rec);
    }

    auto embedder = std::make_shared<HashEmbedder>(384);
    SubstringNli nli;
    MockModelClient base, post_editor, surrogate;
    post_editor.set_default("<Retain>");

    HarnessContext ctx;
    ctx.retrieval_embedder = embedder;
    ctx.metric_embedder = embedder.get();
    ctx.nli = &nli;
    ctx.base_client = &base;
    ctx.post_editor_client = &post_editor;
    ctx.surrogate_client = &surrogate;

    EvalConfig config;
    config.editor = EditorKind::PostEdit;
    config.seed = 42;
    std::vector<size_t> sizes{1, 10, 100, 1000};
    auto first = run_memory_scaling(dataset, ctx, config, sizes);
    auto second = run_memory_scaling(dataset, ctx, config, sizes);

    bool ok = first.size() == 4;
    for (size_t size : sizes) ok = ok && first.count(size) == 1;
    ok = ok && scaling_to_json(first) == scaling_to_json(second);
    ok = ok && elapsed_s(start) < 120.0;
    report(8, ok, "scaling run over sizes 1/10/100/1000 is seed-reproducible and under budget");
}

// --- 9: correlation utility --------------------------------------------------
void criterion_9() {
    bool ok = true;
    std::vector<double> editing{78.57, 88.47, 92.97, 96.97};
    std::vector<double> retention;
    for (double v : editing) retention.push_back(2.0 * v - 10.0);
    ok = ok && std::abs(pearson(editing, retention) - 1.0) <= 1e-12;
    std::vector<double> inverted;
    for (double v : editing) inverted.push_back(200.0 - 3.0 * v);
    ok = ok && std::abs(pearson(editing, inverted) + 1.0) <= 1e-12;
    try {
        pearson({5.0, 5.0, 5.0}, {1.0, 2.0, 3.0});
        ok = false;
    } catch (const ZeroVariance&) {
    }
    report(9, ok, "pearson hits +-1.0 on (anti)correlated series and rejects zero variance");
}

// --- 10: optional live smoke run (skipped without credentials) --------------
void criterion_10() {
    const char* required[] = {"EG_BASE_URL", "EG_POSTEDITOR_URL", "EG_EMBED_URL", "EG_NLI_URL",
                              "EG_LIVE_DATASET"};
    for (const char* var : required) {
        if (!std::getenv(var) || std::string(std::getenv(var)).empty()) {
            report(10, true, "live smoke run skipped (endpoints not configured)");
            return;
        }
    }
    try {
        auto dataset = parse_dataset_file(std::getenv("EG_LIVE_DATASET"));
        if (dataset.size() > 30) dataset.resize(30);

        auto config = GatewayConfig::from_env();
        auto embedder = std::make_shared<HttpEmbedder>(config.embed_url);
        HttpNli nli(config.nli_url);
        HttpModelClient base, post_editor, surrogate;

        HarnessContext ctx;
        ctx.retrieval_embedder = embedder;
        ctx.metric_embedder = embedder.get();
        ctx.nli = &nli;
        ctx.base_client = &base;
        ctx.post_editor_client = &post_editor;
        ctx.surrogate_client = &surrogate;
        ctx.base_ref = config.base_ref;
        ctx.post_editor_ref = config.post_editor_ref;
        ctx.surrogate_ref = config.surrogate_ref;

        EvalConfig eval;
        eval.editor = EditorKind::PostEdit;
        double post_retention = run_eval(dataset, ctx, eval).report.retention_score;
        eval.editor = EditorKind::Prompt;
        double prompt_retention = run_eval(dataset, ctx, eval).report.retention_score;
        report(10, post_retention > prompt_retention,
               "live smoke: retention(postedit) > retention(prompt) directionally");
    } catch (const std::exception& e) {
        report(10, false, std::string("live smoke run failed: ") + e.what());
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
