#include <doctest.h>

#include <random>

#include "editgate/core_types.hpp"
#include "editgate/errors.hpp"
#include "editgate/metrics.hpp"

using namespace editgate;

TEST_CASE("lowercase_normalize") {
    CHECK(lowercase_normalize("FIFA") == "fifa");
    CHECK(lowercase_normalize("already lower") == "already lower");
    CHECK(lowercase_normalize(lowercase_normalize("MiXeD  Case")) ==
          lowercase_normalize("MiXeD  Case"));
}

TEST_CASE("te: containment arithmetic") {
    CHECK(te("marcel maupi was an italian national.", ScopeLabel::Ins, "french", "italian") == 1.0);
    CHECK(te("he was French, then Italian.", ScopeLabel::Ins, "french", "italian") == 0.5);
    CHECK(te("still french.", ScopeLabel::Oos, "french", "italian") == 1.0);
    CHECK(te("now italian.", ScopeLabel::Oos, "french", "italian") == 0.0);
    // inputs are lowercased internally
    CHECK(te("MARCEL WAS ITALIAN", ScopeLabel::Ins, "French", "Italian") == 1.0);
}

TEST_CASE("se under the substring stub") {
    SubstringNli nli;
    Edit edit = parse_edit_string("french >> italian || the nationality of marcel maupi was what?");
    std::string query = "what was marcel maupi's nationality?";
    KnowledgeText k = make_knowledge_text(edit, query, "marcel maupi was a french national.");

    // y_e restating the new knowledge verbatim entails k_new and not k_old
    std::string y_e = "the nationality of marcel maupi was what? italian";
    CHECK(se(ScopeLabel::Ins, query, y_e, k, nli) == 1.0);

    // restating old knowledge: both indicators fail their target
    std::string y_old = "the nationality of marcel maupi was what? french";
    CHECK(se(ScopeLabel::Ins, query, y_old, k, nli) == 0.0);

    // OOS with y_e == y_o entails k_self; k_new not entailed
    std::string y_o = "marcel maupi was a french national.";
    CHECK(se(ScopeLabel::Oos, query, y_o, k, nli) == 1.0);
}

TEST_CASE("mask replaces every lowercased occurrence") {
    CHECK(mask("marcel maupi was a french national.", "french") ==
          "marcel maupi was a mask national.");
    CHECK(mask("no span here", "xyz") == "no span here");
    CHECK(mask("French and FRENCH", "french") == "mask and mask");
    CHECK(mask("text", "") == "text");
}

TEST_CASE("rouge1_f1") {
    CHECK(rouge1_f1("same words here", "same words here") == doctest::Approx(1.0));
    CHECK(rouge1_f1("the cat", "the cat sat on the mat") == doctest::Approx(0.5));
    CHECK(rouge1_f1("", "reference") == 0.0);
    CHECK(rouge1_f1("hyp", "") == 0.0);
    // clipping: "the the the" vs "the cat" overlaps once
    CHECK(rouge1_f1("the the the", "the cat") == doctest::Approx(2.0 * (1.0 / 3) * 0.5 / (1.0 / 3 + 0.5)));
}

TEST_CASE("tr") {
    CHECK(tr(ScopeLabel::Oos, "same text", "same text", "o", "n") == doctest::Approx(1.0));
    CHECK(tr(ScopeLabel::Ins, "howard glacier is located in antarctica",
             "howard glacier is located in europe", "antarctica", "europe") ==
          doctest::Approx(1.0));
    // masked pair differing only in "a" vs "an"
    CHECK(tr(ScopeLabel::Ins, "Marcel Maupi was a French national.",
             "Marcel Maupi was an Italian national.", "French", "Italian") ==
          doctest::Approx(5.0 / 6.0));
}

TEST_CASE("sr") {
    HashEmbedder embedder(384);
    CHECK(sr(ScopeLabel::Oos, "same text", "same text", "o", "n", embedder) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sr(ScopeLabel::Ins, "value was antarctica", "value was europe", "antarctica", "europe",
             embedder) == doctest::Approx(1.0).epsilon(1e-9));
    // disjoint buckets verified before asserting zero similarity
    REQUIRE(hash_bucket("apple", 384) != hash_bucket("borogove", 384));
    CHECK(sr(ScopeLabel::Oos, "apple", "borogove", "o", "n", embedder) == 0.0);
}

TEST_CASE("metrics stay in range and TE/SE are three-valued") {
    SubstringNli nli;
    HashEmbedder embedder(64);
    std::mt19937 rng(3);
    const char* words[] = {"alpha", "beta", "gamma", "delta", "old", "new", "thing", "fact"};
    auto sentence = [&] {
        std::string s;
        for (int i = 0; i < 1 + static_cast<int>(rng() % 6); ++i)
            s += std::string(words[rng() % 8]) + " ";
        return s;
    };
    for (int i = 0; i < 100; ++i) {
        ScopeLabel label = rng() % 2 ? ScopeLabel::Ins : ScopeLabel::Oos;
        std::string o_old = words[rng() % 8], o_new = words[rng() % 8];
        std::string y_o = sentence(), y_e = sentence(), query = sentence();
        double v_te = te(y_e, label, o_old, o_new);
        CHECK((v_te == 0.0 || v_te == 0.5 || v_te == 1.0));
        KnowledgeText k{o_old, o_new, query + " " + y_o};
        double v_se = se(label, query, y_e, k, nli);
        CHECK((v_se == 0.0 || v_se == 0.5 || v_se == 1.0));
        double v_tr = tr(label, y_o, y_e, o_old, o_new);
        CHECK(v_tr >= 0.0);
        CHECK(v_tr <= 1.0);
        double v_sr = sr(label, y_o, y_e, o_old, o_new, embedder);
        CHECK(v_sr >= -1e-12);
        CHECK(v_sr <= 1.0 + 1e-12);
    }
}

TEST_CASE("aggregate reproduces printed AVG cells") {
    CHECK(avg_of_three(96.8, 94.7, 99.4) == doctest::Approx(96.97));
    CHECK(avg_of_three(88.65, 89.66, 99.64) == doctest::Approx(92.65));

    // direct per-record path: every score 1.0
    std::vector<std::pair<QueryType, EvalScores>> records;
    for (QueryType t : {QueryType::Simple, QueryType::Rephrase, QueryType::Oos})
        records.emplace_back(t, EvalScores{1.0, 1.0, 1.0, 1.0});
    Report report = aggregate(records);
    CHECK(report.te.simple == 100.0);
    CHECK(report.te.avg == 100.0);
    CHECK(report.sr.oos == 100.0);
    CHECK(report.editing_score == 100.0);
    CHECK(report.retention_score == 100.0);

    CHECK_THROWS_AS(aggregate({}), EmptyInput);
}

TEST_CASE("pearson") {
    std::vector<double> xs{1, 2, 3, 4};
    std::vector<double> ys{2, 4, 6, 8};
    CHECK(pearson(xs, ys) == doctest::Approx(1.0));
    std::vector<double> neg{-1, -2, -3, -4};
    CHECK(pearson(xs, neg) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), ZeroVariance);
    CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), LengthMismatch);
    CHECK_THROWS_AS(pearson({1}, {2}), LengthMismatch);
}

TEST_CASE("score_record wires the four metrics together") {
    SubstringNli nli;
    HashEmbedder embedder(384);
    QueryRecord rec;
    rec.edit = parse_edit_string("French >> Italian || The nationality of Marcel Maupi was what?");
    rec.query = "What was Marcel Maupi's nationality?";
    rec.query_type = QueryType::Simple;
    rec.original_response = "Marcel Maupi was a French national.";
    rec.edited_response = "Marcel Maupi was an Italian national.";
    EvalScores s = score_record(rec, nli, embedder);
    CHECK(s.te == 1.0);
    CHECK(s.tr == doctest::Approx(5.0 / 6.0));
    CHECK(s.sr > 0.5);
}
