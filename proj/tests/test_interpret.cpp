#include <doctest.h>

#include <vector>

#include "tmboost/booster.hpp"
#include "tmboost/interpret.hpp"

using namespace tmboost;

namespace {

TmConfig config(int l = 2, int q = 2) {
    TmConfig cfg;
    cfg.clauses_per_class = l;
    cfg.classes = q;
    cfg.voting_target = 10;
    cfg.specificity = 3.0;
    cfg.states_per_action = 100;
    return cfg;
}

void include(TmModel& model, int cls, int clause, std::size_t literal) {
    model.set_state(cls, clause, literal,
                    static_cast<std::uint16_t>(model.config().states_per_action + 1));
}

} // namespace

TEST_CASE("export_clauses: fresh model and min_includes filter") {
    TmModel model(config(), 3);
    auto vocab = Vocabulary::from_words({"good", "movie", "bad"});
    CHECK(export_clauses(model, vocab, 1).empty());
    CHECK(export_clauses(model, vocab, 0).size() == 4);  // q*l descriptions

    auto wrong = Vocabulary::from_words({"good", "movie"});
    CHECK_THROWS_AS(export_clauses(model, wrong, 0), VocabMismatch);
}

TEST_CASE("export_clauses: literal read-out and rendering") {
    TmModel model(config(), 3);
    auto vocab = Vocabulary::from_words({"good", "movie", "bad"});
    include(model, 0, 0, 0);      // good
    include(model, 0, 0, 3 + 2);  // NOT bad
    auto described = export_clauses(model, vocab, 1);
    REQUIRE(described.size() == 1);
    CHECK(described[0].class_index == 0);
    CHECK(described[0].clause_index == 0);
    CHECK(described[0].polarity == '+');
    CHECK(described[0].positive_literals == std::vector<std::string>{"good"});
    CHECK(described[0].negated_literals == std::vector<std::string>{"bad"});
    CHECK(described[0].include_count == 2);
    CHECK(format_clause(described[0]) == "class=0 i=0 pol=+ : good & ¬bad");
}

TEST_CASE("export_clauses: include sets match raw states at the threshold") {
    TmModel model(config(), 4);
    auto vocab = Vocabulary::from_words({"a", "b", "c", "d"});
    const int n = model.config().states_per_action;
    model.set_state(0, 0, 0, static_cast<std::uint16_t>(n));      // exactly at the boundary: excluded
    model.set_state(0, 0, 1, static_cast<std::uint16_t>(n + 1));  // minimally included
    model.set_state(0, 0, 2, static_cast<std::uint16_t>(2 * n));
    auto described = export_clauses(model, vocab, 0);
    auto& first = described[0];
    CHECK(first.positive_literals == std::vector<std::string>{"b", "c"});
    CHECK(first.include_count == 2);
}

TEST_CASE("clause_coverage: conventions and counts") {
    TmModel model(config(), 2);
    auto vocab = Vocabulary::from_words({"good", "bad"});
    std::vector<Sample> docs{{vectorize({0, {"good"}}, vocab), 0},
                             {vectorize({1, {"good", "bad"}}, vocab), 1}};

    // Empty clause never fires in inference mode.
    CHECK(clause_coverage(model, docs, 0, 0).overall == 0.0);

    include(model, 0, 0, 0);  // clause: good
    auto cov = clause_coverage(model, docs, 0, 0);
    CHECK(cov.overall == 1.0);
    CHECK(cov.fired_per_label == std::vector<std::size_t>{1, 1});

    CHECK_THROWS_AS(clause_coverage(model, docs, 5, 0), IndexOutOfRange);
}

TEST_CASE("coverage never drops under boosting for negation-free clauses") {
    auto vocab = Vocabulary::from_words({"a", "b", "c"});
    ExpansionMap map = identity_expansion(vocab);
    map.sets[0] = {0, 1};
    TmModel model(config(), 3);
    include(model, 0, 0, 0);
    include(model, 0, 0, 1);

    std::vector<Sample> plain, boosted;
    for (auto tokens : std::vector<std::vector<std::string>>{{"a"}, {"a", "b"}, {"c"}}) {
        BitVec x = vectorize({0, tokens}, vocab);
        plain.push_back({x, 0});
        boosted.push_back({boost(x, map), 0});
    }
    CHECK(clause_coverage(model, boosted, 0, 0).overall >=
          clause_coverage(model, plain, 0, 0).overall);
}

TEST_CASE("semantic toy: one clause covers both boosted reviews") {
    // Vocabulary and two review sentences; an expansion map linking
    // excellent<->good lets the single clause "cast AND excellent" fire on
    // both boosted documents.
    auto vocab = Vocabulary::from_words(
        {"cast", "excellent", "relaxed", "extraordinarily", "good", "bad", "boring", "worst"});
    Document s1{0, tokenize("the cast is uniformly excellent and relaxed")};
    Document s2{0, tokenize("the entire cast is extraordinarily good")};

    ExpansionMap map = identity_expansion(vocab);
    map.sets[1] = {1, 4};  // excellent -> {excellent, good}
    map.sets[4] = {1, 4};  // good -> {good, excellent}

    std::vector<Sample> boosted{{boost(vectorize(s1, vocab), map), 0},
                                {boost(vectorize(s2, vocab), map), 0}};

    TmModel model(config(), 8);
    include(model, 0, 0, 0);  // cast
    include(model, 0, 0, 1);  // excellent

    CHECK(clause_coverage(model, boosted, 0, 0).overall == 1.0);

    // Without boosting the same clause misses the second review.
    std::vector<Sample> plain{{vectorize(s1, vocab), 0}, {vectorize(s2, vocab), 0}};
    CHECK(clause_coverage(model, plain, 0, 0).overall == 0.5);
}
