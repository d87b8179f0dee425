#include <doctest.h>

#include "cqa/fixpoint.hpp"
#include "cqa/nfa.hpp"
#include "test_support.hpp"

using namespace cqa;
using testsupport::w;

TEST_CASE("worked run") {
    Instance db = testsupport::fig5_instance();
    FixpointTable t = fixpoint_run(db, w("RRX"));
    std::set<std::pair<std::string, Word>> expected{
        {"4", w("RR")}, {"3", w("R")},  {"3", w("RR")}, {"2", w("R")}, {"2", w("RR")},
        {"1", w("R")},  {"1", w("RR")}, {"0", w("R")},  {"0", w("RR")}, {"0", Word{}},
    };
    CHECK(t.derived_as_words() == expected);
    CHECK(fixpoint_solve(db, w("RRX")));
}

TEST_CASE("degenerate inputs") {
    FixpointTable t = fixpoint_run(Instance{}, w("RRX"));
    CHECK(t.entries.empty());
    CHECK_FALSE(fixpoint_solve(Instance{}, w("RRX")));
    CHECK_THROWS_AS(fixpoint_run(Instance{}, Word{}), std::invalid_argument);
    CHECK_THROWS_AS(fixpoint_solve(Instance{}, w("ARRX")), std::invalid_argument);
}

TEST_CASE("satisfying consistent instance derives the start pair") {
    Instance path = Instance::parse("R(a,b)\nR(b,c)\nX(c,d)\n");
    FixpointTable t = fixpoint_run(path, w("RRX"));
    CHECK(t.contains("a", 0));
    CHECK(fixpoint_solve(path, w("RRX")));
    CHECK_FALSE(fixpoint_solve(Instance::parse("R(a,b)\nR(a,c)\nX(b,d)\n"), w("RRX")));
}

TEST_CASE("fig 2 and fig 5 answers") {
    CHECK(fixpoint_solve(testsupport::fig2_instance(), w("RRX")));
}

TEST_CASE("table entries mirror the per-prefix certain answers") {
    testsupport::Rng rng(61);
    for (int i = 0; i < 60; ++i) {
        Word q = testsupport::random_word(rng, 4);
        Instance db = testsupport::random_instance_capped(rng, q, 5, 3, 512);
        FixpointTable t = fixpoint_run(db, q);
        for (std::size_t len = 0; len <= q.size(); ++len) {
            if (len == q.size()) {
                // the empty path is accepted from the final state, for any
                // constant of the database
                for (const auto& c : db.adom_sorted()) CHECK(t.contains(c, len));
                continue;
            }
            QueryNfa snfa = build_nfa(q, q.prefix(len));
            std::set<std::string> certain = db.adom();
            RepairEnumerator en(db);
            Instance r;
            while (en.next(r) && !certain.empty()) {
                auto s = start_set(snfa, r);
                std::set<std::string> keep;
                for (const auto& c : certain) {
                    if (s.count(c)) keep.insert(c);
                }
                certain = std::move(keep);
            }
            for (const auto& c : db.adom_sorted()) {
                CHECK(t.contains(c, len) == (certain.count(c) > 0));
            }
        }
    }
}

TEST_CASE("fixpoint decides the factor-stable tier") {
    testsupport::Rng rng(67);
    int checked = 0;
    for (int i = 0; i < 3000 && checked < 300; ++i) {
        Word q = testsupport::random_word(rng, 6);
        if (!satisfies_c3(q)) continue;
        Instance db = testsupport::random_instance(rng, q, 7, 3);
        CHECK(fixpoint_solve(db, q) == testsupport::word_certain(db, q));
        ++checked;
    }
    CHECK(checked == 300);
}
