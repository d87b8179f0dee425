#include <doctest.h>

#include "cqa/nfa.hpp"
#include "test_support.hpp"

using namespace cqa;
using testsupport::w;

TEST_CASE("nfa construction") {
    QueryNfa nfa = build_nfa(w("RXRRR"));
    CHECK(nfa.state_count() == 6);
    CHECK(nfa.forward_edge_count() == 5);
    std::set<std::pair<std::size_t, std::size_t>> eps;
    for (std::size_t j = 0; j < nfa.eps_from.size(); ++j) {
        for (std::size_t i : nfa.eps_from[j]) eps.insert({j, i});
    }
    // RXR->R, RXRR->R, RXRR->RXR, RXRRR->R, RXRRR->RXR, RXRRR->RXRR
    CHECK(eps == std::set<std::pair<std::size_t, std::size_t>>{
                     {3, 1}, {4, 1}, {4, 3}, {5, 1}, {5, 3}, {5, 4}});

    QueryNfa single = build_nfa(w("R"));
    CHECK(single.state_count() == 2);
    CHECK(single.forward_edge_count() == 1);
    CHECK(single.backward_edge_count() == 0);

    QueryNfa rrx = build_nfa(w("RRX"));
    CHECK(rrx.backward_edge_count() == 1);
    CHECK(rrx.eps_from[2] == std::vector<std::size_t>{1});

    CHECK_THROWS_AS(build_nfa(w("RRX"), w("RX")), std::invalid_argument);
    CHECK(build_nfa(w("RRX"), w("RR")).initial == 2);
}

TEST_CASE("edge-list dump") {
    CHECK(build_nfa(w("RRX")).dump() ==
          "- R R\n"
          "R R RR\n"
          "RR X RRX\n"
          "RR eps R\n");
}

TEST_CASE("acceptance") {
    QueryNfa nfa = build_nfa(w("RRX"));
    CHECK(accepts(nfa, w("RRX")));
    CHECK(accepts(nfa, w("RRRX")));
    CHECK_FALSE(accepts(nfa, w("RX")));
    QueryNfa arrx = build_nfa(w("ARRX"));
    CHECK(accepts(arrx, w("ARRX")));
    CHECK_FALSE(accepts(arrx, w("ARXRX")));
}

TEST_CASE("closure_upto") {
    CHECK(closure_upto(w("RRX"), 5) == std::set<Word>{w("RRX"), w("RRRX"), w("RRRRX")});
    CHECK(closure_upto(w("RSTU"), 10) == std::set<Word>{w("RSTU")});
    CHECK(closure_upto(w("RXRX"), 8) == std::set<Word>{w("RXRX"), w("RXRXRX"), w("RXRXRXRX")});
    CHECK_THROWS_AS(closure_upto(w("RRX"), 2), std::invalid_argument);
}

TEST_CASE("language equals rewind closure on random words") {
    testsupport::Rng rng(19);
    for (int i = 0; i < 12; ++i) {
        Word q = testsupport::random_word(rng, 4);
        std::size_t bound = q.size() + 4;
        auto closure = closure_upto(q, bound);
        QueryNfa nfa = build_nfa(q);
        for (const Word& t : testsupport::all_words(bound)) {
            CHECK(accepts(nfa, t) == (closure.count(t) > 0));
        }
    }
}

TEST_CASE("prefix and factor views of the conditions") {
    for (const Word& q : testsupport::all_words(6)) {
        bool all_prefix = true, all_factor = true;
        for (const Word& p : rewind_all(q)) {
            all_prefix &= q.is_prefix_of(p);
            all_factor &= q.is_factor_of(p);
        }
        CHECK(satisfies_c1(q) == all_prefix);
        CHECK(satisfies_c3(q) == all_factor);
    }
}

TEST_CASE("start sets of the worked repairs") {
    Instance r1 = Instance::parse("R(0,1)\nR(1,2)\nR(2,3)\nX(3,4)\n");
    Instance r2 = Instance::parse("R(0,1)\nR(1,3)\nR(2,3)\nX(3,4)\n");
    CHECK(start_set(w("RRX"), r1) == std::set<std::string>{"0", "1"});
    CHECK(start_set(w("RRX"), r2) == std::set<std::string>{"0"});
    CHECK(start_set(w("RRX"), Instance{}).empty());
    CHECK_THROWS_AS(start_set(w("RRX"), testsupport::fig2_instance()), std::invalid_argument);
}

TEST_CASE("min variant agrees with the plain start set") {
    testsupport::Rng rng(23);
    int compared = 0;
    for (int i = 0; i < 100; ++i) {
        Word q = testsupport::random_word(rng, 5);
        Instance db = testsupport::random_instance_capped(rng, q, 5, 3, 128);
        RepairEnumerator en(db);
        Instance r;
        while (en.next(r)) {
            CHECK(start_set(q, r, false) == start_set(q, r, true));
            ++compared;
        }
    }
    CHECK(compared > 300);
}

TEST_CASE("start set grows with a fresh accepted path") {
    Word q = w("RRX");
    Instance r = Instance::parse("R(a,b)\nR(b,c)\nX(c,d)\n");
    auto before = start_set(q, r);
    CHECK(before == std::set<std::string>{"a"});
    Instance extended = Instance::parse("R(a,b)\nR(b,c)\nX(c,d)\nR(p,q)\nR(q,s)\nX(s,t)\n");
    auto after = start_set(q, extended);
    CHECK(after.count("a") == 1);
    CHECK(after.count("p") == 1);
}
