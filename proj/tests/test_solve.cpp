#include <doctest.h>

#include "cqa/solve.hpp"
#include "test_support.hpp"

using namespace cqa;
using testsupport::w;

TEST_CASE("dispatcher picks the tier solver") {
    SolveReport nl = solve(testsupport::fig2_instance(), w("RRX"));
    CHECK(nl.answer);
    CHECK(nl.used == Method::Nl);
    CHECK_FALSE(nl.nl_fell_back);

    Instance canon = Instance::parse("R(0,1)\nX(1,2)\nR(2,3)\nX(3,4)\n");
    SolveReport fo = solve(canon, w("RXRX"));
    CHECK(fo.answer);
    CHECK(fo.used == Method::Fo);
    CHECK(fo.witness.has_value());

    SolveReport conp = solve(testsupport::fig3_style_instance(), w("ARRX"));
    CHECK_FALSE(conp.answer);
    CHECK(conp.used == Method::BruteForce);
    REQUIRE(conp.counterexample.has_value());
    CHECK(conp.counterexample->contains(Fact{"R", "2", "5"}));
}

TEST_CASE("explicit methods and applicability") {
    Instance db = Instance::parse("R(a,b)\nR(a,c)\n");
    SolveReport r = solve(db, w("RR"), Method::Fo);
    CHECK_FALSE(r.answer);
    CHECK_THROWS_AS(solve(db, w("RXRY"), Method::Fo), std::invalid_argument);
    CHECK_THROWS_AS(solve(db, w("RXRYRY"), Method::Nl), std::invalid_argument);
    CHECK_THROWS_AS(solve(db, w("ARRX"), Method::Fixpoint), std::invalid_argument);
    CHECK(solve(db, w("RR"), Method::BruteForce).answer ==
          solve(db, w("RR"), Method::Fo).answer);
}

TEST_CASE("all applicable methods agree") {
    testsupport::Rng rng(73);
    for (int i = 0; i < 250; ++i) {
        Word q = testsupport::random_word(rng, 5);
        Instance db = testsupport::random_instance(rng, q, 6, 3);
        Classification c = classify(q);
        bool brute = solve(db, q, Method::BruteForce).answer;
        CHECK(solve(db, q).answer == brute);
        if (c.c1) CHECK(solve(db, q, Method::Fo).answer == brute);
        if (c.c2) CHECK(solve(db, q, Method::Nl).answer == brute);
        if (c.c3) CHECK(solve(db, q, Method::Fixpoint).answer == brute);
    }
}

TEST_CASE("nl fallback is disclosed") {
    Instance db = Instance::parse("R(a,b)\nR(b,c)\nS(c,d)\nT(d,e)\nT(e,f)\n");
    SolveReport rep = solve(db, w("RRSTT"), Method::Nl);
    CHECK(rep.nl_fell_back);
    CHECK(rep.used == Method::Fixpoint);
    CHECK(rep.answer == solve(db, w("RRSTT"), Method::BruteForce).answer);
    SolveReport viaauto = solve(db, w("RRSTT"));
    CHECK(viaauto.nl_fell_back);
    CHECK(viaauto.answer == rep.answer);
}

TEST_CASE("brute-force cap surfaces") {
    std::vector<Fact> facts;
    for (int b = 0; b < 12; ++b) {
        facts.push_back(Fact{"R", "k" + std::to_string(b), "a"});
        facts.push_back(Fact{"R", "k" + std::to_string(b), "b"});
    }
    Instance db(std::move(facts));
    CHECK_THROWS_AS(solve(db, w("ARRX"), Method::BruteForce, 1024), CapExceededError);
}
