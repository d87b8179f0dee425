#include <doctest.h>

#include "cqa/fo.hpp"
#include "cqa/oracle.hpp"
#include "test_support.hpp"

using namespace cqa;
using testsupport::w;

TEST_CASE("rewriting shape") {
    FoRewriting rr = build_fo_rewriting(w("RR"));
    CHECK(rr.closed.render() ==
          "E x1.((E x2.(R(x1,x2)) & A x2.((R(x1,x2) -> E x3.(R(x2,x3))))))");
    FoRewriting r = build_fo_rewriting(w("R"));
    CHECK(r.closed.render() == "E x1.(E x2.(R(x1,x2)))");
    CHECK_THROWS_AS(build_fo_rewriting(Word{}), std::invalid_argument);
}

TEST_CASE("evaluation basics") {
    FoFormula f = FoFormula::exists("x", FoFormula::exists("y", FoFormula::atom("R", Term::var("x"), Term::var("y"))));
    CHECK(eval_fo(f, Instance::parse("R(a,b)\n")));
    CHECK_FALSE(eval_fo(f, Instance::parse("S(a,b)\n")));
    CHECK_FALSE(eval_fo(f, Instance{}));

    FoRewriting rr = build_fo_rewriting(w("RR"));
    CHECK_FALSE(eval_fo(rr.closed, Instance::parse("R(a,b)\nR(a,c)\n")));
    CHECK(eval_fo(rr.closed, Instance::parse("R(a,a)\n")));

    FoFormula unbound = FoFormula::atom("R", Term::var("x"), Term::var("y"));
    CHECK_THROWS_AS(eval_fo(unbound, Instance::parse("R(a,b)\n")), std::invalid_argument);
}

TEST_CASE("closed rewriting decides the FO tier") {
    testsupport::Rng rng(47);
    int checked = 0;
    for (int i = 0; i < 2000 && checked < 300; ++i) {
        Word q = testsupport::random_word(rng, 6);
        if (!satisfies_c1(q)) continue;
        Instance db = testsupport::random_instance(rng, q, 6, 3);
        FoRewriting rew = build_fo_rewriting(q);
        CHECK(eval_fo(rew.closed, db) == testsupport::word_certain(db, q));
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("fixed-head rewriting decides every pinned query") {
    testsupport::Rng rng(53);
    for (int i = 0; i < 150; ++i) {
        Word q = testsupport::random_word(rng, 5);  // any tier
        Instance db = testsupport::random_instance_capped(rng, q, 5, 3, 512);
        FoRewriting rew = build_fo_rewriting(q);
        for (const auto& c : db.adom_sorted()) {
            bool via_fo = eval_fo_with(rew.open, db, rew.head_var, c);
            bool via_oracle = certain_bruteforce(db, fixed_head(q, c)).certain;
            CHECK(via_fo == via_oracle);
        }
    }
}

TEST_CASE("terminal test matches the pinned rewriting") {
    testsupport::Rng rng(59);
    for (int i = 0; i < 120; ++i) {
        Word q = testsupport::random_word(rng, 4);
        Instance db = testsupport::random_instance_capped(rng, q, 4, 3, 128);
        FoRewriting rew = build_fo_rewriting(q);
        for (const auto& c : db.adom_sorted()) {
            bool terminal = testsupport::oracle_terminal(db, q, c);
            bool not_certain = !eval_fo_with(rew.open, db, rew.head_var, c);
            CHECK(terminal == not_certain);
        }
    }
}
