#include <doctest.h>

#include "cqa/fixpoint.hpp"
#include "cqa/nl.hpp"
#include "test_support.hpp"

using namespace cqa;
using testsupport::w;

TEST_CASE("witness selection") {
    auto rrx = select_nl_witness(w("RRX"));
    REQUIRE(rrx.has_value());
    CHECK(rrx->head == w("RR"));
    CHECK(rrx->loop == w("R"));
    CHECK(rrx->tail == w("X"));

    auto rxry = select_nl_witness(w("RXRY"));
    REQUIRE(rxry.has_value());
    CHECK(rxry->head + rxry->tail == w("RXRY"));

    auto golden = select_nl_witness(w("UVUVWV"));
    REQUIRE(golden.has_value());
    CHECK(golden->head == w("UVUV"));
    CHECK(golden->loop == w("UV"));
    CHECK(golden->tail == w("WV"));

    // u^2 w v^2 with a repeated tail has no self-join-free tail split
    CHECK_FALSE(select_nl_witness(w("RRSTT")).has_value());
}

TEST_CASE("worked instances") {
    CHECK(nl_solve(testsupport::fig2_instance(), w("RRX")));
    CHECK(fixpoint_solve(testsupport::fig2_instance(), w("RRX")));

    Instance path = Instance::parse("R(a,b)\nX(b,c)\nR(c,d)\nY(d,e)\n");
    CHECK(nl_solve(path, w("RXRY")));

    Instance branch = Instance::parse("R(a,b)\nX(b,c)\nR(c,d)\nR(c,e)\nY(d,f)\n");
    CHECK_FALSE(nl_solve(branch, w("RXRY")));

    CHECK_THROWS_AS(nl_solve(Instance{}, w("RXRYRY")), std::invalid_argument);
    CHECK_THROWS_AS(nl_solve(Instance{}, w("RRSTT")), NlFallback);
}

TEST_CASE("nl agrees with fixpoint and brute force") {
    testsupport::Rng rng(71);
    int checked = 0, direct = 0;
    for (int i = 0; i < 4000 && checked < 300; ++i) {
        Word q = testsupport::random_word(rng, 6);
        if (!satisfies_c2(q)) continue;
        Instance db = testsupport::random_instance(rng, q, 6, 3);
        bool brute = testsupport::word_certain(db, q);
        bool fix = fixpoint_solve(db, q);
        CHECK(brute == fix);
        try {
            bool nl = nl_solve(db, q);
            CHECK(nl == brute);
            ++direct;
        } catch (const NlFallback&) {
            // covered by the fixpoint answer above
        }
        ++checked;
    }
    CHECK(checked == 300);
    CHECK(direct > 150);
}

TEST_CASE("datalog golden program") {
    std::string expected = R"(uvterminal(X) :- c(X), not ukey(X).
uvterminal(X) :- u(X,Y), not vkey(Y).
wvterminal(X) :- c(X), not wkey(X).
wvterminal(X) :- w(X,Y), not vkey(Y).

uv2terminal(X) :- uvterminal(X).
uv2terminal(X1) :- u(X1,X2), v(X2,X3), uvterminal(X3).

uvpath(X1,X3) :- u(X1,X2), v(X2,X3), wvterminal(X1), wvterminal(X2), wvterminal(X3).
uvpath(X1,X4) :- uvpath(X1,X2), u(X2,X3), v(X3,X4), wvterminal(X3), wvterminal(X4).

p(X) :- uvterminal(X), wvterminal(X).
p(X) :- uvpath(X,Y), uvterminal(Y).
p(X) :- uvpath(X,Y), uvpath(Y,Y).

o(X) :- uv2terminal(X).
o(X1) :- u(X1,X2), v(X2,X3), u(X3,X4), v(X4,X5), consistent(X1,X2,X3,X4), consistent(X2,X3,X4,X5), p(X5).
)";
    auto normalize = [](const std::string& s) {
        std::string out;
        bool space = false;
        for (char c : s) {
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                space = true;
                continue;
            }
            if (space && !out.empty()) out += ' ';
            space = false;
            out += c;
        }
        return out;
    };
    CHECK(normalize(emit_datalog(w("UVUVWV"))) == normalize(expected));
}

TEST_CASE("datalog requires a loop witness with a suffix embedding") {
    CHECK_THROWS_AS(emit_datalog(w("RRSTT")), std::invalid_argument);
    CHECK_THROWS_AS(emit_datalog(w("RXRYRY")), std::invalid_argument);
    CHECK_NOTHROW(emit_datalog(w("RRX")));
}
