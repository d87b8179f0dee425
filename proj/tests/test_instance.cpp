#include <doctest.h>

#include "cqa/instance.hpp"
#include "test_support.hpp"

using namespace cqa;

TEST_CASE("fact file parsing and serialization") {
    Instance db = Instance::parse("# comment\n R ( a , b ) \nR(a,b)\n\nS(b,c) # inline\n");
    CHECK(db.size() == 2);
    CHECK(db.contains(Fact{"R", "a", "b"}));
    CHECK(db.contains(Fact{"S", "b", "c"}));
    CHECK(db.serialize() == "R(a,b)\nS(b,c)\n");
    // round trip is byte-exact on sorted facts
    CHECK(Instance::parse(db.serialize()).serialize() == db.serialize());
    // numeric constants are accepted in key and value position
    CHECK(Instance::parse("R(0,1)\n").contains(Fact{"R", "0", "1"}));
    CHECK_THROWS_AS(Instance::parse("R(a)\n"), ParseError);
    CHECK_THROWS_AS(Instance::parse("1R(a,b)\n"), ParseError);
}

TEST_CASE("blocks") {
    auto bs = blocks(testsupport::fig1_instance());
    REQUIRE(bs.size() == 4);
    for (const auto& b : bs) CHECK(b.members.size() == 2);
    CHECK(blocks(Instance{}).empty());
    Instance consistent = Instance::parse("R(a,b)\nS(a,b)\n");
    for (const auto& b : blocks(consistent)) CHECK(b.members.size() == 1);
}

TEST_CASE("consistency") {
    CHECK_FALSE(is_consistent(testsupport::fig1_instance()));
    CHECK_FALSE(is_consistent(testsupport::fig2_instance()));
    CHECK(is_consistent(Instance{}));
    CHECK(is_consistent(Instance::parse("R(a,b)\nR(b,a)\n")));
}

TEST_CASE("repair enumeration") {
    RepairEnumerator en(testsupport::fig1_instance());
    CHECK(en.count() == 16);
    std::set<Instance> seen;
    Instance r;
    std::uint64_t product_check = 0;
    std::vector<Block> bs = blocks(testsupport::fig1_instance());
    while (en.next(r)) {
        ++product_check;
        CHECK(is_consistent(r));
        std::size_t hits = 0;
        for (const auto& b : bs) {
            std::size_t in_block = 0;
            for (const auto& f : b.members) {
                if (r.contains(f)) ++in_block;
            }
            CHECK(in_block == 1);
            hits += in_block;
        }
        CHECK(hits == bs.size());
        seen.insert(r);
    }
    CHECK(product_check == 16);
    CHECK(seen.size() == 16);

    RepairEnumerator en2(testsupport::fig2_instance());
    CHECK(en2.count() == 2);

    RepairEnumerator en3(Instance{});
    CHECK(en3.count() == 1);
    REQUIRE(en3.next(r));
    CHECK(r.empty());
    CHECK_FALSE(en3.next(r));
}

TEST_CASE("union of repairs is the instance") {
    testsupport::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
        Instance db = testsupport::random_instance(rng, testsupport::w("RST"), 6, 3);
        RepairEnumerator en(db);
        std::set<Fact> all;
        Instance r;
        while (en.next(r)) {
            for (const auto& f : r.facts()) all.insert(f);
        }
        CHECK(all == std::set<Fact>(db.facts().begin(), db.facts().end()));
    }
}

TEST_CASE("repair cap") {
    std::vector<Fact> facts;
    for (int b = 0; b < 24; ++b) {
        facts.push_back(Fact{"R", "k" + std::to_string(b), "a"});
        facts.push_back(Fact{"R", "k" + std::to_string(b), "b"});
    }
    Instance big(std::move(facts));
    CHECK_THROWS_AS(RepairEnumerator(big, 1 << 20), CapExceededError);
    CHECK_NOTHROW(RepairEnumerator(big, std::uint64_t{1} << 24));
}
