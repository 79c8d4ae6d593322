#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subposet/family.hpp"

using namespace subposet;

TEST_CASE("family file parsing") {
    SECTION("plain sets") {
        auto lr = load_family("n=3\n1\n1,2\n");
        REQUIRE(lr.family.n == 3);
        REQUIRE(lr.family.sets == std::vector<SetWord>{make_set({1}), make_set({1, 2})});
        REQUIRE(lr.duplicates_dropped == 0);
    }
    SECTION("empty-set token") {
        auto lr = load_family("n=3\n-\n");
        REQUIRE(lr.family.sets == std::vector<SetWord>{SetWord{}});
    }
    SECTION("duplicate collapses with a note") {
        auto lr = load_family("n=2\n1\n1\n");
        REQUIRE(lr.family.sets == std::vector<SetWord>{make_set({1})});
        REQUIRE(lr.duplicates_dropped == 1);
    }
    SECTION("comments and blank lines are skipped") {
        auto lr = load_family("# header comment\nn=4\n\n# a set\n2,4\n");
        REQUIRE(lr.family.sets == std::vector<SetWord>{make_set({2, 4})});
    }
    SECTION("family with no sets") {
        auto lr = load_family("n=5\n");
        REQUIRE(lr.family.n == 5);
        REQUIRE(lr.family.size() == 0);
    }
}

TEST_CASE("family file errors") {
    REQUIRE_THROWS_AS(load_family("m=3\n1\n"), ParseError);
    REQUIRE_THROWS_AS(load_family("n=\n"), ParseError);
    REQUIRE_THROWS_AS(load_family("n=0\n"), ParseError);
    REQUIRE_THROWS_AS(load_family("n=65\n"), ParseError);
    REQUIRE_THROWS_AS(load_family("n=2\n3\n"), ParseError);   // out of range
    REQUIRE_THROWS_AS(load_family("n=3\n2,1\n"), ParseError); // not increasing
    REQUIRE_THROWS_AS(load_family("n=3\n1,1\n"), ParseError);
    REQUIRE_THROWS_AS(load_family("n=3\n1,\n"), ParseError);  // trailing comma
    REQUIRE_THROWS_AS(load_family("n=3\n1 2\n"), ParseError);
    REQUIRE_THROWS_AS(load_family(""), ParseError);
}

TEST_CASE("canonical order and construction") {
    Family f = make_family(4, {make_set({1, 2}), make_set({3}), make_set({1, 2}),
                               make_set({2}), SetWord{}});
    REQUIRE(f.sets == std::vector<SetWord>{SetWord{}, make_set({2}), make_set({3}),
                                           make_set({1, 2})});
    REQUIRE_THROWS_AS(make_family(2, {make_set({3})}), DomainError);
    REQUIRE_THROWS_AS(make_family(0, {}), DomainError);
    REQUIRE_THROWS_AS(make_family(65, {}), DomainError);
}

TEST_CASE("load-serialize round trip is the identity") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        int n = 1 + static_cast<int>(seed % 16);
        Family f = oracles::random_family(n, 1 + seed % 20, seed);
        std::string text = serialize_family(f);
        auto lr = load_family(text);
        REQUIRE(lr.family == f);
        REQUIRE(serialize_family(lr.family) == text);
        REQUIRE(lr.duplicates_dropped == 0);
    }
}

TEST_CASE("serializer format is bit-exact") {
    Family f = make_family(10, {make_set({10}), SetWord{}, make_set({1, 2, 10})});
    REQUIRE(serialize_family(f) == "n=10\n-\n10\n1,2,10\n");
}
