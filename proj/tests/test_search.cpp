#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subposet/constructions.hpp"
#include "subposet/copies.hpp"
#include "subposet/formulas.hpp"
#include "subposet/search.hpp"

using namespace subposet;

namespace {

SearchProblem problem(int n, std::vector<std::string> forbid, std::string target) {
    SearchProblem p;
    p.n = n;
    for (const auto& s : forbid) p.forbidden.push_back(make_poset(s));
    p.target = make_poset(target);
    return p;
}

}  // namespace

TEST_CASE("classical exact values") {
    REQUIRE(la_exact(problem(3, {"chain:2"}, "chain:1")).value == 3);
    REQUIRE(la_exact(problem(3, {"wedge:2", "vee:2"}, "chain:1")).value == 4);
    REQUIRE(la_exact(problem(3, {"chain:3"}, "chain:2")).value == 6);
    REQUIRE(la_exact(problem(4, {"chain:3"}, "chain:1")).value == 10);
    REQUIRE(la_exact(problem(5, {"chain:2"}, "chain:1")).value == binomial(5, 2));
}

TEST_CASE("search at n=5 matches the level-family formula") {
    SearchProblem p = problem(5, {"chain:3"}, "chain:2");
    p.workers = 4;
    REQUIRE(la_exact(p).value == la_chainfree(5, 3, 2).value);
}

TEST_CASE("witness ties break to the smallest canonical encoding") {
    // both full levels 1 and 2 of 2^[3] attain the Sperner maximum; the
    // singleton level encodes lexicographically first
    SearchResult r = la_exact(problem(3, {"chain:2"}, "chain:1"));
    REQUIRE(r.witness == level_family(3, {1}));
}

TEST_CASE("witness attains the value and is free") {
    auto probs = {problem(3, {"chain:3"}, "chain:2"),
                  problem(3, {"wedge:2", "vee:2"}, "chain:1"),
                  problem(3, {"levels:2,2"}, "chain:2")};
    for (const auto& p : probs) {
        SearchResult r = la_exact(p);
        REQUIRE(r.exhausted);
        REQUIRE(is_free(r.witness, p.forbidden));
        REQUIRE(count_copies(p.target, r.witness) == r.value);
    }
}

TEST_CASE("full-enumeration oracle agreement at n <= 3") {
    struct Case {
        int n;
        std::vector<std::string> forbid;
        std::string target;
    };
    std::vector<Case> cases = {
        {2, {"chain:2"}, "chain:1"},
        {3, {"chain:2"}, "chain:1"},
        {3, {"wedge:2", "vee:2"}, "chain:1"},
        {3, {"chain:3"}, "chain:2"},
        {3, {"levels:2,2"}, "chain:1"},
        {3, {"wedge:2"}, "chain:2"},
        {3, {"chain:4"}, "chain:3"},
        {3, {"vee:3"}, "wedge:2"},
    };
    for (const auto& c : cases) {
        SearchProblem p = problem(c.n, c.forbid, c.target);
        SearchResult got = la_exact(p);
        auto expect = oracles::la_exact(c.n, p.forbidden, p.target);
        INFO("n=" << c.n << " target " << c.target);
        REQUIRE(got.exhausted);
        REQUIRE(got.value == expect.value);
        REQUIRE(oracles::count_copies(p.target, got.witness) == got.value);
    }
}

TEST_CASE("full-enumeration oracle agreement at n = 4") {
    // all 2^16 families over 2^[4], permutation-based counting; covers the
    // sandwich midpoint that no closed form pins down
    std::vector<SetWord> universe;
    for (std::uint64_t b = 0; b < 16; ++b) universe.push_back(SetWord{b});
    std::sort(universe.begin(), universe.end(), canonical_less);
    struct Case {
        std::vector<std::string> forbid;
        std::string target;
        long long expect;
    };
    std::vector<Case> cases = {
        {{"chain:3"}, "chain:1", 10},
        {{"levels:1,1,2"}, "chain:2", 22},
        {{"chain:4"}, "chain:2", 36},
    };
    for (const auto& c : cases) {
        std::vector<Poset> forb;
        for (const auto& s : c.forbid) forb.push_back(make_poset(s));
        Poset target = make_poset(c.target);
        BigCount best = 0;
        for (std::uint32_t mask = 0; mask < 65536; ++mask) {
            std::vector<SetWord> sets;
            for (int i = 0; i < 16; ++i)
                if (mask >> i & 1u)
                    sets.push_back(universe[static_cast<std::size_t>(i)]);
            Family fam = make_family(4, sets);
            bool ok = true;
            for (const Poset& p : forb)
                if (oracles::contains_copy(p, fam)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            BigCount v = oracles::count_copies(target, fam);
            if (v > best) best = v;
        }
        SearchProblem p = problem(4, c.forbid, c.target);
        INFO("target " << c.target);
        REQUIRE(best == BigCount(c.expect));
        REQUIRE(la_exact(p).value == best);
    }
}

TEST_CASE("adding a forbidden pattern never increases the value") {
    SearchProblem base = problem(3, {"chain:3"}, "chain:2");
    SearchProblem more = problem(3, {"chain:3", "wedge:2"}, "chain:2");
    REQUIRE(la_exact(more).value <= la_exact(base).value);
}

TEST_CASE("deterministic across worker counts") {
    for (int workers : {1, 2, 8}) {
        SearchProblem p = problem(4, {"chain:3"}, "chain:2");
        p.workers = workers;
        SearchResult r = la_exact(p);
        REQUIRE(r.value == 12);
        REQUIRE(serialize_family(r.witness) ==
                serialize_family(la_exact(problem(4, {"chain:3"}, "chain:2")).witness));
    }
}

TEST_CASE("symmetry reduction changes nothing about the value") {
    for (bool sym : {false, true}) {
        SearchProblem p = problem(4, {"wedge:2", "vee:2"}, "chain:1");
        p.symmetry_reduction = sym;
        REQUIRE(la_exact(p).value == 2 * binomial(3, 1));
    }
}

TEST_CASE("budget exhaustion is reported, never silent") {
    SearchProblem p = problem(4, {"chain:3"}, "chain:2");
    p.node_budget = 10;
    SearchResult r = la_exact(p);
    REQUIRE(!r.exhausted);
    REQUIRE(r.value <= 12);
}

TEST_CASE("search preconditions") {
    REQUIRE_THROWS_AS(la_exact(problem(7, {"chain:2"}, "chain:1")), DomainError);
    SearchProblem p;
    p.n = 3;
    REQUIRE_THROWS_AS(la_exact(p), DomainError);  // empty target
}

TEST_CASE("sandwich at n=4 for a height-3 pattern") {
    BigCount lower = la_exact(problem(4, {"chain:3"}, "chain:2")).value;
    BigCount mid = la_exact(problem(4, {"levels:1,1,2"}, "chain:2")).value;
    BigCount upper = la_exact(problem(4, {"chain:4"}, "chain:2")).value;
    REQUIRE(lower <= mid);
    REQUIRE(mid <= upper);
}
