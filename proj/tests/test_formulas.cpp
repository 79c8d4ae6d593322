#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "subposet/constructions.hpp"
#include "subposet/formulas.hpp"

using namespace subposet;

TEST_CASE("multinomial chain counts") {
    REQUIRE(chain_count_levels(3, {2, 1}) == 6);
    REQUIRE(chain_count_levels(7, {7}) == 1);
    REQUIRE(chain_count_levels(4, {3, 2, 1}) == 24);
    REQUIRE_THROWS_AS(chain_count_levels(4, {2, 2}), DomainError);
    REQUIRE_THROWS_AS(chain_count_levels(4, {1, 3}), DomainError);
    REQUIRE_THROWS_AS(chain_count_levels(4, {5}), DomainError);
}

TEST_CASE("chain formula equals the family chain counter") {
    // every strictly decreasing size list over 2^[n], n <= 8, k <= 4
    for (int n = 1; n <= 8; ++n) {
        std::vector<std::vector<int>> lists;
        for (int a = n; a >= 0; --a) {
            lists.push_back({a});
            for (int b = a - 1; b >= 0; --b) {
                lists.push_back({a, b});
                for (int c = b - 1; c >= 0; --c) {
                    lists.push_back({a, b, c});
                    for (int d = c - 1; d >= 0; --d) lists.push_back({a, b, c, d});
                }
            }
        }
        for (const auto& desc : lists) {
            std::vector<int> asc(desc.rbegin(), desc.rend());
            Family f = level_family(n, asc);
            REQUIRE(chain_count_levels(n, desc) ==
                    count_k_chains(f, static_cast<int>(desc.size())));
        }
    }
}

TEST_CASE("erdos bound") {
    REQUIRE(erdos_bound(3, 1) == 3);
    REQUIRE(erdos_bound(4, 2) == 10);
    for (int n = 1; n <= 10; ++n) {
        REQUIRE(erdos_bound(n, n + 1) == pow2(static_cast<unsigned>(n)));
        REQUIRE(erdos_bound(n, 1) == binomial(n, n / 2));
    }
    REQUIRE_THROWS_AS(erdos_bound(4, 0), DomainError);
    REQUIRE_THROWS_AS(erdos_bound(4, 6), DomainError);
}

TEST_CASE("la_chainfree") {
    SECTION("katona value at n=3") {
        LaChainfree r = la_chainfree(3, 3, 2);
        REQUIRE(r.value == 6);
        REQUIRE(r.levels == std::vector<int>{1, 2});
    }
    SECTION("argmax gaps differ by at most one for l = k-1") {
        for (int n = 1; n <= 12; ++n) {
            for (int k = 2; k <= 5; ++k) {
                if (k - 1 > n + 1) continue;
                LaChainfree r = la_chainfree(n, k, k - 1);
                int gmin = r.levels[0], gmax = r.levels[0];
                for (std::size_t i = 1; i < r.levels.size(); ++i) {
                    gmin = std::min(gmin, r.levels[i] - r.levels[i - 1]);
                    gmax = std::max(gmax, r.levels[i] - r.levels[i - 1]);
                }
                gmin = std::min(gmin, n - r.levels.back());
                gmax = std::max(gmax, n - r.levels.back());
                REQUIRE(gmax - gmin <= 1);
                // balanced_levels returns the same argmax and value
                REQUIRE(balanced_levels(n, k) == r.levels);
                std::vector<int> desc(r.levels.rbegin(), r.levels.rend());
                REQUIRE(chain_count_levels(n, desc) == r.value);
            }
        }
    }
    SECTION("sperner special case") {
        for (int n = 1; n <= 12; ++n) {
            LaChainfree r = la_chainfree(n, 2, 1);
            REQUIRE(r.value == binomial(n, n / 2));
            REQUIRE(r.levels == std::vector<int>{n / 2});
        }
    }
    SECTION("value equals the actual copy count of the level family") {
        for (int n = 3; n <= 7; ++n)
            for (int k = 3; k <= 4; ++k)
                for (int l = 1; l < k; ++l) {
                    LaChainfree r = la_chainfree(n, k, l);
                    Family f = level_family(n, r.levels);
                    REQUIRE(count_k_chains(f, l) == r.value);
                }
    }
    REQUIRE_THROWS_AS(la_chainfree(4, 3, 3), DomainError);
    REQUIRE_THROWS_AS(la_chainfree(4, 2, 0), DomainError);
}

TEST_CASE("balanced levels") {
    REQUIRE(balanced_levels(3, 3) == std::vector<int>{1, 2});
    REQUIRE(balanced_levels(6, 2) == std::vector<int>{3});
    SECTION("(4,3) matches brute-force maximization over all pairs") {
        BigCount best = -1;
        std::vector<int> arg;
        for (int i1 = 0; i1 <= 4; ++i1)
            for (int i2 = i1 + 1; i2 <= 4; ++i2) {
                BigCount v = chain_count_levels(4, {i2, i1});
                if (v > best) {
                    best = v;
                    arg = {i1, i2};
                }
            }
        std::vector<int> got = balanced_levels(4, 3);
        REQUIRE(chain_count_levels(4, {got[1], got[0]}) == best);
        int g1 = got[0], g2 = got[1] - got[0], g3 = 4 - got[1];
        REQUIRE(std::max({g1, g2, g3}) - std::min({g1, g2, g3}) <= 1);
    }
}

TEST_CASE("conjectured constant and block probabilities") {
    ConjectureConstant c441 = conjecture_constant(4, 4, 1);
    REQUIRE(c441.value == Rational(3, 2));
    for (int k = 2; k <= 6; ++k)
        for (int l = 2; l <= 6; ++l)
            REQUIRE(conjecture_constant(k, l, k - 1).value == Rational(l - 1, k + l - 2));
    REQUIRE(conjecture_constant(2, 2, 1).value == Rational(1, 2));
    SECTION("identity p1/(1-p2) = (l-1)/(k+l-2) for all k,l <= 10") {
        for (int k = 2; k <= 10; ++k)
            for (int l = 2; l <= 10; ++l) {
                ConjectureConstant c = conjecture_constant(k, l, 1);
                REQUIRE(c.p1 / (1 - c.p2) == Rational(l - 1, k + l - 2));
            }
    }
    REQUIRE_THROWS_AS(conjecture_constant(4, 4, 0), DomainError);
    REQUIRE_THROWS_AS(conjecture_constant(4, 4, 4), DomainError);
}
