#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "genipm/multiindex.hpp"
#include "oracles.hpp"

using namespace genipm;

namespace {

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

// every rho in N^r with |rho| = a and sum_j rho_j beta(j) = gamma, by filtering
// the full composition list
std::vector<std::vector<int>> brute_r_set(const MultiIndex& gamma, int a) {
    const auto betas = lower_multiindices(gamma);
    const int r = static_cast<int>(betas.size());
    std::vector<std::vector<int>> out;
    if (r == 0) {
        if (a == 0 && gamma.is_zero()) out.push_back({});
        return out;
    }
    std::vector<std::vector<int>> all;
    std::vector<int> cur;
    oracles::compositions(a, r, cur, all);
    for (const auto& rho : all) {
        MultiIndex acc{std::vector<int>(gamma.dims(), 0)};
        for (int j = 0; j < r; ++j)
            for (std::size_t t = 0; t < gamma.dims(); ++t)
                acc.entries[t] += rho[j] * betas[j].entries[t];
        if (acc == gamma) out.push_back(rho);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("factorials") {
    CHECK(factorial_u64(0) == 1);
    CHECK(factorial_u64(5) == 120);
    CHECK(factorial_u64(20) == 2432902008176640000ull);
    CHECK_THROWS_AS(factorial_u64(21), std::overflow_error);
    CHECK(MultiIndex{{3, 2}}.factorial() == 12);
    CHECK(MultiIndex{{0, 0, 0}}.factorial() == 1);
    CHECK(MultiIndex{{3, 2}}.order() == 5);
    CHECK(MultiIndex{{0, 0}}.is_zero());
}

TEST_CASE("enumeration count is binom(d + order, d)") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (int order = 0; order <= 5; ++order) {
            const auto all = enumerate_multiindices(d, order, true);
            CHECK(all.size() == binom(static_cast<int>(d) + order, static_cast<int>(d)));
            const auto nz = enumerate_multiindices(d, order, false);
            CHECK(nz.size() == all.size() - 1);
        }
}

TEST_CASE("enumeration is lexicographically sorted and complete for d=2, order=2") {
    const auto all = enumerate_multiindices(2, 2, true);
    const std::vector<std::vector<int>> expect{{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}};
    REQUIRE(all.size() == expect.size());
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].entries == expect[i]);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK_THROWS_AS(enumerate_multiindices(0, 2, true), std::invalid_argument);
}

TEST_CASE("lower multi-indices of (2,1)") {
    const auto lows = lower_multiindices(MultiIndex{{2, 1}});
    const std::vector<std::vector<int>> expect{{0, 1}, {1, 0}, {1, 1}, {2, 0}, {2, 1}};
    REQUIRE(lows.size() == expect.size());
    for (std::size_t i = 0; i < lows.size(); ++i) CHECK(lows[i].entries == expect[i]);
    CHECK(std::is_sorted(lows.begin(), lows.end()));
}

TEST_CASE("r_set of the zero index") {
    const auto empty_ok = r_set(MultiIndex{{0, 0}}, 0);
    REQUIRE(empty_ok.size() == 1);
    CHECK(empty_ok[0].empty());
    CHECK(r_set(MultiIndex{{0, 0}}, 1).empty());
}

TEST_CASE("r_set worked example: gamma=(2), a=1 and a=2") {
    // betas are (1), (2); need rho1*1 + rho2*2 = 2 with |rho| = a
    const auto a1 = r_set(MultiIndex{{2}}, 1);
    REQUIRE(a1.size() == 1);
    CHECK(a1[0] == std::vector<int>{0, 1});
    const auto a2 = r_set(MultiIndex{{2}}, 2);
    REQUIRE(a2.size() == 1);
    CHECK(a2[0] == std::vector<int>{2, 0});
    CHECK(r_set(MultiIndex{{2}}, 3).empty());
    CHECK_THROWS_AS(r_set(MultiIndex{{2}}, -1), std::invalid_argument);
}

TEST_CASE("r_set agrees with the brute-force filter") {
    const std::vector<std::vector<int>> gammas{{1},       {3},       {6},    {2, 1},
                                               {2, 2},    {3, 2},    {1, 1, 1},
                                               {2, 2, 1}, {2, 2, 2}, {0, 0}};
    for (const auto& ge : gammas) {
        const MultiIndex gamma{ge};
        for (int a = 0; a <= gamma.order(); ++a) {
            const auto fast = r_set(gamma, a);
            const auto slow = brute_r_set(gamma, a);
            REQUIRE(fast.size() == slow.size());
            for (std::size_t i = 0; i < fast.size(); ++i) CHECK(fast[i] == slow[i]);
            CHECK(std::is_sorted(fast.begin(), fast.end()));
        }
    }
}
