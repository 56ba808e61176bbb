#include <doctest.h>

#include <random>
#include <vector>

#include "happy/errors.hpp"
#include "happy/waring.hpp"

using happy::BigNat;
namespace waring = happy::waring;

namespace {

// Exhaustive oracle: smallest nondecreasing digit sequence of length k with
// power sum r, found by plain enumeration. Usable only for tiny r.
bool enumerate_lex_min(std::uint64_t r, std::uint64_t e, std::uint32_t max_digit,
                       std::uint32_t k, std::uint32_t min_digit,
                       std::vector<std::uint32_t>& out) {
    if (k == 0) return r == 0;
    for (std::uint32_t d = min_digit; d <= max_digit; ++d) {
        std::uint64_t p = 1;
        for (std::uint64_t i = 0; i < e; ++i) p *= d;
        if (p > r) break;
        out.push_back(d);
        if (enumerate_lex_min(r - p, e, max_digit, k - 1, d, out)) return true;
        out.pop_back();
    }
    return false;
}

}  // namespace

TEST_CASE("g(e) closed form with the exact validity condition") {
    CHECK(waring::compute_g(1).g.to_u64() == 1);
    CHECK(waring::compute_g(2).g.to_u64() == 4);
    CHECK(waring::compute_g(3).g.to_u64() == 9);
    CHECK(waring::compute_g(4).g.to_u64() == 19);
    CHECK(waring::compute_g(5).g.to_u64() == 37);
    CHECK(waring::compute_g(6).g.to_u64() == 73);
    CHECK(waring::compute_g(5).formula_validated);
    // 2^e + floor((3/2)^e) - 2 re-derived independently for a larger e:
    // floor(3^20 / 2^20) = floor(3486784401 / 1048576) = 3325.
    CHECK(waring::compute_g(20).g.to_u64() == (1ULL << 20) + 3325 - 2);
    CHECK_THROWS_AS(waring::compute_g(0), std::invalid_argument);
}

TEST_CASE("min_terms dynamic program") {
    CHECK(waring::min_terms(0, 2, 9) == 0);
    CHECK(waring::min_terms(7, 2, 9) == 4);
    CHECK(waring::min_terms(23, 3, 9) == 9);
    CHECK(waring::min_terms(79, 4, 9) == 19);
    CHECK(waring::min_terms(3, 2, 1) == 3);
    CHECK_THROWS_AS(waring::min_terms(100, 2, 9, 50), happy::CapExceeded);
}

TEST_CASE("every value needs at most g(e) powers") {
    for (std::uint64_t e : {2u, 3u, 4u, 5u}) {
        const std::uint64_t g = waring::compute_g(e).g.to_u64();
        const auto table = waring::min_terms_upto(2000, e, 2000);
        for (std::uint64_t r = 0; r <= 2000; ++r) {
            CHECK(table[r] <= g);
            if (r > 0 && r <= 40)
                CHECK(table[r] == waring::min_terms(r, e, static_cast<std::uint32_t>(r)));
        }
    }
}

TEST_CASE("decompose_bounded examples") {
    CHECK(waring::decompose_bounded(32, 2, 8, 4) == std::vector<std::uint32_t>{4, 4});
    CHECK(waring::decompose_bounded(0, 2, 8, 4).empty());
    CHECK(waring::decompose_bounded(7, 2, 8, 4) == std::vector<std::uint32_t>{1, 1, 1, 2});
    CHECK_THROWS_AS(waring::decompose_bounded(7, 2, 9, 3), happy::Infeasible);
}

TEST_CASE("decompose_bounded structure and lexicographic minimality") {
    std::mt19937_64 rng(37);
    for (int i = 0; i < 400; ++i) {
        const std::uint64_t e = 2 + rng() % 2;
        const std::uint32_t max_digit = 3 + rng() % 7;
        const std::uint64_t r = rng() % 120;
        const std::uint32_t k = waring::min_terms(r, e, max_digit);
        const std::uint32_t max_terms = k + rng() % 3;
        auto digits = waring::decompose_bounded(r, e, max_digit, max_terms);

        CHECK(digits.size() == k);
        std::uint64_t total = 0;
        for (std::size_t j = 0; j < digits.size(); ++j) {
            CHECK(digits[j] >= 1);
            CHECK(digits[j] <= max_digit);
            if (j > 0) CHECK(digits[j - 1] <= digits[j]);
            std::uint64_t p = 1;
            for (std::uint64_t q = 0; q < e; ++q) p *= digits[j];
            total += p;
        }
        CHECK(total == r);

        std::vector<std::uint32_t> oracle;
        REQUIRE((r == 0 || enumerate_lex_min(r, e, max_digit, k, 1, oracle)));
        CHECK(digits == oracle);
    }
}

TEST_CASE("thresholds") {
    auto t1 = waring::thresholds(2, 10);
    CHECK(t1.p == 1);
    CHECK(t1.d_cor.to_u64() == 27);
    CHECK(t1.trail_base.num.to_u64() == 405);
    CHECK(t1.trail_base.den.to_u64() == 17);

    auto t2 = waring::thresholds(2, 2);
    CHECK(t2.p == 3);
    CHECK(t2.d_cor.to_u64() == 10);

    auto t3 = waring::thresholds(1, 10);
    CHECK(t3.p == 1);
    CHECK(t3.d_cor.to_u64() == 20);
}

TEST_CASE("threshold invariants across small (e, b)") {
    for (std::uint64_t e = 1; e <= 5; ++e) {
        const BigNat g = waring::compute_g(e).g;
        for (std::uint32_t b = 2; b <= 16; ++b) {
            auto th = waring::thresholds(e, b);
            CHECK(BigNat(b).pow(th.p) > g);
            if (th.p > 0) CHECK(BigNat(b).pow(th.p - 1) <= g);
            // d_cor is the ceiling of trail_base + e + p, so it reaches
            // delta = e + p.
            CHECK(th.digits_reach(th.d_cor, BigNat(e + th.p)));
        }
    }
}

TEST_CASE("digit-count comparisons against the exact rational") {
    auto th = waring::thresholds(2, 10);  // 405/17 = 23.82...
    CHECK(th.digits_reach(BigNat(25), BigNat(1)));
    CHECK_FALSE(th.digits_reach(BigNat(24), BigNat(1)));
    CHECK(th.max_delta(BigNat(27)).value().to_u64() == 3);
    CHECK(th.max_delta(BigNat(25)).value().to_u64() == 1);
    CHECK_FALSE(th.max_delta(BigNat(24)).has_value());
    CHECK_FALSE(th.max_delta(BigNat(23)).has_value());

    auto tb = waring::thresholds(2, 2);  // degenerate rational: g+1 = 5 exactly
    CHECK(tb.trail_base.den.to_u64() == 1);
    CHECK(tb.trail_base.num.to_u64() == 5);
    CHECK(tb.digits_reach(BigNat(6), BigNat(1)));
    CHECK_FALSE(tb.digits_reach(BigNat(5), BigNat(1)));
}
