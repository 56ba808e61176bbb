#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "happy/bignat.hpp"

namespace happy::waring {

// Default cap on dynamic-programming table sizes; CLI-overridable.
inline constexpr std::uint64_t kDefaultDpCap = 100'000'000;

struct WaringInfo {
    std::uint64_t e;
    BigNat g;
    bool formula_validated;
};

// g(e) = 2^e + floor((3/2)^e) - 2, accepted only after the exact integer
// validity condition r + q <= 2^e holds (q, r = divmod(3^e, 2^e)).
// Throws FormulaConditionFailed otherwise.
WaringInfo compute_g(std::uint64_t e);

// Exact nonnegative rational; denominator always positive.
struct Rational {
    BigNat num;
    BigNat den;
};

struct Thresholds {
    std::uint64_t e;
    std::uint32_t b;
    BigNat g;
    std::uint64_t p;       // least p with b^p > g(e)
    BigNat d_cor;          // ceil((g+1)/(1 - ((b-2)/(b-1))^e) + e + p)
    Rational trail_base;   // (g+1)/(1 - ((b-2)/(b-1))^e), kept exact

    // digit_count >= trail_base + delta, decided by cross-multiplication.
    bool digits_reach(const BigNat& digit_count, const BigNat& delta) const;

    // Largest delta >= 1 with digits_reach(digit_count, delta), if any.
    std::optional<BigNat> max_delta(const BigNat& digit_count) const;
};

Thresholds thresholds(std::uint64_t e, std::uint32_t b);

// Minimal k such that r is a sum of k e-th powers of integers in
// [1, max_digit]. min_terms(0, ...) = 0. Throws CapExceeded when r > cap.
std::uint32_t min_terms(std::uint64_t r, std::uint64_t e, std::uint32_t max_digit,
                        std::uint64_t cap = kDefaultDpCap);

// min_terms for every value 0..r_max in one table (indexed by r); the right
// tool for dense range checks, which would otherwise rebuild the dynamic
// program per query.
std::vector<std::uint32_t> min_terms_upto(std::uint64_t r_max, std::uint64_t e,
                                          std::uint32_t max_digit,
                                          std::uint64_t cap = kDefaultDpCap);

// The minimal-cardinality decomposition of r into e-th powers of digits in
// [1, max_digit], at most max_terms of them; among minimal-cardinality
// solutions, the lexicographically smallest nondecreasing digit sequence.
// Throws Infeasible when min_terms(r) > max_terms.
std::vector<std::uint32_t> decompose_bounded(std::uint64_t r, std::uint64_t e,
                                             std::uint32_t max_digit,
                                             std::uint32_t max_terms,
                                             std::uint64_t cap = kDefaultDpCap);

}  // namespace happy::waring
