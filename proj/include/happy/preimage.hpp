#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "happy/bignat.hpp"
#include "happy/rle.hpp"
#include "happy/waring.hpp"

namespace happy::preimage {

/// Per-digit shortfalls relative to the maximal digit: a digit d < b-1
/// contributes (b-1)^e - d^e less than b-1 does. An n-digit number x with
/// power sum t exists iff n*(b-1)^e - t is a sum of at most n such deficits,
/// which turns minimal-preimage search over a huge t into a small coin
/// problem.
struct DeficitSet {
    std::uint64_t e;
    std::uint32_t b;
    std::uint64_t max_power;  // (b-1)^e
    // (deficit, digit) for digit = 1..b-2, strictly decreasing deficits.
    std::vector<std::pair<std::uint64_t, std::uint32_t>> deficits;
};

DeficitSet make_deficit_set(std::uint64_t e, std::uint32_t b,
                            std::uint64_t dp_cap = waring::kDefaultDpCap);

// Minimal number of deficits of digits in [min_digit, b-2] summing to s;
// nullopt when s is not such a sum. min_digit = 0 admits the zero digit,
// whose deficit is the full (b-1)^e.
std::optional<std::uint32_t> min_deficit_coins(
    std::uint64_t s, std::uint64_t e, std::uint32_t b, std::uint32_t min_digit = 1,
    std::uint64_t dp_cap = waring::kDefaultDpCap);

// The smallest positive integer x with power_sum(x, e) = t in base b.
// The result has no zero digits and its digits are nondecreasing left to
// right; its digit count n satisfies
//   ceil(t/(b-1)^e) <= n <= floor(t/(b-1)^e) + g(e).
// Throws InvalidTarget on t = 0 and CapExceeded when the deficit table
// would exceed dp_cap.
RleNumber min_preimage(const BigNat& t, std::uint64_t e, std::uint32_t b,
                       std::uint64_t dp_cap = waring::kDefaultDpCap);

// Smallest x != excluded with power_sum(x, e) = t. Correct "next" behavior
// is guaranteed when excluded is the minimal preimage itself (the ladder's
// h = 0 edge); for any other excluded value the minimal preimage is
// returned unchanged.
RleNumber min_preimage_excluding(const BigNat& t, std::uint64_t e, std::uint32_t b,
                                 const BigNat& excluded,
                                 std::uint64_t dp_cap = waring::kDefaultDpCap);

}  // namespace happy::preimage
