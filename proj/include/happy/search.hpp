#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "happy/bignat.hpp"
#include "happy/rle.hpp"

namespace happy::search {

// S_{e,b} on a machine integer: sum of base-b digits raised to the e-th
// power. Throws std::overflow_error if the result cannot fit 64 bits
// (only possible for extreme exponents).
std::uint64_t power_sum_u64(std::uint64_t x, std::uint64_t e, std::uint32_t b);

// One application of S_{e,b} to an arbitrary value.
BigNat power_sum_value(const BigNat& x, std::uint64_t e, std::uint32_t b);

struct Trajectory {
    BigNat start;
    std::vector<BigNat> steps;       // steps[0] = start
    std::size_t cycle_entry;         // index where periodicity begins
};

Trajectory trajectory(const BigNat& x, std::uint64_t e, std::uint32_t b);

// Smallest h with S^h(x) = u, or nullopt when the trajectory's cycle never
// contains u. S^0(x) = x, so height(u, u) = 0.
std::optional<std::uint64_t> height(const BigNat& x, const BigNat& u,
                                    std::uint64_t e, std::uint32_t b);

struct HeightExtrema {
    std::optional<std::uint64_t> sigma;
    std::optional<std::uint64_t> tau;
};

// Exhaustive scan of x = 1..scan_limit bucketed by height. Results are
// bitwise independent of the worker count: workers read a precomputed
// height table and the merge keeps the two global minima per height.
struct HeightScan {
    std::uint64_t e = 0;
    std::uint32_t b = 0;
    std::uint64_t u = 0;
    std::uint64_t scan_limit = 0;
    std::vector<HeightExtrema> by_height;

    std::optional<std::uint64_t> sigma(std::uint64_t h) const;
    std::optional<std::uint64_t> tau(std::uint64_t h) const;

    // Stable machine rendering, one "h=.. sigma=.. tau=.." line per height.
    std::string to_lines() const;
};

HeightScan scan_heights(const BigNat& u, std::uint64_t e, std::uint32_t b,
                        std::uint64_t scan_limit, unsigned workers = 1,
                        std::uint64_t memo_cap = 100'000'000);

struct SigmaTau {
    std::optional<BigNat> sigma;
    std::optional<BigNat> tau;
    std::uint64_t scan_limit = 0;  // certification scope of the answer
};

SigmaTau sigma_tau(std::uint64_t h, const BigNat& u, std::uint64_t e, std::uint32_t b,
                   std::uint64_t scan_limit, unsigned workers = 1);

struct CycleSet {
    std::uint64_t e = 0;
    std::uint32_t b = 0;
    // Each cycle rotated so its smallest element leads; cycles ordered by
    // smallest element. Fixed points are cycles of length 1.
    std::vector<std::vector<BigNat>> cycles;
    BigNat contraction_bound;  // S(x) < x for all x >= this
};

// Complete inventory of the cycles below the contraction bound M = b^n,
// where n is the least digit count with n*(b-1)^e < b^(n-1). Every
// trajectory eventually enters exactly one of these cycles.
CycleSet find_cycles(std::uint64_t e, std::uint32_t b,
                     std::uint64_t scan_cap = 100'000'000);

}  // namespace happy::search
