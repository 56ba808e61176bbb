#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "happy/bignat.hpp"

namespace happy {

struct Run {
    std::uint32_t digit;
    BigNat count;

    bool operator==(const Run&) const = default;
};

/// A base-b integer stored as digit runs, most significant first. Run counts
/// are BigNat, so numbers far too long to materialize (run lengths ~10^974)
/// are still exact values. Immutable after construction; adjacent runs always
/// hold distinct digits, every count is >= 1, and the leading digit is
/// nonzero.
///
/// Text form ("RLE text"): digits most significant first; a run prints either
/// expanded or bracketed as [d^count], whichever is shorter, e.g.
/// "3788[9^973]". Bases above 10 render digits in decimal joined by '.', e.g.
/// "[15^3].2" in base 16. The parser accepts both forms for any run length.
class RleNumber {
public:
    RleNumber(std::uint32_t base, std::vector<Run> runs);

    static RleNumber from_value(const BigNat& value, std::uint32_t base);
    static RleNumber parse(std::string_view text, std::uint32_t base);

    std::uint32_t base() const { return base_; }
    const std::vector<Run>& runs() const { return runs_; }
    const Run& leading_run() const { return runs_.front(); }
    const Run& trailing_run() const { return runs_.back(); }

    BigNat total_digits() const;

    // Sum over runs of count * digit^e; never materializes single digits.
    BigNat power_sum(std::uint64_t e) const;

    // Exact value. Throws RepresentationOverflow when the number has more
    // than digit_budget base-b digits.
    BigNat value(std::uint64_t digit_budget = kDefaultDigitBudget) const;

    bool fits_within(std::uint64_t digit_budget) const;

    std::string to_string() const;

    // Numeric order; throws BaseMismatch when bases differ.
    std::strong_ordering compare(const RleNumber& rhs) const;
    bool operator==(const RleNumber& rhs) const = default;

    static constexpr std::uint64_t kDefaultDigitBudget = 1'000'000;
    static constexpr std::uint32_t kMaxBase = 1'000'000'000;

private:
    std::uint32_t base_;
    std::vector<Run> runs_;
};

}  // namespace happy
