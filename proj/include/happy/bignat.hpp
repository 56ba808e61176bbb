#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace happy {

/// Arbitrary-precision natural number with exact arithmetic throughout.
/// Stored as base-10^9 limbs, least significant first; the zero value has
/// no limbs. Subtraction requires a >= b; there is no negative state.
class BigNat {
public:
    BigNat() = default;
    BigNat(std::uint64_t value);

    static BigNat from_decimal(std::string_view text);

    bool is_zero() const { return limbs_.empty(); }
    bool fits_u64() const;
    std::uint64_t to_u64() const;  // throws std::overflow_error when !fits_u64

    // Number of digits in the decimal rendering (1 for zero).
    std::uint64_t decimal_digits() const;
    std::string to_string() const;

    BigNat& operator+=(const BigNat& rhs);
    BigNat& operator-=(const BigNat& rhs);

    friend BigNat operator+(BigNat lhs, const BigNat& rhs) { return lhs += rhs; }
    friend BigNat operator-(BigNat lhs, const BigNat& rhs) { return lhs -= rhs; }
    friend BigNat operator*(const BigNat& lhs, const BigNat& rhs);

    // (q, r) with a = q*m + r and 0 <= r < m. Throws std::domain_error on m = 0.
    static std::pair<BigNat, BigNat> divmod(const BigNat& a, const BigNat& m);

    // Fast path for single-limb divisors (m < 10^9, m > 0).
    std::pair<BigNat, std::uint32_t> divmod_small(std::uint32_t m) const;

    BigNat pow(std::uint64_t exponent) const;

    std::strong_ordering operator<=>(const BigNat& rhs) const;
    bool operator==(const BigNat& rhs) const = default;

    static constexpr std::uint32_t kLimbBase = 1'000'000'000u;

private:
    void trim();
    static BigNat from_limbs(std::vector<std::uint32_t> limbs);
    static std::vector<std::uint32_t> mul_schoolbook(
        const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
    static std::vector<std::uint32_t> mul_limbs(
        const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);

    std::vector<std::uint32_t> limbs_;
};

// ceil(a / m); m > 0.
BigNat ceil_div(const BigNat& a, const BigNat& m);

}  // namespace happy
