#include "happy/waring.hpp"

#include <array>
#include <limits>
#include <set>
#include <stdexcept>

#include "happy/errors.hpp"

namespace happy::waring {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

// d^e clamped to limit+1 (sentinel for "too big"); avoids u64 overflow.
std::uint64_t pow_clamped(std::uint64_t d, std::uint64_t e, std::uint64_t limit) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (d != 0 && result > limit / d) return limit + 1;
        result *= d;
        if (result > limit) return limit + 1;
    }
    return result;
}

// e-th powers of 1..max_digit that do not exceed r, ascending.
std::vector<std::uint64_t> usable_powers(std::uint64_t r, std::uint64_t e,
                                         std::uint32_t max_digit) {
    std::vector<std::uint64_t> powers;
    for (std::uint64_t d = 1; d <= max_digit; ++d) {
        std::uint64_t p = pow_clamped(d, e, r);
        if (p > r) break;
        powers.push_back(p);
    }
    return powers;
}

std::vector<std::uint32_t> min_terms_table(std::uint64_t r, std::uint64_t e,
                                           std::uint32_t max_digit,
                                           std::uint64_t cap) {
    if (r > cap)
        throw CapExceeded("min_terms: r = " + std::to_string(r) +
                          " exceeds dp cap " + std::to_string(cap));
    if (max_digit < 1) throw std::invalid_argument("max_digit must be >= 1");
    if (e < 1) throw std::invalid_argument("e must be >= 1");
    std::vector<std::uint64_t> powers = usable_powers(r, e, max_digit);
    std::vector<std::uint32_t> dp(r + 1, kUnreachable);
    dp[0] = 0;
    for (std::uint64_t x = 1; x <= r; ++x) {
        std::uint32_t best = kUnreachable;
        for (std::uint64_t p : powers) {
            if (p > x) break;
            std::uint32_t prev = dp[x - p];
            if (prev != kUnreachable && prev + 1 < best) best = prev + 1;
        }
        dp[x] = best;
    }
    return dp;
}

}  // namespace

WaringInfo compute_g(std::uint64_t e) {
    if (e < 1) throw std::invalid_argument("e must be >= 1");
    if (e == 1) return WaringInfo{1, BigNat(1), true};

    const BigNat two_e = BigNat(2).pow(e);
    const BigNat three_e = BigNat(3).pow(e);
    auto [q, r] = BigNat::divmod(three_e, two_e);
    if (r + q > two_e)
        throw FormulaConditionFailed(
            "closed form for g(" + std::to_string(e) +
            ") not validated: 3^e mod 2^e + floor((3/2)^e) > 2^e");
    BigNat g = two_e + q - BigNat(2);
    return WaringInfo{e, std::move(g), true};
}

bool Thresholds::digits_reach(const BigNat& digit_count, const BigNat& delta) const {
    // digit_count >= num/den + delta  <=>  digit_count*den >= num + delta*den
    return digit_count * trail_base.den >= trail_base.num + delta * trail_base.den;
}

std::optional<BigNat> Thresholds::max_delta(const BigNat& digit_count) const {
    const BigNat lhs = digit_count * trail_base.den;
    if (lhs < trail_base.num + trail_base.den) return std::nullopt;  // delta = 1 fails
    auto [q, r] = BigNat::divmod(lhs - trail_base.num, trail_base.den);
    return q;
}

Thresholds thresholds(std::uint64_t e, std::uint32_t b) {
    if (b < 2) throw std::invalid_argument("base must be >= 2");
    WaringInfo info = compute_g(e);

    std::uint64_t p = 0;
    BigNat b_pow(1);
    while (b_pow <= info.g) {
        b_pow = b_pow * BigNat(b);
        ++p;
    }

    // trail_base = (g+1) / (1 - ((b-2)/(b-1))^e) = (g+1)(b-1)^e / ((b-1)^e - (b-2)^e)
    const BigNat max_pow = BigNat(b - 1).pow(e);
    const BigNat next_pow = BigNat(b - 2).pow(e);
    BigNat num = (info.g + BigNat(1)) * max_pow;
    BigNat den = max_pow - next_pow;

    BigNat d_cor = ceil_div(num + BigNat(e + p) * den, den);

    return Thresholds{e,
                      b,
                      std::move(info.g),
                      p,
                      std::move(d_cor),
                      Rational{std::move(num), std::move(den)}};
}

std::uint32_t min_terms(std::uint64_t r, std::uint64_t e, std::uint32_t max_digit,
                        std::uint64_t cap) {
    if (r == 0) return 0;
    return min_terms_table(r, e, max_digit, cap)[r];
}

std::vector<std::uint32_t> min_terms_upto(std::uint64_t r_max, std::uint64_t e,
                                          std::uint32_t max_digit, std::uint64_t cap) {
    return min_terms_table(r_max, e, max_digit, cap);
}

namespace {

// Depth-first reconstruction of the lexicographically smallest nondecreasing
// digit sequence: min_terms lower bounds prune most branches, and dead
// (value, terms, min_digit) states are memoized so worst cases stay tame.
struct Reconstructor {
    const std::vector<std::uint32_t>& dp;
    const std::vector<std::uint64_t>& powers;  // powers[d-1] = d^e
    std::set<std::array<std::uint64_t, 3>> dead;
    std::uint32_t max_digit;

    bool build(std::uint64_t value, std::uint32_t terms, std::uint32_t min_digit,
               std::vector<std::uint32_t>& out) {
        if (value == 0) return terms == 0;
        if (terms == 0) return false;
        if (dp[value] == kUnreachable || dp[value] > terms) return false;
        const std::array<std::uint64_t, 3> key{value, terms, min_digit};
        if (dead.contains(key)) return false;
        for (std::uint32_t d = min_digit; d <= max_digit; ++d) {
            const std::uint64_t p = powers[d - 1];
            if (p > value) break;
            out.push_back(d);
            if (build(value - p, terms - 1, d, out)) return true;
            out.pop_back();
        }
        dead.insert(key);
        return false;
    }
};

}  // namespace

std::vector<std::uint32_t> decompose_bounded(std::uint64_t r, std::uint64_t e,
                                             std::uint32_t max_digit,
                                             std::uint32_t max_terms,
                                             std::uint64_t cap) {
    if (r == 0) return {};
    std::vector<std::uint32_t> dp = min_terms_table(r, e, max_digit, cap);
    if (dp[r] == kUnreachable || dp[r] > max_terms)
        throw Infeasible("no decomposition of " + std::to_string(r) + " into <= " +
                         std::to_string(max_terms) + " powers of digits <= " +
                         std::to_string(max_digit));

    std::vector<std::uint64_t> powers(max_digit);
    for (std::uint32_t d = 1; d <= max_digit; ++d)
        powers[d - 1] = pow_clamped(d, e, r);

    Reconstructor rec{dp, powers, {}, max_digit};
    std::vector<std::uint32_t> out;
    out.reserve(dp[r]);
    bool ok = rec.build(r, dp[r], 1, out);
    if (!ok)
        throw std::logic_error("decompose_bounded: reconstruction failed despite feasible dp");
    return out;
}

}  // namespace happy::waring
