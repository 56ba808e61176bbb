#include "happy/preimage.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>

#include "happy/errors.hpp"

namespace happy::preimage {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t e, std::uint64_t cap) {
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        if (base != 0 && result > cap / base)
            throw CapExceeded("(b-1)^e exceeds dp cap " + std::to_string(cap));
        result *= base;
    }
    return result;
}

// Unbounded min-coin table over deficits of digits >= min_digit, up to s_max.
// min_digit = 0 adds the zero digit's deficit, (b-1)^e itself.
std::vector<std::uint32_t> coin_table(const DeficitSet& ds, std::uint32_t min_digit,
                                      std::uint64_t s_max) {
    std::vector<std::uint64_t> coins;
    if (min_digit == 0) coins.push_back(ds.max_power);
    for (const auto& [deficit, digit] : ds.deficits)
        if (digit >= min_digit) coins.push_back(deficit);

    std::vector<std::uint32_t> dp(s_max + 1, kUnreachable);
    dp[0] = 0;
    for (std::uint64_t s = 1; s <= s_max; ++s) {
        std::uint32_t best = kUnreachable;
        for (std::uint64_t c : coins) {
            if (c > s) continue;
            std::uint32_t prev = dp[s - c];
            if (prev != kUnreachable && prev + 1 < best) best = prev + 1;
        }
        dp[s] = best;
    }
    return dp;
}

// Deficit table budget: s never exceeds (g(e)+1) * (b-1)^e during minimal
// preimage search, plus one extra (b-1)^e for the one-digit-longer fallback
// used by the excluding variant.
std::uint64_t table_span(const DeficitSet& ds, const BigNat& g, std::uint64_t dp_cap) {
    const BigNat span = (g + BigNat(2)) * BigNat(ds.max_power);
    if (span > BigNat(dp_cap))
        throw CapExceeded("deficit table would need " + span.to_string() +
                          " entries (cap " + std::to_string(dp_cap) + ")");
    return span.to_u64();
}

bool coins_fit(const std::vector<std::uint32_t>& table, std::uint64_t s,
               const BigNat& available_positions) {
    if (s >= table.size() || table[s] == kUnreachable) return false;
    return BigNat(table[s]) <= available_positions;
}

}  // namespace

DeficitSet make_deficit_set(std::uint64_t e, std::uint32_t b, std::uint64_t dp_cap) {
    if (b < 2) throw std::invalid_argument("base must be >= 2");
    if (e < 1) throw std::invalid_argument("e must be >= 1");
    DeficitSet ds;
    ds.e = e;
    ds.b = b;
    ds.max_power = checked_pow(b - 1, e, dp_cap);
    for (std::uint32_t d = 1; d + 1 < b; ++d) {
        std::uint64_t dp_pow = 1;
        for (std::uint64_t i = 0; i < e; ++i) dp_pow *= d;  // d < b-1, no overflow
        ds.deficits.emplace_back(ds.max_power - dp_pow, d);
    }
    return ds;
}

std::optional<std::uint32_t> min_deficit_coins(std::uint64_t s, std::uint64_t e,
                                               std::uint32_t b, std::uint32_t min_digit,
                                               std::uint64_t dp_cap) {
    if (s > dp_cap)
        throw CapExceeded("deficit sum exceeds dp cap");
    DeficitSet ds = make_deficit_set(e, b, dp_cap);
    std::vector<std::uint32_t> table = coin_table(ds, min_digit, s);
    if (table[s] == kUnreachable) return std::nullopt;
    return table[s];
}

namespace {

struct Solver {
    DeficitSet ds;
    BigNat g;
    std::uint64_t s_max;

    Solver(std::uint64_t e, std::uint32_t b, std::uint64_t dp_cap)
        : ds(make_deficit_set(e, b, dp_cap)),
          g(waring::compute_g(e).g),
          s_max(table_span(ds, g, dp_cap)) {}

    std::uint64_t deficit_of(std::uint32_t digit) const {
        if (digit == ds.b - 1) return 0;
        if (digit == 0) return ds.max_power;
        std::uint64_t p = 1;
        for (std::uint64_t i = 0; i < ds.e; ++i) p *= digit;
        return ds.max_power - p;
    }

    // Smallest digit count n >= ceil(t / (b-1)^e) whose deficit
    // s = n*(b-1)^e - t is a sum of at most n deficits, together with s.
    // Lemma-style upper bound: the first feasible n is at most
    // floor(t/(b-1)^e) + g(e).
    std::pair<BigNat, std::uint64_t> first_feasible(const BigNat& t,
                                                    const std::vector<std::uint32_t>& all) const {
        auto [q, r0] = BigNat::divmod(t, BigNat(ds.max_power));
        const std::uint64_t r = r0.to_u64();
        const BigNat upper = q + g;  // floor(t/(b-1)^e) + g(e)
        BigNat n = q;
        std::uint64_t s = 0;
        if (r != 0) {
            n += BigNat(1);
            s = ds.max_power - r;
        }
        while (s <= s_max) {
            if (coins_fit(all, s, n)) {
                if (n > upper)
                    throw std::logic_error(
                        "min_preimage: digit count exceeded the Waring bound");
                return {n, s};
            }
            n += BigNat(1);
            s += ds.max_power;
        }
        throw std::logic_error(
            "min_preimage: no digit count within the Waring bound is feasible");
    }

    // Lexicographically smallest nondecreasing digit string with deficit sum
    // s over n digits: per-position greedy with feasibility lookups.
    RleNumber reconstruct(const BigNat& n, std::uint64_t s) const {
        std::vector<Run> runs;
        BigNat used(0);
        std::uint32_t min_digit = 1;
        std::vector<std::uint32_t> table = coin_table(ds, min_digit, s_max);
        while (s > 0) {
            bool placed = false;
            for (std::uint32_t d = min_digit; d + 1 < ds.b; ++d) {
                if (d > min_digit) table = coin_table(ds, d, s_max);
                const std::uint64_t def = deficit_of(d);
                if (def <= s && coins_fit(table, s - def, n - used - BigNat(1))) {
                    if (!runs.empty() && runs.back().digit == d)
                        runs.back().count += BigNat(1);
                    else
                        runs.push_back(Run{d, BigNat(1)});
                    used += BigNat(1);
                    s -= def;
                    min_digit = d;
                    placed = true;
                    break;
                }
            }
            if (!placed)
                throw std::logic_error("min_preimage: reconstruction lost feasibility");
        }
        if (used < n) runs.push_back(Run{ds.b - 1, n - used});
        return RleNumber(ds.b, std::move(runs));
    }
};

}  // namespace

RleNumber min_preimage(const BigNat& t, std::uint64_t e, std::uint32_t b,
                       std::uint64_t dp_cap) {
    if (t.is_zero()) throw InvalidTarget("minimal preimage of 0 is undefined");
    Solver solver(e, b, dp_cap);
    std::vector<std::uint32_t> all = coin_table(solver.ds, 1, solver.s_max);
    auto [n, s] = solver.first_feasible(t, all);
    return solver.reconstruct(n, s);
}

namespace {

// Digits of x, most significant first; x always fits in memory here because
// it equals the excluded value, which the caller materialized.
std::vector<std::uint32_t> digits_of(const RleNumber& x) {
    std::vector<std::uint32_t> digits;
    digits.reserve(x.total_digits().to_u64());
    for (const auto& run : x.runs()) {
        std::uint64_t reps = run.count.to_u64();
        digits.insert(digits.end(), reps, run.digit);
    }
    return digits;
}

RleNumber from_digits(std::uint32_t b, const std::vector<std::uint32_t>& digits) {
    std::vector<Run> runs;
    for (std::uint32_t d : digits) {
        if (!runs.empty() && runs.back().digit == d)
            runs.back().count += BigNat(1);
        else
            runs.push_back(Run{d, BigNat(1)});
    }
    return RleNumber(b, std::move(runs));
}

}  // namespace

RleNumber min_preimage_excluding(const BigNat& t, std::uint64_t e, std::uint32_t b,
                                 const BigNat& excluded, std::uint64_t dp_cap) {
    RleNumber minimal = min_preimage(t, e, b, dp_cap);
    if (excluded.is_zero()) return minimal;
    const RleNumber excluded_rle = RleNumber::from_value(excluded, b);
    if (minimal.compare(excluded_rle) != std::strong_ordering::equal) return minimal;

    Solver solver(e, b, dp_cap);
    // Zeros are allowed once minimality alone no longer decides, so the coin
    // set gains the zero digit's deficit.
    const std::vector<std::uint32_t> zeros_ok = coin_table(solver.ds, 0, solver.s_max);

    const std::vector<std::uint32_t> base_digits = digits_of(minimal);
    const std::uint64_t n = base_digits.size();
    const std::uint64_t total_deficit =
        BigNat(n) * BigNat(solver.ds.max_power) == t
            ? 0
            : (BigNat(n) * BigNat(solver.ds.max_power) - t).to_u64();

    // Prefix deficits: pd[i] = sum of deficits of base_digits[0..i).
    std::vector<std::uint64_t> pd(n + 1, 0);
    for (std::uint64_t i = 0; i < n; ++i)
        pd[i + 1] = pd[i] + solver.deficit_of(base_digits[i]);
    assert(pd[n] == total_deficit);

    auto complete = [&](std::vector<std::uint32_t>& digits, std::uint64_t s,
                        std::uint64_t positions) -> bool {
        for (std::uint64_t left = positions; left > 0; --left) {
            bool placed = false;
            for (std::uint32_t d = 0; d < solver.ds.b; ++d) {
                const std::uint64_t def = solver.deficit_of(d);
                if (def <= s && coins_fit(zeros_ok, s - def, BigNat(left - 1))) {
                    digits.push_back(d);
                    s -= def;
                    placed = true;
                    break;
                }
            }
            if (!placed) return false;
        }
        return s == 0;
    };

    // Deviate upward from the minimal solution at the latest feasible
    // position; the completion is then the smallest possible suffix.
    for (std::uint64_t i = n; i-- > 0;) {
        const std::uint32_t low = std::max<std::uint32_t>(base_digits[i] + 1, i == 0 ? 1 : 0);
        for (std::uint32_t d = low; d < b; ++d) {
            const std::uint64_t s_rest = total_deficit - pd[i] - solver.deficit_of(d);
            if (!coins_fit(zeros_ok, s_rest, BigNat(n - i - 1))) continue;
            std::vector<std::uint32_t> digits(base_digits.begin(),
                                              base_digits.begin() + static_cast<std::ptrdiff_t>(i));
            digits.push_back(d);
            if (complete(digits, s_rest, n - i - 1)) return from_digits(b, digits);
        }
    }

    // No same-length successor: the next preimage has one more digit.
    const std::uint64_t s_longer = total_deficit + solver.ds.max_power;
    for (std::uint32_t d = 1; d < b; ++d) {
        const std::uint64_t def = solver.deficit_of(d);
        if (def > s_longer || !coins_fit(zeros_ok, s_longer - def, BigNat(n))) continue;
        std::vector<std::uint32_t> digits{d};
        if (complete(digits, s_longer - def, n)) return from_digits(b, digits);
    }
    throw std::logic_error("min_preimage_excluding: no successor found");
}

}  // namespace happy::preimage
