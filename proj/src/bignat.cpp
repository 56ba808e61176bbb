#include "happy/bignat.hpp"

#include <algorithm>
#include <cassert>
#include <cstdio>
#include <stdexcept>

#include "happy/errors.hpp"

namespace happy {

namespace {

constexpr std::uint64_t kBase = BigNat::kLimbBase;

// Karatsuba pays off only once operands are a few hundred decimal digits.
constexpr std::size_t kKaratsubaCutoff = 32;

}  // namespace

BigNat::BigNat(std::uint64_t value) {
    while (value != 0) {
        limbs_.push_back(static_cast<std::uint32_t>(value % kBase));
        value /= kBase;
    }
}

void BigNat::trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

BigNat BigNat::from_limbs(std::vector<std::uint32_t> limbs) {
    BigNat out;
    out.limbs_ = std::move(limbs);
    out.trim();
    return out;
}

BigNat BigNat::from_decimal(std::string_view text) {
    if (text.empty())
        throw ParseError("empty decimal literal", 0);
    for (std::size_t i = 0; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw ParseError("invalid decimal digit", i);
    BigNat out;
    std::size_t pos = text.size();
    while (pos > 0) {
        std::size_t take = pos >= 9 ? 9 : pos;
        std::uint32_t limb = 0;
        for (std::size_t i = pos - take; i < pos; ++i)
            limb = limb * 10 + static_cast<std::uint32_t>(text[i] - '0');
        out.limbs_.push_back(limb);
        pos -= take;
    }
    out.trim();
    return out;
}

bool BigNat::fits_u64() const {
    if (limbs_.size() < 3) return true;
    if (limbs_.size() > 3) return false;
    // 2^64-1 = 18|446744073|709551615 in base 10^9.
    static const BigNat max64(~std::uint64_t{0});
    return *this <= max64;
}

std::uint64_t BigNat::to_u64() const {
    if (!fits_u64())
        throw std::overflow_error("BigNat::to_u64: value exceeds 64 bits");
    std::uint64_t v = 0;
    for (auto it = limbs_.rbegin(); it != limbs_.rend(); ++it)
        v = v * kBase + *it;
    return v;
}

std::uint64_t BigNat::decimal_digits() const {
    if (limbs_.empty()) return 1;
    std::uint64_t top = limbs_.back();
    std::uint64_t digits = 0;
    while (top != 0) {
        ++digits;
        top /= 10;
    }
    return digits + 9 * static_cast<std::uint64_t>(limbs_.size() - 1);
}

std::string BigNat::to_string() const {
    if (limbs_.empty()) return "0";
    std::string out = std::to_string(limbs_.back());
    char buf[16];
    for (auto it = limbs_.rbegin() + 1; it != limbs_.rend(); ++it) {
        std::snprintf(buf, sizeof buf, "%09u", *it);
        out += buf;
    }
    return out;
}

BigNat& BigNat::operator+=(const BigNat& rhs) {
    if (limbs_.size() < rhs.limbs_.size()) limbs_.resize(rhs.limbs_.size(), 0);
    std::uint32_t carry = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::uint64_t sum = static_cast<std::uint64_t>(limbs_[i]) + carry;
        if (i < rhs.limbs_.size()) sum += rhs.limbs_[i];
        limbs_[i] = static_cast<std::uint32_t>(sum % kBase);
        carry = static_cast<std::uint32_t>(sum / kBase);
        if (carry == 0 && i >= rhs.limbs_.size()) break;
    }
    if (carry != 0) limbs_.push_back(carry);
    return *this;
}

BigNat& BigNat::operator-=(const BigNat& rhs) {
    if (*this < rhs)
        throw std::domain_error("BigNat subtraction would go negative");
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
        std::int64_t diff = static_cast<std::int64_t>(limbs_[i]) - borrow;
        if (i < rhs.limbs_.size()) diff -= rhs.limbs_[i];
        if (diff < 0) {
            diff += kBase;
            borrow = 1;
        } else {
            borrow = 0;
        }
        limbs_[i] = static_cast<std::uint32_t>(diff);
        if (borrow == 0 && i >= rhs.limbs_.size()) break;
    }
    assert(borrow == 0);
    trim();
    return *this;
}

std::vector<std::uint32_t> BigNat::mul_schoolbook(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::vector<std::uint32_t> out(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::uint64_t carry = 0;
        const std::uint64_t ai = a[i];
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::uint64_t cur = out[i + j] + ai * b[j] + carry;
            out[i + j] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
        }
        std::size_t k = i + b.size();
        while (carry != 0) {
            std::uint64_t cur = out[k] + carry;
            out[k] = static_cast<std::uint32_t>(cur % kBase);
            carry = cur / kBase;
            ++k;
        }
    }
    return out;
}

std::vector<std::uint32_t> BigNat::mul_limbs(
    const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    if (a.empty() || b.empty()) return {};
    if (std::min(a.size(), b.size()) < kKaratsubaCutoff)
        return mul_schoolbook(a, b);

    const std::size_t half = std::max(a.size(), b.size()) / 2;
    auto lo = [half](const std::vector<std::uint32_t>& v) {
        return std::vector<std::uint32_t>(
            v.begin(), v.begin() + static_cast<std::ptrdiff_t>(std::min(half, v.size())));
    };
    auto hi = [half](const std::vector<std::uint32_t>& v) {
        return v.size() > half
                   ? std::vector<std::uint32_t>(v.begin() + static_cast<std::ptrdiff_t>(half), v.end())
                   : std::vector<std::uint32_t>{};
    };

    BigNat a0 = from_limbs(lo(a)), a1 = from_limbs(hi(a));
    BigNat b0 = from_limbs(lo(b)), b1 = from_limbs(hi(b));

    BigNat z0 = from_limbs(mul_limbs(a0.limbs_, b0.limbs_));
    BigNat z2 = from_limbs(mul_limbs(a1.limbs_, b1.limbs_));
    BigNat z1 = from_limbs(mul_limbs((a0 + a1).limbs_, (b0 + b1).limbs_));
    z1 -= z0;
    z1 -= z2;

    std::vector<std::uint32_t> out(a.size() + b.size() + 1, 0);
    auto add_at = [&out](const BigNat& v, std::size_t shift) {
        std::uint32_t carry = 0;
        std::size_t i = 0;
        for (; i < v.limbs_.size() || carry != 0; ++i) {
            std::uint64_t cur = out[shift + i] + static_cast<std::uint64_t>(carry) +
                                (i < v.limbs_.size() ? v.limbs_[i] : 0);
            out[shift + i] = static_cast<std::uint32_t>(cur % kBase);
            carry = static_cast<std::uint32_t>(cur / kBase);
        }
    };
    add_at(z0, 0);
    add_at(z1, half);
    add_at(z2, 2 * half);
    return out;
}

BigNat operator*(const BigNat& lhs, const BigNat& rhs) {
    return BigNat::from_limbs(BigNat::mul_limbs(lhs.limbs_, rhs.limbs_));
}

std::pair<BigNat, std::uint32_t> BigNat::divmod_small(std::uint32_t m) const {
    if (m == 0) throw std::domain_error("division by zero");
    BigNat q;
    q.limbs_.assign(limbs_.size(), 0);
    std::uint64_t rem = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) {
        std::uint64_t cur = rem * kBase + limbs_[i];
        q.limbs_[i] = static_cast<std::uint32_t>(cur / m);
        rem = cur % m;
    }
    q.trim();
    return {std::move(q), static_cast<std::uint32_t>(rem)};
}

std::pair<BigNat, BigNat> BigNat::divmod(const BigNat& a, const BigNat& m) {
    if (m.is_zero()) throw std::domain_error("division by zero");
    if (m.limbs_.size() == 1) {
        auto [q, r] = a.divmod_small(m.limbs_[0]);
        return {std::move(q), BigNat(r)};
    }
    if (a < m) return {BigNat{}, a};

    // Knuth algorithm D in base 10^9, normalized so the divisor's top limb
    // is at least kBase/2.
    const std::size_t n = m.limbs_.size();
    const std::uint32_t d =
        static_cast<std::uint32_t>(kBase / (static_cast<std::uint64_t>(m.limbs_.back()) + 1));
    BigNat un = a * BigNat(d);
    BigNat vn = m * BigNat(d);
    assert(vn.limbs_.size() == n);
    std::vector<std::uint32_t>& u = un.limbs_;
    const std::vector<std::uint32_t>& v = vn.limbs_;
    u.resize(std::max(u.size(), a.limbs_.size() + 1) + 1, 0);

    const std::size_t qlen = u.size() - n;  // generous upper bound
    std::vector<std::uint32_t> q(qlen, 0);

    for (std::size_t j = qlen - 1; j + 1 > 0; --j) {
        if (j + n >= u.size()) continue;
        std::uint64_t num = static_cast<std::uint64_t>(u[j + n]) * kBase + u[j + n - 1];
        std::uint64_t qhat = num / v[n - 1];
        std::uint64_t rhat = num % v[n - 1];
        while (qhat >= kBase ||
               qhat * v[n - 2] > rhat * kBase + u[j + n - 2]) {
            --qhat;
            rhat += v[n - 1];
            if (rhat >= kBase) break;
        }

        // Multiply-subtract qhat * v from u[j .. j+n].
        std::uint64_t mul_carry = 0;
        std::int64_t borrow = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t p = qhat * v[i] + mul_carry;
            mul_carry = p / kBase;
            std::int64_t t = static_cast<std::int64_t>(u[i + j]) -
                             static_cast<std::int64_t>(p % kBase) - borrow;
            if (t < 0) {
                t += kBase;
                borrow = 1;
            } else {
                borrow = 0;
            }
            u[i + j] = static_cast<std::uint32_t>(t);
        }
        std::int64_t top = static_cast<std::int64_t>(u[j + n]) -
                           static_cast<std::int64_t>(mul_carry) - borrow;
        if (top < 0) {
            // qhat was one too large: add the divisor back.
            --qhat;
            std::uint64_t carry = 0;
            for (std::size_t i = 0; i < n; ++i) {
                std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + carry;
                u[i + j] = static_cast<std::uint32_t>(s % kBase);
                carry = s / kBase;
            }
            top += static_cast<std::int64_t>(carry);
            assert(top >= 0);
        }
        u[j + n] = static_cast<std::uint32_t>(top);
        q[j] = static_cast<std::uint32_t>(qhat);
    }

    BigNat quotient = from_limbs(std::move(q));
    u.resize(n);
    BigNat rem_scaled = from_limbs(std::move(u));
    auto [rem, zero] = rem_scaled.divmod_small(d);
    assert(zero == 0);
    return {std::move(quotient), std::move(rem)};
}

BigNat BigNat::pow(std::uint64_t exponent) const {
    BigNat result(1);
    BigNat base = *this;
    while (exponent != 0) {
        if (exponent & 1) result = result * base;
        exponent >>= 1;
        if (exponent != 0) base = base * base;
    }
    return result;
}

std::strong_ordering BigNat::operator<=>(const BigNat& rhs) const {
    if (limbs_.size() != rhs.limbs_.size())
        return limbs_.size() <=> rhs.limbs_.size();
    for (std::size_t i = limbs_.size(); i-- > 0;)
        if (limbs_[i] != rhs.limbs_[i]) return limbs_[i] <=> rhs.limbs_[i];
    return std::strong_ordering::equal;
}

BigNat ceil_div(const BigNat& a, const BigNat& m) {
    auto [q, r] = BigNat::divmod(a, m);
    if (!r.is_zero()) q += BigNat(1);
    return q;
}

}  // namespace happy
