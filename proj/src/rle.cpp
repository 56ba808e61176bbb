#include "happy/rle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <utility>

#include "happy/errors.hpp"

namespace happy {

namespace {

void check_base(std::uint32_t base) {
    if (base < 2 || base > RleNumber::kMaxBase)
        throw std::invalid_argument("base must be in [2, 10^9]");
}

std::string digit_token(std::uint32_t digit) { return std::to_string(digit); }

}  // namespace

RleNumber::RleNumber(std::uint32_t base, std::vector<Run> runs) : base_(base) {
    check_base(base);
    runs_.reserve(runs.size());
    for (auto& run : runs) {
        if (run.digit >= base)
            throw std::invalid_argument("run digit out of range for base");
        if (run.count.is_zero()) continue;
        if (!runs_.empty() && runs_.back().digit == run.digit)
            runs_.back().count += run.count;
        else
            runs_.push_back(std::move(run));
    }
    if (runs_.empty())
        throw std::invalid_argument("RleNumber must have at least one digit");
    if (runs_.front().digit == 0)
        throw std::invalid_argument("leading digit must be nonzero");
}

RleNumber RleNumber::from_value(const BigNat& value, std::uint32_t base) {
    check_base(base);
    if (value.is_zero())
        throw std::invalid_argument("from_value: value must be positive");

    // Digits, least significant first.
    std::vector<std::uint32_t> digits;
    if (value.fits_u64()) {
        std::uint64_t v = value.to_u64();
        while (v != 0) {
            digits.push_back(static_cast<std::uint32_t>(v % base));
            v /= base;
        }
    } else {
        BigNat v = value;
        while (!v.is_zero()) {
            auto [q, r] = v.divmod_small(base);
            digits.push_back(r);
            v = std::move(q);
        }
    }

    std::vector<Run> runs;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (!runs.empty() && runs.back().digit == *it)
            runs.back().count += BigNat(1);
        else
            runs.push_back(Run{*it, BigNat(1)});
    }
    return RleNumber(base, std::move(runs));
}

BigNat RleNumber::total_digits() const {
    BigNat total;
    for (const auto& run : runs_) total += run.count;
    return total;
}

BigNat RleNumber::power_sum(std::uint64_t e) const {
    if (e == 0) throw std::invalid_argument("exponent must be >= 1");
    BigNat sum;
    for (const auto& run : runs_)
        sum += run.count * BigNat(run.digit).pow(e);
    return sum;
}

bool RleNumber::fits_within(std::uint64_t digit_budget) const {
    return total_digits() <= BigNat(digit_budget);
}

BigNat RleNumber::value(std::uint64_t digit_budget) const {
    if (!fits_within(digit_budget))
        throw RepresentationOverflow(
            "value would need " + total_digits().to_string() +
            " base-" + std::to_string(base_) + " digits (budget " +
            std::to_string(digit_budget) + ")");
    BigNat result;
    const BigNat base_big(base_);
    for (const auto& run : runs_) {
        std::uint64_t len = run.count.to_u64();
        BigNat shift = base_big.pow(len);
        // digit * repunit(len), with repunit = (b^len - 1) / (b - 1).
        auto [repunit, rem] = (shift - BigNat(1)).divmod_small(base_ - 1);
        assert(rem == 0);
        result = result * shift + BigNat(run.digit) * repunit;
    }
    return result;
}

std::string RleNumber::to_string() const {
    const bool dotted = base_ > 10;
    std::string out;
    bool first = true;
    for (const auto& run : runs_) {
        const std::string token = digit_token(run.digit);
        // Bracket the run when that is strictly shorter than expanding it.
        const BigNat bracket_chars(3 + token.size() + run.count.decimal_digits());
        BigNat expanded_chars = run.count * BigNat(token.size());
        if (dotted) expanded_chars += run.count - BigNat(1);
        const bool bracket = bracket_chars < expanded_chars;

        if (bracket) {
            if (!first && dotted) out += '.';
            out += '[' + token + '^' + run.count.to_string() + ']';
            first = false;
        } else {
            std::uint64_t reps = run.count.to_u64();
            for (std::uint64_t i = 0; i < reps; ++i) {
                if (!first && dotted) out += '.';
                out += token;
                first = false;
            }
        }
    }
    return out;
}

namespace {

struct ParsedToken {
    std::uint32_t digit;
    BigNat count;
};

class RleParser {
public:
    RleParser(std::string_view text, std::uint32_t base)
        : text_(text), base_(base) {}

    std::vector<Run> run_tokens() {
        std::vector<Run> runs;
        if (text_.empty()) throw ParseError("empty number", 0);
        const bool dotted = base_ > 10;
        bool expect_separator = false;
        while (pos_ < text_.size()) {
            if (dotted && expect_separator && peek() == '.') ++pos_;
            if (pos_ >= text_.size())
                throw ParseError("trailing separator", pos_ - 1);
            ParsedToken tok = next_token(dotted);
            runs.push_back(Run{tok.digit, std::move(tok.count)});
            expect_separator = true;
        }
        return runs;
    }

private:
    char peek() const { return text_[pos_]; }

    ParsedToken next_token(bool dotted) {
        if (peek() == '[') return bracket_token();
        if (dotted) {
            std::size_t start = pos_;
            BigNat v = decimal(start);
            return finish_digit(v, start);
        }
        std::size_t start = pos_;
        char c = text_[pos_++];
        if (c < '0' || c > '9')
            throw ParseError("expected digit or '['", start);
        return finish_digit(BigNat(static_cast<std::uint64_t>(c - '0')), start);
    }

    ParsedToken bracket_token() {
        std::size_t open = pos_;
        ++pos_;  // consume '['
        std::size_t dstart = pos_;
        BigNat digit = decimal(dstart);
        if (pos_ >= text_.size() || peek() != '^')
            throw ParseError("expected '^' in run", pos_);
        ++pos_;
        std::size_t cstart = pos_;
        BigNat count = decimal(cstart);
        if (pos_ >= text_.size() || peek() != ']')
            throw ParseError("unterminated run (missing ']')", open);
        ++pos_;
        if (count.is_zero()) throw ParseError("run count must be >= 1", cstart);
        ParsedToken tok = finish_digit(digit, dstart);
        tok.count = std::move(count);
        return tok;
    }

    ParsedToken finish_digit(const BigNat& digit, std::size_t at) {
        if (digit >= BigNat(base_))
            throw ParseError("digit " + digit.to_string() + " out of range for base " +
                                 std::to_string(base_),
                             at);
        return ParsedToken{static_cast<std::uint32_t>(digit.to_u64()), BigNat(1)};
    }

    BigNat decimal(std::size_t start) {
        std::size_t end = pos_;
        while (end < text_.size() && text_[end] >= '0' && text_[end] <= '9') ++end;
        if (end == pos_) throw ParseError("expected decimal number", start);
        BigNat v = BigNat::from_decimal(text_.substr(pos_, end - pos_));
        pos_ = end;
        return v;
    }

    std::string_view text_;
    std::uint32_t base_;
    std::size_t pos_ = 0;
};

}  // namespace

RleNumber RleNumber::parse(std::string_view text, std::uint32_t base) {
    check_base(base);
    RleParser parser(text, base);
    std::vector<Run> runs = parser.run_tokens();
    try {
        return RleNumber(base, std::move(runs));
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), 0);
    }
}

std::strong_ordering RleNumber::compare(const RleNumber& rhs) const {
    if (base_ != rhs.base_)
        throw BaseMismatch("cannot compare base " + std::to_string(base_) +
                           " with base " + std::to_string(rhs.base_));
    if (auto ord = total_digits() <=> rhs.total_digits(); ord != 0) return ord;

    // Equal digit counts: scan runs in lockstep, most significant first.
    std::size_t i = 0, j = 0;
    BigNat remaining_i = runs_[0].count;
    BigNat remaining_j = rhs.runs_[0].count;
    while (i < runs_.size() && j < rhs.runs_.size()) {
        if (auto ord = runs_[i].digit <=> rhs.runs_[j].digit; ord != 0) return ord;
        const BigNat step = std::min(remaining_i, remaining_j);
        remaining_i -= step;
        remaining_j -= step;
        if (remaining_i.is_zero() && ++i < runs_.size()) remaining_i = runs_[i].count;
        if (remaining_j.is_zero() && ++j < rhs.runs_.size()) remaining_j = rhs.runs_[j].count;
    }
    return std::strong_ordering::equal;
}

}  // namespace happy
