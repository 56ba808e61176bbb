#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "happy/bignat.hpp"
#include "happy/rle.hpp"
#include "happy/search.hpp"
#include "happy/waring.hpp"

namespace happy::ladder {

enum class CertKind {
    Exhaustive,            // every y < sigma was checked to not have this height
    Willmap,               // sigma_prev + g(e)(b-1)^e <= tau_prev, tau scanned
    Corollary,             // sigma_prev >= b^d_cor
    UnverifiedUpperBound,  // sigma is a proven upper bound, minimality open
};

struct Certificate {
    CertKind kind;
    BigNat payload;  // Exhaustive: scan limit; Willmap: tau; otherwise unused

    static Certificate exhaustive(BigNat scan_limit);
    static Certificate willmap(BigNat tau);
    static Certificate corollary();
    static Certificate upper_bound();

    std::string to_string() const;
    static Certificate parse(std::string_view text);

    bool operator==(const Certificate&) const = default;
};

struct LadderEntry {
    std::uint64_t h;
    RleNumber sigma;
    Certificate cert;
};

// Integer form of the willmap hypothesis: sigma + g(e)(b-1)^e <= tau.
bool willmap_holds(const BigNat& sigma, const BigNat& tau, std::uint64_t e,
                   std::uint32_t b);

// The rightmost delta+1 digits are all b-1.
bool trailing_run_ok(const RleNumber& sigma, const BigNat& delta);

// The trailing run of b-1 digits is long enough (>= e + p + 1) for the
// one-step mapping theorem to apply.
bool ninesmap_applicable(const RleNumber& sigma, const waring::Thresholds& th);

struct LadderConfig {
    std::uint64_t e = 2;
    std::uint32_t b = 10;
    BigNat u = BigNat(1);
    std::uint64_t scan_limit = 10'000'000;
    std::uint64_t dp_cap = waring::kDefaultDpCap;
    std::uint64_t digit_budget = RleNumber::kDefaultDigitBudget;
    unsigned workers = 1;
};

enum class ExtendStatus {
    Reached,    // target height certified or upper-bounded
    Truncated,  // next rung's target value exceeds the digit budget
};

struct ExtendResult {
    std::vector<LadderEntry> entries;
    ExtendStatus status = ExtendStatus::Reached;
    std::string note;
};

// Appends rungs up to target_h. Rung 0 is always u itself. Heights whose
// sigma falls inside the scan limit are taken from the exhaustive scan;
// beyond it each rung is the minimal preimage of the previous rung's value,
// certified by willmap when the previous tau is known exhaustively, by the
// corollary threshold when the previous sigma is large enough, and marked
// an unverified upper bound otherwise. Extension stops with a Truncated
// status once the next target value cannot be materialized within the
// digit budget.
ExtendResult extend(std::vector<LadderEntry> entries, std::uint64_t target_h,
                    const LadderConfig& cfg);

struct LadderFile {
    std::uint64_t e = 0;
    std::uint32_t b = 0;
    BigNat u;
    std::vector<LadderEntry> entries;
};

void write_ladder(std::ostream& out, const LadderFile& file);
LadderFile read_ladder(std::istream& in);

struct VerifyCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass() const;
};

// Re-derives every certificate and structural property of a ladder file:
// heights by direct iteration, conservation along preimage-chained rungs,
// exhaustive rungs against a fresh scan, willmap/corollary hypotheses, and
// trailing-run conformance. Also reports (non-failing) whether tau is a
// digit permutation of sigma where both are known.
VerifyReport verify_ladder(const LadderFile& file, const LadderConfig& cfg);

}  // namespace happy::ladder
