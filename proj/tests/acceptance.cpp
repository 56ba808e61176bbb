// Acceptance suite: end-to-end reproduction of the library's headline
// results at desk scale. Prints one line per criterion and exits nonzero
// if any fails.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "happy/bignat.hpp"
#include "happy/errors.hpp"
#include "happy/ladder.hpp"
#include "happy/preimage.hpp"
#include "happy/rle.hpp"
#include "happy/search.hpp"
#include "happy/waring.hpp"

using happy::BigNat;
using happy::RleNumber;
namespace ladder = happy::ladder;
namespace preimage = happy::preimage;
namespace search = happy::search;
namespace waring = happy::waring;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;  // 0 = untimed
    std::function<void(std::string&)> run;  // throws or appends to the failure log
};

#define EXPECT(cond)                                                       \
    do {                                                                   \
        if (!(cond)) failures += std::string("    expect failed: ") + #cond + "\n"; \
    } while (0)

std::uint64_t naive_step(std::uint64_t x, std::uint64_t e, std::uint32_t b) {
    std::uint64_t sum = 0;
    while (x != 0) {
        std::uint64_t d = x % b, p = 1;
        for (std::uint64_t i = 0; i < e; ++i) p *= d;
        sum += p;
        x /= b;
    }
    return sum;
}

// C1: golden sigma/tau values and the full height table to h = 7,
// brute-forced to 10^5 single-threaded.
void c1_golden(std::string& failures) {
    auto scan = search::scan_heights(BigNat(1), 2, 10, 100000, 1);
    const std::vector<std::uint64_t> table{1, 10, 13, 23, 19, 7, 356, 78999};
    for (std::uint64_t h = 0; h <= 7; ++h)
        EXPECT(scan.sigma(h) == table[h]);
    EXPECT(scan.sigma(7) == 78999);
    EXPECT(scan.tau(7) == 79899);
}

// C2: sigma_1(1) = b, i.e. "10" in base b, for e in 1..5 and b in 2..12.
void c2_sigma1(std::string& failures) {
    for (std::uint64_t e = 1; e <= 5; ++e)
        for (std::uint32_t b = 2; b <= 12; ++b) {
            auto scan = search::scan_heights(BigNat(1), e, b, 4096, 1);
            EXPECT(scan.sigma(1) == b);
        }
}

// C3: corollary thresholds, re-derived by hand from the ceiling formula.
void c3_thresholds(std::string& failures) {
    auto t1 = waring::thresholds(2, 10);
    EXPECT(t1.p == 1);
    EXPECT(t1.d_cor == BigNat(27));
    auto t2 = waring::thresholds(2, 2);
    EXPECT(t2.p == 3);
    EXPECT(t2.d_cor == BigNat(10));
    auto t3 = waring::thresholds(1, 10);
    EXPECT(t3.p == 1);
    EXPECT(t3.d_cor == BigNat(20));
}

// C4: the minimal preimage equals the exhaustive-scan minimum for every
// t <= 5000 wherever the scan reaches it; beyond the scan bound the result
// is provably larger than everything scanned, and its power sum, digit
// structure, and digit-count window are checked for all t.
void c4_preimage_oracle(std::string& failures) {
    struct Config {
        std::uint64_t e;
        std::uint32_t b;
    };
    const std::uint64_t t_max = 5000;
    const std::uint64_t x_max = 4000000;
    for (Config cfg : {Config{1, 10}, Config{2, 10}, Config{3, 10}, Config{2, 2},
                       Config{2, 3}}) {
        std::vector<std::uint64_t> first(t_max + 1, 0);
        for (std::uint64_t x = 1; x <= x_max; ++x) {
            const std::uint64_t t = naive_step(x, cfg.e, cfg.b);
            if (t <= t_max && first[t] == 0) first[t] = x;
        }
        const BigNat g = waring::compute_g(cfg.e).g;
        const std::uint64_t max_power =
            preimage::make_deficit_set(cfg.e, cfg.b).max_power;
        const RleNumber scan_edge = RleNumber::from_value(BigNat(x_max), cfg.b);
        for (std::uint64_t t = 1; t <= t_max; ++t) {
            RleNumber x = preimage::min_preimage(BigNat(t), cfg.e, cfg.b);
            if (x.power_sum(cfg.e) != BigNat(t)) {
                failures += "    power sum mismatch at t=" + std::to_string(t) + "\n";
                continue;
            }
            for (std::size_t i = 0; i < x.runs().size(); ++i) {
                if (x.runs()[i].digit == 0)
                    failures += "    zero digit at t=" + std::to_string(t) + "\n";
                if (i > 0 && x.runs()[i - 1].digit >= x.runs()[i].digit)
                    failures += "    digits not increasing at t=" + std::to_string(t) + "\n";
            }
            const BigNat n = x.total_digits();
            if (n < happy::ceil_div(BigNat(t), BigNat(max_power)) ||
                n > BigNat::divmod(BigNat(t), BigNat(max_power)).first + g)
                failures += "    digit-count window violated at t=" + std::to_string(t) + "\n";
            if (first[t] != 0) {
                if (!(x.fits_within(64) && x.value(64) == BigNat(first[t])))
                    failures += "    scan minimum mismatch at t=" + std::to_string(t) +
                                " (e=" + std::to_string(cfg.e) +
                                ", b=" + std::to_string(cfg.b) + ")\n";
            } else if (x.compare(scan_edge) != std::strong_ordering::greater) {
                failures += "    preimage within scan range was missed by the scan, t=" +
                            std::to_string(t) + "\n";
            }
        }
    }
}

// C5: rung 8 for (e=2, b=10, u=1): the 977-digit candidate, its willmap
// certificate, and the deficit DP's proof that 976 digits are infeasible.
void c5_rung8(std::string& failures) {
    auto result = ladder::extend({}, 8, ladder::LadderConfig{2, 10, BigNat(1), 100000,
                                                             waring::kDefaultDpCap,
                                                             1000000, 2});
    EXPECT(result.status == ladder::ExtendStatus::Reached);
    const auto& rung8 = result.entries.at(8);
    EXPECT(rung8.sigma.to_string() == "3788[9^973]");
    EXPECT(rung8.sigma.total_digits() == BigNat(977));
    EXPECT(rung8.cert.kind == ladder::CertKind::Willmap);
    EXPECT(rung8.cert.payload == BigNat(79899));
    // The willmap hypothesis in integers: 78999 + 4*81 = 79323 <= 79899.
    EXPECT(BigNat(78999) + BigNat(4 * 81) == BigNat(79323));
    EXPECT(ladder::willmap_holds(BigNat(78999), BigNat(79899), 2, 10));
    EXPECT(rung8.sigma.power_sum(2) == BigNat(78999));
    // 976 digits would need deficit 57; the DP proves that impossible.
    EXPECT(976 * 81 - 78999 == 57);
    EXPECT(!preimage::min_deficit_coins(57, 2, 10).has_value());
    EXPECT(977 * 81 - 78999 == 138);
    EXPECT(preimage::min_deficit_coins(138, 2, 10).has_value());
}

// C6: rung 9 is corollary-certified, conserves exactly, and extension past
// it truncates with an explicit representation-overflow status.
void c6_rung9(std::string& failures) {
    auto result = ladder::extend({}, 12, ladder::LadderConfig{2, 10, BigNat(1), 100000,
                                                              waring::kDefaultDpCap,
                                                              1000000, 2});
    EXPECT(result.status == ladder::ExtendStatus::Truncated);
    EXPECT(result.entries.back().h == 9);
    const auto& rung8 = result.entries.at(8);
    const auto& rung9 = result.entries.at(9);
    EXPECT(rung9.cert.kind == ladder::CertKind::Corollary);
    EXPECT(rung8.sigma.total_digits() == BigNat(977));
    EXPECT(waring::thresholds(2, 10).d_cor == BigNat(27));
    EXPECT(rung8.sigma.total_digits() >= BigNat(27 + 1));
    EXPECT(rung9.sigma.power_sum(2) == rung8.sigma.value(1000000));
}

// C7: trailing-run conformance on every computed rung across e in {1,2},
// b in {2,10}: digit count >= d(delta) forces delta+1 trailing b-1 digits.
void c7_trailing(std::string& failures) {
    struct Config {
        std::uint64_t e;
        std::uint32_t b;
    };
    for (Config c : {Config{1, 2}, Config{1, 10}, Config{2, 2}, Config{2, 10}}) {
        const waring::Thresholds th = waring::thresholds(c.e, c.b);
        auto result = ladder::extend(
            {}, 12, ladder::LadderConfig{c.e, c.b, BigNat(1), 100000,
                                         waring::kDefaultDpCap, 1000000, 2});
        for (const auto& entry : result.entries) {
            auto delta = th.max_delta(entry.sigma.total_digits());
            if (!delta || delta->is_zero()) continue;
            if (!ladder::trailing_run_ok(entry.sigma, *delta))
                failures += "    rung " + std::to_string(entry.h) + " of e=" +
                            std::to_string(c.e) + ", b=" + std::to_string(c.b) +
                            " violates delta=" + delta->to_string() + "\n";
        }
    }
}

// C8: Waring numbers, witnesses, and the g(e) bound on a dense range.
void c8_waring(std::string& failures) {
    const std::vector<std::uint64_t> expected{1, 4, 9, 19, 37};
    for (std::uint64_t e = 1; e <= 5; ++e) {
        auto info = waring::compute_g(e);
        EXPECT(info.g == BigNat(expected[e - 1]));
        EXPECT(info.formula_validated);
    }
    EXPECT(waring::min_terms(7, 2, 9) == 4);
    EXPECT(waring::min_terms(23, 3, 9) == 9);
    EXPECT(waring::min_terms(79, 4, 9) == 19);
    for (std::uint64_t e = 1; e <= 4; ++e) {
        const std::uint64_t g = waring::compute_g(e).g.to_u64();
        const auto table = waring::min_terms_upto(10000, e, 10000);
        for (std::uint64_t r = 0; r <= 10000; ++r)
            if (table[r] > g) {
                failures += "    min_terms(" + std::to_string(r) + ", e=" +
                            std::to_string(e) + ") exceeds g\n";
                break;
            }
    }
}

// C9: the complete cycle inventory for (e=2, b=10).
void c9_cycles(std::string& failures) {
    auto cycles = search::find_cycles(2, 10);
    EXPECT(cycles.cycles.size() == 2);
    EXPECT(cycles.cycles.at(0) == std::vector<BigNat>{BigNat(1)});
    const std::vector<BigNat> eight{BigNat(4),  BigNat(16),  BigNat(37), BigNat(58),
                                    BigNat(89), BigNat(145), BigNat(42), BigNat(20)};
    EXPECT(cycles.cycles.at(1) == eight);
}

// C10: parallel scans are byte-identical to the sequential scan.
void c10_determinism(std::string& failures) {
    const std::string sequential =
        search::scan_heights(BigNat(1), 2, 10, 100000, 1).to_lines();
    for (unsigned workers : {2u, 4u, 8u}) {
        const std::string parallel =
            search::scan_heights(BigNat(1), 2, 10, 100000, workers).to_lines();
        if (parallel != sequential)
            failures += "    " + std::to_string(workers) + "-worker scan differs\n";
    }
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"C1  golden sigma/tau table to h=7 (e=2, b=10)", 10.0, c1_golden},
        {"C2  sigma_1(1) = b for e in 1..5, b in 2..12", 0.0, c2_sigma1},
        {"C3  thresholds (2,10), (2,2), (1,10)", 0.0, c3_thresholds},
        {"C4  minimal preimages match the scan oracle to t=5000", 60.0, c4_preimage_oracle},
        {"C5  rung 8 candidate, willmap certificate, 976-digit infeasibility", 0.0, c5_rung8},
        {"C6  rung 9 corollary, exact conservation, truncation past it", 60.0, c6_rung9},
        {"C7  trailing-run conformance across e in {1,2}, b in {2,10}", 0.0, c7_trailing},
        {"C8  Waring numbers and witnesses", 0.0, c8_waring},
        {"C9  cycle inventory (e=2, b=10)", 1.0, c9_cycles},
        {"C10 parallel scans byte-identical to sequential", 0.0, c10_determinism},
    };

    int failed = 0;
    for (auto& criterion : criteria) {
        std::string failures;
        const auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(failures);
        } catch (const std::exception& e) {
            failures += std::string("    exception: ") + e.what() + "\n";
        }
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (criterion.budget_seconds > 0 && seconds > criterion.budget_seconds)
            failures += "    runtime " + std::to_string(seconds) + "s exceeds budget " +
                        std::to_string(criterion.budget_seconds) + "s\n";
        const bool pass = failures.empty();
        failed += pass ? 0 : 1;
        std::ostringstream line;
        line << (pass ? "[PASS] " : "[FAIL] ") << criterion.name << " ("
             << static_cast<int>(seconds * 1000) << " ms)";
        std::cout << line.str() << '\n';
        if (!pass) std::cout << failures;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
              << '\n';
    return failed == 0 ? 0 : 1;
}
