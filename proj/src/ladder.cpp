#include "happy/ladder.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "happy/errors.hpp"
#include "happy/preimage.hpp"

namespace happy::ladder {

Certificate Certificate::exhaustive(BigNat scan_limit) {
    return Certificate{CertKind::Exhaustive, std::move(scan_limit)};
}
Certificate Certificate::willmap(BigNat tau) {
    return Certificate{CertKind::Willmap, std::move(tau)};
}
Certificate Certificate::corollary() {
    return Certificate{CertKind::Corollary, BigNat{}};
}
Certificate Certificate::upper_bound() {
    return Certificate{CertKind::UnverifiedUpperBound, BigNat{}};
}

std::string Certificate::to_string() const {
    switch (kind) {
        case CertKind::Exhaustive: return "EXHAUSTIVE:" + payload.to_string();
        case CertKind::Willmap: return "WILLMAP:" + payload.to_string();
        case CertKind::Corollary: return "COROLLARY";
        case CertKind::UnverifiedUpperBound: return "UPPERBOUND";
    }
    throw std::logic_error("unreachable");
}

Certificate Certificate::parse(std::string_view text) {
    if (text == "COROLLARY") return corollary();
    if (text == "UPPERBOUND") return upper_bound();
    if (text.starts_with("EXHAUSTIVE:"))
        return exhaustive(BigNat::from_decimal(text.substr(11)));
    if (text.starts_with("WILLMAP:"))
        return willmap(BigNat::from_decimal(text.substr(8)));
    throw ParseError("unknown certificate '" + std::string(text) + "'", 0);
}

bool willmap_holds(const BigNat& sigma, const BigNat& tau, std::uint64_t e,
                   std::uint32_t b) {
    const BigNat g = waring::compute_g(e).g;
    return sigma + g * BigNat(b - 1).pow(e) <= tau;
}

bool trailing_run_ok(const RleNumber& sigma, const BigNat& delta) {
    const Run& last = sigma.trailing_run();
    return last.digit == sigma.base() - 1 && last.count >= delta + BigNat(1);
}

bool ninesmap_applicable(const RleNumber& sigma, const waring::Thresholds& th) {
    const Run& last = sigma.trailing_run();
    return last.digit == sigma.base() - 1 &&
           last.count >= BigNat(th.e + th.p + 1);
}

namespace {

void check_contiguous(const std::vector<LadderEntry>& entries) {
    if (entries.empty())
        throw std::invalid_argument("ladder must contain rung 0");
    if (entries.front().h != 0)
        throw std::invalid_argument("ladder must start at h = 0");
    for (std::size_t i = 1; i < entries.size(); ++i)
        if (entries[i].h != entries[i - 1].h + 1)
            throw std::invalid_argument("ladder rungs must have contiguous heights");
}

// Candidate value <= scan_limit would mean the exhaustive scan missed it.
bool value_at_most(const RleNumber& x, std::uint64_t limit) {
    const BigNat digits = x.total_digits();
    if (digits > BigNat(21)) return false;
    return x.value(21).fits_u64() && x.value(21).to_u64() <= limit;
}

}  // namespace

ExtendResult extend(std::vector<LadderEntry> entries, std::uint64_t target_h,
                    const LadderConfig& cfg) {
    if (cfg.u.is_zero()) throw std::invalid_argument("u must be positive");
    if (entries.empty())
        entries.push_back(LadderEntry{0, RleNumber::from_value(cfg.u, cfg.b),
                                      Certificate::exhaustive(cfg.u)});
    check_contiguous(entries);

    ExtendResult result;
    if (entries.back().h >= target_h) {
        result.entries = std::move(entries);
        return result;
    }

    const search::HeightScan scan =
        search::scan_heights(cfg.u, cfg.e, cfg.b, cfg.scan_limit, cfg.workers);
    const waring::Thresholds th = waring::thresholds(cfg.e, cfg.b);

    while (entries.back().h < target_h) {
        const LadderEntry& prev = entries.back();
        const std::uint64_t next_h = prev.h + 1;

        if (auto s = scan.sigma(next_h)) {
            entries.push_back(LadderEntry{next_h, RleNumber::from_value(BigNat(*s), cfg.b),
                                          Certificate::exhaustive(BigNat(cfg.scan_limit))});
            continue;
        }

        if (!prev.sigma.fits_within(cfg.digit_budget)) {
            result.status = ExtendStatus::Truncated;
            result.note = "rung " + std::to_string(next_h) + " needs the value of rung " +
                          std::to_string(prev.h) + ", which has " +
                          prev.sigma.total_digits().to_string() + " base-" +
                          std::to_string(cfg.b) + " digits (budget " +
                          std::to_string(cfg.digit_budget) + ")";
            break;
        }
        const BigNat prev_value = prev.sigma.value(cfg.digit_budget);
        RleNumber candidate =
            preimage::min_preimage_excluding(prev_value, cfg.e, cfg.b, cfg.u, cfg.dp_cap);

        if (candidate.power_sum(cfg.e) != prev_value)
            throw std::logic_error("extend: preimage does not map back to the rung below");
        if (value_at_most(candidate, cfg.scan_limit))
            throw std::logic_error("extend: preimage inside the scan range was not found by it");

        // A rung that is only an upper bound poisons everything above it:
        // the mapping theorems assume the rung below is the true sigma.
        const bool prev_certified = prev.cert.kind != CertKind::UnverifiedUpperBound;

        Certificate cert = Certificate::upper_bound();
        const auto scan_sigma_prev = scan.sigma(prev.h);
        const auto scan_tau_prev = scan.tau(prev.h);
        if (prev_certified && scan_tau_prev && scan_sigma_prev &&
            BigNat(*scan_sigma_prev) == prev_value &&
            willmap_holds(prev_value, BigNat(*scan_tau_prev), cfg.e, cfg.b)) {
            cert = Certificate::willmap(BigNat(*scan_tau_prev));
        } else if (prev_certified &&
                   prev.sigma.total_digits() >= th.d_cor + BigNat(1)) {
            // digits >= d_cor + 1 is exactly value >= b^d_cor.
            cert = Certificate::corollary();
        }
        entries.push_back(LadderEntry{next_h, std::move(candidate), std::move(cert)});
    }

    result.entries = std::move(entries);
    return result;
}

void write_ladder(std::ostream& out, const LadderFile& file) {
    out << "e=" << file.e << " b=" << file.b << " u=" << file.u.to_string() << '\n';
    for (const auto& entry : file.entries)
        out << "h=" << entry.h << " sigma=" << entry.sigma.to_string()
            << " cert=" << entry.cert.to_string() << '\n';
}

namespace {

std::map<std::string, std::string> parse_fields(const std::string& line,
                                                std::size_t line_no) {
    std::map<std::string, std::string> fields;
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
        auto eq = token.find('=');
        if (eq == std::string::npos)
            throw ParseError("ladder line " + std::to_string(line_no) +
                                 ": expected key=value, got '" + token + "'",
                             0);
        fields[token.substr(0, eq)] = token.substr(eq + 1);
    }
    return fields;
}

std::string require_field(const std::map<std::string, std::string>& fields,
                          const std::string& key, std::size_t line_no) {
    auto it = fields.find(key);
    if (it == fields.end())
        throw ParseError("ladder line " + std::to_string(line_no) + ": missing " + key,
                         0);
    return it->second;
}

}  // namespace

LadderFile read_ladder(std::istream& in) {
    LadderFile file;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = parse_fields(line, line_no);
        if (!have_header) {
            file.e = BigNat::from_decimal(require_field(fields, "e", line_no)).to_u64();
            const std::uint64_t b =
                BigNat::from_decimal(require_field(fields, "b", line_no)).to_u64();
            if (b < 2 || b > RleNumber::kMaxBase)
                throw ParseError("ladder header: base out of range", 0);
            file.b = static_cast<std::uint32_t>(b);
            file.u = BigNat::from_decimal(require_field(fields, "u", line_no));
            have_header = true;
            continue;
        }
        LadderEntry entry{
            BigNat::from_decimal(require_field(fields, "h", line_no)).to_u64(),
            RleNumber::parse(require_field(fields, "sigma", line_no), file.b),
            Certificate::parse(require_field(fields, "cert", line_no))};
        file.entries.push_back(std::move(entry));
    }
    if (!have_header) throw ParseError("ladder file has no header line", 0);
    check_contiguous(file.entries);
    return file;
}

bool VerifyReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const VerifyCheck& c) { return c.pass; });
}

namespace {

std::optional<std::uint64_t> rle_height(const RleNumber& sigma, const BigNat& u,
                                        std::uint64_t e, std::uint32_t b,
                                        std::uint64_t digit_budget) {
    if (sigma.fits_within(digit_budget)) {
        const BigNat v = sigma.value(digit_budget);
        return search::height(v, u, e, b);
    }
    // Too long to materialize: apply S once on the run representation.
    const BigNat first = sigma.power_sum(e);
    auto below = search::height(first, u, e, b);
    if (!below) return std::nullopt;
    return *below + 1;
}

std::vector<std::uint64_t> digit_multiset(std::uint64_t x, std::uint32_t b) {
    std::vector<std::uint64_t> counts(b, 0);
    while (x != 0) {
        ++counts[x % b];
        x /= b;
    }
    return counts;
}

}  // namespace

VerifyReport verify_ladder(const LadderFile& file, const LadderConfig& cfg) {
    VerifyReport report;
    auto add = [&report](const std::string& name, bool pass, std::string detail) {
        report.checks.push_back(VerifyCheck{name, pass, std::move(detail)});
    };

    const waring::Thresholds th = waring::thresholds(file.e, file.b);

    // Structure: contiguity was enforced by read_ladder; rung 0 must be u.
    const RleNumber u_rle = RleNumber::from_value(file.u, file.b);
    const bool rung0_ok =
        file.entries.front().sigma.compare(u_rle) == std::strong_ordering::equal;
    add("structure", rung0_ok,
        rung0_ok ? std::to_string(file.entries.size()) + " rungs, rung 0 = u"
                 : "rung 0 is not u");

    // Heights by direct iteration, independent of any certificate.
    {
        bool ok = true;
        std::string detail;
        for (const auto& entry : file.entries) {
            auto h = rle_height(entry.sigma, file.u, file.e, file.b, cfg.digit_budget);
            if (!h || *h != entry.h) {
                ok = false;
                detail += "rung " + std::to_string(entry.h) + " has height " +
                          (h ? std::to_string(*h) : std::string("absent")) + "; ";
            }
        }
        add("height", ok, ok ? "all rungs have their stated height" : detail);
    }

    // Conservation along preimage-chained rungs. Exhaustive rungs are exempt:
    // below the thresholds the map from one sigma to the next genuinely
    // breaks, which is the point of certifying at all.
    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 1; i < file.entries.size(); ++i) {
            const auto& cur = file.entries[i];
            if (cur.cert.kind == CertKind::Exhaustive) continue;
            const auto& prev = file.entries[i - 1];
            if (!prev.sigma.fits_within(cfg.digit_budget)) {
                detail += "rung " + std::to_string(cur.h) + " skipped (budget); ";
                continue;
            }
            if (cur.sigma.power_sum(file.e) != prev.sigma.value(cfg.digit_budget)) {
                ok = false;
                detail += "rung " + std::to_string(cur.h) +
                          " does not map onto rung " + std::to_string(prev.h) + "; ";
            }
        }
        add("conservation", ok, ok ? "chained rungs map exactly" + (detail.empty() ? "" : "; " + detail)
                                   : detail);
    }

    // Re-scan once, far enough to re-derive every exhaustive sigma and every
    // willmap tau in the file.
    std::uint64_t rescan_limit = 0;
    bool rescan_feasible = true;
    for (const auto& entry : file.entries) {
        if (entry.cert.kind == CertKind::Exhaustive) {
            if (!value_at_most(entry.sigma, cfg.scan_limit)) {
                rescan_feasible = false;
                continue;
            }
            rescan_limit = std::max(rescan_limit, entry.sigma.value(21).to_u64());
        } else if (entry.cert.kind == CertKind::Willmap) {
            if (!entry.cert.payload.fits_u64() ||
                entry.cert.payload.to_u64() > cfg.scan_limit) {
                rescan_feasible = false;
                continue;
            }
            rescan_limit = std::max(rescan_limit, entry.cert.payload.to_u64());
        }
    }

    search::HeightScan rescan;
    if (rescan_limit > 0)
        rescan = search::scan_heights(file.u, file.e, file.b, rescan_limit, cfg.workers);

    {
        bool ok = rescan_feasible;
        std::string detail = rescan_feasible
                                 ? "re-scan to " + std::to_string(rescan_limit) + " agrees"
                                 : "an exhaustive rung exceeds the verify scan limit; ";
        for (const auto& entry : file.entries) {
            if (entry.cert.kind != CertKind::Exhaustive) continue;
            if (!value_at_most(entry.sigma, rescan_limit)) continue;
            const std::uint64_t v = entry.sigma.value(21).to_u64();
            if (rescan.sigma(entry.h) != std::optional<std::uint64_t>(v)) {
                ok = false;
                detail += "rung " + std::to_string(entry.h) +
                          " is not the scan minimum at its height; ";
            }
        }
        add("exhaustive", ok, detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 1; i < file.entries.size(); ++i) {
            const auto& cur = file.entries[i];
            if (cur.cert.kind != CertKind::Willmap) continue;
            const auto& prev = file.entries[i - 1];
            if (!prev.sigma.fits_within(cfg.digit_budget)) {
                ok = false;
                detail += "rung " + std::to_string(cur.h) + ": previous rung too large; ";
                continue;
            }
            const BigNat prev_value = prev.sigma.value(cfg.digit_budget);
            const BigNat& tau = cur.cert.payload;
            if (!willmap_holds(prev_value, tau, file.e, file.b)) {
                ok = false;
                detail += "rung " + std::to_string(cur.h) + ": inequality fails; ";
                continue;
            }
            if (tau.fits_u64() && tau.to_u64() <= rescan_limit) {
                if (rescan.tau(prev.h) != std::optional<std::uint64_t>(tau.to_u64())) {
                    ok = false;
                    detail += "rung " + std::to_string(cur.h) +
                              ": tau is not the scan's second minimum; ";
                }
            } else {
                ok = false;
                detail += "rung " + std::to_string(cur.h) + ": tau not re-scannable; ";
            }
        }
        add("willmap", ok, ok ? "hypothesis re-derived for all willmap rungs" : detail);
    }

    {
        bool ok = true;
        std::string detail;
        for (std::size_t i = 1; i < file.entries.size(); ++i) {
            const auto& cur = file.entries[i];
            if (cur.cert.kind != CertKind::Corollary) continue;
            const auto& prev = file.entries[i - 1];
            if (prev.sigma.total_digits() < th.d_cor + BigNat(1)) {
                ok = false;
                detail += "rung " + std::to_string(cur.h) +
                          ": previous rung below b^d_cor; ";
            }
            if (!ninesmap_applicable(prev.sigma, th) || !ninesmap_applicable(cur.sigma, th)) {
                ok = false;
                detail += "rung " + std::to_string(cur.h) +
                          ": trailing run shorter than e+p+1; ";
            }
        }
        add("corollary", ok, ok ? "thresholds re-derived for all corollary rungs" : detail);
    }

    // Trailing-run structure: any rung with at least d = trail_base + delta
    // digits must end in at least delta+1 copies of b-1.
    {
        bool ok = true;
        std::string detail;
        for (const auto& entry : file.entries) {
            const auto delta_max = th.max_delta(entry.sigma.total_digits());
            if (!delta_max || delta_max->is_zero()) continue;
            if (!trailing_run_ok(entry.sigma, *delta_max)) {
                ok = false;
                detail += "rung " + std::to_string(entry.h) + " violates delta=" +
                          delta_max->to_string() + "; ";
            }
        }
        add("trailing-structure", ok,
            ok ? "all sufficiently long rungs end in b-1 runs" : detail);
    }

    // Digit-permutation observation (reported, no criterion known).
    {
        std::string detail;
        for (std::uint64_t h = 0; h < rescan.by_height.size(); ++h) {
            const auto s = rescan.sigma(h);
            const auto t = rescan.tau(h);
            if (!s || !t) continue;
            const bool equal = digit_multiset(*s, file.b) == digit_multiset(*t, file.b);
            detail += "h=" + std::to_string(h) + ":" + (equal ? "true" : "false") + " ";
        }
        add("digit-permutation", true,
            detail.empty() ? "no (sigma, tau) pairs in scan range" : detail);
    }

    return report;
}

}  // namespace happy::ladder
