#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "happy/bignat.hpp"
#include "happy/errors.hpp"
#include "happy/ladder.hpp"
#include "happy/preimage.hpp"
#include "happy/rle.hpp"
#include "happy/search.hpp"
#include "happy/waring.hpp"

namespace {

using happy::BigNat;
using happy::RleNumber;

struct Options {
    std::uint64_t e = 2;
    std::uint32_t b = 10;
    std::string u = "1";
    std::uint64_t scan_limit = 10'000'000;
    std::uint64_t dp_cap = happy::waring::kDefaultDpCap;
    std::uint64_t digit_budget = RleNumber::kDefaultDigitBudget;
    unsigned workers = 0;
    std::string format = "text";

    bool lines() const { return format == "lines"; }
    unsigned effective_workers() const {
        if (workers != 0) return workers;
        unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : hw;
    }
    happy::ladder::LadderConfig ladder_config() const {
        return happy::ladder::LadderConfig{
            e, b, BigNat::from_decimal(u), scan_limit, dp_cap, digit_budget,
            effective_workers()};
    }
};

void add_common(CLI::App* cmd, Options& opt, bool with_u = true) {
    cmd->add_option("--e", opt.e, "exponent e >= 1")->capture_default_str();
    cmd->add_option("--b", opt.b, "base b >= 2")->capture_default_str();
    if (with_u)
        cmd->add_option("--u", opt.u, "attractor u (decimal)")->capture_default_str();
}

std::string trailing_len(const RleNumber& x) {
    const happy::Run& last = x.trailing_run();
    return last.digit == x.base() - 1 ? last.count.to_string() : "0";
}

void print_summary(const std::vector<happy::ladder::LadderEntry>& entries,
                   const Options& opt, std::ostream& out) {
    if (opt.lines()) {
        for (const auto& entry : entries)
            out << "rung h=" << entry.h << " digits=" << entry.sigma.total_digits().to_string()
                << " trail=" << trailing_len(entry.sigma)
                << " cert=" << entry.cert.to_string() << '\n';
        return;
    }
    out << "  h  digits  trailing  certificate\n";
    for (const auto& entry : entries)
        out << "  " << entry.h << "  " << entry.sigma.total_digits().to_string() << "  "
            << trailing_len(entry.sigma) << "  " << entry.cert.to_string() << '\n';
}

int run_spsum(const std::string& x_text, const Options& opt) {
    RleNumber x = RleNumber::parse(x_text, opt.b);
    std::cout << x.power_sum(opt.e).to_string() << '\n';
    return 0;
}

int run_height(const std::string& x_text, const Options& opt) {
    const BigNat x = BigNat::from_decimal(x_text);
    const BigNat u = BigNat::from_decimal(opt.u);
    auto h = happy::search::height(x, u, opt.e, opt.b);
    if (opt.lines())
        std::cout << "height=" << (h ? std::to_string(*h) : std::string("absent")) << '\n';
    else if (h)
        std::cout << "height " << *h << '\n';
    else
        std::cout << "unreachable\n";
    return 0;
}

int run_cycles(const Options& opt, std::uint64_t cap) {
    auto cycles = happy::search::find_cycles(opt.e, opt.b, cap);
    if (opt.lines()) {
        std::cout << "bound=" << cycles.contraction_bound.to_string() << '\n';
        for (const auto& cycle : cycles.cycles) {
            std::cout << "cycle=";
            for (std::size_t i = 0; i < cycle.size(); ++i)
                std::cout << (i ? "," : "") << cycle[i].to_string();
            std::cout << '\n';
        }
        return 0;
    }
    std::cout << "contraction bound: " << cycles.contraction_bound.to_string() << '\n';
    for (const auto& cycle : cycles.cycles) {
        std::cout << (cycle.size() == 1 ? "fixed point:" : "cycle:");
        for (const auto& v : cycle) std::cout << ' ' << v.to_string();
        std::cout << '\n';
    }
    return 0;
}

int run_sigma(std::uint64_t h, const Options& opt) {
    auto result = happy::search::sigma_tau(h, BigNat::from_decimal(opt.u), opt.e, opt.b,
                                           opt.scan_limit, opt.effective_workers());
    auto render = [](const std::optional<BigNat>& v) {
        return v ? v->to_string() : std::string("absent");
    };
    if (opt.lines())
        std::cout << "sigma=" << render(result.sigma) << "\ntau=" << render(result.tau)
                  << "\nlimit=" << result.scan_limit << '\n';
    else
        std::cout << "sigma=" << render(result.sigma) << " tau=" << render(result.tau)
                  << " (scanned to " << result.scan_limit << ")\n";
    return 0;
}

int run_ladder(std::uint64_t target, const std::string& out_path, const Options& opt) {
    auto cfg = opt.ladder_config();
    std::vector<happy::ladder::LadderEntry> entries;

    if (!out_path.empty()) {
        std::ifstream existing(out_path);
        if (existing.good()) {
            happy::ladder::LadderFile prior = happy::ladder::read_ladder(existing);
            if (prior.e != cfg.e || prior.b != cfg.b || prior.u != cfg.u)
                throw std::invalid_argument("existing ladder file " + out_path +
                                            " was built for different e/b/u");
            entries = std::move(prior.entries);
        }
    }

    auto result = happy::ladder::extend(std::move(entries), target, cfg);
    happy::ladder::LadderFile file{cfg.e, cfg.b, cfg.u, std::move(result.entries)};

    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::trunc);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        happy::ladder::write_ladder(out, file);
    } else {
        happy::ladder::write_ladder(std::cout, file);
    }
    print_summary(file.entries, opt, std::cout);

    if (result.status == happy::ladder::ExtendStatus::Truncated) {
        std::cout << "truncated: " << result.note << '\n';
        std::cout << "last exact rung: h=" << file.entries.back().h
                  << " sigma=" << file.entries.back().sigma.to_string() << '\n';
        return 3;
    }
    return 0;
}

std::map<std::uint32_t, BigNat> digit_multiset(const RleNumber& x) {
    std::map<std::uint32_t, BigNat> counts;
    for (const auto& run : x.runs()) {
        auto [it, inserted] = counts.try_emplace(run.digit, run.count);
        if (!inserted) it->second += run.count;
    }
    return counts;
}

int run_verify_ladder(const std::string& path, const Options& opt) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read " + path);
    happy::ladder::LadderFile file = happy::ladder::read_ladder(in);
    Options local = opt;
    local.e = file.e;
    local.b = file.b;
    local.u = file.u.to_string();
    auto report = happy::ladder::verify_ladder(file, local.ladder_config());
    for (const auto& check : report.checks)
        std::cout << (check.pass ? "[ok]   " : "[FAIL] ") << check.name << ": "
                  << check.detail << '\n';
    return report.all_pass() ? 0 : 1;
}

int run_verify_pair(const std::string& sigma_text, const std::string& tau_text,
                    const Options& opt) {
    RleNumber sigma = RleNumber::parse(sigma_text, opt.b);
    RleNumber tau = RleNumber::parse(tau_text, opt.b);
    const bool equal = digit_multiset(sigma) == digit_multiset(tau);
    std::cout << "digit multisets equal: " << (equal ? "true" : "false") << '\n';
    return 0;
}

int run_verify_brute(std::uint64_t limit, const Options& opt) {
    const BigNat u = BigNat::from_decimal(opt.u);
    auto scan = happy::search::scan_heights(u, opt.e, opt.b, limit,
                                            opt.effective_workers());
    auto th = happy::waring::thresholds(opt.e, opt.b);
    bool ok = true;
    for (std::uint64_t h = 0; h < scan.by_height.size(); ++h) {
        const auto s = scan.sigma(h);
        if (!s) continue;
        const auto t = scan.tau(h);
        auto direct = happy::search::height(BigNat(*s), u, opt.e, opt.b);
        if (!direct || *direct != h) {
            std::cout << "[FAIL] height: scan found " << *s << " at height " << h
                      << " but direct iteration disagrees\n";
            ok = false;
        }
        if (t && *t <= *s) {
            std::cout << "[FAIL] order: tau <= sigma at height " << h << '\n';
            ok = false;
        }
        const RleNumber sigma_rle = RleNumber::from_value(BigNat(*s), opt.b);
        if (auto delta = th.max_delta(sigma_rle.total_digits());
            delta && !delta->is_zero() && !happy::ladder::trailing_run_ok(sigma_rle, *delta)) {
            std::cout << "[FAIL] trailing-structure: sigma at height " << h << '\n';
            ok = false;
        }
        if (t) {
            const RleNumber tau_rle = RleNumber::from_value(BigNat(*t), opt.b);
            std::cout << "h=" << h << " sigma=" << *s << " tau=" << *t
                      << " digit multisets equal: "
                      << (digit_multiset(sigma_rle) == digit_multiset(tau_rle) ? "true"
                                                                               : "false")
                      << '\n';
        }
    }
    std::cout << (ok ? "[ok] brute-force checks passed to " : "[FAIL] violations up to ")
              << limit << '\n';
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact digit power-sum dynamics: heights, cycles, minimal preimages, "
                 "and certified sigma-ladders"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "lines"}))
        ->capture_default_str();

    std::string x_text, out_path, ladder_path, sigma_text, tau_text;
    std::uint64_t target_h = 0, height_arg = 0, brute_limit = 0, cycle_cap = 100'000'000;

    CLI::App* spsum = app.add_subcommand("spsum", "apply S_{e,b} once to an RLE number");
    spsum->add_option("x", x_text, "number (RLE text in base b)")->required();
    add_common(spsum, opt, false);

    CLI::App* height = app.add_subcommand("height", "height of x with respect to u");
    height->add_option("--x", x_text, "start value (decimal)")->required();
    add_common(height, opt);

    CLI::App* cycles = app.add_subcommand("cycles", "cycle inventory below the contraction bound");
    add_common(cycles, opt, false);
    cycles->add_option("--cap", cycle_cap, "largest allowed contraction bound")
        ->capture_default_str();

    CLI::App* sigma = app.add_subcommand("sigma", "smallest and second-smallest height-h numbers");
    sigma->set_help_flag("--help", "print help");  // frees -h for the height option
    sigma->add_option("--h", height_arg, "height")->required();
    add_common(sigma, opt);
    sigma->add_option("--scan-limit", opt.scan_limit, "exhaustive scan bound")
        ->capture_default_str();
    sigma->add_option("--workers", opt.workers, "scan workers (0 = hardware)");

    CLI::App* ladder = app.add_subcommand("ladder", "build a certified sigma-ladder");
    add_common(ladder, opt);
    ladder->add_option("--to", target_h, "target height")->required();
    ladder->add_option("--scan-limit", opt.scan_limit, "exhaustive scan bound")
        ->capture_default_str();
    ladder->add_option("--digit-budget", opt.digit_budget, "materialization budget (digits)")
        ->capture_default_str();
    ladder->add_option("--dp-cap", opt.dp_cap, "dynamic programming cap")
        ->capture_default_str();
    ladder->add_option("--out", out_path, "ladder file (resumes if it exists)");
    ladder->add_option("--workers", opt.workers, "scan workers (0 = hardware)");

    CLI::App* verify = app.add_subcommand("verify", "re-derive ladder certificates and invariants");
    verify->add_option("--ladder", ladder_path, "ladder file to verify");
    verify->add_option("--sigma", sigma_text, "sigma (RLE text) for the permutation report");
    verify->add_option("--tau", tau_text, "tau (RLE text) for the permutation report");
    verify->add_option("--limit", brute_limit, "brute-force verification bound");
    add_common(verify, opt);
    verify->add_option("--scan-limit", opt.scan_limit, "re-scan bound for exhaustive rungs")
        ->capture_default_str();
    verify->add_option("--workers", opt.workers, "scan workers (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (spsum->parsed()) return run_spsum(x_text, opt);
        if (height->parsed()) return run_height(x_text, opt);
        if (cycles->parsed()) return run_cycles(opt, cycle_cap);
        if (sigma->parsed()) return run_sigma(height_arg, opt);
        if (ladder->parsed()) return run_ladder(target_h, out_path, opt);
        if (verify->parsed()) {
            if (!ladder_path.empty()) return run_verify_ladder(ladder_path, opt);
            if (!sigma_text.empty() && !tau_text.empty())
                return run_verify_pair(sigma_text, tau_text, opt);
            if (brute_limit > 0) return run_verify_brute(brute_limit, opt);
            std::cerr << "verify needs --ladder, --sigma/--tau, or --limit\n";
            return 2;
        }
    } catch (const happy::CapExceeded& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const happy::RepresentationOverflow& e) {
        std::cerr << "representation overflow: " << e.what() << '\n';
        return 3;
    } catch (const happy::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
