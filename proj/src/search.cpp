#include "happy/search.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <map>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "happy/errors.hpp"

namespace happy::search {

namespace {

// Digit powers d^e for d < b, or nullopt when any of them overflows u64.
std::optional<std::vector<std::uint64_t>> digit_powers(std::uint64_t e, std::uint32_t b) {
    std::vector<std::uint64_t> powers(b);
    for (std::uint32_t d = 0; d < b; ++d) {
        std::uint64_t p = 1;
        for (std::uint64_t i = 0; i < e; ++i) {
            if (d != 0 && p > std::numeric_limits<std::uint64_t>::max() / d)
                return std::nullopt;
            p *= d;
        }
        powers[d] = p;
    }
    return powers;
}

std::uint64_t digit_count_u64(std::uint64_t x, std::uint32_t b) {
    std::uint64_t n = 0;
    while (x != 0) {
        ++n;
        x /= b;
    }
    return n;
}

struct Stepper {
    std::uint64_t e;
    std::uint32_t b;
    std::vector<std::uint64_t> powers;

    Stepper(std::uint64_t e_, std::uint32_t b_) : e(e_), b(b_) {
        if (b < 2) throw std::invalid_argument("base must be >= 2");
        if (e < 1) throw std::invalid_argument("e must be >= 1");
        auto p = digit_powers(e, b);
        if (!p)
            throw std::overflow_error("digit powers overflow 64 bits for this (e, b)");
        powers = std::move(*p);
    }

    std::uint64_t operator()(std::uint64_t x) const {
        unsigned __int128 sum = 0;
        while (x != 0) {
            sum += powers[x % b];
            x /= b;
        }
        if (sum > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("power sum overflows 64 bits");
        return static_cast<std::uint64_t>(sum);
    }
};

}  // namespace

std::uint64_t power_sum_u64(std::uint64_t x, std::uint64_t e, std::uint32_t b) {
    return Stepper(e, b)(x);
}

BigNat power_sum_value(const BigNat& x, std::uint64_t e, std::uint32_t b) {
    if (x.is_zero()) throw std::invalid_argument("power sum of 0 is undefined here");
    if (x.fits_u64()) {
        // Digit powers can overflow u64 even for small x; fall through then.
        auto powers = digit_powers(e, b);
        if (powers) {
            unsigned __int128 sum = 0;
            std::uint64_t v = x.to_u64();
            bool safe = true;
            while (v != 0) {
                sum += (*powers)[v % b];
                if (sum > std::numeric_limits<std::uint64_t>::max()) {
                    safe = false;
                    break;
                }
                v /= b;
            }
            if (safe) return BigNat(static_cast<std::uint64_t>(sum));
        }
    }
    return RleNumber::from_value(x, b).power_sum(e);
}

Trajectory trajectory(const BigNat& x, std::uint64_t e, std::uint32_t b) {
    Trajectory t;
    t.start = x;
    std::map<std::string, std::size_t> seen;
    BigNat current = x;
    while (true) {
        auto [it, inserted] = seen.emplace(current.to_string(), t.steps.size());
        if (!inserted) {
            t.cycle_entry = it->second;
            return t;
        }
        t.steps.push_back(current);
        current = power_sum_value(current, e, b);
    }
}

std::optional<std::uint64_t> height(const BigNat& x, const BigNat& u,
                                    std::uint64_t e, std::uint32_t b) {
    if (x.is_zero() || u.is_zero())
        throw std::invalid_argument("height requires positive x and u");
    std::uint64_t h = 0;
    BigNat current = x;
    // Big values collapse to machine scale after one application; loop until
    // both the iterate and u are comparable as u64.
    while (!current.fits_u64()) {
        if (current == u) return h;
        current = power_sum_value(current, e, b);
        ++h;
    }
    if (!u.fits_u64()) return std::nullopt;  // iterates only shrink from here
    const std::uint64_t target = u.to_u64();
    Stepper step(e, b);
    std::uint64_t v = current.to_u64();
    std::unordered_set<std::uint64_t> visited;
    while (true) {
        if (v == target) return h;
        if (!visited.insert(v).second) return std::nullopt;
        v = step(v);
        ++h;
    }
}

namespace {

constexpr std::int32_t kHeightUnknown = -2;
constexpr std::int32_t kHeightAbsent = -1;

// Heights of every value in [1, bound] with respect to u, or -1 when the
// trajectory never reaches u. bound must be closed under S.
std::vector<std::int32_t> height_table(std::uint64_t bound, std::uint64_t u,
                                       const Stepper& step) {
    std::vector<std::int32_t> h(bound + 1, kHeightUnknown);
    std::vector<std::uint64_t> path;
    for (std::uint64_t x = 1; x <= bound; ++x) {
        if (h[x] != kHeightUnknown) continue;
        path.clear();
        std::uint64_t y = x;
        while (h[y] == kHeightUnknown && y != u) {
            // Mark as on-path via a sentinel derived from the path index.
            h[y] = kHeightUnknown - 1 - static_cast<std::int32_t>(path.size());
            path.push_back(y);
            y = step(y);
            assert(y <= bound);
        }
        if (y == u && h[y] == kHeightUnknown) h[y] = 0;
        if (h[y] < kHeightUnknown) {
            // Closed a cycle that does not contain u: everything on it and
            // leading into it is absent.
            for (std::uint64_t v : path) h[v] = kHeightAbsent;
            continue;
        }
        std::int32_t base = h[y];
        for (std::size_t i = path.size(); i-- > 0;) {
            if (base == kHeightAbsent)
                h[path[i]] = kHeightAbsent;
            else
                h[path[i]] = base + static_cast<std::int32_t>(path.size() - i);
        }
    }
    return h;
}

struct TwoSmallest {
    std::optional<std::uint64_t> first;
    std::optional<std::uint64_t> second;

    void offer(std::uint64_t v) {
        if (!first || v < *first) {
            second = first;
            first = v;
        } else if (v != *first && (!second || v < *second)) {
            second = v;
        }
    }
};

}  // namespace

std::optional<std::uint64_t> HeightScan::sigma(std::uint64_t h) const {
    if (h >= by_height.size()) return std::nullopt;
    return by_height[h].sigma;
}

std::optional<std::uint64_t> HeightScan::tau(std::uint64_t h) const {
    if (h >= by_height.size()) return std::nullopt;
    return by_height[h].tau;
}

std::string HeightScan::to_lines() const {
    std::string out;
    for (std::size_t h = 0; h < by_height.size(); ++h) {
        out += "h=" + std::to_string(h);
        out += " sigma=" +
               (by_height[h].sigma ? std::to_string(*by_height[h].sigma) : std::string("absent"));
        out += " tau=" +
               (by_height[h].tau ? std::to_string(*by_height[h].tau) : std::string("absent"));
        out += '\n';
    }
    return out;
}

HeightScan scan_heights(const BigNat& u, std::uint64_t e, std::uint32_t b,
                        std::uint64_t scan_limit, unsigned workers,
                        std::uint64_t memo_cap) {
    HeightScan scan;
    scan.e = e;
    scan.b = b;
    scan.scan_limit = scan_limit;
    if (!u.fits_u64()) return scan;  // nothing below the limit can reach u
    scan.u = u.to_u64();
    if (scan.u == 0) throw std::invalid_argument("u must be positive");
    if (scan_limit == 0) return scan;

    Stepper step(e, b);

    // The memo region must be closed under S so the height chase stays
    // inside it: grow until digits(bound) * (b-1)^e <= bound.
    const std::uint64_t max_power = step.powers[b - 1];
    auto grown = [&](std::uint64_t current) {
        const std::uint64_t d = digit_count_u64(current, b);
        if (d > memo_cap / max_power)
            throw CapExceeded("height memo would exceed cap " + std::to_string(memo_cap));
        return d * max_power;
    };
    std::uint64_t bound = std::max<std::uint64_t>(grown(scan_limit), 2);
    for (std::uint64_t next = grown(bound); next > bound; next = grown(bound))
        bound = next;
    if (bound > memo_cap)
        throw CapExceeded("height memo would need " + std::to_string(bound) +
                          " entries (cap " + std::to_string(memo_cap) + ")");

    if (scan.u > bound) {
        // u lies beyond every value reachable from the scan range after one
        // application of S, so only u itself can have a height.
        if (scan.u <= scan_limit) {
            scan.by_height.resize(1);
            scan.by_height[0].sigma = scan.u;
        }
        return scan;
    }

    const std::vector<std::int32_t> memo = height_table(bound, scan.u, step);

    const unsigned n_workers = std::max(1u, workers);
    std::vector<std::vector<TwoSmallest>> local(n_workers);
    auto scan_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<TwoSmallest>& acc) {
        Stepper local_step(e, b);
        for (std::uint64_t x = lo; x <= hi; ++x) {
            std::int32_t h;
            if (x == scan.u) {
                h = 0;
            } else if (x <= bound) {
                h = memo[x];
            } else {
                std::int32_t below = memo[local_step(x)];
                h = below >= 0 ? below + 1 : kHeightAbsent;
            }
            if (h < 0) continue;
            if (static_cast<std::size_t>(h) >= acc.size()) acc.resize(h + 1);
            acc[h].offer(x);
        }
    };

    if (n_workers == 1) {
        scan_range(1, scan_limit, local[0]);
    } else {
        const std::uint64_t chunk = (scan_limit + n_workers - 1) / n_workers;
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < n_workers; ++w) {
            const std::uint64_t lo = 1 + w * chunk;
            if (lo > scan_limit) break;
            const std::uint64_t hi = std::min(scan_limit, lo + chunk - 1);
            threads.emplace_back(scan_range, lo, hi, std::ref(local[w]));
        }
        for (auto& t : threads) t.join();
    }

    // Deterministic two-minima merge: independent of chunking.
    std::size_t max_h = 0;
    for (const auto& acc : local) max_h = std::max(max_h, acc.size());
    scan.by_height.resize(max_h);
    for (std::size_t h = 0; h < max_h; ++h) {
        TwoSmallest merged;
        for (const auto& acc : local) {
            if (h >= acc.size()) continue;
            if (acc[h].first) merged.offer(*acc[h].first);
            if (acc[h].second) merged.offer(*acc[h].second);
        }
        scan.by_height[h].sigma = merged.first;
        scan.by_height[h].tau = merged.second;
    }
    return scan;
}

SigmaTau sigma_tau(std::uint64_t h, const BigNat& u, std::uint64_t e, std::uint32_t b,
                   std::uint64_t scan_limit, unsigned workers) {
    HeightScan scan = scan_heights(u, e, b, scan_limit, workers);
    SigmaTau result;
    result.scan_limit = scan_limit;
    if (auto s = scan.sigma(h)) result.sigma = BigNat(*s);
    if (auto t = scan.tau(h)) result.tau = BigNat(*t);
    return result;
}

CycleSet find_cycles(std::uint64_t e, std::uint32_t b, std::uint64_t scan_cap) {
    Stepper step(e, b);
    const std::uint64_t max_power = step.powers[b - 1];

    // Smallest n with n*(b-1)^e < b^(n-1); M = b^n then satisfies S(x) < M
    // for every x <= M, so [1, M] traps all trajectories.
    std::uint64_t n = 1;
    BigNat b_pow(1);  // b^(n-1)
    while (BigNat(n) * BigNat(max_power) >= b_pow) {
        ++n;
        b_pow = b_pow * BigNat(b);
    }
    const BigNat m_big = b_pow * BigNat(b);
    if (m_big > BigNat(scan_cap))
        throw RepresentationOverflow("contraction bound " + m_big.to_string() +
                                     " exceeds cycle scan cap " +
                                     std::to_string(scan_cap));
    const std::uint64_t m = m_big.to_u64();

    CycleSet out;
    out.e = e;
    out.b = b;
    out.contraction_bound = m_big;

    enum : std::uint8_t { kWhite = 0, kGray = 1, kBlack = 2 };
    std::vector<std::uint8_t> color(m + 1, kWhite);
    std::vector<std::uint64_t> path;
    for (std::uint64_t x = 1; x <= m; ++x) {
        if (color[x] != kWhite) continue;
        path.clear();
        std::uint64_t y = x;
        while (y <= m && color[y] == kWhite) {
            color[y] = kGray;
            path.push_back(y);
            y = step(y);
        }
        if (y <= m && color[y] == kGray) {
            // New cycle: the path suffix starting at y.
            auto it = std::find(path.begin(), path.end(), y);
            std::vector<std::uint64_t> cycle(it, path.end());
            std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()),
                        cycle.end());
            std::vector<BigNat> as_big;
            as_big.reserve(cycle.size());
            for (std::uint64_t v : cycle) as_big.emplace_back(v);
            out.cycles.push_back(std::move(as_big));
        }
        for (std::uint64_t v : path) color[v] = kBlack;
    }
    std::sort(out.cycles.begin(), out.cycles.end(),
              [](const auto& a, const auto& c) { return a.front() < c.front(); });
    return out;
}

}  // namespace happy::search
