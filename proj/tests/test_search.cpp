#include <doctest.h>

#include <map>
#include <optional>
#include <vector>

#include "happy/bignat.hpp"
#include "happy/errors.hpp"
#include "happy/search.hpp"

using happy::BigNat;
namespace search = happy::search;

TEST_CASE("power sums on machine integers") {
    CHECK(search::power_sum_u64(78999, 2, 10) == 356);
    CHECK(search::power_sum_u64(7, 2, 10) == 49);
    CHECK(search::power_sum_u64(7, 2, 2) == 3);  // 111 in binary
    CHECK(search::power_sum_u64(0xFFF2, 2, 16) == 3 * 225 + 4);
    CHECK(search::power_sum_value(BigNat(2) * BigNat(10).pow(22) - BigNat(1), 1, 10)
              .to_u64() == 199);
}

TEST_CASE("height by direct iteration") {
    CHECK(search::height(BigNat(7), BigNat(1), 2, 10) == 5);
    CHECK(search::height(BigNat(356), BigNat(356), 2, 10) == 0);
    CHECK_FALSE(search::height(BigNat(2), BigNat(1), 2, 10).has_value());
    CHECK(search::height(BigNat(2), BigNat(4), 2, 10) == 1);
    CHECK(search::height(BigNat(78999), BigNat(1), 2, 10) == 7);
    // A value too large to scan still has a computable height.
    const BigNat big = BigNat(3788) * BigNat(10).pow(973) +
                       (BigNat(10).pow(973) - BigNat(1));
    CHECK(search::height(big, BigNat(1), 2, 10) == 8);
}

TEST_CASE("trajectory records the walk and its cycle entry") {
    auto t = search::trajectory(BigNat(7), 2, 10);
    REQUIRE(t.steps.size() == 6);
    CHECK(t.steps[0].to_u64() == 7);
    CHECK(t.steps[1].to_u64() == 49);
    CHECK(t.steps[5].to_u64() == 1);
    CHECK(t.cycle_entry == 5);

    auto c = search::trajectory(BigNat(4), 2, 10);
    CHECK(c.cycle_entry == 0);
    CHECK(c.steps.size() == 8);
}

TEST_CASE("scan results agree with an independent height oracle") {
    // Oracle: recompute each height by plain iteration with a visited set.
    auto oracle_height = [](std::uint64_t x, std::uint64_t u) -> std::optional<std::uint64_t> {
        std::vector<std::uint64_t> seen;
        std::uint64_t v = x, h = 0;
        while (true) {
            if (v == u) return h;
            for (std::uint64_t s : seen)
                if (s == v) return std::nullopt;
            seen.push_back(v);
            std::uint64_t sum = 0, w = v;
            while (w != 0) {
                sum += (w % 10) * (w % 10);
                w /= 10;
            }
            v = sum;
            ++h;
        }
    };

    const std::uint64_t limit = 10000;
    auto scan = search::scan_heights(BigNat(1), 2, 10, limit);
    std::map<std::uint64_t, std::pair<std::optional<std::uint64_t>, std::optional<std::uint64_t>>>
        expected;
    for (std::uint64_t x = 1; x <= limit; ++x) {
        auto h = oracle_height(x, 1);
        if (!h) continue;
        auto& slot = expected[*h];
        if (!slot.first)
            slot.first = x;
        else if (!slot.second)
            slot.second = x;
    }
    for (auto& [h, pair] : expected) {
        CHECK(scan.sigma(h) == pair.first);
        CHECK(scan.tau(h) == pair.second);
    }
    for (std::uint64_t h = 0; h < scan.by_height.size(); ++h)
        if (scan.sigma(h)) CHECK(expected.count(h) == 1);
}

TEST_CASE("golden sigma and tau at height 7") {
    auto result = search::sigma_tau(7, BigNat(1), 2, 10, 100000);
    REQUIRE(result.sigma.has_value());
    REQUIRE(result.tau.has_value());
    CHECK(result.sigma->to_u64() == 78999);
    CHECK(result.tau->to_u64() == 79899);
    CHECK(result.scan_limit == 100000);
}

TEST_CASE("sigma and tau at height 6, verified digit by digit") {
    auto result = search::sigma_tau(6, BigNat(1), 2, 10, 1000);
    REQUIRE(result.sigma.has_value());
    CHECK(result.sigma->to_u64() == 356);
    REQUIRE(result.tau.has_value());
    CHECK(result.tau->to_u64() == 365);
    // Every value between them fails to have height 6, by direct iteration.
    for (std::uint64_t x = 357; x < 365; ++x)
        CHECK(search::height(BigNat(x), BigNat(1), 2, 10) != std::optional<std::uint64_t>(6));
    CHECK(search::height(BigNat(365), BigNat(1), 2, 10) == 6);
}

TEST_CASE("height 0 extrema are u and nothing else") {
    auto result = search::sigma_tau(0, BigNat(5), 2, 10, 1000);
    CHECK(result.sigma->to_u64() == 5);
    CHECK_FALSE(result.tau.has_value());
}

TEST_CASE("scan answers never change as the limit grows") {
    auto small = search::scan_heights(BigNat(1), 2, 10, 1000);
    auto large = search::scan_heights(BigNat(1), 2, 10, 100000);
    for (std::uint64_t h = 0; h < small.by_height.size(); ++h) {
        if (small.sigma(h)) CHECK(large.sigma(h) == small.sigma(h));
        if (small.tau(h)) CHECK(large.tau(h) == small.tau(h));
    }
}

TEST_CASE("parallel scans are byte-identical to sequential") {
    auto sequential = search::scan_heights(BigNat(1), 2, 10, 100000, 1);
    for (unsigned workers : {2u, 3u, 5u, 8u}) {
        auto parallel = search::scan_heights(BigNat(1), 2, 10, 100000, workers);
        CHECK(parallel.to_lines() == sequential.to_lines());
    }
}

TEST_CASE("cycle inventories") {
    auto c1 = search::find_cycles(2, 10);
    CHECK(c1.contraction_bound.to_u64() == 10000);
    REQUIRE(c1.cycles.size() == 2);
    CHECK(c1.cycles[0] == std::vector<BigNat>{BigNat(1)});
    CHECK(c1.cycles[1] ==
          std::vector<BigNat>{BigNat(4), BigNat(16), BigNat(37), BigNat(58), BigNat(89),
                              BigNat(145), BigNat(42), BigNat(20)});

    auto c2 = search::find_cycles(1, 10);
    REQUIRE(c2.cycles.size() == 9);
    for (std::uint64_t d = 1; d <= 9; ++d)
        CHECK(c2.cycles[d - 1] == std::vector<BigNat>{BigNat(d)});

    auto c3 = search::find_cycles(1, 2);
    REQUIRE(c3.cycles.size() == 1);
    CHECK(c3.cycles[0] == std::vector<BigNat>{BigNat(1)});
}

TEST_CASE("every cycle element returns to itself") {
    for (auto [e, b] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{
             {2, 10}, {3, 10}, {2, 2}, {2, 16}}) {
        auto cycles = search::find_cycles(e, b);
        CHECK(!cycles.cycles.empty());
        for (const auto& cycle : cycles.cycles) {
            std::uint64_t v = cycle.front().to_u64();
            for (std::size_t i = 0; i < cycle.size(); ++i)
                v = search::power_sum_u64(v, e, b);
            CHECK(v == cycle.front().to_u64());
        }
    }
}

TEST_CASE("scan handles attractors outside the reachable region") {
    auto scan = search::scan_heights(BigNat::from_decimal("123456789123456789123"), 2, 10,
                                     1000);
    CHECK(scan.by_height.empty());

    auto self = search::scan_heights(BigNat(500), 1, 10, 1000);
    CHECK(self.sigma(0) == 500);  // u itself is scanned even above the memo
}
