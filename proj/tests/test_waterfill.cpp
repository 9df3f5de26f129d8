#include <random>

#include "doctest.h"
#include "slicing/errors.hpp"
#include "slicing/waterfill.hpp"
#include "support/oracles.hpp"

using namespace slicing;

TEST_CASE("single channel") {
    WaterfillSolution sol = solve_waterfill({{1.0}, 1.0});
    REQUIRE(sol.powers.size() == 1);
    CHECK(sol.powers[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(sol.water_level == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(sol.achieved_rate >= 1.0);
}

TEST_CASE("equal gains split evenly") {
    const double g = 0.7, r_bar = 1.3;
    WaterfillSolution sol = solve_waterfill({{g, g}, r_bar});
    const double expect = (std::exp2(r_bar) - 1.0) / g;
    CHECK(sol.powers[0] == doctest::Approx(sol.powers[1]).epsilon(1e-12));
    CHECK(sol.powers[0] == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("hand-solved KKT case: boundary channel stays off") {
    // gains (1, 1/4), 2 bits total: active set {0}, mu = 4, P = (3, 0).
    WaterfillSolution sol = solve_waterfill({{1.0, 0.25}, 1.0});
    CHECK(sol.water_level == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(sol.powers[0] == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(sol.powers[1] == doctest::Approx(0.0).epsilon(1e-8));
    const double total = sol.powers[0] + sol.powers[1];
    const double oracle = oracles::waterfill_grid_oracle({1.0, 0.25}, 1.0, 1e-3, total + 0.01);
    CHECK(total == doctest::Approx(oracle).epsilon(0).scale(1).epsilon(2e-3));
}

TEST_CASE("degenerate inputs") {
    CHECK_THROWS_AS(solve_waterfill({{0.0, 0.0}, 1.0}), infeasible_error);
    CHECK_THROWS_AS(solve_waterfill({{}, 1.0}), config_error);
    CHECK_THROWS_AS(solve_waterfill({{1.0}, -1.0}), config_error);
    CHECK_THROWS_AS(solve_waterfill({{1.0}, 1.0}, 1e-3), config_error);
}

TEST_CASE("KKT residual and rate equality on random problems") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> gain(0.0, 4.0);
    std::uniform_real_distribution<double> rate(0.1, 2.0);
    std::uniform_int_distribution<int> ksize(1, 12);
    for (int trial = 0; trial < 300; ++trial) {
        WaterfillProblem p;
        p.gains.resize(ksize(gen));
        bool any = false;
        for (double& g : p.gains) {
            g = trial % 3 == 0 && !any ? 0.0 : gain(gen);
            any = any || g > 0.0;
        }
        if (!any) p.gains.back() = 1.0;
        p.r_bar = rate(gen);
        const WaterfillSolution sol = solve_waterfill(p);

        // rate in [r_bar, (1+tol) r_bar]
        CHECK(sol.achieved_rate >= p.r_bar);
        CHECK(sol.achieved_rate - p.r_bar <= 1e-10 * p.r_bar + 1e-15);

        for (size_t k = 0; k < p.gains.size(); ++k) {
            if (sol.powers[k] > 0.0) {
                CHECK(std::fabs(sol.powers[k] + 1.0 / p.gains[k] - sol.water_level) <=
                      1e-10 * sol.water_level);
            } else if (p.gains[k] > 0.0) {
                CHECK(sol.water_level <= 1.0 / p.gains[k]);
            }
        }
    }
}

TEST_CASE("monotonicity: higher rate or fewer channels never cost less") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> gain(0.2, 4.0);
    for (int trial = 0; trial < 100; ++trial) {
        WaterfillProblem p;
        p.gains = {gain(gen), gain(gen), gain(gen), gain(gen)};
        p.r_bar = 0.8;
        auto total = [](const WaterfillSolution& s) {
            double t = 0;
            for (double v : s.powers) t += v;
            return t;
        };
        const double base = total(solve_waterfill(p));

        WaterfillProblem harder = p;
        harder.r_bar = 1.1;
        CHECK(total(solve_waterfill(harder)) >= base - 1e-12);

        // drop the best channel, keep the same total bits
        WaterfillProblem smaller;
        const size_t best =
            std::max_element(p.gains.begin(), p.gains.end()) - p.gains.begin();
        for (size_t k = 0; k < p.gains.size(); ++k)
            if (k != best) smaller.gains.push_back(p.gains[k]);
        smaller.r_bar = p.r_bar * p.gains.size() / smaller.gains.size();
        CHECK(total(solve_waterfill(smaller)) >= base - 1e-12);
    }
}

TEST_CASE("effective SIC gains") {
    CHECK(effective_sic_gains({1.0}, {1.0})[0] == doctest::Approx(0.5));
    CHECK(effective_sic_gains({2.0}, {0.0})[0] == doctest::Approx(2.0));
    CHECK(effective_sic_gains({1.0}, {3.0})[0] == doctest::Approx(0.25));
    CHECK(effective_sic_gains({0.0}, {3.0})[0] == 0.0);
    CHECK_THROWS_AS(effective_sic_gains({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("solve_embb meets the rate and reports no outage") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> gain(0.05, 5.0);
    ResourceGrid grid = ResourceGrid::noma(6, 1);
    ServiceRequirements req{3.0, 1.0, 1e-3, 1, 0};
    for (int trial = 0; trial < 50; ++trial) {
        ChannelState ch;
        ch.rho_u = 1.0;
        ch.gamma_e.resize(6);
        for (double& g : ch.gamma_e) g = gain(gen);
        const RateTargets t = rate_targets(req, grid);
        const WaterfillSolution sol = solve_embb(ch, grid, t);
        PowerAllocation alloc{sol.powers, std::vector<double>(6, 0.0)};
        CHECK(embb_outage(ch.gamma_e, alloc, grid, req) == 0);
    }
}

TEST_CASE("solve_embb single FR and uniform case") {
    ResourceGrid grid = ResourceGrid::noma(1, 1);
    ServiceRequirements req{1.0, 1.0, 1e-3, 1, 0};
    ChannelState ch{{1.0}, 1.0};
    WaterfillSolution sol = solve_embb(ch, grid, rate_targets(req, grid));
    CHECK(sol.powers[0] == doctest::Approx(1.0).epsilon(1e-9));

    ResourceGrid grid12 = ResourceGrid::noma(12, 1);
    ServiceRequirements req12{6.0, 1.0, 1e-3, 1, 0};  // r_bar_e = 0.5
    ChannelState ch12{std::vector<double>(12, 0.9), 1.0};
    sol = solve_embb(ch12, grid12, rate_targets(req12, grid12));
    for (double p : sol.powers)
        CHECK(p == doctest::Approx((std::exp2(0.5) - 1.0) / 0.9).epsilon(1e-9));
}

TEST_CASE("solve_sic reduces to solve_embb when P_e = 0, zero under OMA") {
    ResourceGrid grid = ResourceGrid::noma(3, 1);
    ServiceRequirements req{2.0, 1.5, 1e-3, 1, 0};
    ChannelState ch{{0.5, 1.0, 2.0}, 1.0};
    const RateTargets t = rate_targets(req, grid);

    const WaterfillSolution sic = solve_sic(ch, grid, t, std::vector<double>(3, 0.0));
    ServiceRequirements as_embb = req;
    as_embb.r_e = req.r_u;  // same per-resource target via r_bar
    const WaterfillSolution embb = solve_embb(ch, grid, rate_targets(as_embb, grid));
    for (int f = 0; f < 3; ++f) CHECK(sic.powers[f] == doctest::Approx(embb.powers[f]).epsilon(1e-12));

    // gamma_e = 1, P_e = 1, r_bar_u = 1: effective gain 1/2, power 2
    ResourceGrid g1 = ResourceGrid::noma(1, 1);
    ServiceRequirements r1{1.0, 1.0, 1e-3, 1, 0};
    const WaterfillSolution s1 = solve_sic({{1.0}, 1.0}, g1, rate_targets(r1, g1), {1.0});
    CHECK(s1.powers[0] == doctest::Approx(2.0).epsilon(1e-9));

    ResourceGrid oma = ResourceGrid::oma(3, 1, {0, 1}, {2});
    const WaterfillSolution s2 = solve_sic(ch, oma, t, {0.1, 0.1, 0.0});
    for (double p : s2.powers) CHECK(p == 0.0);
}

TEST_CASE("optimality against the grid oracle (K <= 3)") {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> gain(0.5, 4.0);
    std::uniform_real_distribution<double> rate(0.2, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        const int k = 1 + trial % 3;
        std::vector<double> gains;
        for (int j = 0; j < k; ++j) gains.push_back(gain(gen));
        const double r_bar = rate(gen);
        const WaterfillSolution sol = solve_waterfill({gains, r_bar});
        double total = 0;
        for (double p : sol.powers) total += p;
        const double oracle = oracles::waterfill_grid_oracle(gains, r_bar, 1e-3, total + 0.01);
        CHECK(std::fabs(total - oracle) <= 2e-3);
    }
}
