#include <random>

#include "doctest.h"
#include "slicing/capacity.hpp"

using namespace slicing;

namespace {

ResourceGrid grid1() { return ResourceGrid::noma(1, 1); }

} // namespace

TEST_CASE("info_urllc basic values") {
    PowerAllocation a{{0.0}, {1.0}};
    CHECK(info_urllc({1.0}, a, grid1()) == doctest::Approx(1.0));

    PowerAllocation b{{1.0}, {3.0}};
    CHECK(info_urllc({1.0}, b, grid1()) == doctest::Approx(1.321928094887362).epsilon(1e-12));

    PowerAllocation c{{5.0}, {0.0}};
    CHECK(info_urllc({2.0}, c, grid1()) == 0.0);

    CHECK_THROWS_AS(info_urllc({1.0, 2.0}, a, grid1()), std::invalid_argument);
}

TEST_CASE("info_sic basic values") {
    PowerAllocation a{{0.0}, {1.0}};
    CHECK(info_sic({1.0}, a, grid1()) == doctest::Approx(1.0));

    PowerAllocation b{{1.0}, {1.0}};
    CHECK(info_sic({2.0}, b, grid1()) == doctest::Approx(0.7369655941662062).epsilon(1e-12));

    CHECK(info_sic({0.0}, b, grid1()) == 0.0);
}

TEST_CASE("info_embb basic values and additivity") {
    CHECK(info_embb({1.0}, {{1.0}, {0.0}}, grid1()) == doctest::Approx(1.0));
    CHECK(info_embb({3.0}, {{1.0}, {0.0}}, grid1()) == doctest::Approx(2.0));

    ResourceGrid g2 = ResourceGrid::noma(2, 1);
    CHECK(info_embb({1.0, 3.0}, {{1.0, 1.0}, {0.0, 0.0}}, g2) == doctest::Approx(3.0));
}

TEST_CASE("mini-slot multiplicity scales the sums") {
    ResourceGrid g = ResourceGrid::noma(1, 3);
    PowerAllocation a{{1.0}, {1.0}};
    CHECK(info_embb({1.0}, a, g) == doctest::Approx(3.0));
    CHECK(info_urllc({1.0}, a, g) == doctest::Approx(3.0 * std::log2(1.5)));
}

TEST_CASE("outage predicates use strict inequality") {
    ServiceRequirements req{2.0, 1.0, 1e-3, 1, 0};
    // info_embb = 1 < 2 -> outage
    CHECK(embb_outage({1.0}, {{1.0}, {0.0}}, grid1(), req) == 1);
    // info_embb = 2 with r_e = 2 -> boundary counts as success
    CHECK(embb_outage({1.0}, {{3.0}, {0.0}}, grid1(), req) == 0);
    // sic: gamma=1, P_u=1, P_e=0 -> info 1, r_u=1 -> no outage at the boundary
    CHECK(sic_outage({1.0}, {{0.0}, {1.0}}, grid1(), req) == 0);
    CHECK(sic_outage({1.0}, {{0.0}, {0.9}}, grid1(), req) == 1);
}

TEST_CASE("latency bound") {
    ServiceRequirements req{1.0, 1.0, 1e-5, 4, 1};
    ResourceGrid g = ResourceGrid::noma(1, 2);

    LatencyBound b = latency_outage_bound(g, req);
    CHECK(b.feasible);
    CHECK(b.bound == doctest::Approx(1e-5));

    g = ResourceGrid::noma(1, 4);
    b = latency_outage_bound(g, req);
    CHECK(!b.feasible);

    req.l_max = 4;
    req.delta_u = 0;
    b = latency_outage_bound(g, req);  // M_u = l_max, equality allowed
    CHECK(b.feasible);
}

TEST_CASE("monotonicity of info_urllc in P_u and P_e") {
    std::mt19937_64 gen(99);
    std::uniform_real_distribution<double> unif(0.0, 3.0);
    ResourceGrid g = ResourceGrid::noma(4, 1);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> gamma(4);
        PowerAllocation a{std::vector<double>(4), std::vector<double>(4)};
        for (int f = 0; f < 4; ++f) {
            gamma[f] = unif(gen);
            a.p_embb_mw[f] = unif(gen);
            a.p_urllc_mw[f] = unif(gen);
        }
        const double base = info_urllc(gamma, a, g);
        PowerAllocation up = a;
        up.p_urllc_mw[trial % 4] += 0.5;
        CHECK(info_urllc(gamma, up, g) >= base);
        PowerAllocation interf = a;
        interf.p_embb_mw[trial % 4] += 0.5;
        CHECK(info_urllc(gamma, interf, g) <= base);
    }
}

TEST_CASE("info_urllc equals info_sic on the same gain vector") {
    ResourceGrid g = ResourceGrid::noma(3, 2);
    std::vector<double> gamma{0.3, 1.2, 2.5};
    PowerAllocation a{{0.1, 0.2, 0.3}, {1.0, 0.5, 0.25}};
    CHECK(info_urllc(gamma, a, g) == info_sic(gamma, a, g));
}

TEST_CASE("additivity over disjoint FR sets") {
    ResourceGrid whole = ResourceGrid::noma(4, 1);
    std::vector<double> gamma{0.5, 1.0, 2.0, 4.0};
    PowerAllocation a{{0.4, 0.3, 0.2, 0.1}, {1.0, 2.0, 3.0, 4.0}};

    ResourceGrid left = whole, right = whole;
    left.embb_frs = left.urllc_frs = {0, 1};
    right.embb_frs = right.urllc_frs = {2, 3};
    CHECK(info_urllc(gamma, a, whole) ==
          doctest::Approx(info_urllc(gamma, a, left) + info_urllc(gamma, a, right)).epsilon(1e-14));
}
