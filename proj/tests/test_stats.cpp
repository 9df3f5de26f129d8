#include <cmath>

#include "doctest.h"
#include "slicing/stats.hpp"

using namespace slicing;

TEST_CASE("clopper-pearson edge cases") {
    // k = 0: upper = 1 - 0.05^(1/n), lower = 0
    const double u0 = clopper_pearson_upper95(0, 100);
    CHECK(u0 == doctest::Approx(1.0 - std::pow(0.05, 1.0 / 100)).epsilon(1e-10));
    CHECK(clopper_pearson_lower95(0, 100) == 0.0);
    // k = n: upper = 1, lower = 0.05^(1/n)
    CHECK(clopper_pearson_upper95(100, 100) == 1.0);
    CHECK(clopper_pearson_lower95(100, 100) ==
          doctest::Approx(std::pow(0.05, 1.0 / 100)).epsilon(1e-10));
}

TEST_CASE("clopper-pearson brackets the estimate and tightens with n") {
    const McEstimate a = make_mc_estimate(10, 1000);
    CHECK(a.lower95 < a.estimate);
    CHECK(a.estimate < a.upper95);
    const McEstimate b = make_mc_estimate(100, 10000);
    CHECK(b.upper95 - b.lower95 < a.upper95 - a.lower95);

    // Large-n normal regime: upper ~ p + 1.645 sqrt(p(1-p)/n)
    const McEstimate c = make_mc_estimate(1000, 1000000);
    const double approx = 1e-3 + 1.645 * std::sqrt(1e-3 * 0.999 / 1e6);
    CHECK(c.upper95 == doctest::Approx(approx).epsilon(0.02));
}
