#pragma once

#include <cstdint>

namespace slicing {

/// One-sided 95% Clopper-Pearson bounds for k successes in n Bernoulli
/// trials. upper: smallest p not rejected by a level-0.05 test of
/// H0: p' >= p; equals 1 for k = n. lower: the mirrored bound; 0 for k = 0.
double clopper_pearson_upper95(int64_t k, int64_t n);
double clopper_pearson_lower95(int64_t k, int64_t n);

struct McEstimate {
    double estimate = 0.0;
    double upper95 = 1.0;
    double lower95 = 0.0;
    int64_t events = 0;
    int64_t samples = 0;
};

McEstimate make_mc_estimate(int64_t events, int64_t samples);

} // namespace slicing
