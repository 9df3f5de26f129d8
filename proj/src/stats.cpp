#include "slicing/stats.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <stdexcept>

namespace slicing {

double clopper_pearson_upper95(int64_t k, int64_t n) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("clopper_pearson: bad (k, n)");
    if (k == n) return 1.0;
    // Upper endpoint solves I_p(k+1, n-k) = 0.95.
    return boost::math::ibeta_inv(static_cast<double>(k + 1), static_cast<double>(n - k), 0.95);
}

double clopper_pearson_lower95(int64_t k, int64_t n) {
    if (n <= 0 || k < 0 || k > n) throw std::invalid_argument("clopper_pearson: bad (k, n)");
    if (k == 0) return 0.0;
    return boost::math::ibeta_inv(static_cast<double>(k), static_cast<double>(n - k + 1), 0.05);
}

McEstimate make_mc_estimate(int64_t events, int64_t samples) {
    McEstimate e;
    e.events = events;
    e.samples = samples;
    e.estimate = static_cast<double>(events) / static_cast<double>(samples);
    e.upper95 = clopper_pearson_upper95(events, samples);
    e.lower95 = clopper_pearson_lower95(events, samples);
    return e;
}

} // namespace slicing
