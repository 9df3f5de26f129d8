#pragma once

// Test-only oracles, deliberately independent of the library's solution
// paths: grid search for the water-filling optimum and 1-D quadrature for
// the two-resource outage probability.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace oracles {

// Minimum total power for (1/K) sum log2(1 + g_k P_k) >= r_bar by brute
// force. The rate constraint is active at any optimum, so the search walks
// a grid over the first K-1 powers and completes the last one analytically.
// power_bound must be an upper bound on every coordinate of the optimum
// (e.g. a known feasible total).
inline double waterfill_grid_oracle(const std::vector<double>& gains, double r_bar, double step,
                                    double power_bound) {
    const int k = static_cast<int>(gains.size());
    const double total_bits = k * r_bar;
    auto completion = [&](double bits_missing, double g) {
        if (bits_missing <= 0.0) return 0.0;
        if (g <= 0.0) return std::numeric_limits<double>::infinity();
        return (std::exp2(bits_missing) - 1.0) / g;
    };
    double best = std::numeric_limits<double>::infinity();
    if (k == 1) return completion(total_bits, gains[0]);
    const int n1 = static_cast<int>(power_bound / step) + 1;
    if (k == 2) {
        for (int a = 0; a <= n1; ++a) {
            const double p1 = a * step;
            const double bits1 = std::log2(1.0 + gains[0] * p1);
            best = std::min(best, p1 + completion(total_bits - bits1, gains[1]));
        }
        return best;
    }
    // k == 3
    for (int a = 0; a <= n1; ++a) {
        const double p1 = a * step;
        const double bits1 = std::log2(1.0 + gains[0] * p1);
        if (p1 >= best) break;
        for (int b = 0; b <= n1; ++b) {
            const double p2 = b * step;
            if (p1 + p2 >= best) break;
            const double bits2 = std::log2(1.0 + gains[1] * p2);
            best = std::min(best, p1 + p2 + completion(total_bits - bits1 - bits2, gains[2]));
        }
    }
    return best;
}

// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double fa,
                      double fb, double fm, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, fb, frm, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    return simpson(f, a, b, f(a), f(b), f(m), tol, 48);
}

// Pr{ log2(1 + s X1/(1+i X1)) + log2(1 + s X2/(1+i X2)) <= 2 r_bar },
// X ~ Exp(1) i.i.d., by integration over X1.
inline double outage_2fr_quadrature(double s, double i, double r_bar, double tol = 1e-8) {
    const double c = std::exp2(2.0 * r_bar);  // product threshold
    auto ratio = [&](double x) { return (1.0 + (s + i) * x) / (1.0 + i * x); };
    // Conditional outage probability given X1 = x.
    auto conditional = [&](double x) {
        const double t = c / ratio(x);
        if (t <= 1.0) return 0.0;
        const double denom = s + i - t * i;
        if (denom <= 0.0) return 1.0;
        const double z = (t - 1.0) / denom;
        return -std::expm1(-z);
    };
    // Upper limit: beyond ratio(x) >= c the conditional is zero.
    double xmax = 60.0;
    const double denom = s + i - c * i;
    if (denom > 0.0) xmax = std::min(xmax, (c - 1.0) / denom);
    auto integrand = [&](double x) { return std::exp(-x) * conditional(x); };
    return integrate(integrand, 0.0, xmax, tol);
}

} // namespace oracles
