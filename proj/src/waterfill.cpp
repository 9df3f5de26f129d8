#include "slicing/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "slicing/errors.hpp"

namespace slicing {

namespace {

// Average rate (1/K) sum log2(g * mu) over channels active at water level mu.
// Continuous and nondecreasing in mu; strictly increasing past min(1/g).
double rate_at_level(const std::vector<double>& inv_gains, double mu, int k_total) {
    double bits = 0.0;
    for (double ig : inv_gains)
        if (mu > ig) bits += std::log2(mu / ig);
    return bits / k_total;
}

} // namespace

WaterfillSolution solve_waterfill(const WaterfillProblem& p, double tol) {
    const int k_total = static_cast<int>(p.gains.size());
    if (k_total < 1) throw config_error("waterfill: K must be >= 1");
    if (!(p.r_bar > 0.0)) throw config_error("waterfill: r_bar must be > 0");
    if (!(tol > 0.0 && tol <= 1e-6)) throw config_error("waterfill: tol must be in (0, 1e-6]");

    std::vector<double> inv_gains;  // 1/g for channels that can carry rate
    inv_gains.reserve(p.gains.size());
    for (double g : p.gains) {
        if (g < 0.0) throw config_error("waterfill: gains must be nonnegative");
        if (g > 0.0) inv_gains.push_back(1.0 / g);
    }
    if (inv_gains.empty())
        throw infeasible_error("waterfill: all gains are zero; rate target unreachable");

    const double inv_min = *std::min_element(inv_gains.begin(), inv_gains.end());
    const double inv_max = *std::max_element(inv_gains.begin(), inv_gains.end());
    const double total_bits = k_total * p.r_bar;
    if (total_bits > 1000.0)
        throw solver_error("waterfill: K*r_bar too large for double-precision bracket");

    double lo = inv_min;  // rate 0 here
    double hi = inv_max + k_total * std::exp2(total_bits) * inv_max;
    if (rate_at_level(inv_gains, hi, k_total) < p.r_bar)
        throw solver_error("waterfill: upper bracket does not reach the rate target");

    int iters = 0;
    double rate_hi = rate_at_level(inv_gains, hi, k_total);
    for (; iters < 200; ++iters) {
        if (rate_hi - p.r_bar <= tol * p.r_bar) break;
        const double mid = 0.5 * (lo + hi);
        const double r = rate_at_level(inv_gains, mid, k_total);
        if (r >= p.r_bar) {
            hi = mid;
            rate_hi = r;
        } else {
            lo = mid;
        }
    }
    if (rate_hi - p.r_bar > tol * p.r_bar) {
        std::ostringstream os;
        os << "waterfill: no convergence after 200 iterations; bracket [" << lo << ", " << hi
           << "], rate(hi) = " << rate_hi << ", target " << p.r_bar;
        throw solver_error(os.str());
    }

    WaterfillSolution sol;
    sol.water_level = hi;
    sol.iterations = iters;
    sol.powers.assign(p.gains.size(), 0.0);
    for (size_t k = 0; k < p.gains.size(); ++k) {
        if (p.gains[k] > 0.0 && sol.water_level > 1.0 / p.gains[k]) {
            sol.powers[k] = sol.water_level - 1.0 / p.gains[k];
            sol.active_set.push_back(static_cast<int>(k));
        }
    }
    sol.achieved_rate = rate_hi;
    return sol;
}

std::vector<double> effective_sic_gains(const std::vector<double>& gamma_e,
                                        const std::vector<double>& p_embb_mw) {
    if (gamma_e.size() != p_embb_mw.size())
        throw std::invalid_argument("effective_sic_gains: length mismatch");
    std::vector<double> g(gamma_e.size());
    for (size_t f = 0; f < g.size(); ++f) g[f] = gamma_e[f] / (1.0 + gamma_e[f] * p_embb_mw[f]);
    return g;
}

namespace {

// Solve over a subset of FRs and scatter into full-grid vectors.
WaterfillSolution solve_subset(const std::vector<double>& gains_full, const std::vector<int>& frs,
                               double r_bar, int num_freq, double tol) {
    WaterfillProblem sub;
    sub.r_bar = r_bar;
    sub.gains.reserve(frs.size());
    for (int f : frs) sub.gains.push_back(gains_full[f]);

    WaterfillSolution local = solve_waterfill(sub, tol);

    WaterfillSolution out;
    out.water_level = local.water_level;
    out.achieved_rate = local.achieved_rate;
    out.iterations = local.iterations;
    out.powers.assign(num_freq, 0.0);
    for (size_t k = 0; k < frs.size(); ++k) out.powers[frs[k]] = local.powers[k];
    for (int k : local.active_set) out.active_set.push_back(frs[k]);
    return out;
}

} // namespace

WaterfillSolution solve_embb(const ChannelState& channel, const ResourceGrid& grid,
                             const RateTargets& targets) {
    if (channel.gamma_e.size() != static_cast<size_t>(grid.num_freq))
        throw std::invalid_argument("solve_embb: gamma_e length must equal F");
    return solve_subset(channel.gamma_e, grid.embb_frs, targets.r_bar_e, grid.num_freq, 1e-10);
}

WaterfillSolution solve_sic(const ChannelState& channel, const ResourceGrid& grid,
                            const RateTargets& targets, const std::vector<double>& p_embb_mw) {
    if (channel.gamma_e.size() != static_cast<size_t>(grid.num_freq))
        throw std::invalid_argument("solve_sic: gamma_e length must equal F");
    WaterfillSolution out;
    out.powers.assign(grid.num_freq, 0.0);
    if (grid.mode == Mode::Oma) return out;  // SIC requirement dropped under OMA

    const std::vector<double> eff = effective_sic_gains(channel.gamma_e, p_embb_mw);
    return solve_subset(eff, grid.urllc_frs, targets.r_bar_u, grid.num_freq, 1e-10);
}

} // namespace slicing
