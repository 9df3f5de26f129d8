#pragma once

#include "slicing/capacity.hpp"
#include "slicing/domain.hpp"

namespace slicing {

/// Minimum-power rate-constrained allocation over K parallel channels:
///   minimize sum_k P_k  s.t.  (1/K) sum_k log2(1 + g_k P_k) >= r_bar.
struct WaterfillProblem {
    std::vector<double> gains;  // effective normalized gains, >= 0
    double r_bar = 0.0;         // per-resource average rate target
};

struct WaterfillSolution {
    std::vector<double> powers;   // mW, same length as gains
    double water_level = 0.0;     // mu: P_k = mu - 1/g_k on the active set
    std::vector<int> active_set;  // indices with powers > 0
    double achieved_rate = 0.0;
    int iterations = 0;
};

/// Solves the problem by bisection on the water level. The achieved rate
/// lands in [r_bar, (1+tol)*r_bar]; the KKT identity P_k = mu - 1/g_k holds
/// exactly on the active set by construction. Channels with zero gain are
/// excluded up front; a water level exactly at 1/g_k leaves channel k
/// inactive. Throws infeasible_error when no channel has positive gain and
/// solver_error (with the bracket) if 200 bisection steps do not converge.
WaterfillSolution solve_waterfill(const WaterfillProblem& p, double tol = 1e-10);

/// Gain seen by the URLLC stream at the eMBB receiver once the eMBB power
/// is fixed: g(f) = gamma_e(f) / (1 + gamma_e(f) P_e(f)). Reduces the SIC
/// power problem to standard water-filling.
std::vector<double> effective_sic_gains(const std::vector<double>& gamma_e,
                                        const std::vector<double>& p_embb_mw);

/// Minimum eMBB power meeting r_bar_e over the eMBB resources; zero
/// elsewhere. Guarantees embb_outage == 0 for the returned vector.
WaterfillSolution solve_embb(const ChannelState& channel, const ResourceGrid& grid,
                             const RateTargets& targets);

/// Minimum URLLC power making SIC certain at the eMBB receiver given P_e.
/// Under OMA the SIC requirement is dropped and the zero vector is returned.
WaterfillSolution solve_sic(const ChannelState& channel, const ResourceGrid& grid,
                            const RateTargets& targets, const std::vector<double>& p_embb_mw);

} // namespace slicing
