#pragma once

#include "slicing/domain.hpp"

namespace slicing {

/// Per-resource average rate targets: the service target spread evenly over
/// the resources it owns. Must be recomputed whenever the grid changes.
struct RateTargets {
    double r_bar_e = 0.0;  // r_e / (M_e * F_e)
    double r_bar_u = 0.0;  // r_u / (M_u * F_u)
};

RateTargets rate_targets(const ServiceRequirements& req, const ResourceGrid& grid);

/// Mutual information of the URLLC stream at the URLLC receiver, summed
/// over its resources:
///   M_u * sum_{f in F_u} log2(1 + g_u(f) P_u(f) / (1 + g_u(f) P_e(f))).
/// gamma_u is an instantaneous gain realization of length F.
double info_urllc(const std::vector<double>& gamma_u, const PowerAllocation& alloc,
                  const ResourceGrid& grid);

/// Mutual information of the URLLC stream at the eMBB receiver (the SIC
/// decoding step); same form as info_urllc with gamma_e in place of gamma_u.
double info_sic(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                const ResourceGrid& grid);

/// Mutual information of the eMBB stream after interference cancellation:
///   M_e * sum_{f in F_e} log2(1 + g_e(f) P_e(f)).
double info_embb(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                 const ResourceGrid& grid);

/// Deterministic outage indicators. With known eMBB CSI these are 0/1, not
/// probabilities. Strict inequality: meeting the target exactly is success.
int embb_outage(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                const ResourceGrid& grid, const ServiceRequirements& req);
int sic_outage(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
               const ResourceGrid& grid, const ServiceRequirements& req);

/// Upper bound on the latency-violation probability: eps_u when the grid
/// satisfies M_u <= l_max - delta_u (the deterministic term vanishes),
/// infeasible otherwise.
struct LatencyBound {
    double bound = 1.0;
    bool feasible = false;
};
LatencyBound latency_outage_bound(const ResourceGrid& grid, const ServiceRequirements& req);

} // namespace slicing
