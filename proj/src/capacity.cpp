#include "slicing/capacity.hpp"

#include <cmath>
#include <stdexcept>

namespace slicing {

RateTargets rate_targets(const ServiceRequirements& req, const ResourceGrid& grid) {
    RateTargets t;
    t.r_bar_e = req.r_e / (static_cast<double>(grid.embb_slots) * grid.f_e());
    t.r_bar_u = req.r_u / (static_cast<double>(grid.urllc_slots) * grid.f_u());
    return t;
}

namespace {

void check_len(const std::vector<double>& v, const ResourceGrid& grid, const char* name) {
    if (v.size() != static_cast<size_t>(grid.num_freq))
        throw std::invalid_argument(std::string(name) + ": length must equal F");
}

double sum_sinr_bits(const std::vector<double>& gain, const std::vector<double>& p_signal,
                     const std::vector<double>& p_interf, const std::vector<int>& frs) {
    double bits = 0.0;
    for (int f : frs) {
        const double g = gain[f];
        bits += std::log2(1.0 + g * p_signal[f] / (1.0 + g * p_interf[f]));
    }
    return bits;
}

} // namespace

double info_urllc(const std::vector<double>& gamma_u, const PowerAllocation& alloc,
                  const ResourceGrid& grid) {
    check_len(gamma_u, grid, "gamma_u");
    check_len(alloc.p_urllc_mw, grid, "p_urllc");
    check_len(alloc.p_embb_mw, grid, "p_embb");
    return grid.urllc_slots * sum_sinr_bits(gamma_u, alloc.p_urllc_mw, alloc.p_embb_mw, grid.urllc_frs);
}

double info_sic(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                const ResourceGrid& grid) {
    check_len(gamma_e, grid, "gamma_e");
    check_len(alloc.p_urllc_mw, grid, "p_urllc");
    check_len(alloc.p_embb_mw, grid, "p_embb");
    return grid.urllc_slots * sum_sinr_bits(gamma_e, alloc.p_urllc_mw, alloc.p_embb_mw, grid.urllc_frs);
}

double info_embb(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                 const ResourceGrid& grid) {
    check_len(gamma_e, grid, "gamma_e");
    check_len(alloc.p_embb_mw, grid, "p_embb");
    double bits = 0.0;
    for (int f : grid.embb_frs) bits += std::log2(1.0 + gamma_e[f] * alloc.p_embb_mw[f]);
    return grid.embb_slots * bits;
}

int embb_outage(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
                const ResourceGrid& grid, const ServiceRequirements& req) {
    return info_embb(gamma_e, alloc, grid) < req.r_e ? 1 : 0;
}

int sic_outage(const std::vector<double>& gamma_e, const PowerAllocation& alloc,
               const ResourceGrid& grid, const ServiceRequirements& req) {
    return info_sic(gamma_e, alloc, grid) < req.r_u ? 1 : 0;
}

LatencyBound latency_outage_bound(const ResourceGrid& grid, const ServiceRequirements& req) {
    LatencyBound b;
    b.feasible = grid.urllc_slots <= req.l_max - req.delta_u;
    b.bound = b.feasible ? req.eps_u : 1.0;
    return b;
}

} // namespace slicing
