#pragma once

#include <cstdint>
#include <utility>

#include "slicing/capacity.hpp"
#include "slicing/domain.hpp"
#include "slicing/outage.hpp"
#include "slicing/waterfill.hpp"

namespace slicing {

/// How OMA reserves frequency resources for the URLLC user. The URLLC user
/// has no instantaneous CSI, so every FR looks the same to it; WorstForEmbb
/// hands it the FRs with the lowest eMBB gains, letting the eMBB keep its
/// best channels.
enum class OmaPartition { WorstForEmbb, FirstK, Random };

struct AllocationDiagnostics {
    double water_level_embb = 0.0;
    double water_level_sic = 0.0;
    int worst_fr = -1;  // f*: FR with the strongest eMBB interference (N-fea)
    std::vector<std::pair<size_t, size_t>> table_cells;  // (s_index, i_index) consulted
};

struct AllocationResult {
    ResourceGrid grid;       // the grid the allocation is valid for
    PowerAllocation alloc;   // P_e and P_u* (post max-operator)
    std::vector<double> p_u_sic;  // SIC floor vector [mW], length F
    double p_tot = 0.0;      // M_e * sum P_e + M_u * sum P_u  [mW]
    double p_e_tot = 0.0;
    double p_u_tot = 0.0;
    AllocationDiagnostics diag;
};

/// Worst-interference NOMA allocation: water-fill P_e, water-fill the SIC
/// floor, look up the single power that survives the strongest interference
/// P_e(f*), then raise every FR to max(P_u, P_u_sic(f)). Feasible by
/// construction: the true outage probability is at most eps_u.
AllocationResult allocate_nfea(const ChannelState& channel, const ResourceGrid& grid,
                               const ServiceRequirements& req, const OutageTable& table);

/// Per-resource heuristic: one lookup per FR at that FR's own interference,
/// then the same max with the SIC floor. Spends no more URLLC power than
/// allocate_nfea but carries no feasibility guarantee.
AllocationResult allocate_nheu(const ChannelState& channel, const ResourceGrid& grid,
                               const ServiceRequirements& req, const OutageTable& table);

/// Orthogonal baseline reserving urllc_share of the FRs for URLLC (the
/// partition policy picks which ones). SIC is not needed and the URLLC
/// lookup sees zero interference; the feasible and heuristic variants
/// coincide here. partition_seed is used only by the Random policy.
AllocationResult allocate_oma(const ChannelState& channel, const ResourceGrid& grid,
                              const ServiceRequirements& req, const OutageTable& table,
                              double urllc_share,
                              OmaPartition policy = OmaPartition::WorstForEmbb,
                              uint64_t partition_seed = 0);

/// Independent Monte Carlo check of the URLLC outage with the actual
/// per-FR power vectors (not the table's uniform-power assumption).
McEstimate verify_outage(const AllocationResult& result, const ChannelState& channel,
                         const ResourceGrid& grid, const ServiceRequirements& req, int64_t n,
                         uint64_t seed, int64_t chunk = 100000, uint64_t stream_label = 0);

} // namespace slicing
