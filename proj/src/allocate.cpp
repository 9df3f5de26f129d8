#include "slicing/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "slicing/errors.hpp"
#include "slicing/rng.hpp"

namespace slicing {

namespace {

void require_valid(const ResourceGrid& grid, const ServiceRequirements& req) {
    const std::vector<std::string> violations = validate(grid, req);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "allocation rejected:";
        for (const std::string& v : violations) os << " [" << v << "]";
        throw infeasible_error(os.str());
    }
}

void require_table_match(const OutageTable& table, const ResourceGrid& grid,
                         const RateTargets& targets, double eps_u) {
    if (table.meta.f_u != grid.f_u())
        throw config_error("outage table F_u does not match the grid");
    const double rel = std::fabs(table.meta.r_bar_u - targets.r_bar_u) /
                       std::max(targets.r_bar_u, 1e-300);
    if (rel > 1e-9) throw config_error("outage table r_bar_u does not match the requirements");
    if (eps_u < table.meta.eps_target)
        throw config_error("outage table eps_target is looser than the requested eps_u");
}

void finish_totals(AllocationResult& r) {
    r.p_e_tot = r.grid.embb_slots *
                std::accumulate(r.alloc.p_embb_mw.begin(), r.alloc.p_embb_mw.end(), 0.0);
    r.p_u_tot = r.grid.urllc_slots *
                std::accumulate(r.alloc.p_urllc_mw.begin(), r.alloc.p_urllc_mw.end(), 0.0);
    r.p_tot = r.p_e_tot + r.p_u_tot;
}

// Lowest index among the argmax of P_e over the URLLC resources.
int worst_interference_fr(const std::vector<double>& p_embb, const std::vector<int>& urllc_frs) {
    int best = urllc_frs.front();
    for (int f : urllc_frs)
        if (p_embb[f] > p_embb[best]) best = f;
    return best;
}

} // namespace

AllocationResult allocate_nfea(const ChannelState& channel, const ResourceGrid& grid,
                               const ServiceRequirements& req, const OutageTable& table) {
    if (grid.mode != Mode::Noma) throw config_error("allocate_nfea: NOMA grid required");
    require_valid(grid, req);
    const RateTargets targets = rate_targets(req, grid);
    require_table_match(table, grid, targets, req.eps_u);

    AllocationResult r;
    r.grid = grid;
    const WaterfillSolution embb = solve_embb(channel, grid, targets);
    const WaterfillSolution sic = solve_sic(channel, grid, targets, embb.powers);
    r.diag.water_level_embb = embb.water_level;
    r.diag.water_level_sic = sic.water_level;
    r.p_u_sic = sic.powers;

    r.diag.worst_fr = worst_interference_fr(embb.powers, grid.urllc_frs);
    const LookupResult lu =
        min_power_lookup(table, embb.powers[r.diag.worst_fr], channel.rho_u, req.eps_u);
    r.diag.table_cells.push_back({lu.s_index, lu.i_index});

    r.alloc.p_embb_mw = embb.powers;
    r.alloc.p_urllc_mw.assign(grid.num_freq, 0.0);
    for (int f : grid.urllc_frs) r.alloc.p_urllc_mw[f] = std::max(lu.p_u_mw, sic.powers[f]);
    finish_totals(r);
    return r;
}

AllocationResult allocate_nheu(const ChannelState& channel, const ResourceGrid& grid,
                               const ServiceRequirements& req, const OutageTable& table) {
    if (grid.mode != Mode::Noma) throw config_error("allocate_nheu: NOMA grid required");
    require_valid(grid, req);
    const RateTargets targets = rate_targets(req, grid);
    require_table_match(table, grid, targets, req.eps_u);

    AllocationResult r;
    r.grid = grid;
    const WaterfillSolution embb = solve_embb(channel, grid, targets);
    const WaterfillSolution sic = solve_sic(channel, grid, targets, embb.powers);
    r.diag.water_level_embb = embb.water_level;
    r.diag.water_level_sic = sic.water_level;
    r.p_u_sic = sic.powers;
    r.diag.worst_fr = worst_interference_fr(embb.powers, grid.urllc_frs);

    r.alloc.p_embb_mw = embb.powers;
    r.alloc.p_urllc_mw.assign(grid.num_freq, 0.0);
    for (int f : grid.urllc_frs) {
        const LookupResult lu = min_power_lookup(table, embb.powers[f], channel.rho_u, req.eps_u);
        r.diag.table_cells.push_back({lu.s_index, lu.i_index});
        r.alloc.p_urllc_mw[f] = std::max(lu.p_u_mw, sic.powers[f]);
    }
    finish_totals(r);
    return r;
}

AllocationResult allocate_oma(const ChannelState& channel, const ResourceGrid& grid,
                              const ServiceRequirements& req, const OutageTable& table,
                              double urllc_share, OmaPartition policy, uint64_t partition_seed) {
    if (grid.mode != Mode::Oma) throw config_error("allocate_oma: OMA grid required");
    const int f = grid.num_freq;
    const double exact = urllc_share * f;
    const int f_u = static_cast<int>(std::lround(exact));
    if (std::fabs(exact - f_u) > 1e-9)
        throw config_error("allocate_oma: urllc_share * F must be an integer");
    if (f_u < 1 || f_u >= f)
        throw config_error("allocate_oma: share leaves one service with no resources");
    if (channel.gamma_e.size() != static_cast<size_t>(f))
        throw config_error("allocate_oma: gamma_e length must equal F");

    // Partition: URLLC gets f_u resources chosen by policy, eMBB the rest.
    std::vector<int> order(f);
    std::iota(order.begin(), order.end(), 0);
    switch (policy) {
        case OmaPartition::WorstForEmbb:
            std::stable_sort(order.begin(), order.end(), [&channel](int a, int b) {
                return channel.gamma_e[a] < channel.gamma_e[b];
            });
            break;
        case OmaPartition::FirstK:
            break;
        case OmaPartition::Random: {
            RngStream rng(substream_key(partition_seed, kStreamGeneric, 0xa110c));
            for (int k = f - 1; k > 0; --k) {
                const int j = static_cast<int>(rng.next_u64() % static_cast<uint64_t>(k + 1));
                std::swap(order[k], order[j]);
            }
            break;
        }
    }
    std::vector<int> urllc_frs(order.begin(), order.begin() + f_u);
    std::vector<int> embb_frs(order.begin() + f_u, order.end());
    ResourceGrid split =
        ResourceGrid::oma(f, grid.num_minislots, std::move(embb_frs), std::move(urllc_frs));
    split.embb_slots = grid.embb_slots;
    split.urllc_slots = grid.urllc_slots;
    require_valid(split, req);

    const RateTargets targets = rate_targets(req, split);
    require_table_match(table, split, targets, req.eps_u);

    AllocationResult r;
    r.grid = split;
    const WaterfillSolution embb = solve_embb(channel, split, targets);
    r.diag.water_level_embb = embb.water_level;
    r.p_u_sic.assign(f, 0.0);  // SIC requirement dropped under OMA

    const LookupResult lu = min_power_lookup(table, 0.0, channel.rho_u, req.eps_u);
    r.diag.table_cells.push_back({lu.s_index, lu.i_index});

    r.alloc.p_embb_mw = embb.powers;
    r.alloc.p_urllc_mw.assign(f, 0.0);
    for (int fr : split.urllc_frs) r.alloc.p_urllc_mw[fr] = lu.p_u_mw;
    finish_totals(r);
    return r;
}

McEstimate verify_outage(const AllocationResult& result, const ChannelState& channel,
                         const ResourceGrid& grid, const ServiceRequirements& req, int64_t n,
                         uint64_t seed, int64_t chunk, uint64_t stream_label) {
    if (n < 1) throw config_error("verify_outage: n must be >= 1");
    if (chunk < 1) throw config_error("verify_outage: chunk must be >= 1");
    if (!(channel.rho_u > 0.0)) throw config_error("verify_outage: rho_u must be > 0");

    // Event I_u <= r_u with the actual per-FR coefficients, in product form:
    //   prod_f (1 + (s_f + i_f) X_f) <= 2^(r_u / M_u) * prod_f (1 + i_f X_f).
    const int f_u = grid.f_u();
    std::vector<double> sig(f_u), interf(f_u);
    for (int k = 0; k < f_u; ++k) {
        const int fr = grid.urllc_frs[k];
        sig[k] = channel.rho_u * result.alloc.p_urllc_mw[fr];
        interf[k] = channel.rho_u * result.alloc.p_embb_mw[fr];
    }
    const double threshold = std::exp2(req.r_u / grid.urllc_slots);

    int64_t events = 0;
    for (int64_t c = 0, done = 0; done < n; ++c) {
        const int64_t take = std::min<int64_t>(chunk, n - done);
        RngStream rng(substream_key(seed, kStreamVerify, stream_label, static_cast<uint64_t>(c)));
        for (int64_t it = 0; it < take; ++it) {
            double num = 1.0, den = 1.0;
            for (int k = 0; k < f_u; ++k) {
                const double x = rng.next_exp();
                num *= 1.0 + (sig[k] + interf[k]) * x;
                den *= 1.0 + interf[k] * x;
            }
            if (num <= threshold * den) ++events;
        }
        done += take;
    }
    return make_mc_estimate(events, n);
}

} // namespace slicing
