#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "slicing/allocate.hpp"
#include "slicing/domain.hpp"
#include "slicing/outage.hpp"
#include "slicing/rng.hpp"

namespace slicing {

/// Cell geometry, link budget and campaign parameters. Defaults are the
/// reference simulation setup: 100 m cell, path-loss exponent 4, antenna
/// gain sum 17.15 dB, -92 dBm noise, F = 12, M = 1, r_e = 6, r_u = 1,
/// eps_u = 1e-5.
struct ScenarioConfig {
    double cell_radius_m = 100.0;
    double pl_exponent = 4.0;
    double antenna_gain_sum_db = 17.15;
    double noise_dbm = -92.0;
    double pl_ref_db = 0.0;  // extra fixed reference loss; 0 = pure exponent law
    double min_embb_distance_m = 1.0;

    int num_freq = 12;
    int num_minislots = 1;
    ServiceRequirements req{6.0, 1.0, 1e-5, 1, 0};

    std::vector<double> d_u_sweep_m;
    int placements = 1000;
    uint64_t seed = 1;
    int64_t n_verify = 50000;
    int64_t chunk = 100000;
    OmaPartition oma_policy = OmaPartition::WorstForEmbb;
};

/// The 25-point geometric distance sweep used by the reference campaign
/// (constant ratio 10^0.025, i.e. 1 dB of path gain per step at exponent 4).
std::vector<double> default_du_sweep();
std::vector<double> geometric_sweep(double d_min_m, double d_max_m, int points);

/// Reduced-cost profile sharing every code path with the full campaign:
/// eps_u = 1e-3, 200 placements, 10 sweep points.
ScenarioConfig desk_profile();
/// The full campaign profile (the defaults above, with the 25-point sweep).
ScenarioConfig paper_profile();

/// Mean normalized gain at distance d: Gamma_dB = G_ant - 10 n log10(d)
/// - pl_ref, rho = 10^((Gamma_dB - noise_dbm)/10).
double path_gain(double d_m, const ScenarioConfig& cfg);

/// One random eMBB placement: position uniform over the disk (radius via
/// sqrt-uniform, clamped to the minimum distance), i.i.d. Rayleigh
/// small-scale fading per FR on top of the placement's mean gain.
struct EmbbChannelDraw {
    std::vector<double> gamma_e;
    double distance_m = 0.0;
    double rho_e = 0.0;
};
EmbbChannelDraw sample_embb_channel(const ScenarioConfig& cfg, RngStream& rng);

enum class Scheme { NFea, NHeu, Oma25, Oma50, NSic };
std::string to_string(Scheme s);

/// Tables required by the campaign, one per (F_u, r_bar_u) in play.
struct TableSet {
    OutageTable noma;   // F_u = F
    OutageTable oma25;  // F_u = F/4
    OutageTable oma50;  // F_u = F/2
};

/// Aggregate over placements for one (d_u, scheme): powers averaged in
/// linear mW (converted to dBm at the reporting boundary), outage pooled
/// over all placements' verification runs.
struct SweepRecord {
    double d_u_m = 0.0;
    Scheme scheme = Scheme::NFea;
    double p_tot_mw = 0.0;
    double p_e_mw = 0.0;
    double p_u_mw = 0.0;
    int64_t outage_events = 0;
    int64_t outage_samples = 0;
    double outage_est = 0.0;
    double outage_upper95 = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // d_u major, scheme order as in enum
    double embb_mean_noma_mw = 0.0;    // distance-invariant eMBB means
    double embb_mean_oma25_mw = 0.0;
    double embb_mean_oma50_mw = 0.0;
};

/// Runs the campaign: for every placement one eMBB channel draw (shared,
/// via common random numbers, by all schemes and every d_u), allocation by
/// each scheme, independent outage verification, aggregation. Placements
/// are processed in parallel; all reductions are placement-indexed, so the
/// result is bit-identical for any worker count.
SweepResult run_sweep(const ScenarioConfig& cfg, const TableSet& tables, int workers = 0);

/// CSV per the external interface: '#'-prefixed metadata lines carrying the
/// full config, then one row per (d_u, scheme) with columns
/// d_u_m,scheme,p_tot_dbm,p_e_dbm,p_u_dbm,outage_est,outage_upper95,
/// n_placements,seed. The n-sic diagnostic rows carry nan outage fields.
void write_sweep_csv(const SweepResult& result, const ScenarioConfig& cfg, std::ostream& os);

} // namespace slicing
