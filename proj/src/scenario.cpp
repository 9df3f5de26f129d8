#include "slicing/scenario.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "slicing/errors.hpp"
#include "slicing/table_io.hpp"

namespace slicing {

std::vector<double> geometric_sweep(double d_min_m, double d_max_m, int points) {
    if (!(d_min_m > 0.0) || !(d_max_m >= d_min_m) || points < 1)
        throw config_error("geometric_sweep: need 0 < d_min <= d_max and points >= 1");
    std::vector<double> d(points);
    if (points == 1) {
        d[0] = d_min_m;
        return d;
    }
    const double ratio = std::log10(d_max_m / d_min_m) / (points - 1);
    for (int k = 0; k < points; ++k) d[k] = d_min_m * std::pow(10.0, ratio * k);
    return d;
}

std::vector<double> default_du_sweep() { return geometric_sweep(18.4940260331029, 73.626043761813, 25); }

ScenarioConfig paper_profile() {
    ScenarioConfig cfg;
    cfg.d_u_sweep_m = default_du_sweep();
    return cfg;
}

ScenarioConfig desk_profile() {
    ScenarioConfig cfg;
    cfg.req.eps_u = 1e-3;
    cfg.placements = 200;
    cfg.n_verify = 20000;
    cfg.d_u_sweep_m = geometric_sweep(20.0, 75.0, 10);
    return cfg;
}

double path_gain(double d_m, const ScenarioConfig& cfg) {
    if (!(d_m > 0.0)) throw config_error("path_gain: distance must be > 0");
    const double gamma_db =
        cfg.antenna_gain_sum_db - 10.0 * cfg.pl_exponent * std::log10(d_m) - cfg.pl_ref_db;
    return std::pow(10.0, (gamma_db - cfg.noise_dbm) / 10.0);
}

EmbbChannelDraw sample_embb_channel(const ScenarioConfig& cfg, RngStream& rng) {
    EmbbChannelDraw draw;
    const double u_radius = rng.next_uniform();
    rng.next_uniform();  // angle; the path loss is isotropic
    draw.distance_m = std::max(cfg.min_embb_distance_m, cfg.cell_radius_m * std::sqrt(u_radius));
    draw.rho_e = path_gain(draw.distance_m, cfg);
    draw.gamma_e.resize(cfg.num_freq);
    for (int f = 0; f < cfg.num_freq; ++f) draw.gamma_e[f] = draw.rho_e * rng.next_exp();
    return draw;
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::NFea: return "n-fea";
        case Scheme::NHeu: return "n-heu";
        case Scheme::Oma25: return "oma-25";
        case Scheme::Oma50: return "oma-50";
        case Scheme::NSic: return "n-sic";
    }
    return "?";
}

namespace {

constexpr int kNumSchemes = 5;  // NFea, NHeu, Oma25, Oma50 + NSic diagnostic

struct PlacementCell {
    double p_tot = 0.0, p_e = 0.0, p_u = 0.0;
    int64_t events = 0, samples = 0;
};

uint64_t verify_label(int placement, int du_idx, int scheme) {
    return (static_cast<uint64_t>(placement) << 16) | (static_cast<uint64_t>(du_idx) << 4) |
           static_cast<uint64_t>(scheme);
}

} // namespace

SweepResult run_sweep(const ScenarioConfig& cfg, const TableSet& tables, int workers) {
    if (cfg.d_u_sweep_m.empty()) throw config_error("run_sweep: empty d_u sweep");
    if (cfg.placements < 1) throw config_error("run_sweep: placements must be >= 1");
    if (cfg.num_freq % 4 != 0)
        throw config_error("run_sweep: F must be divisible by 4 for the OMA-25 split");

    const int n_du = static_cast<int>(cfg.d_u_sweep_m.size());
    const int n_pl = cfg.placements;
    const ResourceGrid noma_grid = ResourceGrid::noma(cfg.num_freq, cfg.num_minislots);
    const ResourceGrid oma_grid = ResourceGrid::oma(cfg.num_freq, cfg.num_minislots, {0}, {1});

    // placement-major storage so the final reduction is order-fixed
    std::vector<PlacementCell> cells(static_cast<size_t>(n_pl) * n_du * kNumSchemes);
    std::vector<double> embb_noma(n_pl), embb_oma25(n_pl), embb_oma50(n_pl);
    auto at = [&](int pl, int du, int sc) -> PlacementCell& {
        return cells[(static_cast<size_t>(pl) * n_du + du) * kNumSchemes + sc];
    };

    auto run_placement = [&](int pl) {
        RngStream rng(substream_key(cfg.seed, kStreamPlacement, static_cast<uint64_t>(pl)));
        const EmbbChannelDraw draw = sample_embb_channel(cfg, rng);
        ChannelState channel{draw.gamma_e, 1.0};

        for (int du = 0; du < n_du; ++du) {
            channel.rho_u = path_gain(cfg.d_u_sweep_m[du], cfg);

            const AllocationResult nfea = allocate_nfea(channel, noma_grid, cfg.req, tables.noma);
            const AllocationResult nheu = allocate_nheu(channel, noma_grid, cfg.req, tables.noma);
            const uint64_t part_seed = substream_key(cfg.seed, kStreamPlacement, pl, 1);
            const AllocationResult oma25 =
                allocate_oma(channel, oma_grid, cfg.req, tables.oma25, 0.25, cfg.oma_policy, part_seed);
            const AllocationResult oma50 =
                allocate_oma(channel, oma_grid, cfg.req, tables.oma50, 0.50, cfg.oma_policy, part_seed);

            const AllocationResult* results[4] = {&nfea, &nheu, &oma25, &oma50};
            for (int sc = 0; sc < 4; ++sc) {
                const AllocationResult& r = *results[sc];
                PlacementCell& cell = at(pl, du, sc);
                cell.p_tot = r.p_tot;
                cell.p_e = r.p_e_tot;
                cell.p_u = r.p_u_tot;
                const McEstimate ver = verify_outage(r, channel, r.grid, cfg.req, cfg.n_verify,
                                                     cfg.seed, cfg.chunk, verify_label(pl, du, sc));
                cell.events = ver.events;
                cell.samples = ver.samples;
            }
            // SIC floor diagnostic: the URLLC power the SIC constraint alone
            // would demand. Depends on the eMBB side only, and is therefore
            // flat across the sweep; recorded per d_u to make that visible.
            PlacementCell& sic = at(pl, du, 4);
            sic.p_e = nfea.p_e_tot;
            sic.p_u = noma_grid.urllc_slots *
                      std::accumulate(nfea.p_u_sic.begin(), nfea.p_u_sic.end(), 0.0);
            sic.p_tot = sic.p_e + sic.p_u;

            if (du == 0) {
                embb_noma[pl] = nfea.p_e_tot;
                embb_oma25[pl] = oma25.p_e_tot;
                embb_oma50[pl] = oma50.p_e_tot;
            }
        }
    };

    int nworkers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    nworkers = std::max(1, std::min(nworkers, n_pl));
    if (nworkers == 1) {
        for (int pl = 0; pl < n_pl; ++pl) run_placement(pl);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int w = 0; w < nworkers; ++w)
            pool.emplace_back([&] {
                for (int pl = next.fetch_add(1); pl < n_pl; pl = next.fetch_add(1))
                    run_placement(pl);
            });
        for (auto& th : pool) th.join();
    }

    SweepResult out;
    out.records.reserve(static_cast<size_t>(n_du) * kNumSchemes);
    for (int du = 0; du < n_du; ++du) {
        for (int sc = 0; sc < kNumSchemes; ++sc) {
            SweepRecord rec;
            rec.d_u_m = cfg.d_u_sweep_m[du];
            rec.scheme = static_cast<Scheme>(sc);
            for (int pl = 0; pl < n_pl; ++pl) {
                const PlacementCell& cell = at(pl, du, sc);
                rec.p_tot_mw += cell.p_tot;
                rec.p_e_mw += cell.p_e;
                rec.p_u_mw += cell.p_u;
                rec.outage_events += cell.events;
                rec.outage_samples += cell.samples;
            }
            rec.p_tot_mw /= n_pl;
            rec.p_e_mw /= n_pl;
            rec.p_u_mw /= n_pl;
            if (rec.outage_samples > 0) {
                const McEstimate pooled = make_mc_estimate(rec.outage_events, rec.outage_samples);
                rec.outage_est = pooled.estimate;
                rec.outage_upper95 = pooled.upper95;
            } else {
                rec.outage_est = std::nan("");
                rec.outage_upper95 = std::nan("");
            }
            out.records.push_back(rec);
        }
    }
    out.embb_mean_noma_mw = std::accumulate(embb_noma.begin(), embb_noma.end(), 0.0) / n_pl;
    out.embb_mean_oma25_mw = std::accumulate(embb_oma25.begin(), embb_oma25.end(), 0.0) / n_pl;
    out.embb_mean_oma50_mw = std::accumulate(embb_oma50.begin(), embb_oma50.end(), 0.0) / n_pl;
    return out;
}

namespace {

std::string policy_name(OmaPartition p) {
    switch (p) {
        case OmaPartition::WorstForEmbb: return "worst-for-embb";
        case OmaPartition::FirstK: return "first-k";
        case OmaPartition::Random: return "random";
    }
    return "?";
}

} // namespace

void write_sweep_csv(const SweepResult& result, const ScenarioConfig& cfg, std::ostream& os) {
    os << "# sweep v1\n";
    os << "# cell_radius_m=" << fmt_g17(cfg.cell_radius_m) << "\n";
    os << "# pl_exponent=" << fmt_g17(cfg.pl_exponent) << "\n";
    os << "# antenna_gain_sum_db=" << fmt_g17(cfg.antenna_gain_sum_db) << "\n";
    os << "# noise_dbm=" << fmt_g17(cfg.noise_dbm) << "\n";
    os << "# pl_ref_db=" << fmt_g17(cfg.pl_ref_db) << "\n";
    os << "# min_embb_distance_m=" << fmt_g17(cfg.min_embb_distance_m) << "\n";
    os << "# f=" << cfg.num_freq << "\n";
    os << "# m=" << cfg.num_minislots << "\n";
    os << "# r_e=" << fmt_g17(cfg.req.r_e) << "\n";
    os << "# r_u=" << fmt_g17(cfg.req.r_u) << "\n";
    os << "# eps_u=" << fmt_g17(cfg.req.eps_u) << "\n";
    os << "# l_max=" << cfg.req.l_max << "\n";
    os << "# delta_u=" << cfg.req.delta_u << "\n";
    os << "# placements=" << cfg.placements << "\n";
    os << "# n_verify=" << cfg.n_verify << "\n";
    os << "# chunk=" << cfg.chunk << "\n";
    os << "# seed=" << cfg.seed << "\n";
    os << "# oma_policy=" << policy_name(cfg.oma_policy) << "\n";
    os << "# power_averaging=linear_mw\n";
    os << "# embb_mean_noma_dbm=" << fmt_g17(mw_to_dbm(result.embb_mean_noma_mw)) << "\n";
    os << "# embb_mean_oma25_dbm=" << fmt_g17(mw_to_dbm(result.embb_mean_oma25_mw)) << "\n";
    os << "# embb_mean_oma50_dbm=" << fmt_g17(mw_to_dbm(result.embb_mean_oma50_mw)) << "\n";
    os << "d_u_m,scheme,p_tot_dbm,p_e_dbm,p_u_dbm,outage_est,outage_upper95,n_placements,seed\n";
    for (const SweepRecord& rec : result.records) {
        os << fmt_g17(rec.d_u_m) << ',' << to_string(rec.scheme) << ','
           << fmt_g17(mw_to_dbm(rec.p_tot_mw)) << ',' << fmt_g17(mw_to_dbm(rec.p_e_mw)) << ','
           << fmt_g17(mw_to_dbm(rec.p_u_mw)) << ',' << fmt_g17(rec.outage_est) << ','
           << fmt_g17(rec.outage_upper95) << ',' << cfg.placements << ',' << cfg.seed << "\n";
    }
}

} // namespace slicing
