#include "slicing/outage.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "slicing/errors.hpp"
#include "slicing/rng.hpp"

namespace slicing {

double outage_closed_form_1fr(double s, double i, double r_bar_u) {
    if (s < 0.0 || i < 0.0) throw config_error("outage_closed_form_1fr: s, i must be >= 0");
    const double c = std::exp2(r_bar_u) - 1.0;
    if (s <= c * i) return 1.0;
    return -std::expm1(-c / (s - c * i));
}

namespace {

// Event test in product form: the outage condition
//   (1/F) sum_f log2(1 + s X_f / (1 + i X_f)) <= r_bar
// is equivalent to
//   prod_f (1 + (s+i) X_f) <= 2^(F r_bar) * prod_f (1 + i X_f).
// Always consumes exactly f_u draws so that runs at different (s, i) under
// the same seed stay draw-aligned (common random numbers).
int64_t count_outages(RngStream& rng, int64_t n, double s, double i, int f_u, double threshold) {
    int64_t events = 0;
    const double si = s + i;
    for (int64_t it = 0; it < n; ++it) {
        double num = 1.0, den = 1.0;
        for (int f = 0; f < f_u; ++f) {
            const double x = rng.next_exp();
            num *= 1.0 + si * x;
            den *= 1.0 + i * x;
        }
        if (num <= threshold * den) ++events;
    }
    return events;
}

} // namespace

McEstimate mc_outage(const OutagePoint& point, int64_t n, uint64_t seed, int64_t chunk,
                     uint64_t stream_label) {
    if (n < 1) throw config_error("mc_outage: n must be >= 1");
    if (chunk < 1) throw config_error("mc_outage: chunk must be >= 1");
    if (point.f_u < 1) throw config_error("mc_outage: F_u must be >= 1");
    if (!(point.r_bar_u > 0.0)) throw config_error("mc_outage: r_bar_u must be > 0");
    if (point.s < 0.0 || point.i < 0.0) throw config_error("mc_outage: s, i must be >= 0");

    const double threshold = std::exp2(point.f_u * point.r_bar_u);
    int64_t events = 0;
    for (int64_t c = 0, done = 0; done < n; ++c) {
        const int64_t take = std::min<int64_t>(chunk, n - done);
        RngStream rng(substream_key(seed, kStreamTableCell, stream_label, static_cast<uint64_t>(c)));
        events += count_outages(rng, take, point.s, point.i, point.f_u, threshold);
        done += take;
    }
    return make_mc_estimate(events, n);
}

McEstimate mc_outage_power(double p_u_mw, double p_e_mw, double rho_u, int f_u, double r_u,
                           int64_t n, uint64_t seed, int64_t chunk, int m_u) {
    if (!(rho_u > 0.0)) throw config_error("mc_outage_power: rho_u must be > 0");
    OutagePoint pt;
    pt.s = rho_u * p_u_mw;
    pt.i = rho_u * p_e_mw;
    pt.f_u = f_u;
    pt.r_bar_u = r_u / (static_cast<double>(m_u) * f_u);
    return mc_outage(pt, n, seed, chunk);
}

TableGrid TableGrid::defaults() { return TableGrid{}; }

namespace {

std::vector<double> axis(double lo, double step, int count) {
    std::vector<double> v(count);
    for (int k = 0; k < count; ++k) v[k] = lo + k * step;
    return v;
}

int axis_count(double lo, double hi, double step) {
    if (!(step > 0.0) || hi < lo) return 0;
    return static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
}

} // namespace

std::vector<double> TableGrid::s_axis_db() const { return axis(s_min_db, s_step_db, s_count); }

std::vector<double> TableGrid::i_axis_db() const {
    std::vector<double> v;
    if (i_zero_row) v.push_back(-std::numeric_limits<double>::infinity());
    const std::vector<double> pos = axis(i_min_db, i_step_db, i_count);
    v.insert(v.end(), pos.begin(), pos.end());
    return v;
}

double OutageTable::s_lin(size_t si) const { return std::pow(10.0, s_db[si] / 10.0); }

double OutageTable::i_lin(size_t ii) const {
    return std::isinf(i_db[ii]) ? 0.0 : std::pow(10.0, i_db[ii] / 10.0);
}

std::vector<size_t> OutageTable::infeasible_rows() const {
    std::vector<size_t> rows;
    for (size_t ii = 0; ii < ni(); ++ii) {
        bool ok = false;
        for (size_t si = 0; si < ns() && !ok; ++si) ok = upper95[idx(si, ii)] <= meta.eps_target;
        if (!ok) rows.push_back(ii);
    }
    return rows;
}

namespace {

void validate_grid(const TableGrid& g) {
    if (g.s_count < 1) throw config_error("table grid: empty signal axis");
    if (!(g.s_step_db > 0.0)) throw config_error("table grid: s_step_db must be > 0");
    if (g.i_count < 0) throw config_error("table grid: negative interference axis");
    if (g.i_count > 0 && !(g.i_step_db > 0.0))
        throw config_error("table grid: i_step_db must be > 0");
    if (!g.i_zero_row && g.i_count == 0)
        throw config_error("table grid: interference axis is empty");
}

// Running max toward the conservative side: along s descending (a smaller
// signal can never have lower outage) and along i ascending (stronger
// interference can never have lower outage). Only raises values, so the
// upper-bound semantics of the upper95 plane survive.
void clamp_monotone(std::vector<double>& plane, size_t ns, size_t ni) {
    for (size_t ii = 0; ii < ni; ++ii)
        for (size_t si = ns - 1; si-- > 0;)
            plane[si * ni + ii] = std::max(plane[si * ni + ii], plane[(si + 1) * ni + ii]);
    for (size_t si = 0; si < ns; ++si)
        for (size_t ii = 1; ii < ni; ++ii)
            plane[si * ni + ii] = std::max(plane[si * ni + ii], plane[si * ni + ii - 1]);
}

} // namespace

OutageTable build_table(const OutageTableMeta& meta, int workers, BuildStats* stats) {
    validate_grid(meta.grid);
    if (!(meta.eps_target > 0.0 && meta.eps_target < 1.0))
        throw config_error("build_table: eps_target must be in (0,1)");
    if (meta.ladder.empty()) throw config_error("build_table: escalation ladder is empty");
    for (size_t k = 0; k < meta.ladder.size(); ++k) {
        if (meta.ladder[k] < 1 || (k > 0 && meta.ladder[k] <= meta.ladder[k - 1]))
            throw config_error("build_table: ladder must be positive and strictly increasing");
    }
    if (meta.f_u < 1) throw config_error("build_table: F_u must be >= 1");
    if (!(meta.r_bar_u > 0.0)) throw config_error("build_table: r_bar_u must be > 0");

    OutageTable t;
    t.meta = meta;
    t.s_db = meta.grid.s_axis_db();
    t.i_db = meta.grid.i_axis_db();
    const size_t ns = t.ns(), ni = t.ni(), cells = ns * ni;
    t.estimate.assign(cells, 0.0);
    t.upper95.assign(cells, 1.0);
    t.samples.assign(cells, 0);

    const double threshold = std::exp2(meta.f_u * meta.r_bar_u);

    // One cell = one unit of work; its substreams are keyed by the cell
    // index, so scheduling cannot change any number.
    auto run_cell = [&](size_t cell) {
        const size_t si = cell / ni, ii = cell % ni;
        const double s = t.s_lin(si), i = t.i_lin(ii);
        int64_t events = 0, done = 0, next_chunk = 0;
        double est = 0.0, up = 1.0, low = 0.0;
        for (int64_t target : meta.ladder) {
            while (done < target) {
                const int64_t take = std::min<int64_t>(meta.chunk, target - done);
                RngStream rng(substream_key(meta.seed, kStreamTableCell, cell,
                                            static_cast<uint64_t>(next_chunk)));
                events += count_outages(rng, take, s, i, meta.f_u, threshold);
                done += take;
                ++next_chunk;
            }
            est = static_cast<double>(events) / static_cast<double>(done);
            up = clopper_pearson_upper95(events, done);
            low = clopper_pearson_lower95(events, done);
            const bool straddles = low <= meta.eps_target && meta.eps_target <= up;
            if (!straddles) break;  // CI fully on one side: more samples won't change the call
        }
        t.estimate[cell] = est;
        t.upper95[cell] = up;
        t.samples[cell] = done;
    };

    int nworkers = workers > 0 ? workers : static_cast<int>(std::thread::hardware_concurrency());
    nworkers = std::max(1, std::min<int>(nworkers, static_cast<int>(cells)));
    if (nworkers == 1) {
        for (size_t cell = 0; cell < cells; ++cell) run_cell(cell);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (int w = 0; w < nworkers; ++w)
            pool.emplace_back([&] {
                for (size_t cell = next.fetch_add(1); cell < cells; cell = next.fetch_add(1))
                    run_cell(cell);
            });
        for (auto& th : pool) th.join();
    }

    clamp_monotone(t.estimate, ns, ni);
    clamp_monotone(t.upper95, ns, ni);

    if (stats) {
        stats->cells_per_stage.assign(meta.ladder.size(), 0);
        stats->total_samples = 0;
        for (size_t cell = 0; cell < cells; ++cell) {
            stats->total_samples += t.samples[cell];
            for (size_t k = 0; k < meta.ladder.size(); ++k)
                if (t.samples[cell] == meta.ladder[k]) {
                    ++stats->cells_per_stage[k];
                    break;
                }
        }
    }
    return t;
}

LookupResult min_power_lookup(const OutageTable& table, double p_e_mw, double rho_u, double eps_u) {
    if (!(rho_u > 0.0)) throw config_error("min_power_lookup: rho_u must be > 0");
    if (p_e_mw < 0.0) throw config_error("min_power_lookup: interference must be >= 0");
    if (eps_u < table.meta.eps_target) {
        std::ostringstream os;
        os << "min_power_lookup: eps_u (" << eps_u << ") below table eps_target ("
           << table.meta.eps_target << ")";
        throw config_error(os.str());
    }

    const double i = rho_u * p_e_mw;
    // Round the interference up to the next grid row (i_db is ascending,
    // -inf first when the exact-zero row exists).
    size_t ii = table.ni();
    for (size_t k = 0; k < table.ni(); ++k) {
        if (table.i_lin(k) >= i) {
            ii = k;
            break;
        }
    }
    if (ii == table.ni()) {
        std::ostringstream os;
        os << "min_power_lookup: normalized interference " << i
           << " beyond the tabulated range (max " << table.i_lin(table.ni() - 1) << ")";
        throw infeasible_error(os.str());
    }

    // The clamped upper95 plane is nonincreasing in s, so the feasible set
    // {s : upper95 <= eps_u} is an upper tail; take its first element.
    size_t lo = 0, hi = table.ns();
    while (lo < hi) {
        const size_t mid = lo + (hi - lo) / 2;
        if (table.upper95[table.idx(mid, ii)] <= eps_u)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo == table.ns()) {
        std::ostringstream os;
        os << "min_power_lookup: no tabulated power reaches eps_u = " << eps_u
           << " at interference row " << ii << " (i = " << i << ")";
        throw infeasible_error(os.str());
    }
    LookupResult r;
    r.s_index = lo;
    r.i_index = ii;
    r.p_u_mw = table.s_lin(lo) / rho_u;
    return r;
}

int grid_axis_count(double lo, double hi, double step) { return axis_count(lo, hi, step); }

} // namespace slicing
