#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "slicing/stats.hpp"

namespace slicing {

// URLLC outage probability
//   Pr{ (1/F_u) sum_f log2(1 + g_u(f) P_u / (1 + g_u(f) P_e)) <= r_bar_u }
// with g_u(f) = rho_u * X(f), X ~ Exp(1) i.i.d. The probability depends on
// (rho_u * P_u, rho_u * P_e) only, so everything below works on the
// normalized pair (s, i); the 5-argument power-domain surface is a thin
// wrapper over this reduction.

/// One evaluation point in normalized coordinates.
struct OutagePoint {
    double s = 0.0;       // normalized signal power rho_u * P_u
    double i = 0.0;       // normalized interference power rho_u * P_e
    int f_u = 1;          // number of frequency resources
    double r_bar_u = 0.0; // per-resource rate target
};

/// Exact outage for a single frequency resource. With c = 2^r_bar_u - 1:
/// 1 when s <= c*i (the SINR ceiling s/i cannot reach the target), else
/// 1 - exp(-c / (s - c*i)).
double outage_closed_form_1fr(double s, double i, double r_bar_u);

/// Monte Carlo estimate with a one-sided 95% Clopper-Pearson upper bound.
/// Samples are drawn in fixed-size chunks, each on its own counter-based
/// substream keyed by (seed, stream_label, chunk index): the result is
/// bit-identical for a given (seed, chunk) no matter how work is scheduled,
/// and calls at different (s, i) with the same seed share the same
/// underlying Exp(1) draws (common random numbers).
McEstimate mc_outage(const OutagePoint& point, int64_t n, uint64_t seed, int64_t chunk,
                     uint64_t stream_label = 0);

/// Power-domain surface: normalizes (P_u, P_e, rho_u) to (s, i) and
/// delegates to mc_outage. r_u is the total URLLC rate; M_u defaults to 1.
McEstimate mc_outage_power(double p_u_mw, double p_e_mw, double rho_u, int f_u, double r_u,
                           int64_t n, uint64_t seed, int64_t chunk, int m_u = 1);

/// Grid specification for a table: signal axis in dB, interference axis in
/// dB plus an optional exact-zero row (stored as -inf dB).
struct TableGrid {
    double s_min_db = -20.0;
    double s_max_db = 70.0;
    double s_step_db = 0.25;
    bool i_zero_row = true;
    double i_min_db = -20.0;
    double i_max_db = 60.0;
    double i_step_db = 1.0;
    int i_count = 81;  // number of positive interference lines; 0 = zero row only
    int s_count = 361;

    static TableGrid defaults();
    std::vector<double> s_axis_db() const;
    std::vector<double> i_axis_db() const;  // first entry -inf when i_zero_row
};

struct OutageTableMeta {
    int format_version = 1;
    int f_u = 1;
    double r_bar_u = 0.0;
    double eps_target = 0.0;
    std::vector<int64_t> ladder = {100000, 1000000, 10000000};
    uint64_t seed = 0;
    int64_t chunk = 100000;
    TableGrid grid;
};

/// Tabulated outage over the normalized (s, i) grid. Planes are row-major
/// with s as the major index: value(si, ii) = plane[si * Ni + ii].
/// After construction both planes are monotone (nonincreasing in s,
/// nondecreasing in i); raw Monte Carlo noise is clamped toward the
/// conservative side (values are only ever raised).
struct OutageTable {
    OutageTableMeta meta;
    std::vector<double> s_db;
    std::vector<double> i_db;       // i_db[0] == -inf encodes the exact-zero row
    std::vector<double> estimate;   // Ns * Ni
    std::vector<double> upper95;    // Ns * Ni
    std::vector<int64_t> samples;   // Ns * Ni, final sample count per cell

    size_t ns() const { return s_db.size(); }
    size_t ni() const { return i_db.size(); }
    size_t idx(size_t si, size_t ii) const { return si * ni() + ii; }
    double s_lin(size_t si) const;
    double i_lin(size_t ii) const;

    /// Rows where no tabulated power reaches eps_target.
    std::vector<size_t> infeasible_rows() const;
};

struct BuildStats {
    std::vector<int64_t> cells_per_stage;  // cells whose final n equals ladder[k]
    int64_t total_samples = 0;
};

/// Builds the table: per cell, escalates the sample count along meta.ladder
/// while the Clopper-Pearson 95% interval still straddles eps_target, then
/// clamps both planes monotone. Deterministic for fixed meta (cells are
/// keyed by their index), independent of the worker count.
OutageTable build_table(const OutageTableMeta& meta, int workers = 0, BuildStats* stats = nullptr);

struct LookupResult {
    double p_u_mw = 0.0;
    size_t s_index = 0;  // chosen signal grid line
    size_t i_index = 0;  // interference row used (rounded up)
};

/// Minimum tabulated power with outage upper bound at most eps_u, under
/// interference p_e_mw. Conservative at every step: the interference is
/// rounded up to the next grid row, the upper-95% plane (not the point
/// estimate) is thresholded, and the returned power is the grid line at or
/// above the exact crossing. Throws infeasible_error when the interference
/// exceeds the grid or no tabulated power reaches eps_u on the row.
LookupResult min_power_lookup(const OutageTable& table, double p_e_mw, double rho_u, double eps_u);

/// Number of inclusive grid lines for a dB axis [lo, hi] with the given step.
int grid_axis_count(double lo, double hi, double step);

} // namespace slicing
