#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace slicing {

/// Sharing mode of the time-frequency grid between the two services.
enum class Mode { Noma, Oma };

std::string to_string(Mode m);

/// One slot of the resource grid: F frequency resources x M mini-slots,
/// together with the index sets assigned to the eMBB user (e) and the
/// URLLC user (u). Under NOMA both users share the same resources; under
/// OMA the sets are disjoint. Frequency indices are 0-based.
struct ResourceGrid {
    int num_freq = 0;       // F
    int num_minislots = 0;  // M
    Mode mode = Mode::Noma;
    std::vector<int> embb_frs;   // sorted, unique, subset of [0, F)
    std::vector<int> urllc_frs;  // sorted, unique, subset of [0, F)
    int embb_slots = 0;   // M_e
    int urllc_slots = 0;  // M_u

    int f_e() const { return static_cast<int>(embb_frs.size()); }
    int f_u() const { return static_cast<int>(urllc_frs.size()); }

    /// Fully shared grid: both users on all F resources and all M mini-slots.
    static ResourceGrid noma(int num_freq, int num_minislots);
    /// Orthogonal split with explicit index sets; M_e = M_u = M.
    static ResourceGrid oma(int num_freq, int num_minislots,
                            std::vector<int> embb_frs, std::vector<int> urllc_frs);
};

/// Channel knowledge at the transmitter: per-resource normalized eMBB gains
/// (deterministic, known) and the mean normalized URLLC gain rho_u. The
/// instantaneous URLLC gain is never stored; it is Exp-distributed with mean
/// rho_u and only its statistics are available.
struct ChannelState {
    std::vector<double> gamma_e;  // length F, dimensionless, >= 0
    double rho_u = 0.0;           // > 0, dimensionless
};

struct ServiceRequirements {
    double r_e = 0.0;     // eMBB spectral efficiency target [bit/s/Hz]
    double r_u = 0.0;     // URLLC packet spectral efficiency [bit/s/Hz]
    double eps_u = 0.0;   // URLLC outage tolerance, in (0,1)
    int l_max = 1;        // latency budget [mini-slots]
    int delta_u = 0;      // arrival-to-first-transmission offset [mini-slots]
};

/// Per-resource transmit powers in linear mW. Vectors always span the full
/// grid (length F); resources not assigned to a user hold exact zero.
/// The time dimension is collapsed: powers are constant across mini-slots
/// within the coherence time, so only P_i(f) is stored.
struct PowerAllocation {
    std::vector<double> p_embb_mw;
    std::vector<double> p_urllc_mw;
};

double dbm_to_mw(double dbm);
/// Inverse of dbm_to_mw; throws config_error for nonpositive input.
double mw_to_dbm(double mw);

/// Checks every grid/requirement invariant, including the latency
/// feasibility M_u <= l_max - delta_u. Returns all violations as
/// human-readable strings; empty means valid. Pure, never throws.
std::vector<std::string> validate(const ResourceGrid& grid, const ServiceRequirements& req);

/// Structural checks on an allocation against its grid (lengths,
/// nonnegativity, orthogonality under OMA, zeros outside assigned sets).
std::vector<std::string> validate(const PowerAllocation& alloc, const ResourceGrid& grid);

} // namespace slicing
