#include "slicing/domain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "slicing/errors.hpp"

namespace slicing {

std::string to_string(Mode m) { return m == Mode::Noma ? "noma" : "oma"; }

ResourceGrid ResourceGrid::noma(int num_freq, int num_minislots) {
    ResourceGrid g;
    g.num_freq = num_freq;
    g.num_minislots = num_minislots;
    g.mode = Mode::Noma;
    g.embb_frs.resize(std::max(num_freq, 0));
    std::iota(g.embb_frs.begin(), g.embb_frs.end(), 0);
    g.urllc_frs = g.embb_frs;
    g.embb_slots = num_minislots;
    g.urllc_slots = num_minislots;
    return g;
}

ResourceGrid ResourceGrid::oma(int num_freq, int num_minislots,
                               std::vector<int> embb_frs, std::vector<int> urllc_frs) {
    ResourceGrid g;
    g.num_freq = num_freq;
    g.num_minislots = num_minislots;
    g.mode = Mode::Oma;
    std::sort(embb_frs.begin(), embb_frs.end());
    std::sort(urllc_frs.begin(), urllc_frs.end());
    g.embb_frs = std::move(embb_frs);
    g.urllc_frs = std::move(urllc_frs);
    g.embb_slots = num_minislots;
    g.urllc_slots = num_minislots;
    return g;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

double mw_to_dbm(double mw) {
    if (!(mw > 0.0)) {
        std::ostringstream os;
        os << "mw_to_dbm: power must be positive, got " << mw;
        throw config_error(os.str());
    }
    return 10.0 * std::log10(mw);
}

namespace {

bool sorted_unique_in_range(const std::vector<int>& v, int upper) {
    for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 0 || v[i] >= upper) return false;
        if (i > 0 && v[i] <= v[i - 1]) return false;
    }
    return true;
}

bool disjoint(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> both;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
    return both.empty();
}

} // namespace

std::vector<std::string> validate(const ResourceGrid& grid, const ServiceRequirements& req) {
    std::vector<std::string> out;
    auto add = [&out](const std::string& s) { out.push_back(s); };

    if (grid.num_freq < 1) add("grid: F must be >= 1");
    if (grid.num_minislots < 1) add("grid: M must be >= 1");
    if (grid.f_e() < 1 || grid.f_e() > grid.num_freq) add("grid: F_e must satisfy 1 <= F_e <= F");
    if (grid.f_u() < 1 || grid.f_u() > grid.num_freq) add("grid: F_u must satisfy 1 <= F_u <= F");
    if (grid.embb_slots < 1 || grid.embb_slots > grid.num_minislots)
        add("grid: M_e must satisfy 1 <= M_e <= M");
    if (grid.urllc_slots < 1 || grid.urllc_slots > grid.num_minislots)
        add("grid: M_u must satisfy 1 <= M_u <= M");
    if (!sorted_unique_in_range(grid.embb_frs, grid.num_freq))
        add("grid: eMBB FR indices must be unique and within [0, F)");
    if (!sorted_unique_in_range(grid.urllc_frs, grid.num_freq))
        add("grid: URLLC FR indices must be unique and within [0, F)");

    if (grid.mode == Mode::Noma) {
        if (grid.embb_frs != grid.urllc_frs || grid.embb_slots != grid.urllc_slots)
            add("sharing: NOMA requires both users on the same resources (F_u = F_e, M_u = M_e)");
    } else {
        if (grid.f_e() + grid.f_u() > grid.num_freq)
            add("sharing: OMA requires F_e + F_u <= F");
        if (!disjoint(grid.embb_frs, grid.urllc_frs))
            add("sharing: OMA requires disjoint FR index sets");
    }

    if (!(req.r_e > 0.0)) add("requirements: r_e must be > 0");
    if (!(req.r_u > 0.0)) add("requirements: r_u must be > 0");
    if (!(req.eps_u > 0.0 && req.eps_u < 1.0)) add("requirements: eps_u must be in (0,1)");
    if (req.l_max < 1) add("requirements: l_max must be >= 1");
    if (req.delta_u < 0) add("requirements: delta_u must be >= 0");
    if (grid.urllc_slots > req.l_max - req.delta_u) {
        std::ostringstream os;
        os << "latency: M_u (" << grid.urllc_slots << ") exceeds l_max - delta_u ("
           << req.l_max - req.delta_u << ")";
        add(os.str());
    }
    return out;
}

std::vector<std::string> validate(const PowerAllocation& alloc, const ResourceGrid& grid) {
    std::vector<std::string> out;
    const size_t f = static_cast<size_t>(grid.num_freq);
    if (alloc.p_embb_mw.size() != f || alloc.p_urllc_mw.size() != f) {
        out.push_back("allocation: power vectors must have length F");
        return out;
    }
    for (size_t i = 0; i < f; ++i) {
        if (alloc.p_embb_mw[i] < 0.0 || alloc.p_urllc_mw[i] < 0.0) {
            out.push_back("allocation: negative power coefficient at FR " + std::to_string(i));
            break;
        }
    }
    if (grid.mode == Mode::Oma) {
        for (size_t i = 0; i < f; ++i) {
            if (alloc.p_embb_mw[i] * alloc.p_urllc_mw[i] != 0.0) {
                out.push_back("allocation: OMA orthogonality violated at FR " + std::to_string(i));
                break;
            }
        }
    }
    auto assigned = [](const std::vector<int>& set, int fr) {
        return std::binary_search(set.begin(), set.end(), fr);
    };
    for (size_t i = 0; i < f; ++i) {
        int fr = static_cast<int>(i);
        if (!assigned(grid.embb_frs, fr) && alloc.p_embb_mw[i] != 0.0) {
            out.push_back("allocation: eMBB power on unassigned FR " + std::to_string(i));
            break;
        }
    }
    for (size_t i = 0; i < f; ++i) {
        int fr = static_cast<int>(i);
        if (!assigned(grid.urllc_frs, fr) && alloc.p_urllc_mw[i] != 0.0) {
            out.push_back("allocation: URLLC power on unassigned FR " + std::to_string(i));
            break;
        }
    }
    return out;
}

} // namespace slicing
