#include "slicing/table_io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "slicing/errors.hpp"

namespace slicing {

std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string join_g17(const std::vector<double>& v) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        out += fmt_g17(v[k]);
    }
    return out;
}

std::string join_i64(const std::vector<int64_t>& v) {
    std::string out;
    for (size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        out += std::to_string(v[k]);
    }
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_double(const std::string& s) {
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') throw io_error("table header: bad number '" + s + "'");
    return v;
}

int64_t parse_i64(const std::string& s) {
    char* end = nullptr;
    const long long v = std::strtoll(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') throw io_error("table header: bad integer '" + s + "'");
    return v;
}

void put_u64_le(std::string& out, uint64_t v) {
    for (int b = 0; b < 8; ++b) out += static_cast<char>((v >> (8 * b)) & 0xff);
}

uint64_t get_u64_le(const unsigned char* p) {
    uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | p[b];
    return v;
}

} // namespace

std::string serialize_table_header(const OutageTable& t) {
    const OutageTableMeta& m = t.meta;
    std::ostringstream os;
    os << "#otab v" << m.format_version << "\n";
    os << "format_version=" << m.format_version << "\n";
    os << "f_u=" << m.f_u << "\n";
    os << "r_bar_u=" << fmt_g17(m.r_bar_u) << "\n";
    os << "eps_target=" << fmt_g17(m.eps_target) << "\n";
    os << "ladder=" << join_i64(m.ladder) << "\n";
    os << "seed=" << m.seed << "\n";
    os << "chunk=" << m.chunk << "\n";
    os << "s_min_db=" << fmt_g17(m.grid.s_min_db) << "\n";
    os << "s_max_db=" << fmt_g17(m.grid.s_max_db) << "\n";
    os << "s_step_db=" << fmt_g17(m.grid.s_step_db) << "\n";
    os << "s_count=" << m.grid.s_count << "\n";
    os << "i_zero_row=" << (m.grid.i_zero_row ? 1 : 0) << "\n";
    os << "i_min_db=" << fmt_g17(m.grid.i_min_db) << "\n";
    os << "i_max_db=" << fmt_g17(m.grid.i_max_db) << "\n";
    os << "i_step_db=" << fmt_g17(m.grid.i_step_db) << "\n";
    os << "i_count=" << m.grid.i_count << "\n";
    os << "s_grid_db=" << join_g17(t.s_db) << "\n";
    os << "i_grid_db=" << join_g17(t.i_db) << "\n";
    os << "planes=estimate:f64,upper95:f64,samples:i64\n";
    os << "order=s_major\n";
    os << "end_header\n";
    return os.str();
}

void write_table(const OutageTable& t, const std::string& path) {
    std::string payload = serialize_table_header(t);
    const size_t cells = t.ns() * t.ni();
    if (t.estimate.size() != cells || t.upper95.size() != cells || t.samples.size() != cells)
        throw io_error("write_table: plane size does not match grid");
    payload.reserve(payload.size() + 24 * cells);
    for (double v : t.estimate) {
        uint64_t bits;
        std::memcpy(&bits, &v, 8);
        put_u64_le(payload, bits);
    }
    for (double v : t.upper95) {
        uint64_t bits;
        std::memcpy(&bits, &v, 8);
        put_u64_le(payload, bits);
    }
    for (int64_t v : t.samples) put_u64_le(payload, static_cast<uint64_t>(v));

    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw io_error("write_table: cannot open '" + path + "' for writing");
    os.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!os) throw io_error("write_table: write failed for '" + path + "'");
}

OutageTable read_table(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("read_table: cannot open '" + path + "'");
    std::string blob((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());

    const std::string terminator = "end_header\n";
    const size_t hdr_end = blob.find(terminator);
    if (hdr_end == std::string::npos) throw io_error("read_table: missing header terminator");
    const size_t data_off = hdr_end + terminator.size();
    const std::string header = blob.substr(0, data_off);

    std::map<std::string, std::string> kv;
    {
        std::istringstream hs(header);
        std::string line;
        if (!std::getline(hs, line) || line.rfind("#otab v", 0) != 0)
            throw io_error("read_table: not an outage table file (bad magic)");
        while (std::getline(hs, line)) {
            if (line == "end_header") break;
            const size_t eq = line.find('=');
            if (eq == std::string::npos) throw io_error("read_table: malformed header line '" + line + "'");
            kv[line.substr(0, eq)] = line.substr(eq + 1);
        }
    }
    auto need = [&kv](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw io_error("read_table: missing header field '" + key + "'");
        return it->second;
    };

    OutageTable t;
    t.meta.format_version = static_cast<int>(parse_i64(need("format_version")));
    if (t.meta.format_version != 1) throw io_error("read_table: unsupported format version");
    t.meta.f_u = static_cast<int>(parse_i64(need("f_u")));
    t.meta.r_bar_u = parse_double(need("r_bar_u"));
    t.meta.eps_target = parse_double(need("eps_target"));
    t.meta.ladder.clear();
    for (const std::string& part : split(need("ladder"), ',')) t.meta.ladder.push_back(parse_i64(part));
    t.meta.seed = static_cast<uint64_t>(parse_i64(need("seed")));
    t.meta.chunk = parse_i64(need("chunk"));
    t.meta.grid.s_min_db = parse_double(need("s_min_db"));
    t.meta.grid.s_max_db = parse_double(need("s_max_db"));
    t.meta.grid.s_step_db = parse_double(need("s_step_db"));
    t.meta.grid.s_count = static_cast<int>(parse_i64(need("s_count")));
    t.meta.grid.i_zero_row = parse_i64(need("i_zero_row")) != 0;
    t.meta.grid.i_min_db = parse_double(need("i_min_db"));
    t.meta.grid.i_max_db = parse_double(need("i_max_db"));
    t.meta.grid.i_step_db = parse_double(need("i_step_db"));
    t.meta.grid.i_count = static_cast<int>(parse_i64(need("i_count")));
    for (const std::string& part : split(need("s_grid_db"), ',')) t.s_db.push_back(parse_double(part));
    for (const std::string& part : split(need("i_grid_db"), ',')) t.i_db.push_back(parse_double(part));
    if (need("planes") != "estimate:f64,upper95:f64,samples:i64")
        throw io_error("read_table: unexpected plane layout");
    if (need("order") != "s_major") throw io_error("read_table: unexpected plane order");

    const size_t cells = t.ns() * t.ni();
    if (cells == 0) throw io_error("read_table: empty grid");
    const size_t expect = data_off + 24 * cells;
    if (blob.size() != expect) {
        std::ostringstream os;
        os << "read_table: corrupt or truncated file (have " << blob.size() << " bytes, expected "
           << expect << ")";
        throw io_error(os.str());
    }
    const unsigned char* p = reinterpret_cast<const unsigned char*>(blob.data()) + data_off;
    t.estimate.resize(cells);
    t.upper95.resize(cells);
    t.samples.resize(cells);
    for (size_t k = 0; k < cells; ++k, p += 8) {
        const uint64_t bits = get_u64_le(p);
        std::memcpy(&t.estimate[k], &bits, 8);
    }
    for (size_t k = 0; k < cells; ++k, p += 8) {
        const uint64_t bits = get_u64_le(p);
        std::memcpy(&t.upper95[k], &bits, 8);
    }
    for (size_t k = 0; k < cells; ++k, p += 8) t.samples[k] = static_cast<int64_t>(get_u64_le(p));
    return t;
}

void export_table_csv(const OutageTable& t, std::ostream& os) {
    std::istringstream hs(serialize_table_header(t));
    std::string line;
    while (std::getline(hs, line)) os << "# " << line << "\n";
    os << "s_db,i_db,estimate,upper95,samples\n";
    for (size_t si = 0; si < t.ns(); ++si)
        for (size_t ii = 0; ii < t.ni(); ++ii) {
            const size_t k = t.idx(si, ii);
            os << fmt_g17(t.s_db[si]) << ',' << fmt_g17(t.i_db[ii]) << ',' << fmt_g17(t.estimate[k])
               << ',' << fmt_g17(t.upper95[k]) << ',' << t.samples[k] << "\n";
        }
}

TableCheckReport check_table(const OutageTable& t, const std::string& original_header) {
    TableCheckReport rep;
    auto fail = [&rep](const std::string& msg) {
        rep.passed = false;
        rep.failures.push_back(msg);
    };

    if (!original_header.empty() && serialize_table_header(t) != original_header)
        fail("header does not round-trip byte-identically");

    const size_t ns = t.ns(), ni = t.ni();
    if (t.s_db.size() != static_cast<size_t>(t.meta.grid.s_count)) fail("s grid length disagrees with meta");
    const size_t ni_expected = static_cast<size_t>(t.meta.grid.i_count) + (t.meta.grid.i_zero_row ? 1 : 0);
    if (t.i_db.size() != ni_expected) fail("i grid length disagrees with meta");

    for (size_t k = 0; k < ns * ni; ++k) {
        if (!(t.estimate[k] >= 0.0 && t.estimate[k] <= 1.0) ||
            !(t.upper95[k] >= 0.0 && t.upper95[k] <= 1.0)) {
            fail("values outside [0,1] at cell " + std::to_string(k));
            break;
        }
        if (t.upper95[k] < t.estimate[k]) {
            fail("upper95 below estimate at cell " + std::to_string(k));
            break;
        }
        if (t.samples[k] < 1) {
            fail("nonpositive sample count at cell " + std::to_string(k));
            break;
        }
    }

    auto check_monotone = [&](const std::vector<double>& plane, const std::string& name) {
        for (size_t ii = 0; ii < ni; ++ii)
            for (size_t si = 0; si + 1 < ns; ++si)
                if (plane[si * ni + ii] < plane[(si + 1) * ni + ii]) {
                    std::ostringstream os;
                    os << name << " increases in s at cell (s=" << si + 1 << ", i=" << ii << ")";
                    fail(os.str());
                    return;
                }
        for (size_t si = 0; si < ns; ++si)
            for (size_t ii = 0; ii + 1 < ni; ++ii)
                if (plane[si * ni + ii] > plane[si * ni + ii + 1]) {
                    std::ostringstream os;
                    os << name << " decreases in i at cell (s=" << si << ", i=" << ii + 1 << ")";
                    fail(os.str());
                    return;
                }
    };
    check_monotone(t.estimate, "estimate plane");
    check_monotone(t.upper95, "upper95 plane");

    for (size_t row : t.infeasible_rows())
        rep.notes.push_back("row i_db=" + fmt_g17(t.i_db[row]) + " never reaches eps_target");

    if (t.meta.f_u == 1) {
        // Clamping only raises values by neighboring noise, so the closed
        // form must still sit within 3 binomial sigma of each cell.
        size_t bad = 0;
        double worst = 0.0;
        for (size_t si = 0; si < ns && bad == 0; ++si)
            for (size_t ii = 0; ii < ni; ++ii) {
                const size_t k = t.idx(si, ii);
                const double p = outage_closed_form_1fr(t.s_lin(si), t.i_lin(ii), t.meta.r_bar_u);
                const double sigma = std::sqrt(std::max(p * (1.0 - p), 1e-300) /
                                               static_cast<double>(t.samples[k]));
                const double dev = std::fabs(t.estimate[k] - p);
                if (dev > 3.0 * sigma + 1e-12) {
                    ++bad;
                    worst = dev;
                    std::ostringstream os;
                    os << "closed-form deviation " << dev << " > 3 sigma at cell (s=" << si
                       << ", i=" << ii << ")";
                    fail(os.str());
                    break;
                }
            }
        if (bad == 0) rep.notes.push_back("closed-form agreement (F_u = 1) within 3 sigma at all cells");
        (void)worst;
    }
    return rep;
}

} // namespace slicing
