#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slicing/outage.hpp"

namespace slicing {

/// Canonical text header of the table container. The same serializer is
/// used when writing and when checking a loaded file, so a header that
/// parses must re-serialize byte-identically.
std::string serialize_table_header(const OutageTable& table);

/// File layout: text header terminated by "end_header\n", then the three
/// planes as little-endian raw values (estimate, upper95 as f64; samples as
/// i64), each row-major with s as the major index.
void write_table(const OutageTable& table, const std::string& path);
OutageTable read_table(const std::string& path);

/// Textual export for inspection: meta as '#'-prefixed comment lines, then
/// one "s_db,i_db,estimate,upper95,samples" row per cell.
void export_table_csv(const OutageTable& table, std::ostream& os);

struct TableCheckReport {
    bool passed = true;
    std::vector<std::string> failures;
    std::vector<std::string> notes;
};

/// Validation used by the verify command: header round-trip, value ranges,
/// monotonicity of both planes, per-row feasibility notes, and (for
/// single-resource tables) agreement with the closed form within 3 binomial
/// standard deviations per cell.
TableCheckReport check_table(const OutageTable& table, const std::string& original_header);

/// %.17g formatting: shortest text that round-trips a double exactly.
std::string fmt_g17(double v);

} // namespace slicing
