#ifndef DPLAB_REPORT_IO_HPP
#define DPLAB_REPORT_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dplab/experiments.hpp"

namespace dplab {

// Shortest decimal that round-trips the double exactly ("%.17g" trimmed).
std::string format_full(double v);

// FNV-1a 64-bit over the bytes of the canonical config text.
std::uint64_t fnv1a64(const std::string& text);
std::string hex64(std::uint64_t v);

// Writes table as CSV (header row + preformatted cells) into dir; returns
// the file path.  Output is byte-stable for identical inputs.
std::string write_csv(const std::string& dir, const Table& table);

struct ManifestInfo {
    std::string tool_version;
    std::string experiment_id;
    std::string config_digest;
    std::string config_text;  // the exact bytes the digest covers
    std::uint64_t seed = 0;
    std::string resolution_note;
    std::string started_utc;
    std::string finished_utc;
    std::vector<std::string> outputs;
};

// Appends one JSON line to <dir>/manifest.jsonl.
void append_manifest(const std::string& dir, const ManifestInfo& info);

std::string utc_timestamp();

// Log-log scatter with fitted line; returns the file path.
std::string write_svg_loglog(const std::string& dir, const std::string& name,
                             const std::vector<double>& xs, const std::vector<double>& ys,
                             const SlopeFit& fit, const std::string& x_label,
                             const std::string& y_label);

// Writes every table of the report plus the manifest (and optional plots
// for tables that pair with a fitted slope); returns written paths.
std::vector<std::string> write_report(const ExperimentReport& report, const std::string& dir,
                                      std::uint64_t seed, bool plots);

}  // namespace dplab

#endif
