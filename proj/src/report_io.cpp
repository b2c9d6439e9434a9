#include "dplab/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "dplab/version.hpp"

namespace dplab {

std::string format_full(double v) {
    char buf[40];
    // 17 significant digits round-trip any double; . as decimal separator
    // regardless of locale (snprintf with C locale semantics for %g and
    // plain doubles).
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf);
}

std::string write_csv(const std::string& dir, const Table& table) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + table.name + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out << ',';
        out << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
    return path;
}

std::string utc_timestamp() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return std::string(buf);
}

void append_manifest(const std::string& dir, const ManifestInfo& info) {
    std::filesystem::create_directories(dir);
    nlohmann::json j;
    j["tool_version"] = info.tool_version;
    j["experiment"] = info.experiment_id;
    j["config_digest"] = info.config_digest;
    j["config"] = info.config_text;
    j["seed"] = info.seed;
    j["resolution"] = info.resolution_note;
    j["started_utc"] = info.started_utc;
    j["finished_utc"] = info.finished_utc;
    j["outputs"] = info.outputs;
    std::ofstream out(dir + "/manifest.jsonl", std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("append_manifest: cannot open manifest in " + dir);
    out << j.dump() << '\n';
}

namespace {

double nice_log(double v) { return std::log10(v); }

}  // namespace

std::string write_svg_loglog(const std::string& dir, const std::string& name,
                             const std::vector<double>& xs, const std::vector<double>& ys,
                             const SlopeFit& fit, const std::string& x_label,
                             const std::string& y_label) {
    std::filesystem::create_directories(dir);
    const std::string path = dir + "/" + name + ".svg";
    const int W = 560, H = 420, ml = 70, mr = 20, mt = 20, mb = 50;
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        lx0 = std::min(lx0, nice_log(xs[i]));
        lx1 = std::max(lx1, nice_log(xs[i]));
        ly0 = std::min(ly0, nice_log(ys[i]));
        ly1 = std::max(ly1, nice_log(ys[i]));
    }
    if (lx1 - lx0 < 1e-12) { lx0 -= 0.5; lx1 += 0.5; }
    if (ly1 - ly0 < 1e-12) { ly0 -= 0.5; ly1 += 0.5; }
    const auto px = [&](double lx) { return ml + (lx - lx0) / (lx1 - lx0) * (W - ml - mr); };
    const auto py = [&](double ly) { return H - mb - (ly - ly0) / (ly1 - ly0) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n"
        << "<rect width='100%' height='100%' fill='white'/>\n"
        << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='" << H - mb
        << "' stroke='black'/>\n"
        << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
        << "' stroke='black'/>\n";
    // fitted line in natural-log space mapped to log10 axes
    const double ln10 = std::log(10.0);
    const double fx0 = lx0, fx1 = lx1;
    const double fy0 = (fit.intercept + fit.slope * fx0 * ln10) / ln10;
    const double fy1 = (fit.intercept + fit.slope * fx1 * ln10) / ln10;
    svg << "<line x1='" << px(fx0) << "' y1='" << py(fy0) << "' x2='" << px(fx1) << "' y2='"
        << py(fy1) << "' stroke='#d62728' stroke-width='1.5'/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        svg << "<circle cx='" << px(nice_log(xs[i])) << "' cy='" << py(nice_log(ys[i]))
            << "' r='4' fill='#1f77b4'/>\n";
    svg << "<text x='" << (W / 2) << "' y='" << (H - 12) << "' text-anchor='middle' font-size='13'>"
        << x_label << " (log10)</text>\n"
        << "<text x='16' y='" << (H / 2) << "' text-anchor='middle' font-size='13' transform='rotate(-90 16 "
        << (H / 2) << ")'>" << y_label << " (log10)</text>\n"
        << "<text x='" << (W - mr - 4) << "' y='" << (mt + 14)
        << "' text-anchor='end' font-size='13'>slope " << format_full(fit.slope) << "</text>\n"
        << "</svg>\n";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_svg_loglog: cannot open " + path);
    out << svg.str();
    return path;
}

std::vector<std::string> write_report(const ExperimentReport& report, const std::string& dir,
                                      std::uint64_t seed, bool plots) {
    ManifestInfo info;
    info.tool_version = version_string();
    info.experiment_id = report.id;
    info.config_digest = hex64(fnv1a64(report.config_echo));
    info.config_text = report.config_echo;
    info.seed = seed;
    info.resolution_note = report.resolution_note;
    info.started_utc = utc_timestamp();

    std::vector<std::string> paths;
    for (const auto& t : report.tables) paths.push_back(write_csv(dir, t));

    if (plots) {
        // generic per-table plot: first two numeric columns that are
        // positive throughout
        for (const auto& t : report.tables) {
            std::vector<double> xs, ys;
            for (const auto& row : t.rows) {
                if (row.size() < 2) break;
                char* end = nullptr;
                const double x = std::strtod(row[0].c_str(), &end);
                if (end == row[0].c_str()) break;
                const double y = std::strtod(row[1].c_str(), &end);
                if (end == row[1].c_str()) break;
                if (x > 0 && y > 0) {
                    xs.push_back(x);
                    ys.push_back(y);
                }
            }
            if (xs.size() >= 3) {
                try {
                    const SlopeFit fit = fit_loglog_slope(xs, ys);
                    paths.push_back(write_svg_loglog(dir, t.name + "_plot", xs, ys, fit,
                                                     t.header[0], t.header[1]));
                } catch (const std::exception&) {
                    // non-monotone or degenerate table; skip the plot
                }
            }
        }
    }

    info.finished_utc = utc_timestamp();
    info.outputs = paths;
    append_manifest(dir, info);
    return paths;
}

}  // namespace dplab
