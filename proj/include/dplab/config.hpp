#ifndef DPLAB_CONFIG_HPP
#define DPLAB_CONFIG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace dplab {

struct ConfigError : std::runtime_error {
    ConfigError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg), line(line_), col(col_) {}
    int line = 0;
    int col = 0;
};

// Whole-artifact configuration: INI-style sections grid / solver / family /
// experiment.  Flags override file values; the canonical serialization is
// hashed into run manifests.
struct LabConfig {
    // [grid]
    double L_over_pi = 12.0;
    int N = 0;  // 0 = auto from the packets in play

    // [solver]
    double dt = 0.0;  // 0 = auto heuristic
    bool dealias = true;
    double guard_gradient_max = 1e3;
    double guard_tail_max = 1e-6;

    // [family]
    int n_lo = 4;
    int n_hi = 10;
    std::vector<double> sigmas = {0.5, 1.0, 2.0};

    // [experiment]
    std::vector<double> t_stars = {0.01, 0.05, 0.1};
    std::vector<double> deltas = {1e-2, 1e-3, 1e-4};
    int trials = 20;
    double horizon_stability = 0.5;
    double horizon_mollify = 0.2;
    int cut_lo = 2;
    int cut_hi = 8;
    int expansion_points = 6;
    int expansion_packet_n = 5;
    int mollify_packet_n = 6;
    int nonuniform_n_lo = 4;
    int nonuniform_n_hi = 8;
    int nonuniform_N = 1 << 15;

    void validate() const;  // throws std::invalid_argument with field path
    std::string canonical() const;
};

// Parses the file at path; throws ConfigError (with line/column) on
// malformed input or unknown sections/keys, std::invalid_argument on
// constraint violations.
LabConfig load_config(const std::string& path);

// Same parser over an in-memory document.
LabConfig parse_config_text(const std::string& text, const std::string& origin);

}  // namespace dplab

#endif
