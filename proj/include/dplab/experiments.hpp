#ifndef DPLAB_EXPERIMENTS_HPP
#define DPLAB_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dplab/field.hpp"
#include "dplab/rng.hpp"

namespace dplab {

struct SlopeFit {
    std::vector<std::pair<double, double>> points;  // (log x, log y)
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

// Least-squares line in log-log coordinates; requires >= 3 strictly
// positive samples of equal length.
SlopeFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

struct Table {
    std::string name;  // output file stem
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    std::string note;
};

struct ExperimentReport {
    std::string id;
    std::string config_echo;  // canonical key=value echo, hashed into the manifest
    std::vector<Table> tables;
    std::vector<Verdict> verdicts;
    std::map<std::string, double> constants;  // empirical C, M1, kappa, ...
    double wall_seconds = 0.0;
    std::string resolution_note;

    bool passed() const;
};

// Band-limited field with seeded spectrum (modes |xi| <= xi_max, mildly
// decaying coefficients), normalized to |.|_{B^1_inf,1} = 1.
Field random_band_limited(const Grid1D& grid, double xi_max, Rng& rng);

struct FamilyConfig {
    int n_lo = 4;
    int n_hi = 10;
    std::vector<double> sigmas = {0.5, 1.0, 2.0};
    double L_over_pi = 12.0;
    int N = 1 << 17;

    std::string echo() const;
};

// E1: wavepacket family norm scalings vs n.
ExperimentReport exp_family_scaling(const FamilyConfig& cfg);

// E2: lower bound for |g_n d_x f_n|_{B^1_inf,inf} plus the decaying
// contrast |g_n d_x g_n|.
ExperimentReport exp_product_lower(const FamilyConfig& cfg);

struct ExpansionConfig {
    int t_points = 6;
    double t_lo = 1e-3;
    double t_hi = 1e-1;
    double L_over_pi = 12.0;
    int N = 1 << 13;
    double dt = 1e-3;
    int packet_n = 5;  // third datum is f_n + g_n with this n

    std::string echo() const;
    std::vector<double> t_grid() const;
};

// E3: O(t^2) residual of the first-order solution expansion.
ExperimentReport exp_expansion(const ExpansionConfig& cfg);

struct NonuniformConfig {
    int n_lo = 4;
    int n_hi = 8;
    std::vector<double> t_stars = {0.01, 0.05, 0.1};
    double L_over_pi = 12.0;
    int N = 1 << 15;
    int workers = 0;  // 0 = hardware concurrency

    std::string echo() const;
};

// E4a: non-uniform dependence; packet pairs (f_n + g_n, f_n).
ExperimentReport exp_nonuniform(const NonuniformConfig& cfg);

struct StabilityConfig {
    int trials = 20;
    double horizon = 0.5;
    std::vector<double> deltas = {1e-2, 1e-3, 1e-4};
    double band_max = 8.0;
    double L_over_pi = 12.0;
    int N = 1024;
    double dt = 1e-3;
    std::uint64_t seed = 1;
    int workers = 0;

    std::string echo() const;
};

// E4b: L^inf difference ratios for randomly perturbed smooth data.
ExperimentReport exp_linf_stability(const StabilityConfig& cfg);

struct MollifyConfig {
    int cut_lo = 2;
    int cut_hi = 8;
    double horizon = 0.2;
    double L_over_pi = 12.0;
    int N = 1 << 14;
    int packet_n = 6;  // u0 = f_n + cos 3x

    std::string echo() const;
};

// E5: continuity along mollified data S_N u0.
ExperimentReport exp_mollification(const MollifyConfig& cfg);

struct ValidateConfig {
    // conservation reference run
    double cons_L_over_pi = 1.0;
    int cons_N = 256;
    double cons_dt = 1e-3;
    double cons_t_end = 1.0;
    // temporal order study
    std::vector<double> dt_ladder = {5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
    double order_T = 0.25;
    // spatial refinement study (Poisson-kernel data, spectrum ~ r^|m|)
    std::vector<int> refine_Ns = {64, 128, 256};
    int refine_ref_N = 1024;
    double refine_T = 0.5;
    double refine_r = 0.7;
    double refine_amp = 0.3;
    // a priori diagnostic battery: (amplitude of cos x, t_end)
    std::vector<std::pair<double, double>> apriori_battery = {{0.25, 1.0}, {0.5, 0.5}};

    std::string echo() const;
};

// E6: integrator trust suite (steady states, conservation, dt order,
// N refinement, a priori norm diagnostic).
ExperimentReport exp_solver_validation(const ValidateConfig& cfg);

}  // namespace dplab

#endif
