#include "dplab/littlewood_paley.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dplab/spectral.hpp"

namespace dplab {

double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double LPFamily::chi(double xi) const {
    const double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 4.0 / 3.0) return 0.0;
    return smooth_step((4.0 / 3.0 - a) * 3.0);
}

double LPFamily::phi(double xi) const { return chi(xi / 2.0) - chi(xi); }

int LPFamily::j_max(const Grid1D& grid) const {
    const double ximax = grid.nyquist();
    int j = 0;
    while (0.75 * std::ldexp(1.0, j + 1) <= ximax) ++j;
    return j;
}

LPFamily build_family() { return LPFamily{}; }

const LPFamily& default_family() {
    static const LPFamily fam = build_family();
    return fam;
}

double BesovParams::infinity() { return std::numeric_limits<double>::infinity(); }

namespace {

// Block symbol at frequency xi; ldexp keeps the dyadic scaling exact.
double block_symbol(const LPFamily& fam, int j, double xi) {
    if (j <= -2) return 0.0;
    if (j == -1) return fam.chi(xi);
    return fam.phi(std::ldexp(xi, -j));
}

}  // namespace

Field block(const Field& f, int j, const LPFamily& fam) {
    if (j <= -2) return Field(f.grid);
    Spectrum s = forward(f);
    for (int i = 0; i < s.grid.N; ++i)
        s.c[i] *= block_symbol(fam, j, s.grid.frequency(i));
    return inverse(s);
}

Field low_cutoff(const Field& f, int N, const LPFamily& fam) {
    if (N < 0) throw std::invalid_argument("low_cutoff: N must be >= 0");
    Spectrum s = forward(f);
    for (int i = 0; i < s.grid.N; ++i) {
        const double xi = s.grid.frequency(i);
        double sym = 0.0;
        for (int q = -1; q <= N - 1; ++q) sym += block_symbol(fam, q, xi);
        s.c[i] *= sym;
    }
    return inverse(s);
}

std::vector<double> block_lp_norms(const Field& f, double p, const LPFamily& fam) {
    const Spectrum s = forward(f);
    const int jm = fam.j_max(f.grid);
    std::vector<double> norms;
    norms.reserve(jm + 2);
    Spectrum tmp(f.grid);
    for (int j = -1; j <= jm; ++j) {
        for (int i = 0; i < s.grid.N; ++i)
            tmp.c[i] = s.c[i] * block_symbol(fam, j, s.grid.frequency(i));
        norms.push_back(lp_norm(inverse(tmp), p));
    }
    return norms;
}

double besov_norm(const Field& f, const BesovParams& params, const LPFamily& fam) {
    if (!(params.p >= 1.0) || !(params.r >= 1.0))
        throw std::invalid_argument("besov_norm: p and r must be >= 1");
    const std::vector<double> norms = block_lp_norms(f, params.p, fam);
    if (std::isinf(params.r)) {
        double m = 0.0;
        for (std::size_t i = 0; i < norms.size(); ++i)
            m = std::max(m, std::pow(2.0, params.s * (static_cast<int>(i) - 1)) * norms[i]);
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < norms.size(); ++i)
        acc += std::pow(std::pow(2.0, params.s * (static_cast<int>(i) - 1)) * norms[i], params.r);
    return std::pow(acc, 1.0 / params.r);
}

double product_estimate_ratio(const Field& u, const Field& v, double s, double p,
                              const LPFamily& fam) {
    if (!(s > 0.0)) throw std::invalid_argument("product_estimate_ratio: s must be > 0");
    require_same_grid(u.grid, v.grid, "product_estimate_ratio");
    const double inf = BesovParams::infinity();
    const BesovParams bp{s, p, 1.0};
    const double bu = besov_norm(u, bp, fam);
    const double bv = besov_norm(v, bp, fam);
    const double lu = lp_norm(u, inf);
    const double lv = lp_norm(v, inf);
    const double bracket = bu * lv + bv * lu;
    if (bracket == 0.0)
        throw std::invalid_argument("product_estimate_ratio: both fields are zero");
    Field uv(u.grid);
    for (int k = 0; k < u.size(); ++k) uv.u[k] = u.u[k] * v.u[k];
    return besov_norm(uv, bp, fam) / bracket;
}

double interpolation_ratio(const Field& u, const LPFamily& fam) {
    const double inf = BesovParams::infinity();
    const double b0 = besov_norm(u, {0.0, inf, inf}, fam);
    const double b2 = besov_norm(u, {2.0, inf, inf}, fam);
    if (b0 == 0.0 || b2 == 0.0)
        throw std::invalid_argument("interpolation_ratio: zero field");
    return besov_norm(u, {1.0, inf, 1.0}, fam) / std::sqrt(b0 * b2);
}

}  // namespace dplab
