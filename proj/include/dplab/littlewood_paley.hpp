#ifndef DPLAB_LITTLEWOOD_PALEY_HPP
#define DPLAB_LITTLEWOOD_PALEY_HPP

#include <vector>

#include "dplab/field.hpp"

namespace dplab {

// Smooth step on [0,1]: h(t)/(h(t)+h(1-t)) with h(t)=exp(-1/t), clamped to
// 0 below and 1 above.  Satisfies G(t)+G(1-t)=1.
double smooth_step(double t);

// The dyadic cutoff pair: chi supported in {|xi| <= 4/3} with chi = 1 on
// {|xi| <= 1}, and phi(xi) = chi(xi/2) - chi(xi) supported in the annulus
// {3/4 <= |xi| <= 8/3} with a plateau phi = 1 on {4/3 <= |xi| <= 2}.
struct LPFamily {
    double chi(double xi) const;
    double phi(double xi) const;

    // Largest block index whose support intersects the grid's frequency
    // range; higher blocks vanish identically on-grid.
    int j_max(const Grid1D& grid) const;
};

LPFamily build_family();
const LPFamily& default_family();

struct BesovParams {
    double s = 1.0;
    double p = 0.0;  // use infinity() for L^inf
    double r = 1.0;

    static double infinity();
};

// Dyadic block Delta_j: zero field for j <= -2, chi(D) for j = -1,
// phi(2^{-j} D) for j >= 0.
Field block(const Field& f, int j, const LPFamily& fam = default_family());

// Low-frequency cutoff S_N = sum of blocks -1..N-1 (N >= 0).
Field low_cutoff(const Field& f, int N, const LPFamily& fam = default_family());

// L^p norms of all blocks j = -1..j_max(grid), computed from one forward
// transform.
std::vector<double> block_lp_norms(const Field& f, double p,
                                   const LPFamily& fam = default_family());

// Nonhomogeneous Besov norm: weights 2^{s j} applied uniformly (the j = -1
// term carries 2^{-s}); ell^r over j, truncated at j_max(grid).
double besov_norm(const Field& f, const BesovParams& params,
                  const LPFamily& fam = default_family());

// Empirical constant for the product estimate
// |uv|_{B^s_{p,1}} <= C(|u|_{B^s_{p,1}} |v|_inf + |v|_{B^s_{p,1}} |u|_inf):
// returns LHS / bracket.
double product_estimate_ratio(const Field& u, const Field& v, double s, double p,
                              const LPFamily& fam = default_family());

// Empirical constant for |u|_{B^1_{inf,1}} <= C |u|^{1/2}_{B^0_{inf,inf}}
// |u|^{1/2}_{B^2_{inf,inf}}.
double interpolation_ratio(const Field& u, const LPFamily& fam = default_family());

}  // namespace dplab

#endif
