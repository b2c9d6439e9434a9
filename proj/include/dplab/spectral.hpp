#ifndef DPLAB_SPECTRAL_HPP
#define DPLAB_SPECTRAL_HPP

#include <complex>
#include <functional>

#include "dplab/field.hpp"

namespace dplab {

using Symbol = std::function<std::complex<double>(double)>;

// Trigonometric analysis/synthesis with the centered phase convention:
// forward returns c_m such that f(x_k) = sum_m c_m exp(i*xi_m*x_k).
Spectrum forward(const Field& f);
Field inverse(const Spectrum& s);

// Coefficientwise product with m(xi); m must be finite at every grid
// frequency.  Real output requires m(-xi) == conj(m(xi)).
Spectrum apply_multiplier(const Spectrum& s, const Symbol& m);
Field apply_multiplier(const Field& f, const Symbol& m);

// Spectral derivative, multiplier i*xi.
Field derivative(const Field& f);

// (1 - d_xx)^{-1}, multiplier 1/(1+xi^2); equals convolution with the
// 2L-periodization of p(x) = exp(-|x|)/2.
Field helmholtz_inverse(const Field& f);

// d_x (1 - d_xx)^{-1}, multiplier i*xi/(1+xi^2).
Field helmholtz_grad(const Field& f);

// Pointwise product with the upper third of the spectrum zeroed before and
// after (2/3 rule).  Exact when the combined bandwidth stays under 2/3 of
// Nyquist.
Field dealiased_product(const Field& f, const Field& g);

// Zero all modes with |xi| > (2/3) * Nyquist.
Field dealias_truncate(const Field& f);

// Grid L^p norm: (dx * sum |u_k|^p)^(1/p) for finite p, max |u_k| for
// p = infinity (pass p = std::numeric_limits<double>::infinity()).
double lp_norm(const Field& f, double p);

// dx * sum u_k^k for k in {1, 3} (rectangle rule, spectrally exact for
// smooth periodic integrands).
double integral_moment(const Field& f, int k);

// max |u| over the 5 samples nearest each end of the domain, relative to
// the sup norm; the wrap-around defect of fields sampled from formulas
// posed on the whole line.
double periodization_tail(const Field& f);

}  // namespace dplab

#endif
