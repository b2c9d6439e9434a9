#ifndef DPLAB_FIELD_HPP
#define DPLAB_FIELD_HPP

#include <complex>
#include <vector>

#include "dplab/grid.hpp"

namespace dplab {

// Real-valued sampled function on a Grid1D.
struct Field {
    Grid1D grid;
    std::vector<double> u;

    Field() = default;
    Field(const Grid1D& g, double fill = 0.0) : grid(g), u(g.N, fill) {}
    Field(const Grid1D& g, std::vector<double> samples);

    int size() const { return grid.N; }
    double& operator[](int k) { return u[k]; }
    double operator[](int k) const { return u[k]; }

    bool all_finite() const;
};

// Fourier coefficients c_m of f(x) = sum_m c_m exp(i*xi_m*x), stored in FFT
// order (see Grid1D::mode).  Real fields have conjugate-symmetric spectra.
struct Spectrum {
    Grid1D grid;
    std::vector<std::complex<double>> c;

    Spectrum() = default;
    explicit Spectrum(const Grid1D& g) : grid(g), c(g.N, {0.0, 0.0}) {}

    int size() const { return grid.N; }
};

// Largest relative deviation from c(-m) == conj(c(m)).
double conjugate_asymmetry(const Spectrum& s);

// Elementwise arithmetic; grids must match exactly.
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
Field& operator+=(Field& a, const Field& b);

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what);

}  // namespace dplab

#endif
