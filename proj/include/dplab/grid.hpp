#ifndef DPLAB_GRID_HPP
#define DPLAB_GRID_HPP

#include <cstddef>

namespace dplab {

// Periodic sampling domain [-L, L) with N equispaced points.
// Sample locations x_k = -L + k*dx, dx = 2L/N.  The discrete frequency
// ladder is xi_m = pi*m/L for integer m in [-N/2, N/2).
struct Grid1D {
    double L = 0.0;
    int N = 0;

    double dx() const { return 2.0 * L / N; }
    double dxi() const { return pi() / L; }
    double x(int k) const { return -L + k * dx(); }
    double nyquist() const { return (N / 2) * dxi(); }

    // Frequency for a coefficient in FFT storage order: index i holds
    // mode m = i for i < N/2 and m = i - N otherwise.
    int mode(int i) const { return i < N / 2 ? i : i - N; }
    double frequency(int i) const { return mode(i) * dxi(); }

    bool operator==(const Grid1D& o) const { return L == o.L && N == o.N; }
    bool operator!=(const Grid1D& o) const { return !(*this == o); }

    static double pi();
};

// Validates N (power of two, >= 16) and L > 0; throws std::invalid_argument.
Grid1D make_grid(double L, int N);

}  // namespace dplab

#endif
