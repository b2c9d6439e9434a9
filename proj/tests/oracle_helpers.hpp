#ifndef DPLAB_TESTS_ORACLE_HELPERS_HPP
#define DPLAB_TESTS_ORACLE_HELPERS_HPP

// Independent oracles used by the test suites.  Everything here is written
// against the definitions directly (quadratic-cost transforms, quadrature,
// finite differences) and must stay decoupled from the library's FFT path.

#include <cmath>
#include <complex>
#include <vector>

#include "dplab/field.hpp"
#include "dplab/rng.hpp"

namespace oracle {

// Direct O(N^2) evaluation of c_m = (1/N) sum_k u_k exp(-i xi_m x_k).
inline std::vector<std::complex<double>> slow_dft(const dplab::Field& f) {
    const int N = f.grid.N;
    std::vector<std::complex<double>> c(N);
    for (int i = 0; i < N; ++i) {
        const double xi = f.grid.frequency(i);
        std::complex<double> acc{0.0, 0.0};
        for (int k = 0; k < N; ++k) {
            const double phase = -xi * f.grid.x(k);
            acc += f.u[k] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        c[i] = acc / static_cast<double>(N);
    }
    return c;
}

// Direct synthesis u_k = sum_m c_m exp(i xi_m x_k).
inline std::vector<double> slow_idft(const dplab::Grid1D& grid,
                                     const std::vector<std::complex<double>>& c) {
    const int N = grid.N;
    std::vector<double> u(N, 0.0);
    for (int k = 0; k < N; ++k) {
        std::complex<double> acc{0.0, 0.0};
        for (int i = 0; i < N; ++i) {
            const double phase = grid.frequency(i) * grid.x(k);
            acc += c[i] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        u[k] = acc.real();
    }
    return u;
}

// Centered second-order finite difference derivative on the periodic grid.
inline dplab::Field fd_derivative(const dplab::Field& f) {
    const int N = f.grid.N;
    dplab::Field d(f.grid);
    const double h = f.grid.dx();
    for (int k = 0; k < N; ++k)
        d.u[k] = (f.u[(k + 1) % N] - f.u[(k + N - 1) % N]) / (2.0 * h);
    return d;
}

// Convolution with the 2L-periodization of p(x) = exp(-|x|)/2, evaluated by
// the trapezoid rule on a trigonometrically upsampled copy of f.  The
// kernel uses the truncated image sum |k| <= 30.  Fully independent of the
// library FFT: coefficients come from slow_dft, synthesis is a direct sum.
inline dplab::Field periodized_kernel_convolution(const dplab::Field& f, int upsample_factor) {
    const int N = f.grid.N;
    const int NF = N * upsample_factor;
    const double L = f.grid.L;
    const double h = 2.0 * L / NF;

    const std::vector<std::complex<double>> c = slow_dft(f);

    // band-limited interpolant on the fine grid
    std::vector<double> fine(NF, 0.0);
    for (int i = 0; i < N; ++i) {
        const double xi = f.grid.frequency(i);
        const std::complex<double> ci = c[i];
        if (std::abs(ci) == 0.0) continue;
        for (int k = 0; k < NF; ++k) {
            const double x = -L + k * h;
            fine[k] += (ci * std::complex<double>(std::cos(xi * x), std::sin(xi * x))).real();
        }
    }

    // kernel periodization sampled on the fine grid
    std::vector<double> ker(NF, 0.0);
    for (int k = 0; k < NF; ++k) {
        const double x = -L + k * h;
        double acc = 0.0;
        for (int img = -30; img <= 30; ++img) acc += 0.5 * std::exp(-std::abs(x + 2.0 * L * img));
        ker[k] = acc;
    }

    // (p * f)(x_i) = h * sum_j p_per(x_i - y_j) f(y_j); the argument lands
    // back on the fine grid: index (i*up - j + NF/2) mod NF.
    dplab::Field out(f.grid);
    for (int i = 0; i < N; ++i) {
        double acc = 0.0;
        const int base = i * upsample_factor + NF / 2;
        for (int j = 0; j < NF; ++j) acc += ker[(base - j + NF) % NF] * fine[j];
        out.u[i] = h * acc;
    }
    return out;
}

// Band-limited test field with seeded coefficients, |xi| <= xi_max.
inline dplab::Field random_band_field(const dplab::Grid1D& grid, double xi_max, dplab::Rng& rng) {
    const int m_max = static_cast<int>(std::floor(xi_max / grid.dxi() + 1e-9));
    std::vector<double> u(grid.N, 0.0);
    for (int m = 0; m <= std::min(m_max, grid.N / 2 - 1); ++m) {
        const double a = rng.normal();
        const double b = m == 0 ? 0.0 : rng.normal();
        const double xi = m * grid.dxi();
        for (int k = 0; k < grid.N; ++k) {
            const double x = grid.x(k);
            u[k] += a * std::cos(xi * x) + b * std::sin(xi * x);
        }
    }
    return dplab::Field(grid, u);
}

// Trapezoid refinement of integral of g over [-L, L) until stable; used to
// freeze closed-form norm values.
template <typename F>
double refined_integral(double L, F g) {
    double prev = 0.0;
    for (int n = 1 << 10; n <= (1 << 20); n *= 2) {
        double acc = 0.0;
        const double h = 2.0 * L / n;
        for (int k = 0; k < n; ++k) acc += g(-L + (k + 0.5) * h);
        acc *= h;
        if (n > (1 << 12) && std::abs(acc - prev) <= 1e-13 * std::max(1.0, std::abs(acc)))
            return acc;
        prev = acc;
    }
    return prev;
}

}  // namespace oracle

#endif
