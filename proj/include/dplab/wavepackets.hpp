#ifndef DPLAB_WAVEPACKETS_HPP
#define DPLAB_WAVEPACKETS_HPP

#include <vector>

#include "dplab/field.hpp"

namespace dplab {

// Bump in frequency: 1 on [0, 1/4], smooth-step glue down to 0 at 1/2, even.
double hat_phi(double xi);

// The envelope: inverse transform of hat_phi sampled on the grid ladder,
// scaled so phi approximates (1/2pi) * integral hat_phi(xi) e^{i xi x} dxi.
struct Envelope {
    Grid1D grid;
    Field phi;
    double phi0 = 0.0;  // phi(0) = max of phi
    double tail = 0.0;  // periodization_tail(phi) at construction
};

// Builds the envelope; requires grid spacing dxi <= 1/12 and rejects grids
// whose periodization tail exceeds tail_tolerance.  The glue is not
// analytic, so the envelope decays slower than any exponential; at the
// default L = 12*pi the measured tail is ~3e-2 relative, which bounds the
// wrap-around error carried into every packet built from it.
Envelope make_envelope(const Grid1D& grid, double tail_tolerance = 0.05);

struct PacketParams {
    int n = 0;
    double carrier = 0.0;      // (17/12) * 2^n
    double amplitude_f = 0.0;  // 2^{-n}
    double amplitude_g = 0.0;  // (12/17) * 2^{-n}

    static PacketParams for_index(int n);
    // Carrier must sit exactly on the frequency ladder and below half the
    // Nyquist frequency.
    void validate(const Grid1D& grid) const;
};

// f_n = 2^{-n} phi(x) sin(carrier * x): one dyadic block at j = n.
Field make_fn(const Envelope& env, int n);

// g_n = (12/17) 2^{-n} phi(x): low-frequency companion, block j = -1 only.
Field make_gn(const Envelope& env, int n);

struct PacketDiagnosticsRow {
    int n = 0;
    double sigma = 0.0;
    double besov_f = 0.0;      // |f_n|_{B^sigma_inf,1}
    double besov_g = 0.0;      // |g_n|_{B^sigma_inf,1}
    double linf_f = 0.0;
    double linf_g = 0.0;
    double product_high = 0.0;  // |g_n d_x f_n|_{B^1_inf,inf}
    double product_low = 0.0;   // |g_n d_x g_n|_{B^1_inf,inf} (contrast)
};

// One row per (n, sigma); the product columns depend only on n and repeat
// across sigma rows.
std::vector<PacketDiagnosticsRow> packet_diagnostics(const Envelope& env, int n_lo, int n_hi,
                                                     const std::vector<double>& sigmas);

// Smallest power-of-two sample count (>= 16) whose Nyquist frequency clears
// 4 * (17/12) * 2^{n_max} on a [-L, L) grid with L = L_over_pi * pi.
int auto_packet_N(int n_max, double L_over_pi);

}  // namespace dplab

#endif
