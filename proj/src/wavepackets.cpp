#include "dplab/wavepackets.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dplab/littlewood_paley.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

double hat_phi(double xi) {
    const double a = std::abs(xi);
    if (a <= 0.25) return 1.0;
    if (a >= 0.5) return 0.0;
    return smooth_step((0.5 - a) * 4.0);
}

Envelope make_envelope(const Grid1D& grid, double tail_tolerance) {
    if (grid.dxi() > 1.0 / 12.0 + 1e-15)
        throw std::invalid_argument("make_envelope: grid dxi must be <= 1/12");
    Spectrum s(grid);
    const double scale = grid.dxi() / (2.0 * Grid1D::pi());
    for (int i = 0; i < grid.N; ++i) s.c[i] = hat_phi(grid.frequency(i)) * scale;
    Envelope env;
    env.grid = grid;
    env.phi = inverse(s);
    env.phi0 = env.phi.u[grid.N / 2];  // x = 0
    env.tail = periodization_tail(env.phi);
    if (!(env.phi0 > 0.0))
        throw std::runtime_error("make_envelope: phi(0) must be positive");
    if (env.tail > tail_tolerance)
        throw std::runtime_error("make_envelope: periodization tail " + std::to_string(env.tail) +
                                 " exceeds tolerance " + std::to_string(tail_tolerance) +
                                 " (grid too small)");
    return env;
}

PacketParams PacketParams::for_index(int n) {
    if (n < 1) throw std::invalid_argument("PacketParams: n must be >= 1");
    PacketParams p;
    p.n = n;
    p.carrier = (17.0 / 12.0) * std::ldexp(1.0, n);
    p.amplitude_f = std::ldexp(1.0, -n);
    p.amplitude_g = (12.0 / 17.0) * std::ldexp(1.0, -n);
    return p;
}

void PacketParams::validate(const Grid1D& grid) const {
    const double m = carrier / grid.dxi();
    if (std::abs(m - std::round(m)) > 1e-9)
        throw std::invalid_argument("PacketParams: carrier not representable on grid (n=" +
                                    std::to_string(n) + ")");
    if (grid.nyquist() < 2.0 * carrier)
        throw std::invalid_argument("PacketParams: Nyquist below 2x carrier (n=" +
                                    std::to_string(n) + ")");
}

Field make_fn(const Envelope& env, int n) {
    const PacketParams p = PacketParams::for_index(n);
    p.validate(env.grid);
    Field f(env.grid);
    for (int k = 0; k < env.grid.N; ++k)
        f.u[k] = p.amplitude_f * env.phi.u[k] * std::sin(p.carrier * env.grid.x(k));
    return f;
}

Field make_gn(const Envelope& env, int n) {
    const PacketParams p = PacketParams::for_index(n);
    return p.amplitude_g * env.phi;
}

int auto_packet_N(int n_max, double L_over_pi) {
    const double target = 4.0 * (17.0 / 12.0) * std::ldexp(1.0, n_max);
    int N = 16;
    while ((N / 2) / L_over_pi < target) N *= 2;
    return N;
}

std::vector<PacketDiagnosticsRow> packet_diagnostics(const Envelope& env, int n_lo, int n_hi,
                                                     const std::vector<double>& sigmas) {
    if (n_lo < 1 || n_hi < n_lo)
        throw std::invalid_argument("packet_diagnostics: bad n range");
    const double inf = BesovParams::infinity();
    std::vector<PacketDiagnosticsRow> rows;
    for (int n = n_lo; n <= n_hi; ++n) {
        const Field fn = make_fn(env, n);
        const Field gn = make_gn(env, n);
        const Field dfn = derivative(fn);
        const Field dgn = derivative(gn);
        Field g_df(env.grid), g_dg(env.grid);
        for (int k = 0; k < env.grid.N; ++k) {
            g_df.u[k] = gn.u[k] * dfn.u[k];
            g_dg.u[k] = gn.u[k] * dgn.u[k];
        }
        const double prod_high = besov_norm(g_df, {1.0, inf, inf});
        const double prod_low = besov_norm(g_dg, {1.0, inf, inf});
        const double linf_f = lp_norm(fn, inf);
        const double linf_g = lp_norm(gn, inf);

        // block norms once per field; all sigmas reuse them
        const std::vector<double> bf = block_lp_norms(fn, inf);
        const std::vector<double> bg = block_lp_norms(gn, inf);
        for (double sigma : sigmas) {
            PacketDiagnosticsRow row;
            row.n = n;
            row.sigma = sigma;
            for (std::size_t i = 0; i < bf.size(); ++i) {
                const double w = std::pow(2.0, sigma * (static_cast<int>(i) - 1));
                row.besov_f += w * bf[i];
                row.besov_g += w * bg[i];
            }
            row.linf_f = linf_f;
            row.linf_g = linf_g;
            row.product_high = prod_high;
            row.product_low = prod_low;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace dplab
