#include "dplab/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dplab {

namespace {

// FFTW's planner is not thread-safe; execution through the new-array
// interface is.  Plans are created once per size with FFTW_UNALIGNED so
// they can run on any caller-provided buffer.
struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

PlanPair& plans_for(int N) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    std::vector<std::complex<double>> a(N), b(N);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(N, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(N, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return cache.emplace(N, p).first->second;
}

void execute(fftw_plan plan, std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

// (-1)^m for the stored mode at index i; N even makes this (-1)^i.
inline double center_phase(int i) { return (i & 1) ? -1.0 : 1.0; }

}  // namespace

Spectrum forward(const Field& f) {
    if (!f.all_finite()) throw std::invalid_argument("forward: non-finite input sample");
    const int N = f.grid.N;
    std::vector<std::complex<double>> buf(N), out(N);
    for (int k = 0; k < N; ++k) buf[k] = f.u[k];
    execute(plans_for(N).fwd, buf, out);
    Spectrum s(f.grid);
    const double inv_n = 1.0 / N;
    for (int i = 0; i < N; ++i) s.c[i] = out[i] * (center_phase(i) * inv_n);
    return s;
}

Field inverse(const Spectrum& s) {
    const int N = s.grid.N;
    std::vector<std::complex<double>> buf(N), out(N);
    for (int i = 0; i < N; ++i) {
        if (!std::isfinite(s.c[i].real()) || !std::isfinite(s.c[i].imag()))
            throw std::invalid_argument("inverse: non-finite coefficient");
        buf[i] = s.c[i] * center_phase(i);
    }
    execute(plans_for(N).bwd, buf, out);
    Field f(s.grid);
    for (int k = 0; k < N; ++k) f.u[k] = out[k].real();
    return f;
}

Spectrum apply_multiplier(const Spectrum& s, const Symbol& m) {
    Spectrum r(s.grid);
    for (int i = 0; i < s.grid.N; ++i) {
        const std::complex<double> mv = m(s.grid.frequency(i));
        if (!std::isfinite(mv.real()) || !std::isfinite(mv.imag()))
            throw std::invalid_argument("apply_multiplier: symbol non-finite at grid frequency");
        r.c[i] = s.c[i] * mv;
    }
    return r;
}

Field apply_multiplier(const Field& f, const Symbol& m) {
    return inverse(apply_multiplier(forward(f), m));
}

Field derivative(const Field& f) {
    Spectrum s = forward(f);
    for (int i = 0; i < s.grid.N; ++i)
        s.c[i] *= std::complex<double>(0.0, s.grid.frequency(i));
    return inverse(s);
}

Field helmholtz_inverse(const Field& f) {
    Spectrum s = forward(f);
    for (int i = 0; i < s.grid.N; ++i) {
        const double xi = s.grid.frequency(i);
        s.c[i] /= (1.0 + xi * xi);
    }
    return inverse(s);
}

Field helmholtz_grad(const Field& f) {
    Spectrum s = forward(f);
    for (int i = 0; i < s.grid.N; ++i) {
        const double xi = s.grid.frequency(i);
        s.c[i] *= std::complex<double>(0.0, xi / (1.0 + xi * xi));
    }
    return inverse(s);
}

namespace {

void truncate_top_third(Spectrum& s) {
    const double cutoff = (2.0 / 3.0) * s.grid.nyquist();
    for (int i = 0; i < s.grid.N; ++i)
        if (std::abs(s.grid.frequency(i)) > cutoff) s.c[i] = 0.0;
}

}  // namespace

Field dealias_truncate(const Field& f) {
    Spectrum s = forward(f);
    truncate_top_third(s);
    return inverse(s);
}

Field dealiased_product(const Field& f, const Field& g) {
    require_same_grid(f.grid, g.grid, "dealiased_product");
    const Field ft = dealias_truncate(f);
    const Field gt = dealias_truncate(g);
    Field prod(f.grid);
    for (int k = 0; k < f.size(); ++k) prod.u[k] = ft.u[k] * gt.u[k];
    return dealias_truncate(prod);
}

double lp_norm(const Field& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : f.u) m = std::max(m, std::abs(v));
        return m;
    }
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : f.u) acc += std::abs(v);
    } else if (p == 2.0) {
        for (double v : f.u) acc += v * v;
    } else {
        for (double v : f.u) acc += std::pow(std::abs(v), p);
    }
    return std::pow(f.grid.dx() * acc, 1.0 / p);
}

double integral_moment(const Field& f, int k) {
    if (k != 1 && k != 3) throw std::invalid_argument("integral_moment: k must be 1 or 3");
    double acc = 0.0;
    for (double v : f.u) acc += (k == 1) ? v : v * v * v;
    return f.grid.dx() * acc;
}

double periodization_tail(const Field& f) {
    const int N = f.grid.N;
    double sup = 0.0;
    for (double v : f.u) sup = std::max(sup, std::abs(v));
    if (sup == 0.0) return 0.0;
    double edge = 0.0;
    for (int k = 0; k < 5; ++k) {
        edge = std::max(edge, std::abs(f.u[k]));
        edge = std::max(edge, std::abs(f.u[N - 1 - k]));
    }
    return edge / sup;
}

}  // namespace dplab
