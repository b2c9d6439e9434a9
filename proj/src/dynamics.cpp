#include "dplab/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dplab/littlewood_paley.hpp"
#include "dplab/spectral.hpp"

namespace dplab {

Field nonlocal_term(const Field& u) {
    return -1.5 * helmholtz_grad(dealiased_product(u, u));
}

Field rhs(const Field& u, bool dealias) {
    const Field ux = derivative(u);
    if (dealias) {
        Field adv = dealiased_product(u, ux);
        Field out = nonlocal_term(u);
        for (int k = 0; k < u.size(); ++k) out.u[k] -= adv.u[k];
        return out;
    }
    Field uux(u.grid), u2(u.grid);
    for (int k = 0; k < u.size(); ++k) {
        uux.u[k] = u.u[k] * ux.u[k];
        u2.u[k] = u.u[k] * u.u[k];
    }
    Field out = -1.5 * helmholtz_grad(u2);
    for (int k = 0; k < u.size(); ++k) out.u[k] -= uux.u[k];
    return out;
}

Field v0(const Field& u0) { return rhs(u0); }

double energy_functional(const Field& u0) {
    const double inf = BesovParams::infinity();
    const double linf = lp_norm(u0, inf);
    const double b2 = besov_norm(u0, {2.0, inf, 1.0});
    const double b3 = besov_norm(u0, {3.0, inf, 1.0});
    return 1.0 + linf * (b2 + linf * b3);
}

Field rk4_step(const Field& u, double dt, bool dealias) {
    if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
    const Field k1 = rhs(u, dealias);
    const Field k2 = rhs(u + 0.5 * dt * k1, dealias);
    const Field k3 = rhs(u + 0.5 * dt * k2, dealias);
    const Field k4 = rhs(u + dt * k3, dealias);
    Field out = u;
    for (int k = 0; k < u.size(); ++k)
        out.u[k] += dt / 6.0 * (k1.u[k] + 2.0 * k2.u[k] + 2.0 * k3.u[k] + k4.u[k]);
    return out;
}

void SolverConfig::validate() const {
    if (dt < 0.0 || !std::isfinite(dt)) throw std::invalid_argument("SolverConfig: dt must be >= 0");
    if (t_end < 0.0) throw std::invalid_argument("SolverConfig: t_end must be >= 0");
    if (!(guard_gradient_max > 0.0)) throw std::invalid_argument("SolverConfig: guard_gradient_max must be > 0");
    if (!(guard_tail_max > 0.0)) throw std::invalid_argument("SolverConfig: guard_tail_max must be > 0");
}

double default_dt(const Field& u0) {
    const double amp = std::max(1.0, lp_norm(u0, BesovParams::infinity()));
    return std::min(1e-3, 0.5 / (u0.grid.nyquist() * amp));
}

std::string termination_name(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::guard_gradient: return "guard_tripped(gradient)";
        case Termination::guard_tail: return "guard_tripped(tail)";
        case Termination::guard_nonfinite: return "guard_tripped(nonfinite)";
    }
    return "unknown";
}

double spectral_tail_fraction(const Field& u, bool dealias) {
    const Spectrum s = forward(u);
    const double retained_max = dealias ? (2.0 / 3.0) * u.grid.nyquist() : u.grid.nyquist();
    const double band_lo = 0.9 * retained_max;
    double total = 0.0, top = 0.0;
    for (int i = 0; i < s.grid.N; ++i) {
        const double axi = std::abs(s.grid.frequency(i));
        if (axi > retained_max) continue;
        const double e = std::norm(s.c[i]);
        total += e;
        if (axi >= band_lo) top += e;
    }
    return total > 0.0 ? top / total : 0.0;
}

namespace {

StepDiagnostics measure(const Field& u, double grad_linf, double t, double prev_besov1,
                        double prev_V, double dt_elapsed) {
    StepDiagnostics d;
    d.t = t;
    d.besov1 = besov_norm(u, {1.0, BesovParams::infinity(), 1.0});
    d.linf = lp_norm(u, BesovParams::infinity());
    d.linf_dx = grad_linf;
    d.accumulated_norm = prev_V + 0.5 * dt_elapsed * (prev_besov1 + d.besov1);
    d.moment1 = integral_moment(u, 1);
    d.moment3 = integral_moment(u, 3);
    return d;
}

}  // namespace

TrajectoryRecord integrate(const Field& u0, const SolverConfig& cfg) {
    cfg.validate();
    TrajectoryRecord rec;
    const bool dealias = cfg.dealias;
    const double dt = cfg.dt > 0.0 ? cfg.dt : default_dt(u0);
    rec.dt_used = dt;

    std::vector<double> snaps = cfg.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    Field u = dealias ? dealias_truncate(u0) : u0;
    double t = 0.0;
    // t_end is treated like a final snapshot: the last step shrinks to hit
    // it exactly.
    const double t_end = cfg.t_end;

    const double eps = 1e-12 * std::max(1.0, t_end);
    if (cfg.record_diagnostics) {
        const double grad0 = lp_norm(derivative(u), BesovParams::infinity());
        rec.diagnostics.push_back(measure(u, grad0, 0.0, 0.0, 0.0, 0.0));
    }
    while (next_snap < snaps.size() && snaps[next_snap] <= eps) {
        rec.snapshots.push_back({0.0, u});
        ++next_snap;
    }

    while (t < t_end - eps) {
        double step = std::min(dt, t_end - t);
        double landing = t + step;
        if (next_snap < snaps.size() && snaps[next_snap] <= t + step + eps) {
            landing = snaps[next_snap];
            step = landing - t;
        }
        try {
            u = rk4_step(u, step, dealias);
        } catch (const std::invalid_argument&) {
            // a stage value left the representable range mid-step
            rec.termination = Termination::guard_nonfinite;
            rec.t_final = t;
            return rec;
        }
        t = landing;
        if (std::abs(t - t_end) <= eps) t = t_end;

        if (!u.all_finite()) {
            rec.termination = Termination::guard_nonfinite;
            rec.t_final = t;
            return rec;
        }
        const double grad = lp_norm(derivative(u), BesovParams::infinity());
        if (cfg.record_diagnostics) {
            const StepDiagnostics& prev = rec.diagnostics.back();
            rec.diagnostics.push_back(measure(u, grad, t, prev.besov1, prev.accumulated_norm, step));
        }
        if (grad > cfg.guard_gradient_max) {
            rec.termination = Termination::guard_gradient;
            rec.t_final = t;
            return rec;
        }
        if (spectral_tail_fraction(u, dealias) > cfg.guard_tail_max) {
            rec.termination = Termination::guard_tail;
            rec.t_final = t;
            return rec;
        }
        while (next_snap < snaps.size() && snaps[next_snap] <= t + eps) {
            rec.snapshots.push_back({t, u});
            ++next_snap;
        }
    }
    rec.termination = Termination::completed;
    rec.t_final = t;
    return rec;
}

}  // namespace dplab
