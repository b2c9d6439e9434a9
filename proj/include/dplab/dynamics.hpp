#ifndef DPLAB_DYNAMICS_HPP
#define DPLAB_DYNAMICS_HPP

#include <string>
#include <vector>

#include "dplab/field.hpp"

namespace dplab {

// The nonlocal term P(u) = -(3/2) d_x (1-d_xx)^{-1} (u^2), quadratic input
// dealiased by the 2/3 rule.
Field nonlocal_term(const Field& u);

// Right-hand side of the evolution: -u u_x + P(u).
Field rhs(const Field& u, bool dealias = true);

// First-order coefficient of the short-time expansion; identical to rhs.
Field v0(const Field& u0);

// E(u0) = 1 + |u0|_inf (|u0|_{B^2_inf,1} + |u0|_inf |u0|_{B^3_inf,1}).
double energy_functional(const Field& u0);

// One classical fourth-order Runge-Kutta step.
Field rk4_step(const Field& u, double dt, bool dealias = true);

struct SolverConfig {
    double dt = 0.0;  // 0 selects the default_dt heuristic
    double t_end = 0.0;
    bool dealias = true;
    double guard_gradient_max = 1e3;
    // Max fraction of spectral energy allowed in the top 10% of retained
    // modes before the run is declared under-resolved.
    double guard_tail_max = 1e-6;
    std::vector<double> snapshot_times;
    bool record_diagnostics = true;

    void validate() const;
};

// dt heuristic: min(1e-3, 0.5 / (xi_Nyquist * max(1, |u0|_inf))).
double default_dt(const Field& u0);

enum class Termination { completed, guard_gradient, guard_tail, guard_nonfinite };

std::string termination_name(Termination t);

struct StepDiagnostics {
    double t = 0.0;
    double besov1 = 0.0;   // |u|_{B^1_inf,1}
    double linf = 0.0;     // |u|_inf
    double linf_dx = 0.0;  // |u_x|_inf
    double accumulated_norm = 0.0;  // V(t), trapezoid in t of besov1
    double moment1 = 0.0;  // integral of u
    double moment3 = 0.0;  // integral of u^3
};

struct Snapshot {
    double t = 0.0;
    Field u;
};

struct TrajectoryRecord {
    std::vector<Snapshot> snapshots;
    std::vector<StepDiagnostics> diagnostics;
    Termination termination = Termination::completed;
    double t_final = 0.0;
    double dt_used = 0.0;

    bool completed() const { return termination == Termination::completed; }
};

// Fraction of spectral energy in the top 10% of retained modes (retained =
// below the 2/3 cutoff when dealiasing, the whole ladder otherwise).
double spectral_tail_fraction(const Field& u, bool dealias);

// Fixed-step RK4 march to t_end with exact-hit adjustment at snapshot
// times; guards checked every step.
TrajectoryRecord integrate(const Field& u0, const SolverConfig& cfg);

// Single-trajectory state for callers that drive several runs in lockstep.
class Stepper {
  public:
    Stepper(Field u0, bool dealias) : u_(std::move(u0)), dealias_(dealias) {}

    void step(double dt) { u_ = rk4_step(u_, dt, dealias_); t_ += dt; }
    const Field& state() const { return u_; }
    double time() const { return t_; }

  private:
    Field u_;
    double t_ = 0.0;
    bool dealias_ = true;
};

}  // namespace dplab

#endif
