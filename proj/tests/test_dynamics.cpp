#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dplab/dynamics.hpp"
#include "dplab/littlewood_paley.hpp"
#include "dplab/rng.hpp"
#include "dplab/spectral.hpp"
#include "oracle_helpers.hpp"

using namespace dplab;

namespace {
const double kInf = BesovParams::infinity();
const double kPi = Grid1D::pi();

Field cosine(const Grid1D& g, double k, double amp = 1.0) {
    Field f(g);
    for (int i = 0; i < g.N; ++i) f.u[i] = amp * std::cos(k * g.x(i));
    return f;
}

Field sine(const Grid1D& g, double k, double amp = 1.0) {
    Field f(g);
    for (int i = 0; i < g.N; ++i) f.u[i] = amp * std::sin(k * g.x(i));
    return f;
}

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.u[k] - b.u[k]));
    return m;
}
}  // namespace

TEST_CASE("nonlocal term: constants and the two-mode value") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(lp_norm(nonlocal_term(Field(g, 0.7)), kInf) <= 1e-13);

    // u = cos x: u^2 = 1/2 + cos(2x)/2; i xi/(1+xi^2) at xi=2 sends the
    // cosine to -sin(2x)/5; times -3/2 gives (3/10) sin 2x
    const Field p = nonlocal_term(cosine(g, 1.0));
    CHECK(max_abs_diff(p, sine(g, 2.0, 0.3)) <= 1e-12);
}

TEST_CASE("nonlocal term: quadratic bound ratio stays bounded") {
    const Grid1D g = make_grid(kPi, 256);
    Rng rng(31);
    const BesovParams b1{1.0, kInf, 1.0};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Field u = oracle::random_band_field(g, 20.0, rng);
        const double denom = besov_norm(u, b1);
        worst = std::max(worst, besov_norm(nonlocal_term(u), b1) / (denom * denom));
    }
    CHECK(std::isfinite(worst));
    CHECK(worst <= 10.0);  // empirical constant of the P(u) estimate
}

TEST_CASE("rhs: fixed points and the two-mode value") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(lp_norm(rhs(Field(g, 0.7)), kInf) <= 1e-13);
    CHECK(lp_norm(rhs(Field(g)), kInf) == 0.0);

    // -u u_x = sin(2x)/2 plus (3/10) sin 2x
    CHECK(max_abs_diff(rhs(cosine(g, 1.0)), sine(g, 2.0, 0.8)) <= 1e-12);
}

TEST_CASE("rhs without dealiasing agrees on band-limited data") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(max_abs_diff(rhs(cosine(g, 1.0), false), sine(g, 2.0, 0.8)) <= 1e-12);
    // cos x products live far below the 2/3 cutoff, so both paths coincide
    CHECK(max_abs_diff(rhs(cosine(g, 1.0), false), rhs(cosine(g, 1.0), true)) <= 1e-13);

    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.2;
    cfg.dealias = false;
    const TrajectoryRecord rec = integrate(cosine(g, 1.0), cfg);
    REQUIRE(rec.completed());
    CHECK(std::abs(rec.diagnostics.back().moment1) <= 1e-10);
    CHECK(std::abs(rec.diagnostics.back().moment3 - rec.diagnostics.front().moment3) <= 1e-8);
}

TEST_CASE("v0 is rhs, bitwise") {
    const Grid1D g = make_grid(kPi, 128);
    Rng rng(32);
    const Field u = oracle::random_band_field(g, 20.0, rng);
    const Field a = v0(u), b = rhs(u);
    for (int k = 0; k < g.N; ++k) CHECK(a.u[k] == b.u[k]);
}

TEST_CASE("energy functional: zero, single block, monotone in amplitude") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(energy_functional(Field(g)) == doctest::Approx(1.0));

    // cos 3x: B^2 = 4, B^3 = 8, sup 1 -> 1 + 1*(4 + 8) = 13
    CHECK(energy_functional(cosine(g, 3.0)) == doctest::Approx(13.0).epsilon(1e-9));

    double prev = 0.0;
    for (double lam : {0.0, 0.5, 1.0, 2.0}) {
        const double e = energy_functional(cosine(g, 3.0, lam));
        CHECK(e >= prev - 1e-12);
        prev = e;
    }
}

TEST_CASE("rk4_step: steady state, zero, local Richardson order") {
    const Grid1D g = make_grid(kPi, 256);
    const Field c(g, 0.4);
    CHECK(max_abs_diff(rk4_step(c, 0.01), c) <= 1e-14);
    CHECK(lp_norm(rk4_step(Field(g), 0.01), kInf) == 0.0);
    CHECK_THROWS_AS(rk4_step(c, 0.0), std::invalid_argument);

    // one step of size dt vs two of dt/2: difference scales like dt^5,
    // i.e. the scheme order is the Richardson exponent minus one
    const Field u0 = cosine(g, 1.0);
    double diffs[3];
    int idx = 0;
    for (double dt : {4e-2, 2e-2, 1e-2}) {
        const Field one = rk4_step(u0, dt);
        const Field two = rk4_step(rk4_step(u0, dt / 2.0), dt / 2.0);
        diffs[idx++] = max_abs_diff(one, two);
    }
    for (int i = 0; i + 1 < 3; ++i) {
        const double order = std::log2(diffs[i] / diffs[i + 1]) - 1.0;
        CHECK(order >= 3.8);
        CHECK(order <= 4.2);
    }
}

TEST_CASE("integrate: constants are exact steady states") {
    const Grid1D g = make_grid(kPi, 64);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.snapshot_times = {1.0};
    const TrajectoryRecord rec = integrate(Field(g, 0.3), cfg);
    REQUIRE(rec.completed());
    CHECK(max_abs_diff(rec.snapshots.back().u, Field(g, 0.3)) <= 1e-13);
    const auto& d = rec.diagnostics;
    CHECK(std::abs(d.back().moment1 - d.front().moment1) <= 1e-13);
    CHECK(std::abs(d.back().moment3 - d.front().moment3) <= 1e-13);
}

TEST_CASE("integrate: conservation at the reference configuration") {
    const Grid1D g = make_grid(kPi, 256);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    cfg.guard_tail_max = 1.0;  // cos x steepens late in the horizon
    const TrajectoryRecord rec = integrate(cosine(g, 1.0), cfg);
    REQUIRE(rec.completed());
    const auto& d0 = rec.diagnostics.front();
    const auto& d1 = rec.diagnostics.back();
    CHECK(std::abs(d1.moment1) <= 1e-10);
    CHECK(std::abs(d1.moment3 - d0.moment3) <= 1e-8 * std::max(1.0, std::abs(d0.moment3)));
    CHECK(d1.t == 1.0);
    // times strictly increasing, all diagnostics finite
    for (std::size_t i = 1; i < rec.diagnostics.size(); ++i) {
        CHECK(rec.diagnostics[i].t > rec.diagnostics[i - 1].t);
        CHECK(std::isfinite(rec.diagnostics[i].besov1));
        CHECK(std::isfinite(rec.diagnostics[i].linf_dx));
    }
}

TEST_CASE("integrate: global self-convergence is fourth order") {
    const Grid1D g = make_grid(kPi, 256);
    const Field u0 = cosine(g, 1.0);
    const double T = 0.25;
    std::vector<Field> finals;
    for (double dt : {5e-3, 2.5e-3, 1.25e-3}) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = T;
        cfg.record_diagnostics = false;
        cfg.snapshot_times = {T};
        finals.push_back(integrate(u0, cfg).snapshots.back().u);
    }
    const double d01 = max_abs_diff(finals[0], finals[1]);
    const double d12 = max_abs_diff(finals[1], finals[2]);
    const double order = std::log2(d01 / d12);
    CHECK(order >= 3.8);
    CHECK(order <= 4.2);
}

TEST_CASE("integrate: snapshots land exactly on requested times") {
    const Grid1D g = make_grid(kPi, 64);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    cfg.snapshot_times = {0.0123456789, 0.05, 0.1};
    const TrajectoryRecord rec = integrate(cosine(g, 1.0, 0.3), cfg);
    REQUIRE(rec.completed());
    REQUIRE(rec.snapshots.size() == 3);
    CHECK(rec.snapshots[0].t == 0.0123456789);
    CHECK(rec.snapshots[1].t == 0.05);
    CHECK(rec.snapshots[2].t == 0.1);
}

TEST_CASE("integrate: deterministic across reruns") {
    const Grid1D g = make_grid(kPi, 128);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 0.05;
    cfg.snapshot_times = {0.05};
    cfg.record_diagnostics = false;
    const Field u0 = cosine(g, 1.0, 0.5);
    const Field a = integrate(u0, cfg).snapshots.back().u;
    const Field b = integrate(u0, cfg).snapshots.back().u;
    for (int k = 0; k < g.N; ++k) CHECK(a.u[k] == b.u[k]);
}

TEST_CASE("guards: gradient, tail, nonfinite") {
    const Grid1D g = make_grid(kPi, 256);
    {
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        cfg.guard_gradient_max = 1.2;  // cos x reaches |u_x| > 1.2 around t ~ 0.1
        const TrajectoryRecord rec = integrate(cosine(g, 1.0), cfg);
        CHECK(rec.termination == Termination::guard_gradient);
        CHECK(rec.t_final < 1.0);
        CHECK(termination_name(rec.termination) == "guard_tripped(gradient)");
    }
    {
        SolverConfig cfg;
        cfg.dt = 1e-3;
        cfg.t_end = 1.0;
        // default tail guard: the steepening run must refuse the full horizon
        const TrajectoryRecord rec = integrate(cosine(g, 1.0), cfg);
        CHECK(rec.termination == Termination::guard_tail);
        CHECK(rec.t_final > 0.5);
        CHECK(rec.t_final < 1.0);
    }
    {
        SolverConfig cfg;
        cfg.dt = 2.0;  // wildly unstable step at this resolution
        cfg.t_end = 40.0;
        cfg.guard_gradient_max = 1e300;
        cfg.guard_tail_max = 1.0;
        cfg.record_diagnostics = false;
        const TrajectoryRecord rec = integrate(cosine(g, 1.0), cfg);
        CHECK(rec.termination == Termination::guard_nonfinite);
    }
}

TEST_CASE("a priori norm diagnostic stays under 1.5 on resolved data") {
    const Grid1D g = make_grid(kPi, 256);
    SolverConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_end = 1.0;
    const TrajectoryRecord rec = integrate(cosine(g, 1.0, 0.25), cfg);
    REQUIRE(rec.completed());
    const double b1_0 = rec.diagnostics.front().besov1;
    double worst = 0.0;
    for (const auto& d : rec.diagnostics)
        if (d.t > 0.0)
            worst = std::max(worst, d.besov1 / (b1_0 * std::exp(d.accumulated_norm)));
    CHECK(worst <= 1.5);
}

TEST_CASE("default_dt heuristic") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(default_dt(cosine(g, 1.0)) == doctest::Approx(std::min(1e-3, 0.5 / 128.0)));
    CHECK(default_dt(cosine(g, 1.0, 4.0)) == doctest::Approx(0.5 / (128.0 * 4.0)));
}

TEST_CASE("spectral tail fraction separates clean and dirty spectra") {
    const Grid1D g = make_grid(kPi, 256);  // Nyquist 128, retained 85, band from 76.8
    CHECK(spectral_tail_fraction(cosine(g, 1.0), true) <= 1e-30);
    const Field dirty = cosine(g, 1.0) + cosine(g, 80.0, 1e-2);
    CHECK(spectral_tail_fraction(dirty, true) > 1e-6);
}
