#include "dplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dplab/dynamics.hpp"
#include "dplab/littlewood_paley.hpp"
#include "dplab/report_io.hpp"
#include "dplab/spectral.hpp"
#include "dplab/wavepackets.hpp"

namespace dplab {

namespace {

const double kInf = BesovParams::infinity();

double besov1(const Field& f) { return besov_norm(f, {1.0, kInf, 1.0}); }

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

Grid1D grid_for(double L_over_pi, int N) { return make_grid(L_over_pi * Grid1D::pi(), N); }

void parallel_for(int n_items, int workers, const std::function<void(int)>& fn) {
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, n_items));
    if (workers == 1) {
        for (int i = 0; i < n_items; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n_items; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

std::string join_doubles(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_full(v[i]);
    }
    return s;
}

void add_row(Table& t, std::initializer_list<std::string> cells) { t.rows.emplace_back(cells); }

std::string fmt(double v) { return format_full(v); }

// log2 slope of ys against integer n: with x = 2^n the natural-log fit
// slope d ln y / d ln x equals d log2 y / d n.
double log2_slope(const std::vector<int>& ns, const std::vector<double>& ys) {
    std::vector<double> xs(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) xs[i] = std::ldexp(1.0, ns[i]);
    return fit_loglog_slope(xs, ys).slope;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

bool ExperimentReport::passed() const {
    for (const auto& v : verdicts)
        if (!v.pass) return false;
    return true;
}

SlopeFit fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("fit_loglog_slope: length mismatch");
    if (xs.size() < 3) throw std::invalid_argument("fit_loglog_slope: need >= 3 points");
    SlopeFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: data must be positive");
        const double lx = std::log(xs[i]);
        const double ly = std::log(ys[i]);
        fit.points.emplace_back(lx, ly);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    const double n = static_cast<double>(xs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate abscissae");
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [lx, ly] : fit.points)
        fit.max_residual = std::max(fit.max_residual, std::abs(ly - (fit.intercept + fit.slope * lx)));
    return fit;
}

Field random_band_limited(const Grid1D& grid, double xi_max, Rng& rng) {
    Spectrum s(grid);
    const int m_max = static_cast<int>(std::floor(xi_max / grid.dxi() + 1e-9));
    for (int m = 0; m <= std::min(m_max, grid.N / 2 - 1); ++m) {
        const double decay = std::exp(-0.05 * m);
        const double re = rng.normal() * decay;
        const double im = rng.normal() * decay;
        if (m == 0) {
            s.c[0] = re;
        } else {
            s.c[m] = std::complex<double>(re, im);
            s.c[grid.N - m] = std::conj(s.c[m]);
        }
    }
    Field f = inverse(s);
    const double norm = besov1(f);
    if (norm == 0.0) throw std::runtime_error("random_band_limited: degenerate draw");
    return (1.0 / norm) * f;
}

// ---------------------------------------------------------------- E1 / E2

std::string FamilyConfig::echo() const {
    std::ostringstream os;
    os << "family.n_lo = " << n_lo << "\n"
       << "family.n_hi = " << n_hi << "\n"
       << "family.sigmas = " << join_doubles(sigmas) << "\n"
       << "grid.L_over_pi = " << fmt(L_over_pi) << "\n"
       << "grid.N = " << N << "\n";
    return os.str();
}

namespace {

struct FamilyData {
    std::vector<int> ns;
    std::vector<PacketDiagnosticsRow> rows;
    Envelope env;
};

FamilyData family_data(const FamilyConfig& cfg) {
    FamilyData d;
    const Grid1D grid = grid_for(cfg.L_over_pi, cfg.N);
    d.env = make_envelope(grid);
    d.rows = packet_diagnostics(d.env, cfg.n_lo, cfg.n_hi, cfg.sigmas);
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) d.ns.push_back(n);
    return d;
}

}  // namespace

ExperimentReport exp_family_scaling(const FamilyConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E1";
    rep.config_echo = cfg.echo();

    const FamilyData d = family_data(cfg);

    Table table;
    table.name = "family_scaling";
    table.header = {"n", "sigma", "norm_f", "norm_g", "linf_f", "linf_g"};
    for (const auto& r : d.rows)
        add_row(table, {std::to_string(r.n), fmt(r.sigma), fmt(r.besov_f), fmt(r.besov_g),
                        fmt(r.linf_f), fmt(r.linf_g)});
    rep.tables.push_back(table);

    Table slopes;
    slopes.name = "family_slopes";
    slopes.header = {"series", "sigma", "slope", "target", "tolerance", "pass"};
    for (double sigma : cfg.sigmas) {
        std::vector<double> nf, ng;
        for (const auto& r : d.rows)
            if (r.sigma == sigma) {
                nf.push_back(r.besov_f);
                ng.push_back(r.besov_g);
            }
        const double sf = log2_slope(d.ns, nf);
        const double sg = log2_slope(d.ns, ng);
        const bool pf = std::abs(sf - (sigma - 1.0)) <= 0.1;
        const bool pg = std::abs(sg - (-1.0)) <= 0.1;
        add_row(slopes, {"besov_f", fmt(sigma), fmt(sf), fmt(sigma - 1.0), "0.1", pf ? "1" : "0"});
        add_row(slopes, {"besov_g", fmt(sigma), fmt(sg), "-1", "0.1", pg ? "1" : "0"});
        rep.verdicts.push_back({"f_slope_sigma_" + fmt(sigma), pf, sf,
                                "target " + fmt(sigma - 1.0) + " +- 0.1"});
        rep.verdicts.push_back({"g_slope_sigma_" + fmt(sigma), pg, sg, "target -1 +- 0.1"});
    }
    {
        std::vector<double> lf;
        for (const auto& r : d.rows)
            if (r.sigma == cfg.sigmas.front()) lf.push_back(r.linf_f);
        const double sl = log2_slope(d.ns, lf);
        const bool p = std::abs(sl - (-1.0)) <= 0.05;
        add_row(slopes, {"linf_f", "", fmt(sl), "-1", "0.05", p ? "1" : "0"});
        rep.verdicts.push_back({"linf_f_slope", p, sl, "target -1 +- 0.05"});
    }
    rep.tables.push_back(slopes);

    rep.constants["phi0"] = d.env.phi0;
    rep.constants["envelope_tail"] = d.env.tail;
    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N
         << " envelope tail=" << fmt(d.env.tail);
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

ExperimentReport exp_product_lower(const FamilyConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E2";
    rep.config_echo = cfg.echo();

    FamilyConfig one = cfg;
    one.sigmas = {1.0};  // product columns do not depend on sigma
    const FamilyData d = family_data(one);

    std::vector<double> high, low;
    Table table;
    table.name = "product_lower";
    table.header = {"n", "product_high", "product_low"};
    for (const auto& r : d.rows) {
        high.push_back(r.product_high);
        low.push_back(r.product_low);
        add_row(table, {std::to_string(r.n), fmt(r.product_high), fmt(r.product_low)});
    }
    rep.tables.push_back(table);

    const double m1 = *std::min_element(high.begin(), high.end());
    const double med = median_of(high);
    const double slope_high = log2_slope(d.ns, high);
    const double slope_low = log2_slope(d.ns, low);

    const bool p_pos = m1 > 0.0;
    const bool p_flat = m1 >= 0.5 * med;
    const bool p_slope = slope_high >= -0.1 && slope_high <= 0.1;
    const bool p_contrast = slope_low <= -1.8;
    rep.verdicts.push_back({"product_positive", p_pos, m1, "min over n"});
    rep.verdicts.push_back({"product_no_decay", p_flat, m1 / med, "min >= 0.5*median"});
    rep.verdicts.push_back({"product_slope_flat", p_slope, slope_high, "slope in [-0.1, 0.1]"});
    rep.verdicts.push_back({"contrast_decays", p_contrast, slope_low, "slope <= -1.8"});
    rep.constants["M1"] = m1;
    rep.constants["median_product"] = med;
    rep.constants["slope_high"] = slope_high;
    rep.constants["slope_low"] = slope_low;

    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N;
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// -------------------------------------------------------------------- E3

std::string ExpansionConfig::echo() const {
    std::ostringstream os;
    os << "expansion.t_points = " << t_points << "\n"
       << "expansion.t_lo = " << fmt(t_lo) << "\n"
       << "expansion.t_hi = " << fmt(t_hi) << "\n"
       << "expansion.packet_n = " << packet_n << "\n"
       << "solver.dt = " << fmt(dt) << "\n"
       << "grid.L_over_pi = " << fmt(L_over_pi) << "\n"
       << "grid.N = " << N << "\n";
    return os.str();
}

std::vector<double> ExpansionConfig::t_grid() const {
    if (t_points < 6) throw std::invalid_argument("ExpansionConfig: need >= 6 t points");
    std::vector<double> ts(t_points);
    const double la = std::log10(t_lo), lb = std::log10(t_hi);
    for (int i = 0; i < t_points; ++i)
        ts[i] = std::pow(10.0, la + (lb - la) * i / (t_points - 1));
    return ts;
}

ExperimentReport exp_expansion(const ExpansionConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E3";
    rep.config_echo = cfg.echo();

    const Grid1D grid = grid_for(cfg.L_over_pi, cfg.N);
    const Envelope env = make_envelope(grid);

    struct Datum {
        std::string id;
        Field u0;
    };
    std::vector<Datum> data;
    {
        Field c1(grid), c3(grid);
        for (int k = 0; k < grid.N; ++k) {
            c1.u[k] = std::cos(grid.x(k));
            c3.u[k] = std::cos(3.0 * grid.x(k));
        }
        data.push_back({"cos_x", c1});
        data.push_back({"cos_3x", c3});
        data.push_back({"f" + std::to_string(cfg.packet_n) + "_plus_g" + std::to_string(cfg.packet_n),
                        make_fn(env, cfg.packet_n) + make_gn(env, cfg.packet_n)});
    }

    const std::vector<double> ts = cfg.t_grid();

    Table table;
    table.name = "expansion";
    table.header = {"u0_id", "t", "residual", "t_squared_times_E"};
    Table slopes;
    slopes.name = "expansion_slopes";
    slopes.header = {"u0_id", "slope", "intercept", "max_residual", "emp_C"};

    for (const auto& d : data) {
        const Field v00 = v0(d.u0);
        const double E = energy_functional(d.u0);

        SolverConfig scfg;
        scfg.dt = cfg.dt;
        scfg.t_end = ts.back();
        scfg.snapshot_times = ts;
        scfg.record_diagnostics = false;
        const TrajectoryRecord rec = integrate(d.u0, scfg);

        std::vector<double> ok_t, ok_R;
        double emp_C = 0.0;
        for (const auto& snap : rec.snapshots) {
            const double R = besov1(snap.u - d.u0 - snap.t * v00);
            add_row(table, {d.id, fmt(snap.t), fmt(R), fmt(snap.t * snap.t * E)});
            ok_t.push_back(snap.t);
            ok_R.push_back(R);
            emp_C = std::max(emp_C, R / (snap.t * snap.t * E));
        }
        if (!rec.completed()) {
            rep.verdicts.push_back({"guard_" + d.id, false, rec.t_final,
                                    termination_name(rec.termination) + ", cells beyond omitted"});
        }
        const SlopeFit fit = fit_loglog_slope(ok_t, ok_R);
        add_row(slopes, {d.id, fmt(fit.slope), fmt(fit.intercept), fmt(fit.max_residual), fmt(emp_C)});
        const bool pass = fit.slope >= 1.8 && fit.slope <= 2.2;
        rep.verdicts.push_back({"t2_slope_" + d.id, pass, fit.slope, "target [1.8, 2.2]"});
        rep.constants["emp_C_" + d.id] = emp_C;
        rep.constants["E_" + d.id] = E;
    }
    rep.tables.push_back(table);
    rep.tables.push_back(slopes);

    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N << " dt=" << fmt(cfg.dt);
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// ------------------------------------------------------------------- E4a

std::string NonuniformConfig::echo() const {
    std::ostringstream os;
    os << "nonuniform.n_lo = " << n_lo << "\n"
       << "nonuniform.n_hi = " << n_hi << "\n"
       << "nonuniform.t_stars = " << join_doubles(t_stars) << "\n"
       << "grid.L_over_pi = " << fmt(L_over_pi) << "\n"
       << "grid.N = " << N << "\n";
    return os.str();
}

namespace {

// |u - v|_{B^1_inf,1} assembled from per-block differences; must agree with
// the direct route by linearity of the blocks.
double besov1_blockwise(const Field& u, const Field& v) {
    const LPFamily& fam = default_family();
    const int jm = fam.j_max(u.grid);
    const Spectrum su = forward(u), sv = forward(v);
    double acc = 0.0;
    for (int j = -1; j <= jm; ++j) {
        Spectrum tu(u.grid), tv(u.grid);
        for (int i = 0; i < u.grid.N; ++i) {
            const double xi = u.grid.frequency(i);
            const double sym = (j == -1) ? fam.chi(xi) : fam.phi(std::ldexp(xi, -j));
            tu.c[i] = su.c[i] * sym;
            tv.c[i] = sv.c[i] * sym;
        }
        const Field bu = inverse(tu), bv = inverse(tv);
        double sup = 0.0;
        for (int k = 0; k < u.size(); ++k) sup = std::max(sup, std::abs(bu.u[k] - bv.u[k]));
        acc += std::ldexp(1.0, j) * sup;
    }
    return acc;
}

}  // namespace

ExperimentReport exp_nonuniform(const NonuniformConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E4a";
    rep.config_echo = cfg.echo();

    const Grid1D grid = grid_for(cfg.L_over_pi, cfg.N);
    const Envelope env = make_envelope(grid);
    std::vector<double> t_stars = cfg.t_stars;
    std::sort(t_stars.begin(), t_stars.end());

    struct Cell {
        int n = 0;
        double d0 = 0.0;
        std::vector<double> D, D_blockwise;
        bool guard_tripped = false;
        std::string guard_note;
    };
    std::vector<int> ns;
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) ns.push_back(n);
    std::vector<Cell> cells(ns.size());

    parallel_for(static_cast<int>(ns.size()), cfg.workers, [&](int idx) {
        Cell& cell = cells[idx];
        cell.n = ns[idx];
        const Field fn = make_fn(env, cell.n);
        const Field gn = make_gn(env, cell.n);
        const Field u0 = fn + gn;
        cell.d0 = besov1(gn);

        const double dt = default_dt(u0);
        Stepper su(dealias_truncate(u0), true);
        Stepper sv(dealias_truncate(fn), true);
        double t = 0.0;
        for (double tstar : t_stars) {
            while (t < tstar - 1e-12) {
                const double step = std::min(dt, tstar - t);
                su.step(step);
                sv.step(step);
                t += step;
            }
            const Field& u = su.state();
            const Field& v = sv.state();
            if (!u.all_finite() || !v.all_finite()) {
                cell.guard_tripped = true;
                cell.guard_note = "nonfinite at t=" + fmt(t);
                break;
            }
            cell.D.push_back(besov1(u - v));
            cell.D_blockwise.push_back(besov1_blockwise(u, v));
        }
    });

    Table table;
    table.name = "nonuniform";
    table.header = {"n", "t_star", "d0", "D", "D_blockwise", "kappa_cell", "amplification",
                    "excess_amplification"};
    for (const auto& cell : cells) {
        for (std::size_t k = 0; k < cell.D.size(); ++k) {
            const double ts = t_stars[k];
            add_row(table, {std::to_string(cell.n), fmt(ts), fmt(cell.d0), fmt(cell.D[k]),
                            fmt(cell.D_blockwise[k]), fmt(cell.D[k] / ts), fmt(cell.D[k] / cell.d0),
                            fmt((cell.D[k] - cell.d0) / cell.d0)});
        }
        if (cell.guard_tripped)
            rep.verdicts.push_back({"guard_n" + std::to_string(cell.n), false, 0.0, cell.guard_note});
    }
    rep.tables.push_back(table);

    // (i) data distance decays like 2^{-n}
    std::vector<double> d0s;
    for (const auto& cell : cells) d0s.push_back(cell.d0);
    const double d0_slope = log2_slope(ns, d0s);
    const bool p_d0 = std::abs(d0_slope - (-1.0)) <= 0.1;
    rep.verdicts.push_back({"d0_slope", p_d0, d0_slope, "target -1 +- 0.1"});

    // (ii) solution distance bounded below by kappa * t_star, uniformly in n;
    // kappa(t*) = min_n D/t* must be positive and t*-stable within 2x.
    std::vector<double> kappas;
    Table ktab;
    ktab.name = "nonuniform_kappa";
    ktab.header = {"t_star", "kappa", "argmin_n"};
    for (std::size_t k = 0; k < t_stars.size(); ++k) {
        double kmin = 0.0;
        int argn = -1;
        for (const auto& cell : cells) {
            if (k >= cell.D.size()) continue;
            const double val = cell.D[k] / t_stars[k];
            if (argn < 0 || val < kmin) {
                kmin = val;
                argn = cell.n;
            }
        }
        kappas.push_back(kmin);
        add_row(ktab, {fmt(t_stars[k]), fmt(kmin), std::to_string(argn)});
        rep.constants["kappa_t" + fmt(t_stars[k])] = kmin;
        rep.verdicts.push_back({"kappa_positive_t" + fmt(t_stars[k]), kmin > 0.0, kmin, "min_n D/t*"});
    }
    rep.tables.push_back(ktab);
    const double kmax = *std::max_element(kappas.begin(), kappas.end());
    const double kmin = *std::min_element(kappas.begin(), kappas.end());
    const bool p_kstable = kmin > 0.0 && kmax / kmin <= 2.0;
    rep.verdicts.push_back({"kappa_stable", p_kstable, kmax / std::max(kmin, 1e-300),
                            "max/min over t* <= 2"});

    // (iii) amplification growth in n, per t*; verdict takes the most
    // developed (largest) t*.
    Table stab;
    stab.name = "nonuniform_slopes";
    stab.header = {"t_star", "amplification_slope", "excess_amplification_slope"};
    double best_amp_slope = -1e300, best_excess_slope = -1e300;
    for (std::size_t k = 0; k < t_stars.size(); ++k) {
        std::vector<int> ns_k;
        std::vector<double> amp, excess;
        for (const auto& cell : cells) {
            if (k >= cell.D.size()) continue;
            ns_k.push_back(cell.n);
            amp.push_back(cell.D[k] / cell.d0);
            excess.push_back((cell.D[k] - cell.d0) / cell.d0);
        }
        if (ns_k.size() < 3) continue;
        const double s_amp = log2_slope(ns_k, amp);
        const double s_exc = log2_slope(ns_k, excess);
        add_row(stab, {fmt(t_stars[k]), fmt(s_amp), fmt(s_exc)});
        best_amp_slope = std::max(best_amp_slope, s_amp);
        best_excess_slope = std::max(best_excess_slope, s_exc);
    }
    rep.tables.push_back(stab);
    rep.constants["amplification_slope_best"] = best_amp_slope;
    rep.constants["excess_amplification_slope_best"] = best_excess_slope;
    rep.constants["envelope_tail"] = env.tail;
    rep.verdicts.push_back({"amplification_grows", best_amp_slope >= 0.8, best_amp_slope,
                            "log2 slope of D/d0 vs n >= 0.8 at best t*"});

    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N;
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// ------------------------------------------------------------------- E4b

std::string StabilityConfig::echo() const {
    std::ostringstream os;
    os << "stability.trials = " << trials << "\n"
       << "stability.horizon = " << fmt(horizon) << "\n"
       << "stability.deltas = " << join_doubles(deltas) << "\n"
       << "stability.band_max = " << fmt(band_max) << "\n"
       << "stability.seed = " << seed << "\n"
       << "solver.dt = " << fmt(dt) << "\n"
       << "grid.L_over_pi = " << fmt(L_over_pi) << "\n"
       << "grid.N = " << N << "\n";
    return os.str();
}

ExperimentReport exp_linf_stability(const StabilityConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E4b";
    rep.config_echo = cfg.echo();

    const Grid1D grid = grid_for(cfg.L_over_pi, cfg.N);
    const int n_deltas = static_cast<int>(cfg.deltas.size());
    std::vector<std::vector<double>> ratios(cfg.trials, std::vector<double>(n_deltas, 0.0));

    parallel_for(cfg.trials, cfg.workers, [&](int trial) {
        Rng rng(cfg.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(trial + 1));
        const Field u0 = random_band_limited(grid, cfg.band_max, rng);
        const Field w = random_band_limited(grid, cfg.band_max, rng);

        Stepper base(dealias_truncate(u0), true);
        std::vector<Stepper> pert;
        std::vector<double> denom(n_deltas);
        for (int di = 0; di < n_deltas; ++di) {
            const Field v0 = u0 + cfg.deltas[di] * w;
            denom[di] = lp_norm(u0 - v0, kInf);
            pert.emplace_back(dealias_truncate(v0), true);
        }
        const int steps = static_cast<int>(std::round(cfg.horizon / cfg.dt));
        std::vector<double> worst(n_deltas, 0.0);
        for (int s = 0; s < steps; ++s) {
            base.step(cfg.dt);
            for (int di = 0; di < n_deltas; ++di) {
                pert[di].step(cfg.dt);
                worst[di] = std::max(worst[di],
                                     lp_norm(base.state() - pert[di].state(), kInf));
            }
        }
        for (int di = 0; di < n_deltas; ++di) ratios[trial][di] = worst[di] / denom[di];
    });

    Table table;
    table.name = "stability";
    table.header = {"trial", "delta", "ratio_linf"};
    std::vector<double> per_delta_max(n_deltas, 0.0);
    double overall_max = 0.0;
    for (int trial = 0; trial < cfg.trials; ++trial)
        for (int di = 0; di < n_deltas; ++di) {
            add_row(table, {std::to_string(trial), fmt(cfg.deltas[di]), fmt(ratios[trial][di])});
            per_delta_max[di] = std::max(per_delta_max[di], ratios[trial][di]);
            overall_max = std::max(overall_max, ratios[trial][di]);
        }
    rep.tables.push_back(table);

    Table agg;
    agg.name = "stability_summary";
    agg.header = {"delta", "max_ratio"};
    for (int di = 0; di < n_deltas; ++di)
        add_row(agg, {fmt(cfg.deltas[di]), fmt(per_delta_max[di])});
    rep.tables.push_back(agg);

    const double dmax = *std::max_element(per_delta_max.begin(), per_delta_max.end());
    const double dmin = *std::min_element(per_delta_max.begin(), per_delta_max.end());
    const bool p_bounded = overall_max <= 10.0;
    const bool p_stable = dmin > 0.0 && dmax / dmin <= 2.0;
    rep.verdicts.push_back({"ratio_bounded", p_bounded, overall_max, "max ratio <= 10"});
    rep.verdicts.push_back({"delta_independent", p_stable, dmax / std::max(dmin, 1e-300),
                            "per-delta max within 2x"});
    rep.constants["max_ratio"] = overall_max;

    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N << " dt=" << fmt(cfg.dt)
         << " T=" << fmt(cfg.horizon);
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// -------------------------------------------------------------------- E5

std::string MollifyConfig::echo() const {
    std::ostringstream os;
    os << "mollify.cut_lo = " << cut_lo << "\n"
       << "mollify.cut_hi = " << cut_hi << "\n"
       << "mollify.horizon = " << fmt(horizon) << "\n"
       << "mollify.packet_n = " << packet_n << "\n"
       << "grid.L_over_pi = " << fmt(L_over_pi) << "\n"
       << "grid.N = " << N << "\n";
    return os.str();
}

ExperimentReport exp_mollification(const MollifyConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E5";
    rep.config_echo = cfg.echo();

    const Grid1D grid = grid_for(cfg.L_over_pi, cfg.N);
    const Envelope env = make_envelope(grid);
    Field u0 = make_fn(env, cfg.packet_n);
    for (int k = 0; k < grid.N; ++k) u0.u[k] += std::cos(3.0 * grid.x(k));

    const double dt = default_dt(u0);
    const int steps = static_cast<int>(std::ceil(cfg.horizon / dt));
    const double step_dt = cfg.horizon / steps;

    const int n_cuts = cfg.cut_hi - cfg.cut_lo + 1;
    std::vector<double> a(n_cuts), b(n_cuts, 0.0);
    std::vector<Field> deltas_final(n_cuts);

    // all trajectories advance in lockstep so b(N) maximizes over every step
    Stepper base(dealias_truncate(u0), true);
    std::vector<Stepper> cuts;
    for (int c = 0; c < n_cuts; ++c) {
        const Field sN = low_cutoff(u0, cfg.cut_lo + c);
        a[c] = besov1(sN - u0);
        cuts.emplace_back(dealias_truncate(sN), true);
    }
    for (int s = 0; s < steps; ++s) {
        base.step(step_dt);
        for (int c = 0; c < n_cuts; ++c) {
            cuts[c].step(step_dt);
            b[c] = std::max(b[c], besov1(cuts[c].state() - base.state()));
        }
    }
    for (int c = 0; c < n_cuts; ++c) deltas_final[c] = cuts[c].state() - base.state();

    // empirical interpolation constant on this grid, for the cross-check
    double interp_C = 0.0;
    {
        Rng rng(24);
        for (int i = 0; i < 40; ++i)
            interp_C = std::max(interp_C,
                                interpolation_ratio(random_band_limited(grid, 8.0, rng)));
    }

    const double a_floor = 1e-10 * std::max(1.0, besov1(u0));
    Table table;
    table.name = "mollify";
    table.header = {"N", "a", "b", "C", "interp_ratio"};
    std::vector<double> Cs;
    bool zero_cells_ok = true;
    for (int c = 0; c < n_cuts; ++c) {
        std::string Cs_str = "", ir_str = "";
        if (a[c] > a_floor) {
            Cs.push_back(b[c] / a[c]);
            Cs_str = fmt(b[c] / a[c]);
            ir_str = fmt(interpolation_ratio(deltas_final[c]));
        } else {
            // projection identity: S_N u0 = u0, both distances vanish
            zero_cells_ok = zero_cells_ok && b[c] <= 1e-8;
        }
        add_row(table, {std::to_string(cfg.cut_lo + c), fmt(a[c]), fmt(b[c]), Cs_str, ir_str});
    }
    rep.tables.push_back(table);

    bool monotone = true;
    for (int c = 0; c + 1 < n_cuts; ++c) {
        if (a[c + 1] > 1.1 * a[c] + a_floor) monotone = false;
        if (b[c + 1] > 1.1 * b[c] + a_floor) monotone = false;
    }
    const bool tends_to_zero = a[n_cuts - 1] <= a_floor && b[n_cuts - 1] <= 1e-8;
    const double cmax = Cs.empty() ? 0.0 : *std::max_element(Cs.begin(), Cs.end());
    const double cmin = Cs.empty() ? 0.0 : *std::min_element(Cs.begin(), Cs.end());
    const bool p_cstable = !Cs.empty() && cmin > 0.0 && cmax / cmin <= 2.0;

    double interp_worst = 0.0;
    for (int c = 0; c < n_cuts; ++c)
        if (a[c] > a_floor)
            interp_worst = std::max(interp_worst, interpolation_ratio(deltas_final[c]));
    const bool p_interp = interp_worst <= 1.1 * interp_C;

    rep.verdicts.push_back({"C_stable", p_cstable, cmax / std::max(cmin, 1e-300),
                            "b/a within 2x over nonzero cells"});
    rep.verdicts.push_back({"monotone_to_zero", monotone && tends_to_zero,
                            a[n_cuts - 1], "a,b nonincreasing (10% ripple), final ~ 0"});
    rep.verdicts.push_back({"projection_identity", zero_cells_ok, b[n_cuts - 1],
                            "cells with S_N u0 = u0 have b ~ 0"});
    rep.verdicts.push_back({"interpolation_crosscheck", p_interp, interp_worst,
                            "delta ratios <= 1.1 * empirical interp constant " + fmt(interp_C)});
    rep.constants["C_max"] = cmax;
    rep.constants["interp_C"] = interp_C;
    rep.constants["envelope_tail"] = env.tail;

    std::ostringstream note;
    note << "L=" << fmt(cfg.L_over_pi) << "*pi N=" << cfg.N << " dt=" << fmt(step_dt)
         << " T=" << fmt(cfg.horizon);
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

// -------------------------------------------------------------------- E6

std::string ValidateConfig::echo() const {
    std::ostringstream os;
    os << "validate.cons_L_over_pi = " << fmt(cons_L_over_pi) << "\n"
       << "validate.cons_N = " << cons_N << "\n"
       << "validate.cons_dt = " << fmt(cons_dt) << "\n"
       << "validate.cons_t_end = " << fmt(cons_t_end) << "\n"
       << "validate.dt_ladder = " << join_doubles(dt_ladder) << "\n"
       << "validate.order_T = " << fmt(order_T) << "\n"
       << "validate.refine_T = " << fmt(refine_T) << "\n"
       << "validate.refine_r = " << fmt(refine_r) << "\n"
       << "validate.refine_amp = " << fmt(refine_amp) << "\n";
    return os.str();
}

namespace {

Field poisson_kernel_field(const Grid1D& grid, double r, double amp) {
    Field f(grid);
    const double peak = (1.0 + r) / (1.0 - r);
    for (int k = 0; k < grid.N; ++k) {
        const double x = grid.x(k);
        f.u[k] = amp * (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(x) + r * r) / peak;
    }
    return f;
}

}  // namespace

ExperimentReport exp_solver_validation(const ValidateConfig& cfg) {
    Timer timer;
    ExperimentReport rep;
    rep.id = "E6";
    rep.config_echo = cfg.echo();

    Table table;
    table.name = "validate";
    table.header = {"metric", "value"};

    // steady state: constants are fixed points
    {
        const Grid1D grid = grid_for(cfg.cons_L_over_pi, cfg.cons_N);
        Field c(grid, 0.3);
        SolverConfig scfg;
        scfg.dt = cfg.cons_dt;
        scfg.t_end = 1.0;
        scfg.record_diagnostics = false;
        scfg.snapshot_times = {1.0};
        const TrajectoryRecord rec = integrate(c, scfg);
        double dev = 1.0;
        if (rec.completed()) {
            dev = 0.0;
            for (double v : rec.snapshots.back().u.u) dev = std::max(dev, std::abs(v - 0.3));
        }
        const double rhs_norm = lp_norm(rhs(c), kInf);
        add_row(table, {"steady_state_dev", fmt(dev)});
        add_row(table, {"steady_state_rhs", fmt(rhs_norm)});
        rep.verdicts.push_back({"steady_state", dev <= 1e-13 && rhs_norm <= 1e-13,
                                std::max(dev, rhs_norm), "constants fixed to 1e-13"});
    }

    // conservation at the reference configuration; cos x steepens towards
    // the end of the horizon, so the tail guard is disabled for this
    // diagnostic run (conservation must hold regardless of resolution).
    {
        const Grid1D grid = grid_for(cfg.cons_L_over_pi, cfg.cons_N);
        Field u0(grid);
        for (int k = 0; k < grid.N; ++k) u0.u[k] = std::cos(grid.x(k));
        SolverConfig scfg;
        scfg.dt = cfg.cons_dt;
        scfg.t_end = cfg.cons_t_end;
        scfg.guard_tail_max = 1.0;
        const TrajectoryRecord rec = integrate(u0, scfg);
        const auto& d0 = rec.diagnostics.front();
        const auto& d1 = rec.diagnostics.back();
        const double drift1 = std::abs(d1.moment1 - d0.moment1) / std::max(1.0, std::abs(d0.moment1));
        const double drift3 = std::abs(d1.moment3 - d0.moment3) / std::max(1.0, std::abs(d0.moment3));
        add_row(table, {"conservation_drift_m1", fmt(drift1)});
        add_row(table, {"conservation_drift_m3", fmt(drift3)});
        rep.verdicts.push_back({"conservation", rec.completed() && drift1 <= 1e-8 && drift3 <= 1e-8,
                                std::max(drift1, drift3), "relative moment drift <= 1e-8"});
        rep.constants["drift_m1"] = drift1;
        rep.constants["drift_m3"] = drift3;
    }

    // temporal self-convergence order
    {
        const Grid1D grid = grid_for(cfg.cons_L_over_pi, cfg.cons_N);
        Field u0(grid);
        for (int k = 0; k < grid.N; ++k) u0.u[k] = std::cos(grid.x(k));
        std::vector<Field> finals;
        for (double dt : cfg.dt_ladder) {
            SolverConfig scfg;
            scfg.dt = dt;
            scfg.t_end = cfg.order_T;
            scfg.record_diagnostics = false;
            scfg.snapshot_times = {cfg.order_T};
            finals.push_back(integrate(u0, scfg).snapshots.back().u);
        }
        std::vector<double> diffs;
        for (std::size_t i = 0; i + 1 < finals.size(); ++i)
            diffs.push_back(lp_norm(finals[i] - finals[i + 1], kInf));
        bool order_ok = diffs.size() >= 2;
        double worst_order = 0.0;
        for (std::size_t i = 0; i + 1 < diffs.size(); ++i) {
            const double order = std::log2(diffs[i] / diffs[i + 1]);
            add_row(table, {"dt_order_" + std::to_string(i), fmt(order)});
            if (i == 0 || std::abs(order - 4.0) > std::abs(worst_order - 4.0)) worst_order = order;
            if (std::abs(order - 4.0) > 0.2) order_ok = false;
            rep.constants["dt_order_" + std::to_string(i)] = order;
        }
        rep.verdicts.push_back({"dt_order", order_ok, worst_order, "4.0 +- 0.2"});
    }

    // spatial refinement against a fine reference; coarse levels are
    // deliberately under-resolved, so the tail guard is relaxed here
    {
        const Grid1D ref_grid = grid_for(cfg.cons_L_over_pi, cfg.refine_ref_N);
        SolverConfig scfg;
        scfg.dt = cfg.cons_dt;
        scfg.t_end = cfg.refine_T;
        scfg.guard_tail_max = 1.0;
        scfg.record_diagnostics = false;
        scfg.snapshot_times = {cfg.refine_T};
        const Field ref_final =
            integrate(poisson_kernel_field(ref_grid, cfg.refine_r, cfg.refine_amp), scfg)
                .snapshots.back().u;

        std::vector<double> errs;
        for (int N : cfg.refine_Ns) {
            const Grid1D grid = grid_for(cfg.cons_L_over_pi, N);
            const Field fin =
                integrate(poisson_kernel_field(grid, cfg.refine_r, cfg.refine_amp), scfg)
                    .snapshots.back().u;
            const int stride = cfg.refine_ref_N / N;
            double err = 0.0;
            for (int k = 0; k < N; ++k)
                err = std::max(err, std::abs(fin.u[k] - ref_final.u[k * stride]));
            errs.push_back(err);
            add_row(table, {"refine_err_N" + std::to_string(N), fmt(err)});
        }
        bool refine_ok = true;
        double worst_ratio = 1e300;
        for (std::size_t i = 0; i + 1 < errs.size(); ++i) {
            const double ratio = errs[i] / errs[i + 1];
            add_row(table, {"refine_ratio_" + std::to_string(i), fmt(ratio)});
            worst_ratio = std::min(worst_ratio, ratio);
            if (ratio < 10.0) refine_ok = false;
        }
        rep.verdicts.push_back({"spatial_refinement", refine_ok, worst_ratio,
                                "doubling N reduces error by >= 10x"});
    }

    // a priori norm diagnostic: ratio max_t |u|_B1 / (|u0|_B1 e^{V(t)})
    {
        double worst = 0.0, worst_c = 0.0;
        bool all_completed = true;
        int idx = 0;
        for (const auto& [amp, t_end] : cfg.apriori_battery) {
            const Grid1D grid = grid_for(cfg.cons_L_over_pi, cfg.cons_N);
            Field u0(grid);
            for (int k = 0; k < grid.N; ++k) u0.u[k] = amp * std::cos(grid.x(k));
            SolverConfig scfg;
            scfg.dt = cfg.cons_dt;
            scfg.t_end = t_end;
            const TrajectoryRecord rec = integrate(u0, scfg);
            all_completed = all_completed && rec.completed();
            const double b1_0 = rec.diagnostics.front().besov1;
            double ratio = 0.0, c_emp = 0.0;
            for (const auto& d : rec.diagnostics) {
                if (d.t == 0.0) continue;
                ratio = std::max(ratio, d.besov1 / (b1_0 * std::exp(d.accumulated_norm)));
                if (d.accumulated_norm > 0.0 && d.besov1 > b1_0)
                    c_emp = std::max(c_emp, std::log(d.besov1 / b1_0) / d.accumulated_norm);
            }
            add_row(table, {"apriori_ratio_" + std::to_string(idx), fmt(ratio)});
            add_row(table, {"apriori_c_" + std::to_string(idx), fmt(c_emp)});
            worst = std::max(worst, ratio);
            worst_c = std::max(worst_c, c_emp);
            ++idx;
        }
        rep.verdicts.push_back({"apriori_ratio", all_completed && worst <= 1.5, worst,
                                "max_t |u|/( |u0| e^V ) <= 1.5"});
        rep.constants["apriori_ratio"] = worst;
        rep.constants["apriori_c"] = worst_c;
    }

    rep.tables.push_back(table);
    std::ostringstream note;
    note << "reference L=" << fmt(cfg.cons_L_over_pi) << "*pi N=" << cfg.cons_N
         << " dt=" << fmt(cfg.cons_dt);
    rep.resolution_note = note.str();
    rep.wall_seconds = timer.seconds();
    return rep;
}

}  // namespace dplab
