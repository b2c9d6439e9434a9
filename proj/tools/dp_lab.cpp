#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dplab/config.hpp"
#include "dplab/dynamics.hpp"
#include "dplab/experiments.hpp"
#include "dplab/littlewood_paley.hpp"
#include "dplab/report_io.hpp"
#include "dplab/spectral.hpp"
#include "dplab/version.hpp"
#include "dplab/wavepackets.hpp"

namespace {

using namespace dplab;

struct CommonOpts {
    std::string out = "dp-lab-out";
    std::uint64_t seed = 1;
    bool plots = false;
    int workers = 0;
    std::string config_path;
};

// "a..b" -> [a, b]
std::pair<int, int> parse_range(const std::string& s) {
    const auto pos = s.find("..");
    if (pos == std::string::npos) {
        const int v = std::stoi(s);
        return {v, v};
    }
    return {std::stoi(s.substr(0, pos)), std::stoi(s.substr(pos + 2))};
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

int report_and_exit_code(const std::vector<ExperimentReport>& reports, const CommonOpts& common) {
    bool all_pass = true;
    for (const auto& rep : reports) {
        write_report(rep, common.out, common.seed, common.plots);
        int ok = 0;
        for (const auto& v : rep.verdicts) ok += v.pass ? 1 : 0;
        all_pass = all_pass && rep.passed();
        std::cout << (rep.passed() ? "[PASS] " : "[FAIL] ") << rep.id << " (" << ok << "/"
                  << rep.verdicts.size() << " verdicts, " << format_full(rep.wall_seconds)
                  << " s)";
        if (!rep.passed()) {
            std::cout << " --";
            for (const auto& v : rep.verdicts)
                if (!v.pass) std::cout << " " << v.name << "=" << format_full(v.value);
        }
        std::cout << "\n";
    }
    return all_pass ? 0 : 2;
}

Field build_u0(const std::string& spec, const Grid1D& grid) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
    Field f(grid);
    if (kind == "cos") {
        const double k = args.empty() ? 1.0 : std::stod(args);
        for (int i = 0; i < grid.N; ++i) f.u[i] = std::cos(k * grid.x(i));
    } else if (kind == "constant") {
        const double c = args.empty() ? 1.0 : std::stod(args);
        for (int i = 0; i < grid.N; ++i) f.u[i] = c;
    } else if (kind == "packet" || kind == "fn" || kind == "gn") {
        const int n = std::stoi(args);
        const Envelope env = make_envelope(grid);
        if (kind == "fn") f = make_fn(env, n);
        else if (kind == "gn") f = make_gn(env, n);
        else f = make_fn(env, n) + make_gn(env, n);
    } else if (kind == "poisson") {
        const auto comma = args.find(',');
        const double r = std::stod(args.substr(0, comma));
        const double amp = comma == std::string::npos ? 1.0 : std::stod(args.substr(comma + 1));
        const double peak = (1.0 + r) / (1.0 - r);
        for (int i = 0; i < grid.N; ++i) {
            const double x = grid.x(i);
            f.u[i] = amp * (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(x) + r * r) / peak;
        }
    } else {
        throw std::invalid_argument("unknown u0 spec '" + spec +
                                    "' (use cos:K, constant:C, packet:N, fn:N, gn:N, poisson:R,AMP)");
    }
    return f;
}

int run_simulate(const CommonOpts& common, const LabConfig& cfg, const std::string& u0_spec,
                 double t_end, const std::vector<double>& snaps) {
    // explicit grid wins; otherwise packets size the grid, anything else
    // gets a modest default
    int N = cfg.N;
    if (N == 0) {
        const auto colon = u0_spec.find(':');
        const std::string kind = u0_spec.substr(0, colon);
        if (kind == "packet" || kind == "fn" || kind == "gn")
            N = auto_packet_N(std::stoi(u0_spec.substr(colon + 1)), cfg.L_over_pi);
        else
            N = 1024;
    }
    const Grid1D grid = make_grid(cfg.L_over_pi * Grid1D::pi(), N);
    const Field u0 = build_u0(u0_spec, grid);

    SolverConfig scfg;
    scfg.dt = cfg.dt;
    scfg.t_end = t_end;
    scfg.dealias = cfg.dealias;
    scfg.guard_gradient_max = cfg.guard_gradient_max;
    scfg.guard_tail_max = cfg.guard_tail_max;
    scfg.snapshot_times = snaps;
    const TrajectoryRecord rec = integrate(u0, scfg);

    Table diag;
    diag.name = "diagnostics";
    diag.header = {"t", "besov1", "linf", "linf_dx", "V", "moment1", "moment3"};
    for (const auto& d : rec.diagnostics)
        diag.rows.push_back({format_full(d.t), format_full(d.besov1), format_full(d.linf),
                             format_full(d.linf_dx), format_full(d.accumulated_norm),
                             format_full(d.moment1), format_full(d.moment3)});
    std::vector<std::string> outputs;
    outputs.push_back(write_csv(common.out, diag));

    int idx = 0;
    for (const auto& snap : rec.snapshots) {
        Table st;
        st.name = "snapshot_" + std::to_string(idx++);
        st.header = {"x", "u"};
        for (int k = 0; k < snap.u.size(); ++k)
            st.rows.push_back({format_full(grid.x(k)), format_full(snap.u.u[k])});
        outputs.push_back(write_csv(common.out, st));
    }

    ManifestInfo info;
    info.tool_version = version_string();
    info.experiment_id = "simulate";
    info.config_text = cfg.canonical() + "u0 = " + u0_spec + "\nt_end = " + format_full(t_end) + "\n";
    info.config_digest = hex64(fnv1a64(info.config_text));
    info.seed = common.seed;
    info.resolution_note = "L=" + format_full(cfg.L_over_pi) + "*pi N=" + std::to_string(N) +
                           " dt=" + format_full(rec.dt_used);
    info.started_utc = utc_timestamp();
    info.finished_utc = info.started_utc;
    info.outputs = outputs;
    append_manifest(common.out, info);

    std::cout << termination_name(rec.termination) << " at t=" << format_full(rec.t_final)
              << ", " << rec.snapshots.size() << " snapshots, " << rec.diagnostics.size()
              << " diagnostic rows -> " << common.out << "\n";
    return 0;
}

int run_besov(const CommonOpts& common, const std::string& in_path, double s,
              const std::string& p_str, const std::string& r_str) {
    std::ifstream in(in_path);
    if (!in) {
        std::cerr << "besov: cannot open " << in_path << "\n";
        return 1;
    }
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> xs, us;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            std::cerr << "besov: malformed row '" << line << "'\n";
            return 1;
        }
        xs.push_back(std::stod(line.substr(0, comma)));
        us.push_back(std::stod(line.substr(comma + 1)));
    }
    const int N = static_cast<int>(us.size());
    if (N < 16 || (N & (N - 1)) != 0) {
        std::cerr << "besov: sample count must be a power of two >= 16, got " << N << "\n";
        return 1;
    }
    const double L = -xs.front();
    const Grid1D grid = make_grid(L, N);
    for (int k = 0; k < N; ++k)
        if (std::abs(xs[k] - grid.x(k)) > 1e-9 * std::max(1.0, L)) {
            std::cerr << "besov: x column is not the uniform grid [-L, L) implied by row 0\n";
            return 1;
        }
    const Field f(grid, us);
    const double p = (p_str == "inf") ? BesovParams::infinity() : std::stod(p_str);
    const double r = (r_str == "inf") ? BesovParams::infinity() : std::stod(r_str);
    const double norm = besov_norm(f, {s, p, r});
    std::cout << format_full(norm) << "\n";
    (void)common;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(dplab::version_string()) +
                 " -- numerical laboratory for a nonlocal shallow-water model"};
    app.fallthrough();

    CommonOpts common;
    app.add_option("--out", common.out, "output directory");
    app.add_option("--seed", common.seed, "seed for randomized experiments");
    app.add_flag("--plots", common.plots, "emit SVG plots next to the CSV tables");
    app.add_option("--workers", common.workers, "worker threads (0 = all cores)");
    app.add_option("--config", common.config_path, "config file (INI sections: grid, solver, family, experiment)");

    std::string n_range, sigma_list, t_list, u0_spec = "cos:1", in_path;
    double t_end = 1.0, besov_s = 1.0;
    std::string besov_p = "inf", besov_r = "1";
    std::string snap_list;

    auto* c_validate = app.add_subcommand("validate", "integrator trust suite (E6)");
    auto* c_family = app.add_subcommand("family", "wavepacket norm scalings and product lower bound (E1+E2)");
    c_family->add_option("--n", n_range, "packet index range, e.g. 4..10");
    c_family->add_option("--sigma", sigma_list, "comma-separated smoothness list");
    auto* c_expansion = app.add_subcommand("expansion", "O(t^2) solution expansion residual (E3)");
    auto* c_nonuniform = app.add_subcommand("nonuniform", "non-uniform dependence separation (E4a)");
    c_nonuniform->add_option("--n", n_range, "packet index range, e.g. 4..8");
    c_nonuniform->add_option("--t", t_list, "comma-separated comparison times");
    auto* c_stability = app.add_subcommand("stability", "L^inf difference stability (E4b)");
    auto* c_mollify = app.add_subcommand("mollify", "continuity along mollified data (E5)");
    auto* c_simulate = app.add_subcommand("simulate", "single trajectory with snapshot dumps");
    c_simulate->add_option("--u0", u0_spec, "initial datum: cos:K | constant:C | packet:N | fn:N | gn:N | poisson:R,AMP");
    c_simulate->add_option("--t-end", t_end, "final time");
    c_simulate->add_option("--snapshots", snap_list, "comma-separated snapshot times");
    auto* c_besov = app.add_subcommand("besov", "Besov norm of a field loaded from CSV (columns x,u)");
    c_besov->add_option("--in", in_path, "input CSV")->required();
    c_besov->add_option("--s", besov_s, "smoothness");
    c_besov->add_option("--p", besov_p, "integrability (number or 'inf')");
    c_besov->add_option("--r", besov_r, "summability (number or 'inf')");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        LabConfig cfg;
        if (!common.config_path.empty()) cfg = load_config(common.config_path);

        if (c_family->parsed()) {
            if (!n_range.empty()) std::tie(cfg.n_lo, cfg.n_hi) = parse_range(n_range);
            if (!sigma_list.empty()) cfg.sigmas = parse_list(sigma_list);
            cfg.validate();
            FamilyConfig fc;
            fc.n_lo = cfg.n_lo;
            fc.n_hi = cfg.n_hi;
            fc.sigmas = cfg.sigmas;
            fc.L_over_pi = cfg.L_over_pi;
            fc.N = cfg.N > 0 ? cfg.N : std::min(auto_packet_N(cfg.n_hi, cfg.L_over_pi), 1 << 17);
            return report_and_exit_code({exp_family_scaling(fc), exp_product_lower(fc)}, common);
        }
        if (c_expansion->parsed()) {
            ExpansionConfig ec;
            ec.t_points = cfg.expansion_points;
            ec.packet_n = cfg.expansion_packet_n;
            ec.L_over_pi = cfg.L_over_pi;
            ec.N = cfg.N > 0 ? cfg.N : auto_packet_N(ec.packet_n, cfg.L_over_pi);
            if (cfg.dt > 0.0) ec.dt = cfg.dt;
            return report_and_exit_code({exp_expansion(ec)}, common);
        }
        if (c_nonuniform->parsed()) {
            if (!n_range.empty())
                std::tie(cfg.nonuniform_n_lo, cfg.nonuniform_n_hi) = parse_range(n_range);
            if (!t_list.empty()) cfg.t_stars = parse_list(t_list);
            cfg.validate();
            NonuniformConfig nc;
            nc.n_lo = cfg.nonuniform_n_lo;
            nc.n_hi = cfg.nonuniform_n_hi;
            nc.t_stars = cfg.t_stars;
            nc.L_over_pi = cfg.L_over_pi;
            nc.N = cfg.nonuniform_N;
            nc.workers = common.workers;
            return report_and_exit_code({exp_nonuniform(nc)}, common);
        }
        if (c_stability->parsed()) {
            StabilityConfig sc;
            sc.trials = cfg.trials;
            sc.horizon = cfg.horizon_stability;
            sc.deltas = cfg.deltas;
            sc.L_over_pi = cfg.L_over_pi;
            sc.seed = common.seed;
            sc.workers = common.workers;
            return report_and_exit_code({exp_linf_stability(sc)}, common);
        }
        if (c_mollify->parsed()) {
            MollifyConfig mc;
            mc.cut_lo = cfg.cut_lo;
            mc.cut_hi = cfg.cut_hi;
            mc.horizon = cfg.horizon_mollify;
            mc.packet_n = cfg.mollify_packet_n;
            mc.L_over_pi = cfg.L_over_pi;
            mc.N = cfg.N > 0 ? cfg.N : auto_packet_N(mc.packet_n, cfg.L_over_pi);
            return report_and_exit_code({exp_mollification(mc)}, common);
        }
        if (c_validate->parsed()) {
            ValidateConfig vc;
            return report_and_exit_code({exp_solver_validation(vc)}, common);
        }
        if (c_simulate->parsed()) {
            std::vector<double> snaps;
            if (!snap_list.empty()) snaps = parse_list(snap_list);
            return run_simulate(common, cfg, u0_spec, t_end, snaps);
        }
        if (c_besov->parsed()) {
            return run_besov(common, in_path, besov_s, besov_p, besov_r);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
