#include "dplab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "dplab/report_io.hpp"

namespace dplab {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, const std::string& key, int line, int col) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (end != v.c_str() + v.size() || v.empty())
        throw ConfigError(key + ": expected a number, got '" + v + "' (line " +
                          std::to_string(line) + ", col " + std::to_string(col) + ")", line, col);
    return x;
}

int parse_int(const std::string& v, const std::string& key, int line, int col) {
    const double x = parse_double(v, key, line, col);
    if (x != std::floor(x))
        throw ConfigError(key + ": expected an integer, got '" + v + "' (line " +
                          std::to_string(line) + ", col " + std::to_string(col) + ")", line, col);
    return static_cast<int>(x);
}

bool parse_bool(const std::string& v, const std::string& key, int line, int col) {
    if (v == "true" || v == "on" || v == "1") return true;
    if (v == "false" || v == "off" || v == "0") return false;
    throw ConfigError(key + ": expected a boolean, got '" + v + "' (line " +
                      std::to_string(line) + ", col " + std::to_string(col) + ")", line, col);
}

std::vector<double> parse_list(const std::string& v, const std::string& key, int line, int col) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key, line, col));
    if (out.empty())
        throw ConfigError(key + ": expected a comma-separated list (line " + std::to_string(line) +
                          ")", line, col);
    return out;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += format_full(v[i]);
    }
    return s;
}

}  // namespace

LabConfig parse_config_text(const std::string& text, const std::string& origin) {
    LabConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ": unterminated section header (line " +
                                  std::to_string(line_no) + ")", line_no, 1);
            section = trim(line.substr(1, line.size() - 2));
            if (section != "grid" && section != "solver" && section != "family" &&
                section != "experiment")
                throw ConfigError(origin + ": unknown section [" + section + "] (line " +
                                  std::to_string(line_no) + ")", line_no, 1);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ": expected key = value (line " + std::to_string(line_no) +
                              ")", line_no, 1);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const int col = static_cast<int>(raw.find(key)) + 1;
        const std::string path = section + "." + key;

        if (section.empty())
            throw ConfigError(origin + ": key outside any section (line " +
                              std::to_string(line_no) + ")", line_no, col);

        if (section == "grid") {
            if (key == "L_over_pi") cfg.L_over_pi = parse_double(value, path, line_no, col);
            else if (key == "N") {
                cfg.N = parse_int(value, path, line_no, col);
                if (cfg.N <= 0)
                    throw ConfigError(origin + ": grid.N must be positive when set; omit the key "
                                      "to size the grid automatically (line " +
                                      std::to_string(line_no) + ")", line_no, col);
            }
            else throw ConfigError(origin + ": unknown key " + path + " (line " +
                                   std::to_string(line_no) + ")", line_no, col);
        } else if (section == "solver") {
            if (key == "dt") {
                cfg.dt = parse_double(value, path, line_no, col);
                if (!(cfg.dt > 0.0))
                    throw ConfigError(origin + ": solver.dt must be > 0 when set; omit the key "
                                      "for the automatic step (line " +
                                      std::to_string(line_no) + ")", line_no, col);
            }
            else if (key == "dealias") cfg.dealias = parse_bool(value, path, line_no, col);
            else if (key == "guard_gradient_max") cfg.guard_gradient_max = parse_double(value, path, line_no, col);
            else if (key == "guard_tail_max") cfg.guard_tail_max = parse_double(value, path, line_no, col);
            else throw ConfigError(origin + ": unknown key " + path + " (line " +
                                   std::to_string(line_no) + ")", line_no, col);
        } else if (section == "family") {
            if (key == "n_lo") cfg.n_lo = parse_int(value, path, line_no, col);
            else if (key == "n_hi") cfg.n_hi = parse_int(value, path, line_no, col);
            else if (key == "sigmas") cfg.sigmas = parse_list(value, path, line_no, col);
            else throw ConfigError(origin + ": unknown key " + path + " (line " +
                                   std::to_string(line_no) + ")", line_no, col);
        } else {  // experiment
            if (key == "t_stars") cfg.t_stars = parse_list(value, path, line_no, col);
            else if (key == "deltas") cfg.deltas = parse_list(value, path, line_no, col);
            else if (key == "trials") cfg.trials = parse_int(value, path, line_no, col);
            else if (key == "horizon_stability") cfg.horizon_stability = parse_double(value, path, line_no, col);
            else if (key == "horizon_mollify") cfg.horizon_mollify = parse_double(value, path, line_no, col);
            else if (key == "cut_lo") cfg.cut_lo = parse_int(value, path, line_no, col);
            else if (key == "cut_hi") cfg.cut_hi = parse_int(value, path, line_no, col);
            else if (key == "expansion_points") cfg.expansion_points = parse_int(value, path, line_no, col);
            else if (key == "expansion_packet_n") cfg.expansion_packet_n = parse_int(value, path, line_no, col);
            else if (key == "mollify_packet_n") cfg.mollify_packet_n = parse_int(value, path, line_no, col);
            else if (key == "nonuniform_n_lo") cfg.nonuniform_n_lo = parse_int(value, path, line_no, col);
            else if (key == "nonuniform_n_hi") cfg.nonuniform_n_hi = parse_int(value, path, line_no, col);
            else if (key == "nonuniform_N") cfg.nonuniform_N = parse_int(value, path, line_no, col);
            else throw ConfigError(origin + ": unknown key " + path + " (line " +
                                   std::to_string(line_no) + ")", line_no, col);
        }
    }
    cfg.validate();
    return cfg;
}

LabConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("load_config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

void LabConfig::validate() const {
    if (!(L_over_pi > 0.0)) throw std::invalid_argument("grid.L_over_pi must be positive");
    if (N != 0 && (!power_of_two(N) || N < 16))
        throw std::invalid_argument("grid.N must be a power of two >= 16 (or 0 for auto)");
    if (dt < 0.0) throw std::invalid_argument("solver.dt must be >= 0 (0 selects the heuristic)");
    if (dt == 0.0) {
        // auto
    } else if (!(dt > 0.0)) {
        throw std::invalid_argument("solver.dt must be > 0");
    }
    if (!(guard_gradient_max > 0.0)) throw std::invalid_argument("solver.guard_gradient_max must be > 0");
    if (!(guard_tail_max > 0.0)) throw std::invalid_argument("solver.guard_tail_max must be > 0");
    if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("family.n_lo..n_hi must satisfy 1 <= n_lo <= n_hi");
    for (double s : sigmas)
        if (!std::isfinite(s)) throw std::invalid_argument("family.sigmas must be finite");
    for (double t : t_stars)
        if (!(t > 0.0)) throw std::invalid_argument("experiment.t_stars must be positive");
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("experiment.deltas must be positive");
    if (trials < 1) throw std::invalid_argument("experiment.trials must be >= 1");
    if (!(horizon_stability > 0.0)) throw std::invalid_argument("experiment.horizon_stability must be > 0");
    if (!(horizon_mollify > 0.0)) throw std::invalid_argument("experiment.horizon_mollify must be > 0");
    if (cut_lo < 0 || cut_hi < cut_lo) throw std::invalid_argument("experiment.cut_lo..cut_hi invalid");
    if (expansion_points < 6) throw std::invalid_argument("experiment.expansion_points must be >= 6");
    if (expansion_packet_n < 1) throw std::invalid_argument("experiment.expansion_packet_n must be >= 1");
    if (mollify_packet_n < 1) throw std::invalid_argument("experiment.mollify_packet_n must be >= 1");
    if (nonuniform_n_lo < 1 || nonuniform_n_hi < nonuniform_n_lo)
        throw std::invalid_argument("experiment.nonuniform_n range invalid");
    if (!power_of_two(nonuniform_N) || nonuniform_N < 16)
        throw std::invalid_argument("experiment.nonuniform_N must be a power of two >= 16");
}

std::string LabConfig::canonical() const {
    std::ostringstream os;
    os << "[grid]\n"
       << "L_over_pi = " << format_full(L_over_pi) << "\n"
       << "N = " << N << "\n"
       << "[solver]\n"
       << "dt = " << format_full(dt) << "\n"
       << "dealias = " << (dealias ? "true" : "false") << "\n"
       << "guard_gradient_max = " << format_full(guard_gradient_max) << "\n"
       << "guard_tail_max = " << format_full(guard_tail_max) << "\n"
       << "[family]\n"
       << "n_lo = " << n_lo << "\n"
       << "n_hi = " << n_hi << "\n"
       << "sigmas = " << join(sigmas) << "\n"
       << "[experiment]\n"
       << "t_stars = " << join(t_stars) << "\n"
       << "deltas = " << join(deltas) << "\n"
       << "trials = " << trials << "\n"
       << "horizon_stability = " << format_full(horizon_stability) << "\n"
       << "horizon_mollify = " << format_full(horizon_mollify) << "\n"
       << "cut_lo = " << cut_lo << "\n"
       << "cut_hi = " << cut_hi << "\n"
       << "expansion_points = " << expansion_points << "\n"
       << "expansion_packet_n = " << expansion_packet_n << "\n"
       << "mollify_packet_n = " << mollify_packet_n << "\n"
       << "nonuniform_n_lo = " << nonuniform_n_lo << "\n"
       << "nonuniform_n_hi = " << nonuniform_n_hi << "\n"
       << "nonuniform_N = " << nonuniform_N << "\n";
    return os.str();
}

}  // namespace dplab
