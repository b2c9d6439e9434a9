#include "dplab/field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace dplab {

Field::Field(const Grid1D& g, std::vector<double> samples) : grid(g), u(std::move(samples)) {
    if (static_cast<int>(u.size()) != g.N)
        throw std::invalid_argument("Field: sample count does not match grid");
}

bool Field::all_finite() const {
    for (double v : u)
        if (!std::isfinite(v)) return false;
    return true;
}

void require_same_grid(const Grid1D& a, const Grid1D& b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": grid mismatch");
}

Field operator+(const Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "operator+");
    Field r(a.grid);
    for (int k = 0; k < a.size(); ++k) r.u[k] = a.u[k] + b.u[k];
    return r;
}

Field operator-(const Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "operator-");
    Field r(a.grid);
    for (int k = 0; k < a.size(); ++k) r.u[k] = a.u[k] - b.u[k];
    return r;
}

Field operator*(double s, const Field& a) {
    Field r(a.grid);
    for (int k = 0; k < a.size(); ++k) r.u[k] = s * a.u[k];
    return r;
}

Field& operator+=(Field& a, const Field& b) {
    require_same_grid(a.grid, b.grid, "operator+=");
    for (int k = 0; k < a.size(); ++k) a.u[k] += b.u[k];
    return a;
}

double conjugate_asymmetry(const Spectrum& s) {
    const int N = s.grid.N;
    double scale = 0.0;
    for (const auto& z : s.c) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) return 0.0;
    double worst = 0.0;
    for (int i = 1; i < N; ++i) {
        const int j = N - i;  // mode -m
        worst = std::max(worst, std::abs(s.c[i] - std::conj(s.c[j])));
    }
    worst = std::max(worst, std::abs(s.c[0].imag()));
    return worst / scale;
}

}  // namespace dplab
