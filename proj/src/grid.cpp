#include "dplab/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dplab {

double Grid1D::pi() { return 3.14159265358979323846; }

static bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

Grid1D make_grid(double L, int N) {
    if (!(L > 0.0) || !std::isfinite(L))
        throw std::invalid_argument("make_grid: L must be positive, got " + std::to_string(L));
    if (!power_of_two(N) || N < 16)
        throw std::invalid_argument("make_grid: N must be a power of two >= 16, got " + std::to_string(N));
    return Grid1D{L, N};
}

}  // namespace dplab
