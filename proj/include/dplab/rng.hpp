#ifndef DPLAB_RNG_HPP
#define DPLAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace dplab {

// mt19937_64 with hand-rolled output transforms.  std::*_distribution is
// implementation-defined, which would break byte-identical reports across
// toolchains; these mappings are pinned.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1)
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double a = uniform();
        while (a == 0.0) a = uniform();
        const double b = uniform();
        const double r = std::sqrt(-2.0 * std::log(a));
        const double theta = 2.0 * 3.14159265358979323846 * b;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

  private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dplab

#endif
