#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "dplab/rng.hpp"
#include "dplab/spectral.hpp"
#include "oracle_helpers.hpp"

using namespace dplab;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
const double kPi = Grid1D::pi();

double max_abs_diff(const Field& a, const Field& b) {
    double m = 0.0;
    for (int k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a.u[k] - b.u[k]));
    return m;
}

Field cosine(const Grid1D& g, double k, double amp = 1.0) {
    Field f(g);
    for (int i = 0; i < g.N; ++i) f.u[i] = amp * std::cos(k * g.x(i));
    return f;
}
}  // namespace

TEST_CASE("make_grid accepts valid parameters and fixes the ladder") {
    const Grid1D g = make_grid(kPi, 16);
    CHECK(g.dx() == doctest::Approx(kPi / 8.0).epsilon(1e-15));
    CHECK(g.dxi() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.frequency(1) == doctest::Approx(1.0));
    CHECK(g.frequency(15) == doctest::Approx(-1.0));
    CHECK(g.mode(8) == -8);
    CHECK(g.nyquist() == doctest::Approx(8.0));

    const Grid1D big = make_grid(12.0 * kPi, 1 << 17);
    CHECK(big.dxi() == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
    CHECK(big.nyquist() == doctest::Approx((1 << 16) / 12.0).epsilon(1e-15));
}

TEST_CASE("make_grid rejects bad parameters") {
    CHECK_THROWS_AS(make_grid(kPi, 10), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(kPi, 8), std::invalid_argument);   // power of two but < 16
    CHECK_THROWS_AS(make_grid(0.0, 64), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 64), std::invalid_argument);
}

TEST_CASE("forward: zero field and pure cosine") {
    const Grid1D g = make_grid(kPi, 64);
    const Spectrum z = forward(Field(g));
    for (const auto& c : z.c) CHECK(std::abs(c) == 0.0);

    const Spectrum s = forward(cosine(g, 3.0));
    for (int i = 0; i < g.N; ++i) {
        if (std::abs(std::abs(g.frequency(i)) - 3.0) < 0.5)
            CHECK(s.c[i].real() == doctest::Approx(0.5).epsilon(1e-12));
        else
            CHECK(std::abs(s.c[i]) <= 1e-13);
    }
}

TEST_CASE("forward matches the direct quadratic transform on random data") {
    const Grid1D g = make_grid(kPi, 64);
    Rng rng(11);
    const Field f = oracle::random_band_field(g, 20.0, rng);
    const Spectrum s = forward(f);
    const auto ref = oracle::slow_dft(f);
    double scale = 0.0;
    for (const auto& c : ref) scale = std::max(scale, std::abs(c));
    for (int i = 0; i < g.N; ++i) CHECK(std::abs(s.c[i] - ref[i]) <= 1e-12 * scale);
}

TEST_CASE("round trip and Parseval") {
    const Grid1D g = make_grid(2.0 * kPi, 128);
    Rng rng(12);
    const Field f = oracle::random_band_field(g, 20.0, rng);
    const Field back = inverse(forward(f));
    CHECK(max_abs_diff(back, f) <= 1e-12 * lp_norm(f, kInf));

    // Parseval: |f|_L2^2 == 2L * sum |c_m|^2
    const Spectrum s = forward(f);
    double sum = 0.0;
    for (const auto& c : s.c) sum += std::norm(c);
    const double l2 = lp_norm(f, 2.0);
    CHECK(l2 * l2 == doctest::Approx(2.0 * g.L * sum).epsilon(1e-10));
}

TEST_CASE("forward rejects non-finite input") {
    const Grid1D g = make_grid(kPi, 16);
    Field f(g);
    f.u[3] = std::nan("");
    CHECK_THROWS_AS(forward(f), std::invalid_argument);
}

TEST_CASE("spectra of real fields are conjugate symmetric") {
    const Grid1D g = make_grid(kPi, 64);
    Rng rng(13);
    const Field f = oracle::random_band_field(g, 30.0, rng);
    CHECK(conjugate_asymmetry(forward(f)) <= 1e-12);
}

TEST_CASE("apply_multiplier: identity and derivative symbols") {
    const Grid1D g = make_grid(kPi, 64);
    const Field f = cosine(g, 1.0);
    const Field same = apply_multiplier(f, [](double) { return std::complex<double>(1.0, 0.0); });
    CHECK(max_abs_diff(same, f) <= 1e-13);

    // i*xi on cos(x) gives -sin(x)
    const Field d = apply_multiplier(f, [](double xi) { return std::complex<double>(0.0, xi); });
    Field expect(g);
    for (int k = 0; k < g.N; ++k) expect.u[k] = -std::sin(g.x(k));
    CHECK(max_abs_diff(d, expect) <= 1e-12);
}

TEST_CASE("apply_multiplier rejects symbols that blow up on the ladder") {
    const Grid1D g = make_grid(kPi, 16);
    const Field f = cosine(g, 1.0);
    CHECK_THROWS_AS(apply_multiplier(f, [](double xi) {
        return std::complex<double>(1.0 / xi, 0.0);  // infinite at xi = 0
    }), std::invalid_argument);
}

TEST_CASE("derivative: constants, eigenfunctions, finite-difference order") {
    const Grid1D g = make_grid(kPi, 64);
    CHECK(lp_norm(derivative(Field(g, 4.2)), kInf) <= 1e-13);

    Field s2(g), expect(g);
    for (int k = 0; k < g.N; ++k) {
        s2.u[k] = std::sin(2.0 * g.x(k));
        expect.u[k] = 2.0 * std::cos(2.0 * g.x(k));
    }
    CHECK(max_abs_diff(derivative(s2), expect) <= 1e-12);

    // against centered differences: error O(dx^2), observed order >= 1.9
    Rng rng(14);
    double errs[2];
    int idx = 0;
    for (int N : {256, 512}) {
        const Grid1D gg = make_grid(kPi, N);
        Rng r2(14);
        const Field f = oracle::random_band_field(gg, 8.0, r2);
        errs[idx++] = max_abs_diff(derivative(f), oracle::fd_derivative(f));
    }
    const double order = std::log2(errs[0] / errs[1]);
    CHECK(order >= 1.9);
}

TEST_CASE("helmholtz_inverse: eigenvalues and inversion identity") {
    const Grid1D g = make_grid(kPi, 64);
    const Field c = helmholtz_inverse(Field(g, 2.5));
    CHECK(max_abs_diff(c, Field(g, 2.5)) <= 1e-13);

    // cos(2x) -> cos(2x)/5
    const Field h = helmholtz_inverse(cosine(g, 2.0));
    CHECK(max_abs_diff(h, cosine(g, 2.0, 0.2)) <= 1e-13);

    // (1 - d_xx) helmholtz_inverse(f) == f
    Rng rng(15);
    const Field f = oracle::random_band_field(g, 25.0, rng);
    const Field gfield = helmholtz_inverse(f);
    const Field back = gfield - derivative(derivative(gfield));
    CHECK(max_abs_diff(back, f) <= 1e-10 * lp_norm(f, kInf));
}

TEST_CASE("helmholtz_inverse matches periodized-kernel quadrature") {
    const Grid1D g = make_grid(kPi, 64);
    Rng rng(16);
    const Field f = oracle::random_band_field(g, 25.0, rng);
    const Field mult = helmholtz_inverse(f);
    const Field quad = oracle::periodized_kernel_convolution(f, 1024);
    CHECK(max_abs_diff(mult, quad) <= 1e-8 * lp_norm(f, kInf));
}

TEST_CASE("helmholtz_grad: symbol values and L^p contraction") {
    const Grid1D g = make_grid(kPi, 64);
    CHECK(lp_norm(helmholtz_grad(Field(g, 1.0)), kInf) <= 1e-13);

    // sin(x) -> cos(x)/2
    Field s(g), expect(g);
    for (int k = 0; k < g.N; ++k) {
        s.u[k] = std::sin(g.x(k));
        expect.u[k] = 0.5 * std::cos(g.x(k));
    }
    CHECK(max_abs_diff(helmholtz_grad(s), expect) <= 1e-13);

    Rng rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const Field f = oracle::random_band_field(g, 30.0, rng);
        const Field out = helmholtz_grad(f);
        for (double p : {1.0, 2.0, kInf})
            CHECK(lp_norm(out, p) <= (1.0 + 1e-6) * lp_norm(f, p));
    }
}

TEST_CASE("dealiased_product: identity, product-to-sum, bilinearity") {
    const Grid1D g = make_grid(kPi, 64);
    Rng rng(18);
    const Field f = oracle::random_band_field(g, 10.0, rng);  // under 2/3 Nyquist
    const Field ones(g, 1.0);
    CHECK(max_abs_diff(dealiased_product(ones, f), f) <= 1e-12 * lp_norm(f, kInf));

    // cos^2(x) = 1/2 + cos(2x)/2
    const Field c = cosine(g, 1.0);
    Field expect(g);
    for (int k = 0; k < g.N; ++k) expect.u[k] = 0.5 + 0.5 * std::cos(2.0 * g.x(k));
    CHECK(max_abs_diff(dealiased_product(c, c), expect) <= 1e-13);

    // commutative and bilinear
    const Field h = oracle::random_band_field(g, 10.0, rng);
    CHECK(max_abs_diff(dealiased_product(f, h), dealiased_product(h, f)) <= 1e-12);
    const Field lhs = dealiased_product(f + h, c);
    const Field rhs2 = dealiased_product(f, c) + dealiased_product(h, c);
    CHECK(max_abs_diff(lhs, rhs2) <= 1e-12 * std::max(1.0, lp_norm(lhs, kInf)));

    CHECK_THROWS_AS(dealiased_product(f, Field(make_grid(kPi, 128))), std::invalid_argument);
}

TEST_CASE("dealiased_product kills aliasing from near-Nyquist sinusoids") {
    const Grid1D g = make_grid(kPi, 64);  // Nyquist 32, cutoff 21.33
    // product of modes 30 and 28 would alias onto |58 - 64| = 6 without the
    // 2/3 rule; after truncation both inputs vanish entirely
    const Field a = cosine(g, 30.0);
    const Field b = cosine(g, 28.0);
    const Field prod = dealiased_product(a, b);
    CHECK(lp_norm(prod, kInf) <= 1e-12);

    // compare against the exact coefficient convolution for in-band inputs
    const Field c1 = cosine(g, 12.0);
    const Field c2 = cosine(g, 5.0);
    const Field p12 = dealiased_product(c1, c2);
    Field expect(g);  // cos(12x)cos(5x) = (cos 17x + cos 7x)/2, both survive
    for (int k = 0; k < g.N; ++k)
        expect.u[k] = 0.5 * (std::cos(17.0 * g.x(k)) + std::cos(7.0 * g.x(k)));
    CHECK(max_abs_diff(p12, expect) <= 1e-12);

    // retained inputs whose raw product aliases: cos(20x)cos(18x) folds its
    // mode-38 half onto mode -26, which the post-truncation removes, leaving
    // exactly cos(2x)/2
    const Field p2018 = dealiased_product(cosine(g, 20.0), cosine(g, 18.0));
    CHECK(max_abs_diff(p2018, cosine(g, 2.0, 0.5)) <= 1e-12);
}

TEST_CASE("fields combine only on identical grids") {
    const Grid1D a = make_grid(kPi, 64);
    const Grid1D b = make_grid(kPi, 128);
    const Grid1D c = make_grid(2.0 * kPi, 64);
    CHECK_THROWS_AS(Field(a, 1.0) + Field(b, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Field(a, 1.0) - Field(c, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Field(a, std::vector<double>(32, 0.0)), std::invalid_argument);
}

TEST_CASE("lp_norm: closed forms") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(lp_norm(Field(g), 2.0) == 0.0);
    CHECK(lp_norm(Field(g, -3.0), kInf) == doctest::Approx(3.0));

    // a non-integer-friendly exponent: |cos|_L3^3 = 8/3 over a full period;
    // |cos|^3 has kinks at the zeros, so the rectangle rule is only O(h^4)
    const double ref3 = oracle::refined_integral(kPi, [](double x) {
        return std::pow(std::abs(std::cos(x)), 3.0);
    });
    CHECK(ref3 == doctest::Approx(8.0 / 3.0).epsilon(1e-8));
    CHECK(lp_norm(cosine(g, 1.0), 3.0) == doctest::Approx(std::cbrt(8.0 / 3.0)).epsilon(1e-6));

    // |cos|_L2 over [-pi, pi) = sqrt(pi); cross-checked by refined quadrature
    const double ref = std::sqrt(oracle::refined_integral(kPi, [](double x) {
        return std::cos(x) * std::cos(x);
    }));
    CHECK(ref == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    CHECK(lp_norm(cosine(g, 1.0), 2.0) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));

    CHECK_THROWS_AS(lp_norm(Field(g), 0.5), std::invalid_argument);
}

TEST_CASE("integral_moment: rectangle rule values") {
    const Grid1D g = make_grid(kPi, 256);
    CHECK(integral_moment(Field(g), 1) == 0.0);
    CHECK(integral_moment(Field(g, 2.0), 1) == doctest::Approx(4.0 * kPi).epsilon(1e-14));

    // odd harmonic cubed integrates to zero; refined quadrature agrees
    const double ref = oracle::refined_integral(kPi, [](double x) {
        const double c = std::cos(x);
        return c * c * c;
    });
    CHECK(std::abs(ref) <= 1e-12);
    CHECK(std::abs(integral_moment(cosine(g, 1.0), 3)) <= 1e-12);

    CHECK_THROWS_AS(integral_moment(Field(g), 2), std::invalid_argument);
}

TEST_CASE("operations preserve reality") {
    const Grid1D g = make_grid(kPi, 64);
    Rng rng(19);
    const Field f = oracle::random_band_field(g, 20.0, rng);
    // applying conjugate-even symbols and returning real parts must not
    // lose mass: compare |inverse(forward(f))| with |f|
    for (const Field& out : {derivative(f), helmholtz_inverse(f), helmholtz_grad(f),
                             dealiased_product(f, f)}) {
        CHECK(out.all_finite());
        CHECK(conjugate_asymmetry(forward(out)) <= 1e-12);
    }
}
