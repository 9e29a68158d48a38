#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ghlab/fft.hpp"
#include "ghlab/trig_poly.hpp"

using namespace ghlab;

namespace {

TrigPoly random_poly(std::mt19937& rng, std::size_t deg, double scale) {
    std::uniform_real_distribution<double> U(-scale, scale);
    std::vector<double> c(deg + 1), s(deg + 1);
    for (std::size_t k = 0; k <= deg; ++k) c[k] = U(rng);
    s[0] = 0.0;
    for (std::size_t k = 1; k <= deg; ++k) s[k] = U(rng);
    return TrigPoly(c, s);
}

}  // namespace

TEST_CASE("evaluation matches the defining cosine/sine sum") {
    const TrigPoly p({2.0, 3.0, 0.0}, {0.0, 0.0, -1.0});  // 2 + 3 cos t - sin 2t
    for (double t : {0.0, 0.7, 2.9, 6.1}) {
        const double expect = 2.0 + 3.0 * std::cos(t) - std::sin(2.0 * t);
        REQUIRE(p.eval(t) == Catch::Approx(expect).margin(1e-15));
    }
}

TEST_CASE("constant-frequency sine coefficient is rejected") {
    REQUIRE_THROWS_AS(TrigPoly({0.0}, {1.0}), PreconditionError);
}

TEST_CASE("derivative has the exact coefficient action") {
    const TrigPoly p({2.0, 3.0, 0.0}, {0.0, 0.0, -1.0});
    const TrigPoly dp = p.derivative();  // -3 sin t - 2 cos 2t
    REQUIRE(dp.cos_coeff(0) == 0.0);
    REQUIRE(dp.cos_coeff(1) == 0.0);
    REQUIRE(dp.cos_coeff(2) == -2.0);
    REQUIRE(dp.sin_coeff(1) == -3.0);
    REQUIRE(dp.sin_coeff(2) == 0.0);
}

TEST_CASE("trig mean is the constant coefficient, exactly") {
    const TrigPoly p({0.625, 1e8, -3.0}, {0.0, 7.0, 2.0});
    REQUIRE(trig_mean(p) == 0.625);
}

TEST_CASE("primitive: derivative of the primitive returns the integrand") {
    std::mt19937 rng(20260815u);
    for (int trial = 0; trial < 25; ++trial) {
        const TrigPoly p = random_poly(rng, 4, 2.0);
        const PrimitiveFn P = trig_primitive(p);
        REQUIRE(P.slope == trig_mean(p));
        REQUIRE(std::abs(P.periodic.eval(0.0)) <= 1e-14);
        const TrigPoly dP = P.periodic.derivative();
        for (std::size_t k = 0; k <= 4; ++k) {
            const double expect_c = (k == 0) ? 0.0 : p.cos_coeff(k);
            REQUIRE(dP.cos_coeff(k) == Catch::Approx(expect_c).margin(1e-14));
            REQUIRE(dP.sin_coeff(k) == Catch::Approx(p.sin_coeff(k)).margin(1e-14));
        }
        // value(t) - value(0) equals the numeric integral (fine trapezoid on
        // a smooth periodic integrand converges spectrally; use one period)
        const std::size_t n = 4096;
        double acc = 0.0;
        const double h = kTwoPi / double(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t0 = double(i) * h, t1 = t0 + h;
            acc += 0.5 * h * (p.eval(t0) + p.eval(t1));
        }
        REQUIRE(P.value(kTwoPi) - P.value(0.0) == Catch::Approx(acc).margin(1e-9));
    }
}

TEST_CASE("derivative bounds dominate sampled suprema") {
    std::mt19937 rng(7u);
    for (int trial = 0; trial < 10; ++trial) {
        const TrigPoly p = random_poly(rng, 5, 1.5);
        const TrigPoly d1 = p.derivative();
        const TrigPoly d2 = d1.derivative();
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < 2000; ++i) {
            const double t = kTwoPi * double(i) / 2000.0;
            s1 = std::max(s1, std::abs(d1.eval(t)));
            s2 = std::max(s2, std::abs(d2.eval(t)));
        }
        REQUIRE(p.derivative_bound() >= s1);
        REQUIRE(p.second_derivative_bound() >= s2);
    }
}

TEST_CASE("spectral derivative of a trig polynomial is exact to roundoff") {
    std::mt19937 rng(97u);
    const TrigPoly p = random_poly(rng, 6, 1.0);
    const TrigPoly dp = p.derivative();
    const std::size_t n = 64;
    CVec v(n);
    const auto grid = uniform_grid(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = p.eval(grid[i]);
    const CVec dv = spectral_derivative(v, 1);
    for (std::size_t i = 0; i < n; ++i)
        REQUIRE(std::abs(dv[i] - Cplx(dp.eval(grid[i]), 0.0)) <= 1e-11);
}

TEST_CASE("phase shift samples the interpolant at shifted points") {
    std::mt19937 rng(13u);
    const TrigPoly p = random_poly(rng, 5, 1.0);
    const std::size_t n = 64;
    CVec v(n);
    const auto grid = uniform_grid(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = p.eval(grid[i]);
    for (double delta : {0.013, -0.49, 1.7, kTwoPi / 3.0}) {
        const CVec shifted = phase_shift(v, delta);
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(std::abs(shifted[i] - Cplx(p.eval(grid[i] + delta), 0.0)) <= 1e-11);
    }
}

TEST_CASE("scaled multiplies every coefficient") {
    const TrigPoly p({1.0, 2.0}, {0.0, -3.0});
    const TrigPoly q = p.scaled(-0.5);
    REQUIRE(q.cos_coeff(0) == -0.5);
    REQUIRE(q.cos_coeff(1) == -1.0);
    REQUIRE(q.sin_coeff(1) == 1.5);
}
