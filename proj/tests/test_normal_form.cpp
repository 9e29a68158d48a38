// Dressings and growth classification: exact closed forms for the two
// elementary mode multipliers, exact invertibility, the reduction of a
// variable-coefficient mode to its constant mean, and the symbolic/observed
// growth classes that gate the reduction.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "ghlab/normal_form.hpp"

using namespace ghlab;

namespace {

TrigPoly sin_t() {
    TrigPoly p;
    p.cos_coeffs = {0.0, 0.0};
    p.sin_coeffs = {0.0, 1.0};
    return p;
}

TrigPoly cos_t() {
    TrigPoly p;
    p.cos_coeffs = {0.0, 1.0};
    p.sin_coeffs = {0.0, 0.0};
    return p;
}

TrigPoly random_poly(std::mt19937& rng, int degree, double scale, double mean) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    TrigPoly p;
    p.cos_coeffs.assign(std::size_t(degree) + 1, 0.0);
    p.sin_coeffs.assign(std::size_t(degree) + 1, 0.0);
    p.cos_coeffs[0] = mean;
    for (int k = 1; k <= degree; ++k) {
        p.cos_coeffs[std::size_t(k)] = scale * u(rng) / double(k * k);
        p.sin_coeffs[std::size_t(k)] = scale * u(rng) / double(k * k);
    }
    return p;
}

CVec random_samples(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CVec v(n);
    for (auto& x : v) x = Cplx(u(rng), u(rng));
    return v;
}

EigenData explicit_data(const std::vector<double>& lambda, const std::vector<double>& nu) {
    EigenData e;
    for (std::size_t i = 0; i < lambda.size(); ++i) {
        EigenEntry en;
        en.lambda = lambda[i];
        en.mu = double(i + 1);
        en.nu = nu[i];
        e.entries.push_back(en);
    }
    return e;
}

}  // namespace

TEST_CASE("imaginary-part dressing has its closed form") {
    const std::size_t n = 64;
    const std::vector<double> t = uniform_grid(n);
    CVec ones(n, Cplx(1.0, 0.0));
    const CVec out = psi_b_apply(sin_t(), 1.0, ones, +1);
    for (std::size_t i = 0; i < n; ++i)
        REQUIRE(std::abs(out[i] - std::exp(1.0 - std::cos(t[i]))) < 1e-12);

    const CVec inv = psi_b_apply(sin_t(), 1.0, out, -1);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(inv[i] - 1.0) < 1e-12);
}

TEST_CASE("real-part dressing is the expected pure phase") {
    const std::size_t n = 64;
    const std::vector<double> t = uniform_grid(n);
    CVec ones(n, Cplx(1.0, 0.0));
    const CVec out = psi_a_apply(cos_t(), 2.0, ones, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const Cplx expect = std::exp(Cplx(0.0, -2.0 * std::sin(t[i])));
        REQUIRE(std::abs(out[i] - expect) < 1e-12);
        REQUIRE(std::abs(std::abs(out[i]) - 1.0) < 1e-13);  // pure phase
    }
}

TEST_CASE("dressings invert exactly on random samples") {
    std::mt19937 rng(2024);
    const std::size_t n = 128;
    const CVec u = random_samples(rng, n);
    const TrigPoly b = random_poly(rng, 4, 0.5, 0.2);
    const TrigPoly a = random_poly(rng, 4, 0.7, 1.3);

    const CVec rb = psi_b_apply(b, 3.0, psi_b_apply(b, 3.0, u, +1), -1);
    const CVec ra = psi_a_apply(a, 5.0, psi_a_apply(a, 5.0, u, -1), +1);
    for (std::size_t i = 0; i < n; ++i) {
        REQUIRE(std::abs(rb[i] - u[i]) < 1e-11);
        REQUIRE(std::abs(ra[i] - u[i]) < 1e-12);
    }

    CHECK_THROWS_AS(psi_b_apply(b, 1.0, u, 0), PreconditionError);
    CHECK_THROWS_AS(psi_a_apply(a, 1.0, u, 2), PreconditionError);
}

TEST_CASE("mode phase splits into the two elementary dressings") {
    std::mt19937 rng(7);
    const std::size_t n = 64;
    ModeSymbol sym;
    sym.j = 3;
    sym.mu = 2.0;
    sym.nu = 1.5;
    sym.a = random_poly(rng, 3, 0.6, 0.9);
    sym.b = random_poly(rng, 3, 0.4, -0.3);

    const CVec v = random_samples(rng, n);
    const CVec via_conj = conjugator_apply(sym, v, +1);
    const CVec via_split = psi_b_apply(sym.b, sym.nu, psi_a_apply(sym.a, sym.mu, v, -1), +1);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(via_conj[i] - via_split[i]) < 1e-11);

    const CVec back = conjugator_apply(sym, via_conj, -1);
    for (std::size_t i = 0; i < n; ++i) REQUIRE(std::abs(back[i] - v[i]) < 1e-11);
}

TEST_CASE("mode conjugation reduces the operator to its constant mean") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    OperatorSpec op;
    op.a = cos_t();
    op.a.cos_coeffs[0] = phi;  // a(t) = phi + cos t
    op.b = sin_t();
    EigenGenerator g;
    g.kind = GeneratorKind::LogPower;
    g.rho = 1.0;
    op.eigen = eigen_generate(g, 64);

    const ConjugationReport rep = conjugation_check(op, 256);
    REQUIRE(rep.residuals.size() == 64);
    CHECK(rep.max_residual <= 1e-8);
    CHECK(rep.worst_mode >= 1);
}

TEST_CASE("mode conjugation residual is small for randomized coefficients") {
    std::mt19937 rng(99);
    OperatorSpec op;
    op.a = random_poly(rng, 4, 0.8, 0.7);
    op.b = random_poly(rng, 4, 0.5, 0.1);
    EigenGenerator g;
    g.kind = GeneratorKind::LogPower;
    g.rho = 0.8;
    op.eigen = eigen_generate(g, 32);

    const ConjugationReport rep = conjugation_check(op, 256);
    CHECK(rep.max_residual <= 1e-9);
}

TEST_CASE("growth classes from generators are certified") {
    {
        EigenGenerator g;
        g.kind = GeneratorKind::TorusFrequencies;
        GrowthReport r = growth_class(eigen_generate(g, 256));
        CHECK(r.cls == GrowthClass::SuperLog);
        CHECK(r.certified);
        REQUIRE(r.superlog_witnesses.size() >= 4);
        // witnesses carry strictly increasing nu/log(lambda) ratios
        EigenData e = eigen_generate(g, 256);
        double prev = -1.0;
        for (long j : r.superlog_witnesses) {
            const EigenEntry& en = e.at(std::size_t(j));
            const double ratio = en.nu / std::log(1.0 + en.lambda);
            CHECK(ratio > prev);
            prev = ratio;
        }
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::Power;
        g.s = 2.0;
        GrowthReport r = growth_class(eigen_generate(g, 128));
        CHECK(r.cls == GrowthClass::SuperLog);
        CHECK(r.certified);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::LogPower;
        g.rho = 1.0;
        GrowthReport r = growth_class(eigen_generate(g, 128));
        CHECK(r.cls == GrowthClass::AtMostLog);
        CHECK(r.kappa == 1.0);
        CHECK(r.certified);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::LogPower;
        g.rho = 0.5;
        GrowthReport r = growth_class(eigen_generate(g, 128));
        CHECK(r.cls == GrowthClass::AtMostLog);
        CHECK(r.kappa == 0.5);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::LogPower;
        g.rho = 1.5;
        GrowthReport r = growth_class(eigen_generate(g, 128));
        CHECK(r.cls == GrowthClass::SuperLog);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::RationalDecay;
        GrowthReport r = growth_class(eigen_generate(g, 128));
        CHECK(r.cls == GrowthClass::Bounded);
        CHECK(r.certified);
    }
}

TEST_CASE("observed growth from explicit data never certifies the fast class") {
    const long jmax = 256;
    std::vector<double> lambda(static_cast<std::size_t>(jmax));
    for (long j = 1; j <= jmax; ++j) lambda[std::size_t(j - 1)] = double(j);

    {
        // nu exactly (1 + log lambda): clean logarithmic growth, observed only
        std::vector<double> nu(static_cast<std::size_t>(jmax));
        for (long j = 1; j <= jmax; ++j) nu[std::size_t(j - 1)] = 1.0 + std::log(double(j));
        GrowthReport r = growth_class(explicit_data(lambda, nu));
        CHECK(r.cls == GrowthClass::AtMostLog);
        CHECK_FALSE(r.certified);
        CHECK(r.kappa == Catch::Approx(1.0).margin(1e-9));
        CHECK(r.r2 > 0.999);
    }
    {
        // nu = sqrt(1 + log lambda): kappa one half
        std::vector<double> nu(static_cast<std::size_t>(jmax));
        for (long j = 1; j <= jmax; ++j)
            nu[std::size_t(j - 1)] = std::sqrt(1.0 + std::log(double(j)));
        GrowthReport r = growth_class(explicit_data(lambda, nu));
        CHECK(r.cls == GrowthClass::AtMostLog);
        CHECK(r.kappa == Catch::Approx(0.5).margin(1e-9));
    }
    {
        // constant nu
        std::vector<double> nu(static_cast<std::size_t>(jmax), 3.0);
        GrowthReport r = growth_class(explicit_data(lambda, nu));
        CHECK(r.cls == GrowthClass::Bounded);
        CHECK_FALSE(r.certified);
    }
    {
        // nu = j grows far beyond the logarithm, but samples cannot certify it
        std::vector<double> nu(static_cast<std::size_t>(jmax));
        for (long j = 1; j <= jmax; ++j) nu[std::size_t(j - 1)] = double(j);
        GrowthReport r = growth_class(explicit_data(lambda, nu));
        CHECK(r.cls == GrowthClass::Indeterminate);
        CHECK_FALSE(r.certified);
    }
    {
        // incoherent nu: no clean power law
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(0.5, 4.0);
        std::vector<double> nu(static_cast<std::size_t>(jmax));
        for (auto& x : nu) x = u(rng);
        GrowthReport r = growth_class(explicit_data(lambda, nu));
        CHECK(r.cls == GrowthClass::Indeterminate);
    }
}

TEST_CASE("matrix dressing inverts and matches the scalar case") {
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(3, 3);
    Eigen::MatrixXcd Q = A + A.adjoint();

    const Eigen::MatrixXcd M = matrix_psi_b(Q, 0.7);
    const Eigen::MatrixXcd Minv = matrix_psi_b(Q, -0.7);
    CHECK((M * Minv - Eigen::MatrixXcd::Identity(3, 3)).norm() < 1e-12);
    CHECK((M - M.adjoint()).norm() < 1e-12);  // Hermitian output

    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(3, 3);
    D(0, 0) = 1.0;
    D(1, 1) = 2.0;
    D(2, 2) = -1.0;
    const Eigen::MatrixXcd E = matrix_psi_b(D, 0.5);
    CHECK(std::abs(E(0, 0) - std::exp(0.5)) < 1e-13);
    CHECK(std::abs(E(1, 1) - std::exp(1.0)) < 1e-13);
    CHECK(std::abs(E(2, 2) - std::exp(-0.5)) < 1e-13);
    CHECK(std::abs(E(0, 1)) < 1e-13);

    Eigen::MatrixXcd NH = Eigen::MatrixXcd::Random(3, 3);
    NH(0, 1) += Cplx(0.0, 1.0);
    CHECK_THROWS_AS(matrix_psi_b(NH - NH.adjoint() + NH, 1.0), PreconditionError);
}

TEST_CASE("conjugation check rejects certified fast growth unless forced") {
    OperatorSpec op;
    op.a = cos_t();
    op.b = sin_t();
    EigenGenerator g;
    g.kind = GeneratorKind::TorusFrequencies;
    op.eigen = eigen_generate(g, 8);

    CHECK_THROWS_AS(conjugation_check(op, 64), PreconditionError);
    const ConjugationReport rep = conjugation_check(op, 64, /*allow_superlog=*/true);
    CHECK(rep.max_residual <= 1e-9);  // per-mode identity is exact regardless
}
