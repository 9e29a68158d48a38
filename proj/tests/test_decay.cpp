#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "ghlab/decay.hpp"

using namespace ghlab;

namespace {

SeriesProfile profile_of(long jmax, double (*f)(double)) {
    SeriesProfile p;
    for (long j = 1; j <= jmax; ++j) {
        p.j.push_back(j);
        p.log_sup.push_back(f(double(j)));
    }
    return p;
}

}  // namespace

TEST_CASE("pure cubic growth is a polynomial bound with the exact exponent") {
    const SeriesProfile p = profile_of(512, [](double j) { return 3.0 * std::log(j); });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::PolynomialBound);
    REQUIRE(c.N == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("cubic growth with bounded multiplicative noise still fits N = 3") {
    const SeriesProfile p = profile_of(
        4096, [](double j) { return 3.0 * std::log(j) + std::log(2.0 + std::sin(j)); });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::PolynomialBound);
    REQUIRE(c.N == Catch::Approx(3.0).margin(0.1));
}

TEST_CASE("steep power decay classifies as rapid") {
    const SeriesProfile p = profile_of(256, [](double j) { return -20.0 * std::log(j); });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::RapidDecay);
}

TEST_CASE("exponential decay classifies as rapid") {
    const SeriesProfile p = profile_of(128, [](double j) { return -j; });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::RapidDecay);
}

TEST_CASE("sub-exponential growth is certified superpolynomial") {
    const SeriesProfile p = profile_of(4096, [](double j) { return std::sqrt(j); });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::SuperPolynomialGrowth);
}

TEST_CASE("fractional power is a polynomial bound") {
    const SeriesProfile p = profile_of(1024, [](double j) { return 0.5 * std::log(j); });
    const DecayClass c = classify_sequence(p);
    REQUIRE(c.kind == DecayKind::PolynomialBound);
    REQUIRE(c.N == Catch::Approx(0.5).margin(1e-6));
}

TEST_CASE("classification is invariant under rescaling the sequence") {
    for (double shift : {230.0, -230.0}) {  // factor e^{+-230} ~ 1e+-100
        const SeriesProfile base =
            profile_of(512, [](double j) { return 3.0 * std::log(j); });
        SeriesProfile scaled = base;
        for (double& v : scaled.log_sup) v += shift;
        const DecayClass c0 = classify_sequence(base);
        const DecayClass c1 = classify_sequence(scaled);
        REQUIRE(c0.kind == c1.kind);
        REQUIRE(c0.N == Catch::Approx(c1.N).margin(1e-9));
    }
}

TEST_CASE("profiles too short to trust are indeterminate") {
    const SeriesProfile p = profile_of(10, [](double j) { return -j; });
    REQUIRE(classify_sequence(p).kind == DecayKind::Indeterminate);
}

TEST_CASE("identically zero modes are trivially rapid") {
    const SeriesProfile p = SeriesProfile::from_values(std::vector<double>(64, 0.0));
    REQUIRE(classify_sequence(p).kind == DecayKind::RapidDecay);
}

TEST_CASE("malformed profiles are rejected") {
    SeriesProfile p;
    p.j = {1, 3, 2};
    p.log_sup = {0.0, 0.0, 0.0};
    REQUIRE_THROWS_AS(classify_sequence(p), PreconditionError);
    REQUIRE_THROWS_AS(SeriesProfile::from_values({1.0, -2.0}), PreconditionError);
}

TEST_CASE("sobolev sum of the harmonic-square series") {
    std::vector<double> mags(4096);
    for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = 1.0 / double(i + 1);
    const SobolevReport r0 = sobolev_norm(mags, 0.0);
    REQUIRE(r0.converged);
    REQUIRE(r0.value == Catch::Approx(kPi / std::sqrt(6.0)).margin(1e-3));

    // s = 1 turns the terms into a constant sequence: divergence flagged
    const SobolevReport r1 = sobolev_norm(mags, 1.0);
    REQUIRE(!r1.converged);
    REQUIRE(r1.block_ratio > 1.5);
}

TEST_CASE("demo sequence matches its closed form") {
    const HqDemo d = hq_demo_sequence(0.5, 1.0, 1000);
    REQUIRE(d.xi.front() == 3);
    REQUIRE(d.xi.back() == 1000);
    // frozen value at xi = 100: -log(100)/2 - log(log 100) - sqrt(log 100) log(log 100)
    const std::size_t idx = 100 - 3;
    REQUIRE(d.xi[idx] == 100);
    REQUIRE(d.log_u[idx] == Catch::Approx(-7.10700).margin(1e-4));
    REQUIRE_THROWS_AS(hq_demo_sequence(1.5, 1.0, 1000), PreconditionError);
}

TEST_CASE("log-power weights: summable and symbolically certified at every s") {
    const HqDemo d = hq_demo_sequence(0.5, 1.0, 100000);
    for (double s : {0.0, 1.0, 5.0, 25.0}) {
        const MembershipReport r = logq_membership(d, s);
        REQUIRE(r.bounded);
        REQUIRE(r.exact);
        REQUIRE(r.partial > 0.0);
        REQUIRE(std::isfinite(r.partial));
    }
    // small weights: the sampled tail already shrinks, numerics agree
    for (double s : {0.0, 1.0}) {
        const MembershipReport r = logq_membership(d, s);
        REQUIRE(r.blocks_decreasing);
        REQUIRE(!r.numeric_tail_misleading);
    }
    // large weights: log^{2s} keeps the sampled tail growing until the
    // crossover near exp((s)^2) -- the deception cuts both ways, and the
    // report says so instead of pretending the numerics settle it
    const MembershipReport big = logq_membership(d, 25.0);
    REQUIRE(big.bounded);
    REQUIRE(!big.blocks_decreasing);
    REQUIRE(big.numeric_tail_misleading);
}

TEST_CASE("polynomial weights: divergent by the closed form, deceptive numerically") {
    const HqDemo d = hq_demo_sequence(0.5, 1.0, 100000);
    const MembershipReport r = poly_membership(d, 0.1);
    REQUIRE(!r.bounded);
    REQUIRE(r.exact);
    // at desk scale the weighted tail still shrinks -- the deception is the point
    REQUIRE(r.blocks_decreasing);
    REQUIRE(r.numeric_tail_misleading);
    REQUIRE(r.checkpoints.size() >= 4);
    REQUIRE(r.checkpoints_increasing);
    REQUIRE_THROWS_AS(poly_membership(d, 0.0), PreconditionError);
}
