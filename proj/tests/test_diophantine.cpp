// Exact diophantine layer: parsing, nearest-integer distances, lower-envelope
// exponent fits, witness-pair searches, and certificates. Oracles here are
// independent re-derivations: Fibonacci convergents for the golden ratio,
// direct big-rational scans for truncated-factorial means, brute-force
// double scans for rational resonance.
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "ghlab/diophantine.hpp"

using namespace ghlab;

namespace {

MuFamily power_family(long s) {
    MuFamily f;
    f.kind = MuFamily::Kind::PowerInt;
    f.s = s;
    return f;
}

MuFamily torus_family(bool include_zero) {
    MuFamily f;
    f.kind = MuFamily::Kind::TorusXi;
    f.include_zero = include_zero;
    return f;
}

}  // namespace

TEST_CASE("nearest integer distance: frozen golden value, ties, shifts") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    const NearestInt ni = nearest_int_dist(phi);
    CHECK(ni.dist == Catch::Approx(0.6180339887498949 * 0.6180339887498949).epsilon(1e-12));
    CHECK(ni.dist == Catch::Approx(0.3819660112501051).margin(1e-15));
    CHECK(ni.ell == -2);

    // ties round to even
    CHECK(nearest_int_dist(0.5).ell == 0);
    CHECK(nearest_int_dist(0.5).dist == Catch::Approx(0.5));
    CHECK(nearest_int_dist(1.5).ell == -2);
    CHECK(nearest_int_dist(-0.5).ell == 0);

    // integer shifts change ell, not dist
    for (int n = -3; n <= 3; ++n) {
        const NearestInt s = nearest_int_dist(phi + n);
        CHECK(s.dist == Catch::Approx(ni.dist).margin(1e-14));
        CHECK(s.ell == ni.ell - n);
    }
}

TEST_CASE("exact nearest integer on rationals rounds ties to even") {
    CHECK(nearest_int_exact(mpq_class(1, 2)) == 0);
    CHECK(nearest_int_exact(mpq_class(3, 2)) == 2);
    CHECK(nearest_int_exact(mpq_class(5, 2)) == 2);
    CHECK(nearest_int_exact(mpq_class(-1, 2)) == 0);
    CHECK(nearest_int_exact(mpq_class(-3, 2)) == -2);
    CHECK(nearest_int_exact(mpq_class(7, 3)) == 2);
    CHECK(nearest_int_exact(mpq_class(-7, 3)) == -2);
    CHECK(nearest_int_exact(mpq_class(40, 10)) == 4);
}

TEST_CASE("real value parsing round-trips canonically") {
    {
        RealSpec r = RealSpec::parse("rational:3/7");
        CHECK(r.kind == RealKind::Rational);
        CHECK(r.to_mpq() == mpq_class(3, 7));
        CHECK(r.to_text() == "rational:3/7");
        CHECK(r.exact());
        CHECK_FALSE(r.irrational());
    }
    {
        RealSpec r = RealSpec::parse("cf:[1;1,1,1,1]");
        CHECK(r.kind == RealKind::ContinuedFraction);
        CHECK(r.to_mpq() == mpq_class(8, 5));  // fifth Fibonacci ratio
        CHECK(r.to_text() == "cf:[1;1,1,1,1]");
    }
    {
        RealSpec r = RealSpec::parse("golden_ratio");
        CHECK(r.kind == RealKind::GoldenRatio);
        CHECK(r.to_text() == "golden_ratio");
        CHECK(r.irrational());
        CHECK(r.non_liouville_certified());
        CHECK(r.to_double() == Catch::Approx(1.6180339887498949));
    }
    {
        RealSpec r = RealSpec::parse("liouville_constant:3");
        CHECK(r.kind == RealKind::LiouvilleConstant);
        CHECK(r.to_mpq() == mpq_class(110001, 1000000));  // 10^-1 + 10^-2 + 10^-6
        CHECK(r.to_text() == "liouville_constant:3");
        CHECK(r.irrational());  // stands in for the represented irrational
        CHECK(r.liouville_by_construction());
    }
    {
        RealSpec r = RealSpec::parse("liouville_constant:2");
        CHECK(r.to_mpq() == mpq_class(11, 100));
    }
    {
        RealSpec r = RealSpec::parse("float:0.25");
        CHECK(r.kind == RealKind::Float);
        CHECK(r.fvalue == 0.25);
        CHECK(r.to_text() == "float:0.25");
        CHECK_FALSE(r.exact());
    }
}

TEST_CASE("real value parsing rejects malformed input") {
    CHECK_THROWS_AS(RealSpec::parse("garbage"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse(""), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("rational:"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("rational:1/0"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("rational:x/y"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("cf:[2]"), ParseError);        // missing ';'
    CHECK_THROWS_AS(RealSpec::parse("cf:[1;1,0]"), ParseError);    // term < 1
    CHECK_THROWS_AS(RealSpec::parse("cf:[1;1,,1]"), ParseError);   // empty term
    CHECK_THROWS_AS(RealSpec::parse("cf:[1;1x]"), ParseError);     // trailing junk
    CHECK_THROWS_AS(RealSpec::parse("liouville_constant:0"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("liouville_constant:8"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("liouville_constant:3x"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("float:1.5x"), ParseError);
    CHECK_THROWS_AS(RealSpec::parse("float:"), ParseError);
}

TEST_CASE("mu families derive from generator-backed eigendata") {
    {
        EigenGenerator g;
        g.kind = GeneratorKind::TorusFrequencies;
        EigenData e = eigen_generate(g, 8);
        auto f = mu_family_of(e);
        REQUIRE(f.has_value());
        CHECK(f->kind == MuFamily::Kind::TorusXi);
        CHECK(f->include_zero);
        CHECK(f->mu_int(1) == 0);
        CHECK(f->mu_int(4) == 2);
        CHECK(f->mu_int(5) == -2);
        CHECK(f->mu_is_zero(1));
        CHECK_FALSE(f->mu_is_zero(2));
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::LogPower;
        g.rho = 1.0;
        EigenData e = eigen_generate(g, 8);
        auto f = mu_family_of(e);
        REQUIRE(f.has_value());
        CHECK(f->kind == MuFamily::Kind::TorusXi);
        CHECK_FALSE(f->include_zero);
        CHECK(f->mu_int(1) == 1);
        CHECK(f->mu_int(2) == -1);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::Power;
        g.s = 2.0;
        EigenData e = eigen_generate(g, 8);
        auto f = mu_family_of(e);
        REQUIRE(f.has_value());
        CHECK(f->kind == MuFamily::Kind::PowerInt);
        CHECK(f->mu_int(3) == 9);
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::Power;
        g.s = 1.5;  // non-integer exponent: no exact family
        EigenData e = eigen_generate(g, 8);
        CHECK_FALSE(mu_family_of(e).has_value());
    }
    {
        EigenGenerator g;
        g.kind = GeneratorKind::RationalDecay;
        g.tau = 1;
        g.c = 1;
        EigenData e = eigen_generate(g, 8);
        auto f = mu_family_of(e);
        REQUIRE(f.has_value());
        CHECK(f->kind == MuFamily::Kind::RationalDecay);
        CHECK(f->mu_q(2) == mpq_class(3, 4));
        CHECK(f->mu_q(3) == mpq_class(4, 9));
    }
    {
        // explicit integer data qualifies, non-integer data does not
        EigenData e;
        e.entries = {{1.0, 0.0, 0.0}, {2.0, 3.0, 1.0}, {3.0, -5.0, 2.0}};
        auto f = mu_family_of(e);
        REQUIRE(f.has_value());
        CHECK(f->kind == MuFamily::Kind::ExplicitInt);
        CHECK(f->mu_int(3) == -5);
        CHECK(f->mu_is_zero(1));

        e.entries[1].mu = 2.5;
        CHECK_FALSE(mu_family_of(e).has_value());
    }
}

TEST_CASE("golden-ratio convergents are Fibonacci ratios") {
    RealSpec phi = RealSpec::parse("golden_ratio");
    auto cv = convergents_of(phi, mpz_class(5000));
    REQUIRE(cv.size() >= 6);
    CHECK(cv[0].p == 1);
    CHECK(cv[0].q == 1);
    CHECK(cv[1].p == 2);
    CHECK(cv[1].q == 1);
    CHECK(cv[2].p == 3);
    CHECK(cv[2].q == 2);
    CHECK(cv[3].p == 5);
    CHECK(cv[3].q == 3);
    CHECK(cv[4].p == 8);
    CHECK(cv[4].q == 5);
    CHECK(cv[5].p == 13);
    CHECK(cv[5].q == 8);
    for (const auto& c : cv) CHECK(c.q <= 5000);
    // consecutive determinant identity p' q - p q' = +-1
    for (std::size_t i = 1; i < cv.size(); ++i) {
        mpz_class det = cv[i].p * cv[i - 1].q - cv[i - 1].p * cv[i].q;
        CHECK((det == 1 || det == -1));
    }
}

TEST_CASE("golden-ratio running minima are exactly the convergent denominators") {
    RealSpec phi = RealSpec::parse("golden_ratio");
    const long jmax = 4096;
    LiouvilleFit fit = liouville_exponent_fit(phi, power_family(1), jmax);

    std::set<long> fib;
    for (const auto& c : convergents_of(phi, mpz_class(jmax)))
        fib.insert(long(c.q.get_si()));
    std::set<long> envelope(fit.envelope_j.begin(), fit.envelope_j.end());
    CHECK(envelope == fib);

    CHECK(fit.delta_hat > 0.9);
    CHECK(fit.delta_hat < 1.1);
    CHECK_FALSE(fit.fit_failed);
    CHECK_FALSE(fit.low_evidence);
    CHECK(fit.violations == 0);
    CHECK(fit.C_hat > 0.2);
    CHECK(fit.C_hat < 0.7);
}

TEST_CASE("golden-ratio distances respect the certified lower bound") {
    const double phi = 0.5 * (1.0 + std::sqrt(5.0));
    for (long j = 1; j <= 2000; ++j) {
        const double d = nearest_int_dist(phi * double(j)).dist;
        REQUIRE(d >= 1.0 / (3.0 * double(j)));
    }
}

TEST_CASE("truncated-factorial mean shows a growing local exponent") {
    RealSpec liou = RealSpec::parse("liouville_constant:6");
    const long jmax = 1000000;
    LiouvilleFit fit = liouville_exponent_fit(liou, power_family(1), jmax);

    // frozen leading envelope: d_1 = 0.110001..., d_9 ~ 9.991e-3, d_100 ~ 1e-4
    REQUIRE(fit.envelope_j.size() >= 4);
    CHECK(fit.envelope_j[0] == 1);
    CHECK(std::exp(fit.envelope_logd[0]) == Catch::Approx(0.110001).epsilon(1e-6));
    CHECK(fit.envelope_j[1] == 9);
    CHECK(std::exp(fit.envelope_logd[1]) == Catch::Approx(0.009991).epsilon(1e-6));
    std::set<long> envelope(fit.envelope_j.begin(), fit.envelope_j.end());
    CHECK(envelope.count(100) == 1);

    // the final running minimum sits at j = 10^6 where only the 10^-24 digit
    // survives: d = 10^6 * (10^-24 + 10^-120 + 10^-720) ~ 1e-18
    CHECK(fit.envelope_j.back() == 1000000);
    CHECK(std::exp(fit.envelope_logd.back()) == Catch::Approx(1e-18).epsilon(1e-6));

    CHECK(fit.fit_failed);       // the factorial gaps force a growing exponent
    CHECK(fit.delta_hat > 1.2);  // clearly steeper than any quadratic irrational
    CHECK(fit.violations == 0);
}

TEST_CASE("rational resonance matches a brute-force scan") {
    RealSpec a0 = RealSpec::parse("rational:3/7");
    MuFamily fam = torus_family(true);
    const long jmax = 10000;
    ResonanceReport rep = resonance_set(a0, fam, jmax);
    CHECK(rep.exact);
    CHECK(rep.infinite_certified);
    CHECK_FALSE(rep.finite_certified);

    std::vector<long> brute;
    for (long j = 1; j <= jmax; ++j) {
        const long xi = torus_xi(std::size_t(j), true);
        const double v = (3.0 / 7.0) * double(xi);
        if (nearest_int_dist(v).dist < 1e-9) brute.push_back(j);
    }
    REQUIRE(rep.count == long(brute.size()));
    REQUIRE(rep.indices.size() == brute.size());
    CHECK(std::equal(brute.begin(), brute.end(), rep.indices.begin()));
}

TEST_CASE("rational mean against decaying mu resonates finitely") {
    RealSpec a0 = RealSpec::parse("rational:3/7");
    MuFamily f;
    f.kind = MuFamily::Kind::RationalDecay;
    f.tau = 1;
    f.c = 1;
    ResonanceReport rep = resonance_set(a0, f, 5000);
    CHECK(rep.exact);
    CHECK(rep.finite_certified);
    CHECK(rep.count == 0);  // 3(1+j)/(7j^2) is never a nonzero integer
}

TEST_CASE("irrational means resonate exactly on the zero frequency") {
    {
        ResonanceReport rep =
            resonance_set(RealSpec::parse("golden_ratio"), torus_family(true), 1000);
        CHECK(rep.exact);
        CHECK(rep.finite_certified);
        REQUIRE(rep.indices.size() == 1);
        CHECK(rep.indices[0] == 1);  // the zero frequency
    }
    {
        ResonanceReport rep =
            resonance_set(RealSpec::parse("liouville_constant:4"), torus_family(true), 1000);
        CHECK(rep.finite_certified);
        REQUIRE(rep.indices.size() == 1);
        CHECK(rep.indices[0] == 1);
    }
    {
        ResonanceReport rep =
            resonance_set(RealSpec::parse("golden_ratio"), torus_family(false), 1000);
        CHECK(rep.finite_certified);
        CHECK(rep.count == 0);
    }
}

TEST_CASE("floating means certify nothing") {
    ResonanceReport rep = resonance_set(RealSpec::parse("float:0.5"), torus_family(true), 100);
    CHECK_FALSE(rep.exact);
    CHECK_FALSE(rep.infinite_certified);
    CHECK_FALSE(rep.finite_certified);
    CHECK(rep.count > 10);  // every even frequency is a reported near-resonance
}

TEST_CASE("golden witness pairs at torus frequencies stop at depth two") {
    RealSpec phi = RealSpec::parse("golden_ratio");
    LiouvilleWitnessSeq ws = liouville_witness_sequence(phi, torus_family(true), 3, 1000000);
    CHECK_FALSE(ws.found);
    CHECK(ws.achieved == 2);
    CHECK(ws.failed_at == 3);
    REQUIRE(ws.pairs.size() == 2);

    // frozen: xi(10) = 5, dist(5 phi) = |5 phi - 8| ~ 0.0902 < 10^{-1/2}
    CHECK(ws.pairs[0].j == 10);
    CHECK(ws.pairs[0].tau == 8);
    CHECK(ws.pairs[0].dist == Catch::Approx(0.09016994).epsilon(1e-6));
    // frozen: xi(11) = -5, dist ~ 0.0902 < 1/11 ~ 0.0909 (barely)
    CHECK(ws.pairs[1].j == 11);
    CHECK(ws.pairs[1].tau == -8);
    CHECK(ws.pairs[1].dist == Catch::Approx(0.09016994).epsilon(1e-6));
}

TEST_CASE("truncated-factorial witnesses reach depth four within budget") {
    RealSpec liou = RealSpec::parse("liouville_constant:6");
    MuFamily fam = power_family(1);
    const long budget = 1000000;
    LiouvilleWitnessSeq ws = liouville_witness_sequence(liou, fam, 4, budget);
    CHECK(ws.found);
    CHECK(ws.achieved == 4);
    REQUIRE(ws.pairs.size() == 4);

    // invariants: strictly increasing j, each pair beats its own threshold
    const mpq_class& a0 = liou.to_mpq();
    long prev_j = 9;
    for (const auto& p : ws.pairs) {
        CHECK(p.j > prev_j);
        prev_j = p.j;
        // exact re-check: dist^2 * j^k < 1
        mpq_class x = mpq_class(p.j) * a0;
        x -= nearest_int_exact(x);
        mpq_class d2 = x * x;
        mpz_class jk;
        mpz_ui_pow_ui(jk.get_mpz_t(), (unsigned long)(p.j), (unsigned long)(p.k));
        CHECK(d2 * jk < 1);
    }

    // independent greedy oracle over a direct big-rational scan (depths 1-3)
    {
        long j = 10;
        for (int k = 1; k <= 3; ++k) {
            for (;; ++j) {
                mpq_class x = mpq_class(j) * a0;
                x -= nearest_int_exact(x);
                mpq_class d2 = x * x;
                mpz_class jk;
                mpz_ui_pow_ui(jk.get_mpz_t(), (unsigned long)(j), (unsigned long)(k));
                if (x != 0 && d2 * jk < 1) break;
            }
            CHECK(ws.pairs[std::size_t(k - 1)].j == j);
            ++j;
        }
    }

    // frozen first and third pairs
    CHECK(ws.pairs[0].j == 10);
    CHECK(ws.pairs[0].tau == 1);
    CHECK(ws.pairs[0].dist == Catch::Approx(0.10001).epsilon(1e-6));
    CHECK(ws.pairs[2].j == 100);
    CHECK(ws.pairs[2].tau == 11);
    CHECK(ws.pairs[2].dist == Catch::Approx(1.0001e-4).epsilon(1e-3));
    // depth four only clears at j = 10^6 where the 10^-24 digit dominates
    CHECK(ws.pairs[3].j == 1000000);
    CHECK(ws.pairs[3].tau == 110001);
}

TEST_CASE("witness search respects floors, budgets, and explicit caps") {
    RealSpec half = RealSpec::parse("rational:1/2");
    // mu_j = j: dist(j/2) is 0 (resonant, skipped) or 1/2 (too large): no pairs
    LiouvilleWitnessSeq ws = liouville_witness_sequence(half, power_family(1), 2, 500);
    CHECK_FALSE(ws.found);
    CHECK(ws.achieved == 0);
    CHECK(ws.failed_at == 1);

    CHECK_THROWS_AS(liouville_witness_sequence(half, power_family(1), 0, 500),
                    PreconditionError);
    CHECK_THROWS_AS(liouville_witness_sequence(half, power_family(1), 2, 5),
                    PreconditionError);
}

TEST_CASE("diophantine certificates cover the exact means") {
    {
        DioCertificate c =
            diophantine_certificate(RealSpec::parse("golden_ratio"), power_family(1));
        CHECK(c.decisive);
        CHECK(c.non_liouville);
        CHECK_FALSE(c.liouville);
        CHECK(c.delta == 1.0);
        CHECK(c.C == Catch::Approx(1.0 / 3.0));
    }
    {
        DioCertificate c =
            diophantine_certificate(RealSpec::parse("liouville_constant:5"), torus_family(true));
        CHECK(c.decisive);
        CHECK(c.liouville);
        CHECK_FALSE(c.non_liouville);
    }
    {
        DioCertificate c =
            diophantine_certificate(RealSpec::parse("rational:3/7"), torus_family(true));
        CHECK(c.decisive);
        CHECK(c.non_liouville);
        CHECK(c.delta == 0.0);
        CHECK(c.C == Catch::Approx(1.0 / 7.0));
    }
    {
        DioCertificate c =
            diophantine_certificate(RealSpec::parse("float:1.41"), torus_family(true));
        CHECK_FALSE(c.decisive);
    }
}

TEST_CASE("rational mean against power frequencies is certified infinite") {
    RealSpec third = RealSpec::parse("rational:1/3");
    ResonanceReport rep = resonance_set(third, power_family(1), 99);
    CHECK(rep.infinite_certified);
    CHECK(rep.count == 33);  // multiples of three
    for (long j : rep.indices) CHECK(j % 3 == 0);
}
