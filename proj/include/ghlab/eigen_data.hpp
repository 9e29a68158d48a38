// Eigensequence data for the spatial reference operator.
//
// The spatial manifold enters only through sequences (lambda_j, mu_j, nu_j):
// lambda_j are the eigenvalues of the positive elliptic reference operator
// (Weyl law lambda_j ~ c j^{m/n}), and mu_j, nu_j are the eigenvalues of the
// two commuting first-order symbols restricted to the shared eigenbasis.
// Generator-backed data (symbolic rules) supports exact reasoning; explicit
// numeric data only supports fitted/heuristic classification.
#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "ghlab/common.hpp"

namespace ghlab {

struct EigenEntry {
    double lambda = 0.0;  // reference-operator eigenvalue (positive, nondecreasing)
    double mu = 0.0;      // symbol eigenvalue multiplying the real time coefficient
    double nu = 0.0;      // symbol eigenvalue multiplying the imaginary time coefficient
    int mult = 1;         // multiplicity (after diagonal reduction this is bookkeeping)
    long xi = 0;          // torus frequency when the generator is torus-backed
};

enum class GeneratorKind {
    TorusFrequencies,  // xi-order 0, 1, -1, 2, -2, ...: mu = xi, nu = |xi|, lambda = 1+|xi|
    Power,             // lambda_j = j, mu_j = nu_j = j^s
    LogPower,          // xi-order 1, -1, 2, -2, ...: mu = xi, nu = log^rho(2+|xi|), lambda = 1+|xi|
    RationalDecay,     // lambda_j = j, mu_j = nu_j = (c+j)^tau / j^(tau+1)  (decays like 1/j)
    Explicit,          // entries supplied directly; no symbolic certificates
};

struct EigenGenerator {
    GeneratorKind kind = GeneratorKind::Explicit;
    double s = 1.0;     // exponent for Power
    double rho = 1.0;   // exponent for LogPower
    long tau = 1;       // numerator exponent for RationalDecay
    long c = 1;         // numerator shift for RationalDecay
};

struct EigenData {
    std::vector<EigenEntry> entries;  // indexed j = 1..jmax (entries[0] is j = 1)
    EigenGenerator generator;
    bool generator_backed = false;
    int n = 1;  // manifold dimension (Weyl exponent denominator)
    int m = 1;  // order of the reference operator (Weyl exponent numerator)

    std::size_t jmax() const { return entries.size(); }
    const EigenEntry& at(std::size_t j) const {
        if (j < 1 || j > entries.size()) throw PreconditionError("mode index out of range");
        return entries[j - 1];
    }

    void validate() const {
        double prev = 0.0;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            if (!(entries[i].lambda > 0.0))
                throw PreconditionError("lambda must be positive at j=" + std::to_string(i + 1));
            if (entries[i].lambda + 1e-12 < prev)
                throw PreconditionError("lambda must be nondecreasing at j=" + std::to_string(i + 1));
            if (entries[i].mult < 1)
                throw PreconditionError("multiplicity must be >= 1 at j=" + std::to_string(i + 1));
            prev = entries[i].lambda;
        }
    }
};

// j-th signed torus frequency: 0, 1, -1, 2, -2, ... (ties: positive first).
inline long torus_xi(std::size_t j, bool include_zero) {
    if (include_zero) {
        if (j == 1) return 0;
        const std::size_t k = j / 2;
        return (j % 2 == 0) ? long(k) : -long(k);
    }
    const std::size_t k = (j + 1) / 2;
    return (j % 2 == 1) ? long(k) : -long(k);
}

inline EigenData eigen_generate(const EigenGenerator& gen, std::size_t jmax) {
    if (jmax < 1) throw PreconditionError("jmax must be >= 1");
    EigenData e;
    e.generator = gen;
    e.generator_backed = true;
    e.entries.reserve(jmax);
    for (std::size_t j = 1; j <= jmax; ++j) {
        EigenEntry en;
        switch (gen.kind) {
            case GeneratorKind::TorusFrequencies: {
                const long xi = torus_xi(j, /*include_zero=*/true);
                en.xi = xi;
                en.lambda = 1.0 + double(std::abs(xi));
                en.mu = double(xi);
                en.nu = double(std::abs(xi));
                break;
            }
            case GeneratorKind::LogPower: {
                const long xi = torus_xi(j, /*include_zero=*/false);
                en.xi = xi;
                en.lambda = 1.0 + double(std::abs(xi));
                en.mu = double(xi);
                en.nu = std::pow(std::log(2.0 + double(std::abs(xi))), gen.rho);
                break;
            }
            case GeneratorKind::Power: {
                en.lambda = double(j);
                en.mu = en.nu = std::pow(double(j), gen.s);
                break;
            }
            case GeneratorKind::RationalDecay: {
                en.lambda = double(j);
                const double num = std::pow(double(gen.c + long(j)), double(gen.tau));
                en.mu = en.nu = num / std::pow(double(j), double(gen.tau + 1));
                break;
            }
            case GeneratorKind::Explicit:
                throw PreconditionError("explicit eigendata cannot be generated");
        }
        e.entries.push_back(en);
    }
    e.validate();
    return e;
}

// Weyl-law sanity check: lambda_j / j^{m/n} over the tail j > jmax/2 should
// hover around a constant. Two flags: the extreme ratio max/min (bound
// configurable, default 10) and a systematic-drift test comparing half-tail
// means (default tolerance 1.1x) which catches sub-power growth such as
// lambda_j = log j that the extreme ratio alone misses.
struct WeylReport {
    double ratio_min = 0.0;
    double ratio_max = 0.0;
    double drift = 1.0;  // ratio of first-half-tail mean to second-half-tail mean (>=1)
    bool flagged = false;
};

inline WeylReport weyl_check(const EigenData& e, double ratio_bound = 10.0,
                             double drift_bound = 1.1) {
    if (e.jmax() < 32) throw PreconditionError("weyl_check needs at least 32 entries");
    const double expo = double(e.m) / double(e.n);
    const std::size_t lo = e.jmax() / 2 + 1;
    WeylReport r;
    r.ratio_min = std::numeric_limits<double>::infinity();
    double sum1 = 0.0, sum2 = 0.0;
    std::size_t n1 = 0, n2 = 0;
    const std::size_t mid = (lo + e.jmax()) / 2;
    for (std::size_t j = lo; j <= e.jmax(); ++j) {
        const double ratio = e.at(j).lambda / std::pow(double(j), expo);
        r.ratio_min = std::min(r.ratio_min, ratio);
        r.ratio_max = std::max(r.ratio_max, ratio);
        if (j <= mid) {
            sum1 += ratio;
            ++n1;
        } else {
            sum2 += ratio;
            ++n2;
        }
    }
    const double m1 = sum1 / double(n1), m2 = sum2 / double(n2);
    r.drift = (m1 > m2) ? m1 / m2 : m2 / m1;
    r.flagged = (r.ratio_max / r.ratio_min > ratio_bound) || (r.drift > drift_bound);
    return r;
}

}  // namespace ghlab
