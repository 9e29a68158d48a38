// Normal forms: growth classification of the nu-sequence and the per-mode
// conjugations that reduce a variable-coefficient mode equation to its
// constant-coefficient mean.
//
// With P_j(t) the periodic primitive of c_j(t) - c0_j (so P_j' = c_j - c0_j
// and P_j(0) = 0), the dressing v -> e^{-P_j} v satisfies
//
//   (d/dt + c_j(t)) (e^{-P_j} v) = e^{-P_j} (v' + c0_j v),
//
// an exact identity. The real part of P_j is -nu_j Btilde(t), so the dressing
// has modulus e^{nu_j Btilde} and stays polynomially bounded in the mode
// index exactly when nu_j grows at most logarithmically in lambda_j; that is
// the automorphism condition for the global reduction. The imaginary part
// i mu_j Atilde is a pure phase and is harmless at every growth rate.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "ghlab/common.hpp"
#include "ghlab/eigen_data.hpp"
#include "ghlab/fft.hpp"
#include "ghlab/operator_model.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

// ---------------------------------------------------------------------------
// Growth classification of nu_j against log lambda_j
// ---------------------------------------------------------------------------

enum class GrowthClass { Bounded, AtMostLog, SuperLog, Indeterminate };

inline const char* to_string(GrowthClass g) {
    switch (g) {
        case GrowthClass::Bounded: return "bounded";
        case GrowthClass::AtMostLog: return "at-most-logarithmic";
        case GrowthClass::SuperLog: return "superlogarithmic";
        case GrowthClass::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct GrowthReport {
    GrowthClass cls = GrowthClass::Indeterminate;
    double kappa = 0.0;   // nu_j = Theta(log^kappa lambda_j) where meaningful
    bool certified = false;  // symbolic (generator-backed) vs observed from samples
    std::vector<long> superlog_witnesses;  // indices with strictly growing ratio
    double r2 = 0.0;      // fit quality on the observed path
    std::string detail;
};

namespace detail {

// indices 4, 8, 16, ... with nu/log(lambda) strictly increasing; used as the
// certified witness subsequence on superlogarithmic generators
inline std::vector<long> dyadic_witnesses(const EigenData& e) {
    std::vector<long> out;
    double prev_ratio = -1.0;
    for (long j = 4; j <= long(e.jmax()); j *= 2) {
        const EigenEntry& en = e.at(std::size_t(j));
        const double denom = std::log(1.0 + en.lambda);
        if (!(denom > 0.0) || !(en.nu > 0.0)) continue;
        const double ratio = en.nu / denom;
        if (ratio > prev_ratio) {
            out.push_back(j);
            prev_ratio = ratio;
        }
    }
    return out;
}

}  // namespace detail

inline GrowthReport growth_class(const EigenData& e) {
    GrowthReport g;
    if (e.generator_backed) {
        g.certified = true;
        switch (e.generator.kind) {
            case GeneratorKind::TorusFrequencies:
                g.cls = GrowthClass::SuperLog;
                g.detail = "nu = |frequency| outpaces every power of the logarithm";
                g.superlog_witnesses = detail::dyadic_witnesses(e);
                return g;
            case GeneratorKind::Power:
                g.cls = GrowthClass::SuperLog;
                g.detail = "nu = j^s outpaces every power of the logarithm";
                g.superlog_witnesses = detail::dyadic_witnesses(e);
                return g;
            case GeneratorKind::LogPower:
                if (e.generator.rho <= 1.0) {
                    g.cls = GrowthClass::AtMostLog;
                    g.kappa = e.generator.rho;
                    g.detail = "nu = log^rho with rho <= 1";
                } else {
                    g.cls = GrowthClass::SuperLog;
                    g.kappa = e.generator.rho;
                    g.detail = "nu = log^rho with rho > 1";
                    g.superlog_witnesses = detail::dyadic_witnesses(e);
                }
                return g;
            case GeneratorKind::RationalDecay:
                g.cls = GrowthClass::Bounded;
                g.detail = "nu decays to zero";
                return g;
            case GeneratorKind::Explicit:
                break;  // fall through to the observed path
        }
    }

    // Observed path: fit log(nu) against log(1 + log(lambda)) on the tail.
    // Samples can suggest but never certify superlogarithmic growth.
    std::vector<double> xs, ys;
    const std::size_t jmax = e.jmax();
    for (std::size_t j = std::max<std::size_t>(2, jmax / 2); j <= jmax; ++j) {
        const EigenEntry& en = e.at(j);
        if (!(en.nu > 0.0)) continue;
        xs.push_back(std::log(1.0 + std::log(en.lambda)));
        ys.push_back(std::log(en.nu));
    }
    if (xs.size() < 8) {
        g.detail = "too few positive-nu tail samples to classify";
        return g;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    double ymin = ys[0], ymax = ys[0];
    const double n = double(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
        syy += ys[i] * ys[i];
        ymin = std::min(ymin, ys[i]);
        ymax = std::max(ymax, ys[i]);
    }
    const double vxx = sxx - sx * sx / n;
    const double vyy = syy - sy * sy / n;
    const double vxy = sxy - sx * sy / n;
    if (!(vxx > 0.0)) {
        g.detail = "degenerate abscissa: lambda does not grow across the tail";
        return g;
    }
    const double slope = vxy / vxx;
    g.r2 = (vyy > 0.0) ? (vxy * vxy) / (vxx * vyy) : 1.0;
    g.kappa = slope;
    const bool flat = (ymax - ymin) <= 1e-9 * std::max(1.0, std::abs(ymax));
    if (flat || (g.r2 >= 0.99 && std::abs(slope) <= 0.05)) {
        g.cls = GrowthClass::Bounded;
        g.detail = "nu observed flat across the tail (not certified)";
        return g;
    }
    if (g.r2 < 0.99) {
        g.detail = "no clean power law of the logarithm in the tail";
        return g;
    }
    if (slope <= 1.05) {
        g.cls = GrowthClass::AtMostLog;
        g.detail = "nu observed ~ log^kappa with kappa <= 1 (not certified)";
        return g;
    }
    g.detail = "superlogarithmic trend observed; samples alone cannot certify it";
    return g;
}

// ---------------------------------------------------------------------------
// Dressings
// ---------------------------------------------------------------------------

// u_i -> e^{sign * nu * Btilde(t_i)} u_i with Btilde the periodic primitive
// of b - mean(b), Btilde(0) = 0.
inline CVec psi_b_apply(const TrigPoly& b, double nu, const CVec& u, int sign = +1) {
    if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
    const PrimitiveFn B = trig_primitive(b);
    const std::size_t n = u.size();
    const std::vector<double> t = uniform_grid(n);
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = u[i] * std::exp(double(sign) * nu * B.periodic(t[i]));
    return out;
}

// u_i -> e^{sign * i * mu * Atilde(t_i)} u_i (pure phase).
inline CVec psi_a_apply(const TrigPoly& a, double mu, const CVec& u, int sign = -1) {
    if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");
    const PrimitiveFn A = trig_primitive(a);
    const std::size_t n = u.size();
    const std::vector<double> t = uniform_grid(n);
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double phase = double(sign) * mu * A.periodic(t[i]);
        out[i] = u[i] * Cplx(std::cos(phase), std::sin(phase));
    }
    return out;
}

// Samples of the periodic phase P(t) with P' = c(t) - c0, P(0) = 0.
inline CVec mode_phase(const ModeSymbol& sym, std::size_t n) {
    const PrimitiveFn Br = trig_primitive(sym.c_re());
    const PrimitiveFn Bi = trig_primitive(sym.c_im());
    const std::vector<double> t = uniform_grid(n);
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = Cplx(Br.periodic(t[i]), Bi.periodic(t[i]));
    return out;
}

// direction +1: v -> e^{-P} v (to constant coefficients); -1: the inverse.
inline CVec conjugator_apply(const ModeSymbol& sym, const CVec& v, int direction) {
    if (direction != 1 && direction != -1)
        throw PreconditionError("direction must be +1 or -1");
    const CVec P = mode_phase(sym, v.size());
    CVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = v[i] * std::exp(-double(direction) * P[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Conjugation check: transformed operator versus its constant-mean model
// ---------------------------------------------------------------------------

struct ConjugationReport {
    double max_residual = 0.0;
    long worst_mode = 0;
    std::vector<double> residuals;  // per mode j = 1..jmax
};

// For each mode, applies the dressing to a fixed smooth test function and
// measures sup_t | e^{P} (d/dt + c(t)) e^{-P} v  -  (v' + c0 v) |. The
// identity is exact; the residual is pure discretization error. Throws when
// the certified growth class is superlogarithmic (the dressing is then not
// an automorphism and the global reduction is meaningless) unless the caller
// explicitly insists.
inline ConjugationReport conjugation_check(const OperatorSpec& op, std::size_t grid,
                                           const CVec& test, bool allow_superlog = false) {
    if (!is_pow2(grid) || grid < 16)
        throw PreconditionError("grid must be a power of two, at least 16");
    if (test.size() != grid) throw PreconditionError("test function must live on the grid");
    if (!allow_superlog) {
        const GrowthReport g = growth_class(op.eigen);
        if (g.certified && g.cls == GrowthClass::SuperLog)
            throw PreconditionError(
                "superlogarithmic nu-growth: the dressing is not an automorphism");
    }
    const CVec dtest = spectral_derivative(test, 1);
    const std::vector<double> t = uniform_grid(grid);

    ConjugationReport rep;
    rep.residuals.reserve(op.eigen.jmax());
    for (std::size_t j = 1; j <= op.eigen.jmax(); ++j) {
        const ModeSymbol sym = mode_symbol(op, j);
        const Cplx c0 = sym.c0();
        const CVec w = conjugator_apply(sym, test, +1);
        const CVec dw = spectral_derivative(w, 1);
        const CVec P = mode_phase(sym, grid);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid; ++i) {
            const Cplx lhs = std::exp(P[i]) * (dw[i] + sym.c_at(t[i]) * w[i]);
            const Cplx rhs = dtest[i] + c0 * test[i];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        rep.residuals.push_back(worst);
        if (worst > rep.max_residual) {
            rep.max_residual = worst;
            rep.worst_mode = long(j);
        }
    }
    return rep;
}

// Default sufficiently generic smooth test function.
inline CVec default_conjugation_test(std::size_t grid) {
    const std::vector<double> t = uniform_grid(grid);
    CVec v(grid);
    for (std::size_t i = 0; i < grid; ++i)
        v[i] = Cplx(1.0 + 0.5 * std::cos(t[i]), 0.25 * std::sin(2.0 * t[i]));
    return v;
}

inline ConjugationReport conjugation_check(const OperatorSpec& op, std::size_t grid,
                                           bool allow_superlog = false) {
    return conjugation_check(op, grid, default_conjugation_test(grid), allow_superlog);
}

// ---------------------------------------------------------------------------
// Matrix dressing for unreduced blocks
// ---------------------------------------------------------------------------

// e^{btilde Q} for Hermitian Q via eigendecomposition; exact up to the
// eigensolver, stable because Q is Hermitian.
inline Eigen::MatrixXcd matrix_psi_b(const Eigen::MatrixXcd& Q, double btilde) {
    if (Q.rows() != Q.cols()) throw PreconditionError("matrix dressing needs a square block");
    const double scale = std::max(1.0, Q.norm());
    if ((Q - Q.adjoint()).norm() > 1e-12 * scale)
        throw PreconditionError("matrix dressing needs a Hermitian block");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Q);
    Eigen::VectorXd ev = es.eigenvalues();
    Eigen::VectorXcd expv(ev.size());
    for (Eigen::Index i = 0; i < ev.size(); ++i) expv[i] = std::exp(btilde * ev[i]);
    return es.eigenvectors() * expv.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace ghlab
