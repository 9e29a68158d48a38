// Operator model: L = D_t + a(t) P + i b(t) Q acting on T x M.
//
// a, b are real trigonometric polynomials in t; P, Q are the commuting
// first-order symbols whose joint eigenvalues (mu_j, nu_j) come from the
// eigensequence. On the j-th spatial mode the operator acts as the ordinary
// differential operator D_t + mu_j a(t) + i nu_j b(t); in the d/dt form used
// by the solvers, (d/dt + c_j(t)) with c_j(t) = -nu_j b(t) + i mu_j a(t).
#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghlab/common.hpp"
#include "ghlab/eigen_data.hpp"
#include "ghlab/simdiag.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

struct OperatorSpec {
    TrigPoly a;
    TrigPoly b;
    EigenData eigen;
    // Optional exact description of the time mean of a (textual real-number
    // spec, e.g. "rational:1/2" or "golden_ratio"). When empty, the mean is
    // the dyadic rational given by a's constant Fourier coefficient.
    std::string a0_exact;

    double a0() const { return trig_mean(a); }
    double b0() const { return trig_mean(b); }
};

struct ModeSymbol {
    long j = 0;
    double mu = 0.0;
    double nu = 0.0;
    TrigPoly a;
    TrigPoly b;

    // c_j(t) = -nu b(t) + i mu a(t), the coefficient of the d/dt-form ODE.
    TrigPoly c_re() const { return b.scaled(-nu); }
    TrigPoly c_im() const { return a.scaled(mu); }
    std::complex<double> c0() const {
        return {-nu * trig_mean(b), mu * trig_mean(a)};
    }
    std::complex<double> c_at(double t) const { return {-nu * b.eval(t), mu * a.eval(t)}; }
};

inline ModeSymbol mode_symbol(const OperatorSpec& op, std::size_t j) {
    const EigenEntry& e = op.eigen.at(j);  // throws on out-of-range
    ModeSymbol s;
    s.j = long(j);
    s.mu = e.mu;
    s.nu = e.nu;
    s.a = op.a;
    s.b = op.b;
    return s;
}

// A reference-operator eigenspace of dimension > 1: lambda with the two
// Hermitian symbol restrictions. Diagonal reduction turns each block into
// mult scalar entries sharing lambda, via the joint eigenbasis.
struct EigenBlock {
    double lambda = 0.0;
    Eigen::MatrixXcd P;
    Eigen::MatrixXcd Q;
};

inline EigenData reduce_blocks(const std::vector<EigenBlock>& blocks, int n = 1, int m = 1,
                               double tol = 1e-10) {
    EigenData e;
    e.n = n;
    e.m = m;
    e.generator.kind = GeneratorKind::Explicit;
    e.generator_backed = false;
    for (const EigenBlock& blk : blocks) {
        if (blk.P.rows() == 1) {
            EigenEntry en;
            en.lambda = blk.lambda;
            en.mu = blk.P(0, 0).real();
            en.nu = blk.Q(0, 0).real();
            e.entries.push_back(en);
            continue;
        }
        const SimDiagResult r = simultaneous_diagonalize(blk.P, blk.Q, tol);
        for (Eigen::Index i = 0; i < r.dP.size(); ++i) {
            EigenEntry en;
            en.lambda = blk.lambda;
            en.mu = r.dP(i);
            en.nu = r.dQ(i);
            en.mult = 1;
            e.entries.push_back(en);
        }
    }
    e.validate();
    return e;
}

}  // namespace ghlab
