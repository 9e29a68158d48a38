// Simultaneous diagonalization of commuting Hermitian pairs.
//
// Inside an eigenspace of the reference operator with multiplicity > 1, the
// two symbol restrictions are Hermitian matrices P, Q. When [P, Q] = 0 they
// admit a joint orthonormal eigenbasis: diagonalize P, then diagonalize the
// compression of Q to each P-eigenvalue cluster. Non-commuting input is a
// precondition failure, not something to approximate past.
#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ghlab/common.hpp"

namespace ghlab {

struct SimDiagResult {
    Eigen::MatrixXcd U;   // unitary; columns are joint eigenvectors
    Eigen::VectorXd dP;   // eigenvalues of P (ascending)
    Eigen::VectorXd dQ;   // eigenvalues of Q in the matching column order
    double commutator = 0.0;        // relative Frobenius norm of [P, Q]
    double unitarity_defect = 0.0;  // ||U* U - I||_inf
    double offdiag = 0.0;           // ||offdiag(U* Q U)||_max relative to ||Q||
};

inline double hermitian_defect(const Eigen::MatrixXcd& A) {
    const double scale = std::max(1.0, A.norm());
    return (A - A.adjoint()).norm() / scale;
}

// tol governs the commutator acceptance threshold (relative Frobenius norm)
// and the clustering of P-eigenvalues.
inline SimDiagResult simultaneous_diagonalize(const Eigen::MatrixXcd& P,
                                              const Eigen::MatrixXcd& Q,
                                              double tol = 1e-10) {
    if (P.rows() != P.cols() || Q.rows() != Q.cols() || P.rows() != Q.rows())
        throw PreconditionError("simultaneous_diagonalize: dimension mismatch");
    if (hermitian_defect(P) > 1e-12 || hermitian_defect(Q) > 1e-12)
        throw PreconditionError("simultaneous_diagonalize: inputs must be Hermitian");

    const double scale = std::max(1e-300, P.norm() * Q.norm());
    SimDiagResult r;
    r.commutator = (P * Q - Q * P).norm() / scale;
    if (r.commutator > tol)
        throw CommutatorError("relative commutator norm " + std::to_string(r.commutator) +
                              " exceeds tolerance");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esP(P);
    if (esP.info() != Eigen::Success)
        throw SingularSystemError("eigendecomposition of P failed");
    Eigen::MatrixXcd U = esP.eigenvectors();
    r.dP = esP.eigenvalues();

    // Cluster nearly-equal P-eigenvalues; Q need only be diagonalized within
    // each cluster, where it is block-diagonal up to the commutator tolerance.
    const double cluster_gap = 1e-8 * std::max(1.0, P.norm());
    const Eigen::Index nn = P.rows();
    Eigen::Index lo = 0;
    while (lo < nn) {
        Eigen::Index hi = lo + 1;
        while (hi < nn && r.dP(hi) - r.dP(hi - 1) <= cluster_gap) ++hi;
        const Eigen::Index k = hi - lo;
        if (k > 1) {
            const Eigen::MatrixXcd Vc = U.middleCols(lo, k);
            Eigen::MatrixXcd B = Vc.adjoint() * Q * Vc;
            B = Cplx(0.5, 0.0) * (B + B.adjoint());  // symmetrize roundoff
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esB(B);
            if (esB.info() != Eigen::Success)
                throw SingularSystemError("eigendecomposition of a Q-block failed");
            U.middleCols(lo, k) = Vc * esB.eigenvectors();
        }
        lo = hi;
    }

    const Eigen::MatrixXcd QU = U.adjoint() * Q * U;
    r.dQ = QU.diagonal().real();
    const double qscale = std::max(1.0, Q.norm());
    double off = 0.0;
    for (Eigen::Index i = 0; i < nn; ++i)
        for (Eigen::Index j = 0; j < nn; ++j)
            if (i != j) off = std::max(off, std::abs(QU(i, j)));
    r.offdiag = off / qscale;
    r.unitarity_defect =
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(nn, nn)).cwiseAbs().maxCoeff();
    r.U = std::move(U);

    if (r.offdiag > 1e-8)
        throw CommutatorError("joint diagonalization left off-diagonal mass " +
                              std::to_string(r.offdiag) + "; inputs commute only marginally");
    return r;
}

}  // namespace ghlab
