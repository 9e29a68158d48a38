#pragma once

// Certified sign classification of a real trigonometric polynomial b(t) on
// the circle.  Writing b(t) = sum_{|k|<=d} bhat_k e^{ikt} with conjugate
// symmetric coefficients, the zeros of b are exactly the unit-circle roots of
// the algebraic polynomial P(z) = sum_k bhat_k z^{k+d}.  We locate all roots
// of P through a companion-matrix eigenvalue problem and classify each
// unit-circle root by the derivative b'(t*): a transversal zero (|b'| large)
// is a sign change, a tangential zero (|b'| ~ 0, even multiplicity) merely
// touches the axis.  This decides between strictly definite, single-signed
// with touch points (such as 1 + cos t), and sign-changing coefficients
// without relying on grid resolution.  Ambiguous derivative magnitudes fall
// into an explicit gray zone and yield Indeterminate rather than a guess.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "ghlab/common.hpp"
#include "ghlab/fft.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

enum class SignClass {
    IdenticallyZero,
    StrictlyPositive,
    StrictlyNegative,
    NonNegativeTouching,
    NonPositiveTouching,
    SignChanging,
    Indeterminate,
};

inline const char* to_string(SignClass s) {
    switch (s) {
        case SignClass::IdenticallyZero: return "identically-zero";
        case SignClass::StrictlyPositive: return "strictly-positive";
        case SignClass::StrictlyNegative: return "strictly-negative";
        case SignClass::NonNegativeTouching: return "nonnegative-touching";
        case SignClass::NonPositiveTouching: return "nonpositive-touching";
        case SignClass::SignChanging: return "sign-changing";
        case SignClass::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

struct SignReport {
    SignClass cls = SignClass::Indeterminate;
    double min_value = 0.0;            // sampled minimum over a fine grid
    double max_value = 0.0;            // sampled maximum over a fine grid
    std::vector<double> crossings;     // certified transversal zeros in [0, 2pi)
    std::vector<double> touch_points;  // certified tangential zeros in [0, 2pi)
    std::string detail;
    bool single_signed() const {
        return cls == SignClass::StrictlyPositive || cls == SignClass::StrictlyNegative ||
               cls == SignClass::NonNegativeTouching || cls == SignClass::NonPositiveTouching;
    }
};

namespace detail {

// Roots of sum_i q[i] z^i via the companion matrix of the monic normalization.
inline std::vector<Cplx> poly_roots(const std::vector<Cplx>& q) {
    const std::size_t deg = q.size() - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(long(deg), long(deg));
    for (std::size_t i = 0; i + 1 < deg; ++i) comp(long(i) + 1, long(i)) = 1.0;
    for (std::size_t i = 0; i < deg; ++i) comp(long(i), long(deg) - 1) = -q[i] / q[deg];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    std::vector<Cplx> roots(deg);
    for (std::size_t i = 0; i < deg; ++i) roots[i] = es.eigenvalues()(long(i));
    return roots;
}

}  // namespace detail

inline SignReport sign_analysis(const TrigPoly& b) {
    SignReport rep;
    if (b.is_zero()) {
        rep.cls = SignClass::IdenticallyZero;
        rep.detail = "all coefficients vanish";
        return rep;
    }

    // Sampled extremes (diagnostics and the consistency cross-check below).
    const std::size_t n = 4096;
    const std::vector<double> grid = uniform_grid(n);
    rep.min_value = std::numeric_limits<double>::infinity();
    rep.max_value = -std::numeric_limits<double>::infinity();
    for (double t : grid) {
        const double v = b.eval(t);
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
    }

    // Laurent coefficients bhat_k, assembled as P(z) = sum bhat_k z^{k+d}.
    const std::size_t d = b.degree();
    std::vector<Cplx> p(2 * d + 1, Cplx(0.0, 0.0));
    p[d] = Cplx(b.cos_coeffs.empty() ? 0.0 : b.cos_coeffs[0], 0.0);
    for (std::size_t k = 1; k <= d; ++k) {
        const double ck = k < b.cos_coeffs.size() ? b.cos_coeffs[k] : 0.0;
        const double sk = k < b.sin_coeffs.size() ? b.sin_coeffs[k] : 0.0;
        p[d + k] = 0.5 * Cplx(ck, -sk);
        p[d - k] = 0.5 * Cplx(ck, sk);
    }
    double pmax = 0.0;
    for (const Cplx& c : p) pmax = std::max(pmax, std::abs(c));
    std::size_t top = 2 * d, low = 0;
    while (top > 0 && std::abs(p[top]) <= 1e-14 * pmax) --top;
    while (low < top && std::abs(p[low]) <= 1e-14 * pmax) ++low;
    // Conjugate symmetry forces top - d = d - low, so top == low only for a
    // constant; factoring z^low discards the irrelevant roots at the origin.
    if (top == low) {
        const double v = b.cos_coeffs[0];
        rep.cls = v > 0.0 ? SignClass::StrictlyPositive : SignClass::StrictlyNegative;
        rep.detail = "constant coefficient";
        return rep;
    }
    const std::vector<Cplx> q(p.begin() + long(low), p.begin() + long(top) + 1);

    // Unit-circle roots are the physical zeros of b.
    std::vector<double> zero_angles;
    for (const Cplx& z : detail::poly_roots(q)) {
        if (std::abs(std::abs(z) - 1.0) > 1e-7) continue;
        double t = std::atan2(z.imag(), z.real());
        if (t < 0.0) t += kTwoPi;
        bool dup = false;
        for (double u : zero_angles) {
            double gap = std::abs(u - t);
            gap = std::min(gap, kTwoPi - gap);
            if (gap < 1e-6) dup = true;
        }
        if (!dup) zero_angles.push_back(t);
    }
    std::sort(zero_angles.begin(), zero_angles.end());

    // Transversal vs tangential: a companion eigenvalue at a double root is
    // only accurate to about sqrt(machine epsilon), so the derivative there
    // measures ~1e-8 * scale rather than exactly zero.  The gray zone between
    // the two thresholds refuses to classify.  The scale is the derivative
    // bound itself (positive for any nonconstant polynomial), which keeps the
    // classification invariant under rescaling of b.
    const TrigPoly db = b.derivative();
    const double scale = b.derivative_bound();
    for (double t : zero_angles) {
        const double dv = std::abs(db.eval(t));
        if (dv > 1e-4 * scale) {
            rep.crossings.push_back(t);
        } else if (dv <= 1e-6 * scale) {
            rep.touch_points.push_back(t);
        } else {
            rep.cls = SignClass::Indeterminate;
            rep.detail = "zero with derivative in the ambiguous band near t=" + std::to_string(t);
            return rep;
        }
    }

    if (!rep.crossings.empty()) {
        rep.cls = SignClass::SignChanging;
        rep.detail = std::to_string(rep.crossings.size()) + " transversal zeros located";
        return rep;
    }

    // No crossings: the sign is constant wherever b is nonzero.
    const double safety = 1e-9 * std::max(1.0, std::abs(rep.max_value) + std::abs(rep.min_value));
    if (rep.touch_points.empty()) {
        if (rep.min_value > 0.0) {
            rep.cls = SignClass::StrictlyPositive;
        } else if (rep.max_value < 0.0) {
            rep.cls = SignClass::StrictlyNegative;
        } else {
            rep.cls = SignClass::Indeterminate;
            rep.detail = "no unit-circle roots found yet sampled values straddle zero";
            return rep;
        }
        rep.detail = "no unit-circle roots";
        return rep;
    }
    if (rep.max_value > 0.0 && rep.min_value >= -safety) {
        rep.cls = SignClass::NonNegativeTouching;
        rep.detail = std::to_string(rep.touch_points.size()) + " tangential zeros";
    } else if (rep.min_value < 0.0 && rep.max_value <= safety) {
        rep.cls = SignClass::NonPositiveTouching;
        rep.detail = std::to_string(rep.touch_points.size()) + " tangential zeros";
    } else {
        rep.cls = SignClass::Indeterminate;
        rep.detail = "tangential zeros inconsistent with sampled range";
    }
    return rep;
}

}  // namespace ghlab
