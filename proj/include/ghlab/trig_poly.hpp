// Real trigonometric polynomials on the circle and their primitives.
//
//   p(t) = c_0 + sum_{k>=1} ( c_k cos(kt) + s_k sin(kt) )
//
// The time mean over one period is exactly c_0, and the primitive
// P(t) = int_0^t p splits exactly into  (mean)*t + (periodic trig poly)
// with P(0) = 0. Both facts are used throughout: the mean drives the
// small-divisor analysis and the periodic part drives the conjugations.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "ghlab/common.hpp"

namespace ghlab {

struct TrigPoly {
    // Coefficient k multiplies cos(kt) / sin(kt); cos_coeffs[0] is the
    // constant term and sin_coeffs[0] must stay zero (sin(0t) == 0).
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    TrigPoly() = default;
    TrigPoly(std::vector<double> c, std::vector<double> s)
        : cos_coeffs(std::move(c)), sin_coeffs(std::move(s)) {
        if (!sin_coeffs.empty() && sin_coeffs[0] != 0.0)
            throw PreconditionError("sin coefficient at frequency 0 must be zero");
    }

    static TrigPoly constant(double c) { return TrigPoly({c}, {}); }

    std::size_t degree() const {
        std::size_t d = cos_coeffs.empty() ? 0 : cos_coeffs.size() - 1;
        std::size_t ds = sin_coeffs.empty() ? 0 : sin_coeffs.size() - 1;
        return d > ds ? d : ds;
    }

    double cos_coeff(std::size_t k) const { return k < cos_coeffs.size() ? cos_coeffs[k] : 0.0; }
    double sin_coeff(std::size_t k) const { return k < sin_coeffs.size() ? sin_coeffs[k] : 0.0; }

    double eval(double t) const {
        double v = cos_coeff(0);
        const std::size_t d = degree();
        for (std::size_t k = 1; k <= d; ++k)
            v += cos_coeff(k) * std::cos(double(k) * t) + sin_coeff(k) * std::sin(double(k) * t);
        return v;
    }

    double operator()(double t) const { return eval(t); }

    TrigPoly derivative() const {
        const std::size_t d = degree();
        std::vector<double> c(d + 1, 0.0), s(d + 1, 0.0);
        for (std::size_t k = 1; k <= d; ++k) {
            c[k] = double(k) * sin_coeff(k);   // d/dt sin(kt) = k cos(kt)
            s[k] = -double(k) * cos_coeff(k);  // d/dt cos(kt) = -k sin(kt)
        }
        return TrigPoly(std::move(c), std::move(s));
    }

    TrigPoly scaled(double a) const {
        TrigPoly r = *this;
        for (auto& x : r.cos_coeffs) x *= a;
        for (auto& x : r.sin_coeffs) x *= a;
        return r;
    }

    // sum_k k*(|c_k| + |s_k|): a global bound on |p'|.
    double derivative_bound() const {
        double L = 0.0;
        const std::size_t d = degree();
        for (std::size_t k = 1; k <= d; ++k)
            L += double(k) * (std::abs(cos_coeff(k)) + std::abs(sin_coeff(k)));
        return L;
    }

    // sum_k k^2*(|c_k| + |s_k|): a global bound on |p''|.
    double second_derivative_bound() const {
        double L = 0.0;
        const std::size_t d = degree();
        for (std::size_t k = 1; k <= d; ++k)
            L += double(k) * double(k) * (std::abs(cos_coeff(k)) + std::abs(sin_coeff(k)));
        return L;
    }

    bool is_zero() const {
        for (double x : cos_coeffs)
            if (x != 0.0) return false;
        for (double x : sin_coeffs)
            if (x != 0.0) return false;
        return true;
    }

    bool operator==(const TrigPoly& o) const {
        const std::size_t d = std::max(degree(), o.degree());
        for (std::size_t k = 0; k <= d; ++k)
            if (cos_coeff(k) != o.cos_coeff(k) || sin_coeff(k) != o.sin_coeff(k)) return false;
        return true;
    }
};

// Exact period mean: (2pi)^{-1} int_0^{2pi} p = c_0.
inline double trig_mean(const TrigPoly& p) { return p.cos_coeff(0); }

// Primitive P(t) = int_0^t p(tau) dtau = slope*t + periodic(t), P(0) = 0.
struct PrimitiveFn {
    double slope = 0.0;   // the mean of the integrand
    TrigPoly periodic;    // periodic part, vanishing at t = 0

    double value(double t) const { return slope * t + periodic.eval(t); }
    double operator()(double t) const { return value(t); }
};

inline PrimitiveFn trig_primitive(const TrigPoly& p) {
    const std::size_t d = p.degree();
    std::vector<double> c(d + 1, 0.0), s(d + 1, 0.0);
    double c0 = 0.0;  // constant that enforces periodic(0) = 0
    for (std::size_t k = 1; k <= d; ++k) {
        // int cos(k t) = sin(k t)/k ; int sin(k t) = (1 - cos(k t))/k
        s[k] = p.cos_coeff(k) / double(k);
        c[k] = -p.sin_coeff(k) / double(k);
        c0 += p.sin_coeff(k) / double(k);
    }
    c[0] = c0;
    PrimitiveFn P;
    P.slope = trig_mean(p);
    P.periodic = TrigPoly(std::move(c), std::move(s));
    return P;
}

}  // namespace ghlab
