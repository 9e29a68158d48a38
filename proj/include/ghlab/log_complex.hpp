// Complex numbers stored as (log magnitude, phase).
//
// The per-mode solutions and witnesses involve factors e^{nu*B(t)} whose
// exponents reach several hundred; products and quotients of such factors
// must be formed in the log domain and converted to ordinary complex
// numbers only at the end (saturating, never overflowing mid-computation).
#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "ghlab/common.hpp"

namespace ghlab {

struct LogComplex {
    double log_mag = -std::numeric_limits<double>::infinity();  // log(0) for zero
    double phase = 0.0;

    LogComplex() = default;
    LogComplex(double lm, double ph) : log_mag(lm), phase(ph) {}

    static LogComplex from_complex(const std::complex<double>& z) {
        if (z == std::complex<double>(0.0, 0.0)) return LogComplex();
        return LogComplex(std::log(std::abs(z)), std::arg(z));
    }

    static LogComplex from_real(double x) {
        if (x == 0.0) return LogComplex();
        return LogComplex(std::log(std::abs(x)), x > 0 ? 0.0 : kPi);
    }

    // Exponential of an ordinary complex number: e^{w} has log_mag = Re w.
    static LogComplex exp_of(const std::complex<double>& w) {
        return LogComplex(w.real(), w.imag());
    }

    bool is_zero() const { return std::isinf(log_mag) && log_mag < 0; }

    LogComplex operator*(const LogComplex& o) const {
        if (is_zero() || o.is_zero()) return LogComplex();
        return LogComplex(log_mag + o.log_mag, phase + o.phase);
    }

    LogComplex operator/(const LogComplex& o) const {
        return LogComplex(log_mag - o.log_mag, phase - o.phase);
    }

    LogComplex pow_real(double a) const {
        if (is_zero()) return LogComplex();
        return LogComplex(a * log_mag, a * phase);
    }

    // Wrap the phase into (-pi, pi] without touching the magnitude.
    LogComplex reduced() const {
        if (is_zero()) return *this;
        double ph = std::remainder(phase, kTwoPi);
        return LogComplex(log_mag, ph);
    }

    // Saturating conversion: exponents beyond double range become +/-inf
    // components (sign taken from the phase) rather than raising overflow.
    std::complex<double> to_complex() const {
        if (is_zero()) return {0.0, 0.0};
        const double c = std::cos(phase), s = std::sin(phase);
        if (log_mag > 709.0) {
            const double inf = std::numeric_limits<double>::infinity();
            return {c == 0.0 ? 0.0 : (c > 0 ? inf : -inf),
                    s == 0.0 ? 0.0 : (s > 0 ? inf : -inf)};
        }
        const double m = std::exp(log_mag);
        return {m * c, m * s};
    }

    bool overflows_double() const { return log_mag > 709.0; }
};

}  // namespace ghlab
