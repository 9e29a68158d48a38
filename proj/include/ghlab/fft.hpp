// Uniform periodic grids and a compact radix-2 FFT.
//
// All period integrals in the library run on uniform grids over [0, 2pi);
// for smooth periodic integrands the trapezoid rule on such a grid is
// spectrally accurate, and the FFT gives band-limited interpolation and
// differentiation. Grid sizes are required to be powers of two.
#pragma once

#include <complex>
#include <vector>

#include "ghlab/common.hpp"

namespace ghlab {


// t_i = 2*pi*i/n for i = 0..n-1.
inline std::vector<double> uniform_grid(std::size_t n) {
    if (!is_pow2(n)) throw PreconditionError("grid size must be a power of two");
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = kTwoPi * double(i) / double(n);
    return t;
}

// In-place iterative radix-2 Cooley-Tukey. forward: X_k = sum_j x_j e^{-ikt_j}.
inline void fft_inplace(CVec& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw PreconditionError("fft size must be a power of two");
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? kTwoPi : -kTwoPi) / double(len);
        const Cplx wl(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Cplx u = a[i + k], v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
    if (inverse)
        for (auto& x : a) x /= double(n);
}

// Fourier coefficients c_k (k = 0..n-1, frequencies k>n/2 alias to k-n),
// normalized so that x_j = sum_k c_k e^{i k t_j}.
inline CVec fourier_coeffs(const CVec& values) {
    CVec c = values;
    fft_inplace(c, false);
    for (auto& x : c) x /= double(values.size());
    return c;
}

inline CVec from_fourier_coeffs(CVec coeffs) {
    for (auto& x : coeffs) x *= double(coeffs.size());
    fft_inplace(coeffs, true);
    return coeffs;
}

// Signed frequency of bin k on an n-point grid.
inline long fft_freq(std::size_t k, std::size_t n) {
    return (k <= n / 2) ? long(k) : long(k) - long(n);
}

// Band-limited derivative of given order; the ambiguous Nyquist bin is
// zeroed (functions here are resolved well below Nyquist).
inline CVec spectral_derivative(const CVec& values, unsigned order = 1) {
    const std::size_t n = values.size();
    CVec c = fourier_coeffs(values);
    for (std::size_t k = 0; k < n; ++k) {
        if (order > 0 && k == n / 2) {
            c[k] = 0.0;
            continue;
        }
        Cplx ik(0.0, double(fft_freq(k, n)));
        Cplx f(1.0);
        for (unsigned p = 0; p < order; ++p) f *= ik;
        c[k] *= f;
    }
    return from_fourier_coeffs(std::move(c));
}

// Samples of the band-limited interpolant at t_i + delta for every i.
inline CVec phase_shift(const CVec& values, double delta) {
    const std::size_t n = values.size();
    CVec c = fourier_coeffs(values);
    for (std::size_t k = 0; k < n; ++k) {
        const long f = fft_freq(k, n);
        c[k] *= std::polar(1.0, double(f) * delta);
    }
    return from_fourier_coeffs(std::move(c));
}

inline double sup_norm(const CVec& values) {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

// Trapezoid mean over one period == plain average on a uniform grid.
inline Cplx grid_mean(const CVec& values) {
    Cplx s = 0.0;
    for (const auto& v : values) s += v;
    return s / double(values.size());
}

}  // namespace ghlab
