// Per-mode periodic ODE solver and its independent cross-check.
//
// On the j-th spatial mode the equation is (d/dt + c(t)) u = f on the circle,
// c(t) = -nu b(t) + i mu a(t) with mean c0 = -nu b0 + i mu a0. The periodic
// solution exists and is unique iff c0 is not in iZ; it has two equivalent
// closed forms (forward/backward in time), and the numerically stable one is
// selected by the sign of nu*b0 so the exponential inside the integral never
// grows along the integration direction.
//
// Amplification factor: Theta = |1 - e^{-2 pi c0}|^{-1}. With x = nu*b0
// (= -Re c0) and y = mu*a0 (= Im c0),
//   omega := Theta^{-2} = expm1(2 pi x)^2 + 4 e^{2 pi x} sin^2(pi y),
// an algebraically exact cancellation-free identity evaluated in log scale
// when |x| is large. omega = 0 (resonance) iff c0 in iZ.
//
// Two independent routes:
//   solve_mode        - quadrature of the closed form: composite 16-point
//                       Gauss-Legendre panels in s (the integrand is not
//                       2pi-periodic in s, so trapezoid would only be O(h^2)),
//                       exponents from exact trig-polynomial primitives,
//                       f sampled off-grid via phase-shifted FFT interpolation.
//   solve_mode_oracle - truncated Fourier-Galerkin solve of the ODE as a
//                       banded linear system in coefficient space.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ghlab/common.hpp"
#include "ghlab/fft.hpp"
#include "ghlab/log_complex.hpp"
#include "ghlab/operator_model.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

// ---------------------------------------------------------------------------
// Amplification factor
// ---------------------------------------------------------------------------

inline double dist_to_i_integers(Cplx c0) {
    return std::hypot(c0.real(), c0.imag() - std::nearbyint(c0.imag()));
}

// log omega with omega = |1 - e^{-2 pi c0}|^2, c0 = -x + i y. Returns -inf
// exactly at resonance (x = 0 and y integer).
inline double log_omega(double x, double y) {
    const double r = y - std::nearbyint(y);  // sin^2(pi y) = sin^2(pi r)
    if (x == 0.0 && r == 0.0) return -std::numeric_limits<double>::infinity();
    const double X = kTwoPi * x;
    if (std::abs(X) <= 300.0) {
        // hypot keeps tiny values out of the underflow range
        return 2.0 * std::log(std::hypot(std::expm1(X), 2.0 * std::exp(0.5 * X) *
                                                            std::abs(std::sin(kPi * r))));
    }
    const double s2 = std::sin(kPi * r) * std::sin(kPi * r);
    if (X > 0.0) {
        const double e = std::exp(-X);
        return 2.0 * X + std::log1p(e * (4.0 * s2 - 2.0) + e * e);
    }
    const double e = std::exp(X);
    return std::log1p(e * (4.0 * s2 - 2.0) + e * e);
}

inline double omega_factor(double x, double y) { return std::exp(log_omega(x, y)); }

// Theta = omega^{-1/2}; +inf exactly at resonance.
inline double theta_from_xy(double x, double y) { return std::exp(-0.5 * log_omega(x, y)); }

inline double theta(Cplx c0) { return theta_from_xy(-c0.real(), c0.imag()); }

// Stable complex expm1: e^w - 1 without cancellation near w in 2 pi i Z.
inline Cplx cexpm1(Cplx w) {
    const double u = w.real();
    const double v = std::remainder(w.imag(), kTwoPi);
    const double sv = std::sin(0.5 * v);
    return {std::expm1(u) * std::cos(v) - 2.0 * sv * sv, std::exp(u) * std::sin(v)};
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

enum class Branch { Forward, Backward };

struct ModeSolution {
    long j = 0;
    CVec u;
    double theta = 0.0;
    Branch branch = Branch::Forward;
    double residual = 0.0;  // sup |u' + c u - f| recomputed spectrally
};

struct SolveOptions {
    double resonance_tol = 1e-8;  // reject modes with dist(c0, iZ) below this
};

namespace detail {

// 16-point Gauss-Legendre nodes/weights mapped to [0, 1] (weights sum to 1).
struct Gauss16 {
    std::array<double, 16> node{};
    std::array<double, 16> weight{};
    Gauss16() {
        constexpr std::array<double, 8> x = {
            0.09501250983763744, 0.28160355077925891, 0.45801677765722739,
            0.61787624440264375, 0.75540440835500303, 0.86563120238783174,
            0.94457502307323258, 0.98940093499164993};
        constexpr std::array<double, 8> w = {
            0.18945061045506850, 0.18260341504492359, 0.16915651939500254,
            0.14959598881657673, 0.12462897125553387, 0.09515851168249278,
            0.06225352393864789, 0.02715245941175409};
        for (int g = 0; g < 8; ++g) {
            node[g] = 0.5 * (1.0 - x[7 - g]);
            weight[g] = 0.5 * w[7 - g];
            node[8 + g] = 0.5 * (1.0 + x[g]);
            weight[8 + g] = 0.5 * w[g];
        }
    }
};

inline const Gauss16& gauss16() {
    static const Gauss16 g;
    return g;
}

inline void check_solver_grid(std::size_t n) {
    if (n < 16 || !is_pow2(n))
        throw PreconditionError("solver grid size must be a power of two >= 16");
}

}  // namespace detail

inline double residual(const ModeSymbol& sym, const CVec& u, const CVec& f);

inline ModeSolution solve_mode(const ModeSymbol& sym, const CVec& f, SolveOptions opts = {}) {
    const std::size_t n = f.size();
    detail::check_solver_grid(n);
    const Cplx c0 = sym.c0();
    const double dist = dist_to_i_integers(c0);
    if (dist < opts.resonance_tol)
        throw ResonantModeError("mode j=" + std::to_string(sym.j) +
                                " is resonant: dist(c0, iZ) = " + std::to_string(dist));

    // Branch selection: integrate in the direction along which e^{int c} decays.
    const double x = sym.nu * trig_mean(sym.b);  // = -Re c0
    const Branch branch = (x <= 0.0) ? Branch::Forward : Branch::Backward;
    const double dir = (branch == Branch::Forward) ? -1.0 : 1.0;  // f(t + dir*s)

    // Periodic parts of the primitives of b and a; the complex primitive's
    // periodic part is Pc(t) = -nu*Bt(t) + i mu*At(t), and
    //   int_t^{t+dir*s} c = dir*c0*s + Pc(t + dir*s) - Pc(t).
    const TrigPoly Bt = trig_primitive(sym.b).periodic;
    const TrigPoly At = trig_primitive(sym.a).periodic;
    const auto pc = [&](double t) -> Cplx {
        return {-sym.nu * Bt.eval(t), sym.mu * At.eval(t)};
    };

    const double h = kTwoPi / double(n);
    const auto& G16 = detail::gauss16();
    const std::vector<double> grid = uniform_grid(n);

    // Per Gauss offset: f and Pc sampled at t_m + dir*xi_g*h for every m.
    std::array<CVec, 16> fs, ws;
    double R = -std::numeric_limits<double>::infinity();  // max Re Pc over samples
    std::array<CVec, 16> pcs;
    for (int g = 0; g < 16; ++g) {
        const double delta = dir * G16.node[g] * h;
        fs[g] = phase_shift(f, delta);
        pcs[g].resize(n);
        for (std::size_t m = 0; m < n; ++m) {
            pcs[g][m] = pc(grid[m] + delta);
            R = std::max(R, pcs[g][m].real());
        }
    }
    for (int g = 0; g < 16; ++g) {
        ws[g].resize(n);
        for (std::size_t m = 0; m < n; ++m)
            ws[g][m] = std::exp(pcs[g][m] - R) * fs[g][m];  // |exp(...)| <= 1
    }

    // Panel factor A[g][k] = h*w_g*exp(dir*c0*s) at s = (k + xi_g) h; the
    // branch choice makes |exp(dir*c0*s)| <= 1.
    std::array<CVec, 16> A;
    for (int g = 0; g < 16; ++g) {
        A[g].resize(n);
        for (std::size_t k = 0; k < n; ++k)
            A[g][k] = h * G16.weight[g] * std::exp(dir * c0 * ((double(k) + G16.node[g]) * h));
    }

    // Prefactor 1/denominator; |denom| = omega^{1/2} by construction.
    const Cplx denom = (branch == Branch::Forward) ? -cexpm1(-kTwoPi * c0)
                                                   : cexpm1(kTwoPi * c0);

    ModeSolution sol;
    sol.j = sym.j;
    sol.branch = branch;
    sol.theta = theta(c0);
    sol.u.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        Cplx S = 0.0;
        for (int g = 0; g < 16; ++g) {
            const CVec& Ag = A[g];
            const CVec& Wg = ws[g];
            if (branch == Branch::Forward) {
                // index (i - k) mod n
                std::size_t idx = i;
                for (std::size_t k = 0; k < n; ++k) {
                    S += Ag[k] * Wg[idx];
                    idx = (idx == 0) ? n - 1 : idx - 1;
                }
            } else {
                std::size_t idx = i;
                for (std::size_t k = 0; k < n; ++k) {
                    S += Ag[k] * Wg[idx];
                    idx = (idx + 1 < n) ? idx + 1 : 0;
                }
            }
        }
        // u_i = (S / denom) * exp(R - Pc(t_i)); combined in log scale so a
        // large oscillation of Re Pc saturates instead of overflowing.
        const LogComplex res = LogComplex::from_complex(S / denom) *
                               LogComplex::exp_of(Cplx(R, 0.0) - pc(grid[i]));
        sol.u[i] = res.to_complex();
    }
    sol.residual = residual(sym, sol.u, f);
    return sol;
}

// sup-norm of (d/dt + c) u - f, with d/dt evaluated spectrally.
inline double residual(const ModeSymbol& sym, const CVec& u, const CVec& f) {
    const std::size_t n = u.size();
    if (f.size() != n) throw PreconditionError("residual: grid size mismatch");
    const CVec du = spectral_derivative(u, 1);
    const std::vector<double> grid = uniform_grid(n);
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Cplx c{-sym.nu * sym.b.eval(grid[i]), sym.mu * sym.a.eval(grid[i])};
        r = std::max(r, std::abs(du[i] + c * u[i] - f[i]));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Independent oracle: Fourier-Galerkin linear solve
// ---------------------------------------------------------------------------

namespace detail {

// Fourier coefficient of a real trig polynomial at signed frequency k.
inline Cplx poly_fourier(const TrigPoly& p, long k) {
    if (k == 0) return {p.cos_coeff(0), 0.0};
    const std::size_t a = std::size_t(std::abs(k));
    const double c = p.cos_coeff(a), s = p.sin_coeff(a);
    return (k > 0) ? Cplx(0.5 * c, -0.5 * s) : Cplx(0.5 * c, 0.5 * s);
}

}  // namespace detail

inline ModeSolution solve_mode_oracle(const ModeSymbol& sym, const CVec& f,
                                      SolveOptions opts = {}) {
    const std::size_t n = f.size();
    detail::check_solver_grid(n);
    const Cplx c0 = sym.c0();
    const double dist = dist_to_i_integers(c0);
    if (dist < opts.resonance_tol)
        throw ResonantModeError("mode j=" + std::to_string(sym.j) +
                                " is resonant: dist(c0, iZ) = " + std::to_string(dist));

    const long M = long(n) / 2 - 1;
    const long N = 2 * M + 1;
    const long d = long(std::max(sym.a.degree(), sym.b.degree()));

    const CVec fc = fourier_coeffs(f);
    // The only unrepresentable bin is Nyquist; a resolved RHS must not use it.
    double fmax = 0.0;
    for (const Cplx& v : fc) fmax = std::max(fmax, std::abs(v));
    if (std::abs(fc[n / 2]) > 1e-10 * (1.0 + fmax))
        throw TruncationError("rhs carries Nyquist-frequency mass; refine the grid");

    Eigen::MatrixXcd Amat = Eigen::MatrixXcd::Zero(N, N);
    Eigen::VectorXcd rhs(N);
    for (long r = 0; r < N; ++r) {
        const long mr = r - M;
        rhs(r) = fc[std::size_t((mr + long(n)) % long(n))];
        Amat(r, r) += Cplx(0.0, double(mr));
        for (long k = -d; k <= d; ++k) {
            const long mc = mr - k;
            if (mc < -M || mc > M) continue;
            const Cplx chat = Cplx(-sym.nu, 0.0) * detail::poly_fourier(sym.b, k) +
                              Cplx(0.0, sym.mu) * detail::poly_fourier(sym.a, k);
            Amat(r, mc + M) += chat;
        }
    }

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(Amat);
    const Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    if (piv.minCoeff() <= 1e-14 * std::max(1.0, piv.maxCoeff()))
        throw SingularSystemError("Galerkin system is numerically singular (resonance)");
    const Eigen::VectorXcd uc = lu.solve(rhs);

    // Spectral truncation check: the top 10% of retained frequencies must be
    // negligible relative to the whole coefficient vector.
    const long band = std::max<long>(1, long(0.1 * double(M)));
    double tail2 = 0.0, total2 = 0.0;
    for (long r = 0; r < N; ++r) {
        const double a2 = std::norm(uc(r));
        total2 += a2;
        if (std::abs(r - M) > M - band) tail2 += a2;
    }
    if (total2 > 0.0 && std::sqrt(tail2 / total2) > 1e-10)
        throw TruncationError("solution carries " + std::to_string(std::sqrt(tail2 / total2)) +
                              " relative mass in the top frequency band; refine the grid");

    CVec bins(n, Cplx(0.0, 0.0));
    for (long r = 0; r < N; ++r) {
        const long m = r - M;
        bins[std::size_t((m + long(n)) % long(n))] = uc(r);
    }

    ModeSolution sol;
    sol.j = sym.j;
    sol.branch = (sym.nu * trig_mean(sym.b) <= 0.0) ? Branch::Forward : Branch::Backward;
    sol.theta = theta(c0);
    sol.u = from_fourier_coeffs(std::move(bins));
    sol.residual = residual(sym, sol.u, f);
    return sol;
}

}  // namespace ghlab
