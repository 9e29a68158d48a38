#pragma once

// Witness constructions for negative verdicts, and their verification.
//
// A witness is a sequence of mode functions u_j with sup|u_j| = 1 whose
// right-hand sides f_j = L_j u_j decay faster than any power of the mode
// index: summing u_j e^{i j x} then produces a distribution that is not
// smooth although its image under the operator is. Three constructions:
//
//   * sign-change concentration: with c_j = -nu_j b + i mu_j a and b changing
//     sign, the homogeneous solution e^{nu_j B(t)} (B' = b) peaks sharply at
//     a local maximum t* of the primitive. A smooth cutoff equal to 1 near t*
//     and supported inside the surrounding window leaves f_j = -i chi' e^{...}
//     living only where the primitive has dropped by a certified margin c*,
//     so sup|f_j| <= sup|chi'| e^{-nu_j c*}.
//   * resonant kernels: modes with c0_j in iZ carry exact periodic kernel
//     elements e^{nu_j Btilde - i mu_j Atilde - i k t}; f_j vanishes
//     identically.
//   * frequency pairs: when integers tau_k sit within d_k = |mu_{j_k} a0 -
//     tau_k| of the scaled mean, the dressed exponential with twist tau_k
//     solves the mode equation up to |f_j| = d_k exactly.
//
// All u and f are evaluated from closed forms (the cutoff uses the analytic
// smooth step e^{-1/x}/(e^{-1/x} + e^{-1/(1-x)}), no quadrature), so the
// verification below can measure the mode ODE residual spectrally and check
// the decay profile of sup|f_j| without trusting the construction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/classifier.hpp"
#include "ghlab/common.hpp"
#include "ghlab/decay.hpp"
#include "ghlab/diophantine.hpp"
#include "ghlab/eigen_data.hpp"
#include "ghlab/fft.hpp"
#include "ghlab/normal_form.hpp"
#include "ghlab/operator_model.hpp"
#include "ghlab/sign_analysis.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

// ---------------------------------------------------------------------------
// Concentration frame around a transversal + -> - sign change
// ---------------------------------------------------------------------------

struct ChangeSignFrame {
    double t_star = 0.0;      // local maximum of the primitive B (b crosses + -> -)
    double support_lo = 0.0;  // cutoff vanishes outside [support_lo, support_hi]
    double support_hi = 0.0;  //   (window endpoints are the adjacent - -> + crossings)
    double plateau_lo = 0.0;  // cutoff identically 1 on [plateau_lo, plateau_hi]
    double plateau_hi = 0.0;
    double depth_left = 0.0;   // primitive drop from t_star to each window end
    double depth_right = 0.0;
    double margin = 0.0;  // certified drop of B below B(t_star) on both transition zones
};

namespace detail {

// Monotone bisection for B(t) = target on [lo, hi] (B nondecreasing there).
template <typename F>
inline double bisect_increasing(F&& B, double lo, double hi, double target) {
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (B(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace detail

inline ChangeSignFrame change_sign_frame(const TrigPoly& b) {
    const SignReport sr = sign_analysis(b);
    if (sr.cls != SignClass::SignChanging)
        throw NotSignChangingError(std::string("coefficient does not change sign (") +
                                   to_string(sr.cls) + ")");
    const TrigPoly db = b.derivative();
    std::vector<double> down, up;
    for (double t : sr.crossings) (db.eval(t) < 0.0 ? down : up).push_back(t);
    if (down.empty() || up.empty())
        throw DegenerateExtremumError("crossings could not be oriented");

    const PrimitiveFn B = trig_primitive(b);
    ChangeSignFrame best;
    double best_min_depth = -1.0;
    for (double ts : down) {
        // adjacent - -> + crossings around ts, lifted to the real line
        double prev = -std::numeric_limits<double>::infinity();
        double next = std::numeric_limits<double>::infinity();
        for (double u : up) {
            for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
                const double s = u + shift;
                if (s <= ts && s > prev) prev = s;
                if (s >= ts && s < next) next = s;
            }
        }
        const double dl = B.value(ts) - B.value(prev);
        const double dr = B.value(ts) - B.value(next);
        const double dmin = std::min(dl, dr);
        if (dmin > best_min_depth) {
            best_min_depth = dmin;
            best.t_star = ts;
            best.support_lo = prev;
            best.support_hi = next;
            best.depth_left = dl;
            best.depth_right = dr;
        }
    }
    double bscale = 0.0;
    for (double v : {B.periodic.eval(0.0), B.periodic.eval(kPi / 2), B.periodic.eval(kPi),
                     B.periodic.eval(3 * kPi / 2)})
        bscale = std::max(bscale, std::abs(v));
    if (!(best_min_depth > 1e-9 * std::max(1.0, bscale)))
        throw DegenerateExtremumError(
            "the sign change encloses too little primitive depth to concentrate a witness");

    // Transition zones sit at the bottom 15% of each monotone arc of B, so
    // the drop below B(t_star) on them is at least 85% of the side depth.
    const auto Bv = [&](double t) { return B.value(t); };
    best.plateau_lo = detail::bisect_increasing(Bv, best.support_lo, best.t_star,
                                                Bv(best.support_lo) + 0.15 * best.depth_left);
    best.plateau_hi = detail::bisect_increasing(
        [&](double t) { return -B.value(t); }, best.t_star, best.support_hi,
        -Bv(best.support_hi) - 0.15 * best.depth_right);
    best.margin = 0.85 * std::min(best.depth_left, best.depth_right);
    return best;
}

// ---------------------------------------------------------------------------
// Analytic C-infinity cutoff
// ---------------------------------------------------------------------------

namespace detail {

inline double ramp(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// 0 for x <= 0, 1 for x >= 1, strictly increasing in between; all derivatives
// vanish at both ends.
inline double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double f = ramp(x), g = ramp(1.0 - x);
    return f / (f + g);
}

inline double smooth_step_deriv(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double f = ramp(x), g = ramp(1.0 - x);
    const double s = f + g;
    return f * g * (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x))) / (s * s);
}

struct Cutoff {
    ChangeSignFrame fr;
    double value(double s) const {
        if (s <= fr.support_lo || s >= fr.support_hi) return 0.0;
        if (s < fr.plateau_lo)
            return smooth_step((s - fr.support_lo) / (fr.plateau_lo - fr.support_lo));
        if (s > fr.plateau_hi)
            return smooth_step((fr.support_hi - s) / (fr.support_hi - fr.plateau_hi));
        return 1.0;
    }
    double deriv(double s) const {
        if (s <= fr.support_lo || s >= fr.support_hi) return 0.0;
        if (s < fr.plateau_lo) {
            const double w = fr.plateau_lo - fr.support_lo;
            return smooth_step_deriv((s - fr.support_lo) / w) / w;
        }
        if (s > fr.plateau_hi) {
            const double w = fr.support_hi - fr.plateau_hi;
            return -smooth_step_deriv((fr.support_hi - s) / w) / w;
        }
        return 0.0;
    }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Witness container
// ---------------------------------------------------------------------------

struct Witness {
    std::string kind;          // semantic construction tag
    std::vector<long> modes;   // mode indices j, strictly increasing
    std::size_t grid = 0;      // power-of-two sample count
    std::vector<CVec> u;       // u_j on the grid, sup-normalized to 1
    std::vector<CVec> f;       // f_j = L_j u_j on the grid (operator form)
    std::vector<CVec> c_grid;  // c_j(t) on the grid, for independent verification
    std::vector<double> u_sup;  // analytic sup (includes the off-grid peak)
    std::vector<double> f_sup;
    // Certified per-mode bound log sup|f_j| <= cert_log_bound[m], exact from
    // the frame geometry (concentration constructions only).
    std::vector<double> cert_log_bound;
    // True when the margin sequence -cert_log_bound is symbolically certified
    // to outgrow every multiple of log j (superlogarithmic weights, or a
    // family whose amplitudes grow that fast by construction). Without this,
    // the certified bounds alone cannot separate rapid decay from merely
    // polynomial decay on a finite sample.
    bool margin_superlog_certified = false;
    std::optional<ChangeSignFrame> frame;
    std::vector<std::string> notes;
};

// log of the exact bound sup|f| <= sup|chi'| e^{-nu * (0.85 depth)} taken over
// both transition zones (sup|chi'| = 2/width for the analytic smooth step).
inline double concentration_log_bound(const ChangeSignFrame& fr, double nu) {
    const double wr = fr.plateau_lo - fr.support_lo;
    const double wf = fr.support_hi - fr.plateau_hi;
    return std::max(std::log(2.0 / wr) - 0.85 * fr.depth_left * nu,
                    std::log(2.0 / wf) - 0.85 * fr.depth_right * nu);
}

namespace detail {

inline void check_witness_grid(std::size_t n) {
    if (n < 64 || !is_pow2(n)) throw PreconditionError("witness grid must be a power of two >= 64");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

inline Witness build_witness_signchange(const OperatorSpec& op, const std::vector<long>& modes,
                                        std::size_t grid) {
    detail::check_witness_grid(grid);
    if (modes.empty()) throw PreconditionError("no modes selected for the witness");
    Witness w;
    w.kind = "sign-change-concentration";
    w.grid = grid;
    w.frame = change_sign_frame(op.b);
    const GrowthReport gr = growth_class(op.eigen);
    w.margin_superlog_certified = gr.certified && gr.cls == GrowthClass::SuperLog;
    if (!w.margin_superlog_certified)
        w.notes.push_back("weight growth is not certified superlogarithmic (" +
                          std::string(to_string(gr.cls)) +
                          "); the concentration margins may not defeat polynomial weights");
    const detail::Cutoff chi{*w.frame};
    const PrimitiveFn B = trig_primitive(op.b);
    const PrimitiveFn A = trig_primitive(op.a);
    const double Bs = B.value(w.frame->t_star);
    const double As = A.value(w.frame->t_star);
    const std::vector<double> ts = uniform_grid(grid);

    for (long j : modes) {
        const EigenEntry& en = op.eigen.at(std::size_t(j));
        CVec uj(grid), fj(grid), cj(grid);
        for (std::size_t i = 0; i < grid; ++i) {
            // lift the grid point into [support_lo, support_lo + 2pi)
            const double s =
                w.frame->support_lo +
                std::fmod(ts[i] - w.frame->support_lo + kTwoPi, kTwoPi);
            const double amp = en.nu * (B.value(s) - Bs);
            const double phase = -en.mu * (A.value(s) - As);
            const Cplx e = std::exp(Cplx(amp, phase));
            uj[i] = chi.value(s) * e;
            fj[i] = Cplx(0.0, -1.0) * chi.deriv(s) * e;
            cj[i] = Cplx(-en.nu * op.b.eval(ts[i]), en.mu * op.a.eval(ts[i]));
        }
        w.u.push_back(std::move(uj));
        w.f.push_back(std::move(fj));
        w.c_grid.push_back(std::move(cj));
        // the peak value chi(t*) e^0 = 1 is attained off-grid
        w.u_sup.push_back(std::max(sup_norm(w.u.back()), 1.0));
        w.f_sup.push_back(sup_norm(w.f.back()));
        w.cert_log_bound.push_back(concentration_log_bound(*w.frame, en.nu));
        w.modes.push_back(j);
    }
    w.notes.push_back("certified concentration margin " + std::to_string(w.frame->margin) +
                      " at t*=" + std::to_string(w.frame->t_star));
    return w;
}

namespace detail {

// Dressed kernel-type mode e^{nu Btilde - i mu Atilde - i tau t}, normalized
// to unit sup, with its exact defect f = (mu a0 - tau) u (operator form).
inline void kernel_mode(const OperatorSpec& op, const EigenEntry& en, long tau,
                        double defect_abs, std::size_t grid, Witness& w) {
    const TrigPoly Bt = trig_primitive(op.b).periodic;
    const TrigPoly At = trig_primitive(op.a).periodic;
    const std::vector<double> ts = uniform_grid(grid);
    double amp_max = -std::numeric_limits<double>::infinity();
    for (double t : ts) amp_max = std::max(amp_max, en.nu * Bt.eval(t));
    const double approx = en.mu * op.a0() - double(tau);
    const double defect = std::copysign(defect_abs, approx == 0.0 ? 1.0 : approx);

    CVec uj(grid), fj(grid), cj(grid);
    for (std::size_t i = 0; i < grid; ++i) {
        const double t = ts[i];
        const double amp = en.nu * Bt.eval(t) - amp_max;
        const double phase = -en.mu * At.eval(t) - double(tau) * t;
        uj[i] = std::exp(Cplx(amp, phase));
        fj[i] = defect * uj[i];
        cj[i] = Cplx(-en.nu * op.b.eval(t), en.mu * op.a.eval(t));
    }
    w.u.push_back(std::move(uj));
    w.f.push_back(std::move(fj));
    w.c_grid.push_back(std::move(cj));
    w.u_sup.push_back(1.0);  // amp attains 0 at the maximizer of Btilde
    w.f_sup.push_back(defect_abs);
}

}  // namespace detail

inline Witness build_witness_resonant(const OperatorSpec& op, const std::vector<long>& modes,
                                      std::size_t grid) {
    detail::check_witness_grid(grid);
    if (modes.empty()) throw PreconditionError("no resonant modes supplied");
    Witness w;
    w.kind = "resonant-kernel-sequence";
    w.grid = grid;
    const double b0 = op.b0();
    for (long j : modes) {
        const EigenEntry& en = op.eigen.at(std::size_t(j));
        if (en.nu * b0 != 0.0)
            throw PreconditionError("mode j=" + std::to_string(j) +
                                    " has nonzero real mean and cannot be resonant");
        const double y = en.mu * op.a0();
        const long tau = std::lround(y);
        if (std::abs(y - double(tau)) > 1e-9)
            throw PreconditionError("mode j=" + std::to_string(j) +
                                    " is not resonant: dist(mu a0, Z) = " +
                                    std::to_string(std::abs(y - double(tau))));
        detail::kernel_mode(op, en, tau, 0.0, grid, w);
        w.modes.push_back(j);
    }
    w.notes.push_back("each mode is an exact periodic kernel element; f vanishes identically");
    return w;
}

inline Witness build_witness_liouville(const OperatorSpec& op, const LiouvilleWitnessSeq& seq,
                                       std::size_t grid) {
    detail::check_witness_grid(grid);
    if (seq.pairs.empty()) throw PreconditionError("empty frequency-pair sequence");
    Witness w;
    w.kind = "liouville-pair-sequence";
    w.grid = grid;
    const double b0 = op.b0();
    for (const LiouvillePair& p : seq.pairs) {
        if (p.j > long(op.eigen.jmax()))
            throw PreconditionError("pair index j=" + std::to_string(p.j) +
                                    " lies beyond the eigensequence");
        const EigenEntry& en = op.eigen.at(std::size_t(p.j));
        if (en.nu * b0 != 0.0)
            throw PreconditionError("pair construction requires a vanishing real mean");
        detail::kernel_mode(op, en, p.tau, p.dist, grid, w);
        w.modes.push_back(p.j);
    }
    w.notes.push_back("defect of pair k equals the certified distance d_k exactly");
    return w;
}

// The canonical sign-change-intervals family: mode j carries the coefficient
// b_j(t) = j log^2(2+j) cos(jt), whose amplitude outgrows every uniform
// logarithmic envelope (the violation that makes the construction possible).
inline GeneralFamily cspil_family(std::size_t mode_count) {
    if (mode_count < 1) throw PreconditionError("family needs at least one mode");
    GeneralFamily fam;
    for (std::size_t j = 1; j <= mode_count; ++j) {
        const double amp = double(j) * std::pow(std::log(2.0 + double(j)), 2.0);
        std::vector<double> c(j + 1, 0.0), s(j + 1, 0.0);
        c[j] = amp;
        fam.b_modes.push_back(TrigPoly(std::move(c), std::move(s)));
    }
    fam.amplitude_superlog_certified = true;
    fam.construction = "mode j carries amplitude j log^2(2+j) on frequency j";
    return fam;
}

inline Witness build_witness_cspil(const GeneralFamily& fam, std::size_t grid) {
    detail::check_witness_grid(grid);
    if (fam.b_modes.empty()) throw PreconditionError("mode family is empty");
    Witness w;
    w.kind = "per-mode-sign-change-family";
    w.grid = grid;
    const std::vector<double> ts = uniform_grid(grid);
    for (std::size_t m = 0; m < fam.b_modes.size(); ++m) {
        const TrigPoly& bj = fam.b_modes[m];
        const ChangeSignFrame fr = change_sign_frame(bj);
        const detail::Cutoff chi{fr};
        const PrimitiveFn B = trig_primitive(bj);
        const double Bs = B.value(fr.t_star);
        CVec uj(grid), fj(grid), cj(grid);
        for (std::size_t i = 0; i < grid; ++i) {
            const double s =
                fr.support_lo + std::fmod(ts[i] - fr.support_lo + kTwoPi, kTwoPi);
            const double e = std::exp(B.value(s) - Bs);
            uj[i] = chi.value(s) * e;
            fj[i] = Cplx(0.0, -1.0) * chi.deriv(s) * e;
            cj[i] = Cplx(-bj.eval(ts[i]), 0.0);
        }
        w.u.push_back(std::move(uj));
        w.f.push_back(std::move(fj));
        w.c_grid.push_back(std::move(cj));
        w.u_sup.push_back(std::max(sup_norm(w.u.back()), 1.0));
        w.f_sup.push_back(sup_norm(w.f.back()));
        w.cert_log_bound.push_back(concentration_log_bound(fr, 1.0));
        w.modes.push_back(long(m + 1));
    }
    w.margin_superlog_certified = fam.amplitude_superlog_certified;
    w.notes.push_back(
        "family amplitudes exceed every uniform logarithmic envelope; the witness exists "
        "exactly because of that violation");
    return w;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct WitnessCheck {
    bool unit_norms = false;     // every sup|u_j| == 1 within 1e-12
    std::string f_certificate;   // identically-zero | rapid-decay-profile | pair-exponents
    bool f_ok = false;
    DecayClass f_class;          // populated on the profile route
    std::vector<double> exponents;  // pair route: e_k = -log sup|f_k| / log j_k
    double max_residual = 0.0;   // spectral mode-ODE residual over resolvable modes
    std::size_t residual_modes = 0;
    bool residual_ok = false;
    std::vector<std::string> notes;
    bool passed = false;
};

inline WitnessCheck verify_witness(const Witness& w) {
    if (w.modes.empty() || w.u.size() != w.modes.size() || w.f.size() != w.modes.size() ||
        w.c_grid.size() != w.modes.size())
        throw PreconditionError("witness arrays are inconsistent");
    WitnessCheck chk;

    chk.unit_norms = true;
    for (double s : w.u_sup)
        if (std::abs(s - 1.0) > 1e-12) chk.unit_norms = false;

    // (a) the right-hand sides must be negligible in a certified sense
    bool all_zero = true;
    for (double s : w.f_sup)
        if (s != 0.0) all_zero = false;
    if (all_zero) {
        chk.f_certificate = "identically-zero";
        chk.f_ok = true;
    } else if (!w.cert_log_bound.empty() && w.margin_superlog_certified) {
        // Concentration constructions carry an exact per-mode bound from the
        // frame geometry, and the builder certified symbolically that the
        // margins outgrow every multiple of log j. (The symbolic part is
        // essential: a finite sample of exponents that merely *increase*
        // toward a finite limit -- which is what tame weights produce --
        // cannot be told apart from genuine unbounded growth numerically.)
        // Verify the measured sups against the bounds, and require the
        // normalized exponents -bound/log(1+j) to grow strictly along the
        // tail half as a consistency check on the certificate.
        chk.f_certificate = "certified-margins";
        chk.f_ok = w.cert_log_bound.size() == w.modes.size();
        for (std::size_t m = 0; m < w.modes.size() && chk.f_ok; ++m) {
            if (w.f_sup[m] > 0.0 && std::log(w.f_sup[m]) > w.cert_log_bound[m] + 1e-6) {
                chk.f_ok = false;
                chk.notes.push_back("measured sup|f| exceeds the certified bound at j=" +
                                    std::to_string(w.modes[m]));
            }
            chk.exponents.push_back(-w.cert_log_bound[m] /
                                    std::log(1.0 + double(w.modes[m])));
        }
        if (chk.f_ok) {
            // Consecutive modes can share a weight (paired +-frequencies give
            // equal nu), so equal certified bounds are collapsed first, each
            // run represented by its largest index -- the weakest normalizer.
            // The growth requirement then applies between distinct weights.
            std::vector<long> run_j;
            std::vector<double> run_e;
            for (std::size_t m = 0; m < w.modes.size(); ++m) {
                if (!run_j.empty() && w.cert_log_bound[m] == w.cert_log_bound[m - 1]) {
                    run_j.back() = w.modes[m];
                    run_e.back() = chk.exponents[m];
                } else {
                    run_j.push_back(w.modes[m]);
                    run_e.push_back(chk.exponents[m]);
                }
            }
            if (run_j.size() < 4) {
                chk.f_ok = false;
                chk.notes.push_back("too few distinct weights to exhibit exponent growth");
            }
            for (std::size_t m = std::max<std::size_t>(run_j.size() / 2, 1);
                 m < run_j.size(); ++m)
                if (!(run_e[m] > run_e[m - 1])) {
                    chk.f_ok = false;
                    chk.notes.push_back(
                        "certified exponents stop growing at j=" + std::to_string(run_j[m]) +
                        "; the margins do not defeat polynomial weights");
                    break;
                }
        }
    } else if (w.modes.size() >= 24) {
        if (!w.cert_log_bound.empty())
            chk.notes.push_back(
                "per-mode bounds present but their growth is not certified; judging the "
                "measured profile instead");
        SeriesProfile prof;
        prof.j = w.modes;
        for (double s : w.f_sup)
            prof.log_sup.push_back(s == 0.0 ? -std::numeric_limits<double>::infinity()
                                            : std::log(s));
        chk.f_class = classify_sequence(prof);
        chk.f_certificate = "rapid-decay-profile";
        chk.f_ok = chk.f_class.kind == DecayKind::RapidDecay;
        if (!chk.f_ok)
            chk.notes.push_back("decay classification refused: " + chk.f_class.detail);
    } else {
        // Too few points for a profile fit; require per-pair exponents that
        // grow along the sequence (e_k >= k/2), which a handful of honest
        // samples *can* certify.
        if (!w.cert_log_bound.empty())
            chk.notes.push_back(
                "per-mode bounds present but their growth is not certified; judging the "
                "measured defects instead");
        chk.f_certificate = "pair-exponents";
        chk.f_ok = true;
        double prev = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < w.modes.size(); ++k) {
            const double jk = double(w.modes[k]);
            const double e = w.f_sup[k] == 0.0 ? std::numeric_limits<double>::infinity()
                                               : -std::log(w.f_sup[k]) / std::log(jk);
            chk.exponents.push_back(e);
            if (!(e >= 0.5 * double(k + 1)) || !(e > prev)) chk.f_ok = false;
            prev = e;
        }
        chk.notes.push_back(
            "finitely many pairs cannot certify a full rapid-decay profile; the growing "
            "per-pair exponents are the certificate");
    }

    // (b) the pairs (u_j, f_j) must actually solve the mode equations:
    // spectral residual sup | u' + c u - i f | for every mode the grid resolves
    for (std::size_t m = 0; m < w.modes.size(); ++m) {
        const CVec& u = w.u[m];
        const CVec coeffs = fourier_coeffs(u);
        double tail2 = 0.0, total2 = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            const double a2 = std::norm(coeffs[k]);
            total2 += a2;
            if (std::abs(fft_freq(k, coeffs.size())) > long(coeffs.size() / 4)) tail2 += a2;
        }
        if (total2 == 0.0 || tail2 > 1e-20 * total2) {
            chk.notes.push_back("mode j=" + std::to_string(w.modes[m]) +
                                " exceeds the grid resolution; residual not measured");
            continue;
        }
        const CVec du = spectral_derivative(u);
        double res = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i)
            res = std::max(res,
                           std::abs(du[i] + w.c_grid[m][i] * u[i] - Cplx(0.0, 1.0) * w.f[m][i]));
        chk.max_residual = std::max(chk.max_residual, res);
        ++chk.residual_modes;
    }
    chk.residual_ok = chk.residual_modes > 0 && chk.max_residual <= 1e-8;
    if (chk.residual_modes == 0)
        chk.notes.push_back("no mode was resolvable on this grid; enlarge it");

    chk.passed = chk.unit_norms && chk.f_ok && chk.residual_ok;
    return chk;
}

}  // namespace ghlab
