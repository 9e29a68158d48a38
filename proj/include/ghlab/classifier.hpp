#pragma once

// Decision procedure for global hypoellipticity of L = D_t + a(t)P + i b(t)Q.
//
// Every mode reduces to the ordinary operator d/dt + c_j(t) with mean
// c0_j = -nu_j b0 + i mu_j a0, and the decision tree follows the structure of
// the coefficients rather than numerics alone:
//
//   1. eigenvalue weights certified to decay to zero  ->  the dressing is
//      bounded and the verdict rests on how fast the constant-mean
//      multipliers |1 - e^{-2 pi c0_j}| may approach zero;
//   2. b identically zero  ->  the oscillation of a conjugates away exactly
//      and the verdict is the classical resonance-and-approximation
//      criterion on the exact mean a0 against the frequency family mu_j;
//   3. b single-signed (zeros allowed)  ->  globally hypoelliptic: each
//      mode's solution formula is oriented by the sign and the multipliers
//      stay uniformly bounded;
//   4. b sign-changing with certified superlogarithmic weights  ->  not
//      globally hypoelliptic: quasimodes concentrate on a negative arc;
//   5. b sign-changing with certified at-most-logarithmic weights  ->  the
//      dressing is a tempered automorphism, so the verdict equals that of
//      the constant-coefficient operator with means (a0, b0).
//
// Each branch records the certified steps in a trace; whenever a required
// certificate is missing the verdict is Inconclusive with explicit caveats,
// never a guess.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/common.hpp"
#include "ghlab/diophantine.hpp"
#include "ghlab/eigen_data.hpp"
#include "ghlab/normal_form.hpp"
#include "ghlab/operator_model.hpp"
#include "ghlab/sign_analysis.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

enum class Decision { GH, NotGH, Inconclusive };

inline const char* to_string(Decision d) {
    switch (d) {
        case Decision::GH: return "globally-hypoelliptic";
        case Decision::NotGH: return "not-globally-hypoelliptic";
        case Decision::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct Verdict {
    Decision decision = Decision::Inconclusive;
    std::string rule;                // semantic tag of the branch that decided
    std::vector<std::string> trace;  // certified reasoning steps, in order
    std::vector<std::string> caveats;
    SignReport sign;                 // classification of b
    GrowthReport growth;             // classification of the weights nu_j
    std::optional<ResonanceReport> resonance;
    std::optional<DioCertificate> dio;
    std::string mean_text;           // canonical exact form of a0 that was used
};

// The exact value of the time mean of a. Without a textual label the mean is
// the constant Fourier coefficient, a dyadic rational represented exactly; a
// label refines it (e.g. "golden_ratio") and must agree with the coefficient.
inline RealSpec exact_mean_of(const OperatorSpec& op) {
    if (op.a0_exact.empty()) {
        RealSpec r;
        r.kind = RealKind::Rational;
        r.rational = mpq_class(op.a0());
        r.rational.canonicalize();
        return r;
    }
    RealSpec r = RealSpec::parse(op.a0_exact);
    if (std::abs(r.to_double() - op.a0()) > 1e-9)
        throw PreconditionError("exact mean label disagrees with the coefficient mean " +
                                std::to_string(op.a0()));
    return r;
}

namespace detail {

// Constant-coefficient verdict when the real part of every mode mean
// vanishes: globally hypoelliptic iff the resonance set is certified finite
// and the nonresonant distances dist(mu_j a0, Z) admit a certified polynomial
// lower bound. Used by branches 1, 2 and 5 (the latter after reduction).
inline void decide_by_approximation(const RealSpec& a0, const EigenData& eigen, Verdict& v) {
    const std::optional<MuFamily> fam = mu_family_of(eigen);
    if (!fam) {
        v.decision = Decision::Inconclusive;
        v.caveats.push_back(
            "frequencies mu_j carry no exact structure; resonance and approximation "
            "cannot be certified");
        return;
    }
    v.resonance = resonance_set(a0, *fam, long(eigen.jmax()));
    if (v.resonance->infinite_certified) {
        v.decision = Decision::NotGH;
        v.trace.push_back("resonance set certified infinite: " + v.resonance->note);
        return;
    }
    if (!v.resonance->finite_certified) {
        v.decision = Decision::Inconclusive;
        v.caveats.push_back("resonance set not certified beyond the truncation: " +
                            v.resonance->note);
        return;
    }
    v.trace.push_back("resonance set certified finite (" + std::to_string(v.resonance->count) +
                      " modes, each contributing a smooth one-dimensional kernel)");
    v.dio = diophantine_certificate(a0, *fam);
    if (v.dio->decisive && v.dio->non_liouville) {
        v.decision = Decision::GH;
        v.trace.push_back("nonresonant distances certified >= C j^-delta with delta=" +
                          std::to_string(v.dio->delta) + ": " + v.dio->reason);
    } else if (v.dio->decisive && v.dio->liouville) {
        v.decision = Decision::NotGH;
        v.trace.push_back(
            "the mean admits frequency witnesses at every polynomial exponent: " +
            v.dio->reason);
    } else {
        v.decision = Decision::Inconclusive;
        v.caveats.push_back("no diophantine certificate for the mean: " + v.dio->reason);
    }
}

inline std::size_t zero_weight_modes(const EigenData& e) {
    std::size_t n = 0;
    for (const EigenEntry& en : e.entries)
        if (en.nu == 0.0) ++n;
    return n;
}

}  // namespace detail

inline Verdict classify_gh(const OperatorSpec& op) {
    op.eigen.validate();
    Verdict v;
    const RealSpec a0 = exact_mean_of(op);
    v.mean_text = a0.to_text();
    v.sign = sign_analysis(op.b);
    v.growth = growth_class(op.eigen);
    const double b0 = op.b0();

    // Branch 1: weights certified to decay to zero.
    const bool nu_decays = op.eigen.generator_backed &&
                           op.eigen.generator.kind == GeneratorKind::RationalDecay;
    if (nu_decays) {
        v.rule = "eigenvalue-degeneracy-liminf";
        v.trace.push_back(
            "weights nu_j certified to decay like 1/j: the dressing is bounded and the "
            "verdict rests on the decay rate of the constant-mean multipliers");
        if (b0 != 0.0) {
            v.decision = Decision::GH;
            v.trace.push_back(
                "imaginary mean nonzero: |Re c0_j| = nu_j |b0| >= |b0|/j keeps every "
                "multiplier polynomially bounded below, with no resonant mode");
        } else {
            v.trace.push_back(
                "imaginary mean zero: multipliers reduce to the distance of mu_j a0 from "
                "the integers");
            detail::decide_by_approximation(a0, op.eigen, v);
        }
        return v;
    }

    // Branch 2: b vanishes identically.
    if (v.sign.cls == SignClass::IdenticallyZero) {
        v.rule = "imaginary-coefficient-vanishes: resonance-and-approximation criterion";
        v.trace.push_back(
            "imaginary coefficient vanishes identically; the oscillation of the real part "
            "conjugates away by a pure phase, leaving the constant-mean operator");
        detail::decide_by_approximation(a0, op.eigen, v);
        return v;
    }

    if (v.sign.cls == SignClass::Indeterminate) {
        v.rule = "sign-analysis-indeterminate";
        v.decision = Decision::Inconclusive;
        v.caveats.push_back("sign classification of the imaginary coefficient failed: " +
                            v.sign.detail);
        return v;
    }

    // Branch 3: b keeps a single sign (tangential zeros allowed).
    if (v.sign.single_signed()) {
        v.rule = "imaginary-part-single-sign";
        if (op.eigen.generator_backed) {
            v.decision = Decision::GH;
            v.trace.push_back(std::string("imaginary coefficient is ") + to_string(v.sign.cls) +
                              " with nonzero mean b0=" + std::to_string(b0));
            v.trace.push_back(
                "the sign orients every mode's solution formula and the tail weights stay "
                "away from zero, so |1 - e^{-2 pi c0_j}| >= |e^{2 pi nu_j |b0|} - 1| is "
                "uniformly bounded below");
            const std::size_t z = detail::zero_weight_modes(op.eigen);
            if (z > 0)
                v.trace.push_back(std::to_string(z) +
                                  " zero-weight mode(s) contribute smooth kernels only; "
                                  "finitely many such modes do not affect the verdict");
        } else {
            v.decision = Decision::Inconclusive;
            v.caveats.push_back(
                "sampled eigenvalue data cannot certify that the tail weights stay away "
                "from zero, which the single-sign argument requires");
        }
        return v;
    }

    // Branch 4: sign change against certified superlogarithmic weights.
    if (v.growth.cls == GrowthClass::SuperLog && v.growth.certified) {
        v.rule = "sign-change-with-superlog-growth";
        v.decision = Decision::NotGH;
        v.trace.push_back(
            "imaginary coefficient changes sign transversally at t=" +
            std::to_string(v.sign.crossings.front()) + " and the weights grow faster than "
            "logarithmically (certified); slowly decaying quasimodes concentrate on a "
            "negative arc and defeat every Sobolev bound");
        return v;
    }

    // Branch 5: sign change against certified tame weights -> reduce to means.
    if (v.growth.certified &&
        (v.growth.cls == GrowthClass::AtMostLog || v.growth.cls == GrowthClass::Bounded)) {
        v.rule = "reduction-to-constant-coefficients";
        v.trace.push_back(
            "weights grow at most logarithmically (certified): the dressing e^{-P_j} loses "
            "only finitely many derivatives and reduces every mode to its constant mean");
        if (b0 != 0.0) {
            v.decision = Decision::GH;
            v.trace.push_back(
                "imaginary mean nonzero after reduction: tail weights stay away from zero, "
                "so the multipliers are uniformly bounded below");
        } else {
            v.trace.push_back(
                "imaginary mean vanishes after reduction: the verdict is the resonance-and-"
                "approximation criterion for the real mean");
            detail::decide_by_approximation(a0, op.eigen, v);
        }
        return v;
    }

    v.rule = "growth-not-certified";
    v.decision = Decision::Inconclusive;
    v.caveats.push_back(std::string("sign-changing imaginary coefficient with uncertified "
                                    "weight growth (") +
                        to_string(v.growth.cls) + "): " + v.growth.detail);
    return v;
}

// ---------------------------------------------------------------------------
// Families with a separate imaginary coefficient per mode.
// ---------------------------------------------------------------------------

struct GeneralFamily {
    std::vector<TrigPoly> b_modes;  // b_j(t) for j = 1..size
    // Construction-level certificate that the mode amplitudes sup|b_j| grow
    // faster than logarithmically (set by symbolic builders, never by fits).
    bool amplitude_superlog_certified = false;
    std::string construction;
};

inline Verdict classify_gh_general(const GeneralFamily& fam) {
    if (fam.b_modes.empty()) throw PreconditionError("mode family is empty");
    Verdict v;
    std::size_t single = 0, changing = 0, zero = 0;
    for (const TrigPoly& bj : fam.b_modes) {
        const SignReport r = sign_analysis(bj);
        if (r.cls == SignClass::Indeterminate) {
            v.rule = "sign-analysis-indeterminate";
            v.decision = Decision::Inconclusive;
            v.caveats.push_back("per-mode sign classification failed: " + r.detail);
            return v;
        }
        if (r.cls == SignClass::IdenticallyZero)
            ++zero;
        else if (r.cls == SignClass::SignChanging)
            ++changing;
        else
            ++single;
    }
    const std::size_t total = fam.b_modes.size();
    if (single == total) {
        v.rule = "per-mode-sign-stabilization";
        v.decision = Decision::GH;
        v.trace.push_back("every mode coefficient keeps a fixed sign (orientations may "
                          "differ between modes), so each mode's solution formula is "
                          "oriented and its multiplier bounded below");
        v.caveats.push_back("certified for the " + std::to_string(total) +
                            " supplied modes; the family truncation is the statement's scope");
        return v;
    }
    if (changing == total) {
        if (fam.amplitude_superlog_certified) {
            v.rule = "per-mode-sign-change-intervals";
            v.decision = Decision::NotGH;
            v.trace.push_back(
                "every mode coefficient changes sign on intervals and the amplitudes carry "
                "a construction-level superlogarithmic growth certificate; mode-local "
                "quasimodes concentrate on the negative intervals");
            if (!fam.construction.empty()) v.trace.push_back("family: " + fam.construction);
            return v;
        }
        v.rule = "per-mode-sign-change-intervals";
        v.decision = Decision::Inconclusive;
        v.caveats.push_back(
            "all modes change sign but the amplitude growth carries no construction-level "
            "certificate");
        return v;
    }
    v.rule = "mixed-mode-family";
    v.decision = Decision::Inconclusive;
    v.caveats.push_back("mode coefficients mix sign classes (" + std::to_string(single) +
                        " single-signed, " + std::to_string(changing) + " sign-changing, " +
                        std::to_string(zero) +
                        " vanishing); no single family rule applies");
    return v;
}

}  // namespace ghlab
