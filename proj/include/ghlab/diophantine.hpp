// Exact diophantine layer: resonance sets, approximation-exponent fits, and
// Liouville witness pairs for the time-mean a0 of the real coefficient.
//
// Everything decision-grade here is exact: rational arithmetic through GMP,
// quadratic irrationals through MPFR at certified precision plus classical
// continued-fraction bounds. Doubles appear only as reported values, never as
// the basis of a certificate. The a0 values the laboratory understands:
//
//   rational:p/q            exact rational
//   cf:[a0;a1,a2,...]       finite continued fraction (exact rational)
//   golden_ratio            (1+sqrt 5)/2, non-Liouville with delta = 1
//                           (bounded partial quotients)
//   liouville_constant:d    sum_{k<=d} 10^{-k!}; stands in for the Liouville
//                           constant: resonance follows the represented
//                           irrational (resonant iff mu_j = 0) while the
//                           exact truncation powers pair searches and fits
//   float:x                 inexact; supports diagnostics only, certifies
//                           nothing
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ghlab/common.hpp"
#include "ghlab/eigen_data.hpp"

namespace ghlab {

// ---------------------------------------------------------------------------
// RealSpec: textual exact reals
// ---------------------------------------------------------------------------

enum class RealKind { Rational, ContinuedFraction, GoldenRatio, LiouvilleConstant, Float };

namespace detail {

class MpfrVal {
  public:
    explicit MpfrVal(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
    ~MpfrVal() { mpfr_clear(v_); }
    MpfrVal(const MpfrVal&) = delete;
    MpfrVal& operator=(const MpfrVal&) = delete;
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

  private:
    mpfr_t v_;
};

inline mpq_class liouville_truncation(int depth) {
    if (depth < 1 || depth > 7)
        throw PreconditionError("liouville_constant depth must lie in [1, 7]");
    mpq_class sum(0);
    unsigned long fact = 1;
    for (int k = 1; k <= depth; ++k) {
        fact *= (unsigned long)(k);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fact);
        sum += mpq_class(mpz_class(1), den);
    }
    sum.canonicalize();
    return sum;
}

inline long strict_long(const std::string& tok) {
    std::size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size())
        throw ParseError("trailing characters in integer '" + tok + "'");
    return v;
}

inline mpq_class fold_continued_fraction(const std::vector<long>& cf) {
    if (cf.empty()) throw ParseError("continued fraction needs at least one term");
    for (std::size_t i = 1; i < cf.size(); ++i)
        if (cf[i] < 1) throw ParseError("continued fraction terms after the first must be >= 1");
    mpq_class v(cf.back());
    for (std::size_t i = cf.size() - 1; i-- > 0;) {
        v = mpq_class(1) / v;
        v += cf[i];
    }
    v.canonicalize();
    return v;
}

}  // namespace detail

struct RealSpec {
    RealKind kind = RealKind::Float;
    mpq_class rational;     // value for the three exact-rational kinds
    std::vector<long> cf;   // ContinuedFraction terms
    int depth = 0;          // LiouvilleConstant depth
    double fvalue = 0.0;    // Float payload

    static RealSpec parse(const std::string& text);
    std::string to_text() const;

    bool exact() const { return kind != RealKind::Float; }
    bool rational_valued() const {
        return kind == RealKind::Rational || kind == RealKind::ContinuedFraction ||
               kind == RealKind::LiouvilleConstant;
    }
    bool liouville_by_construction() const { return kind == RealKind::LiouvilleConstant; }
    // Semantically irrational: never resonates against nonzero rational mu.
    bool irrational() const {
        return kind == RealKind::GoldenRatio || kind == RealKind::LiouvilleConstant;
    }
    bool non_liouville_certified() const { return kind == RealKind::GoldenRatio; }

    const mpq_class& to_mpq() const {
        if (!rational_valued())
            throw PreconditionError("RealSpec has no exact rational value");
        return rational;
    }

    void to_mpfr(mpfr_ptr out) const {
        switch (kind) {
            case RealKind::GoldenRatio: {
                mpfr_sqrt_ui(out, 5, MPFR_RNDN);
                mpfr_add_ui(out, out, 1, MPFR_RNDN);
                mpfr_div_ui(out, out, 2, MPFR_RNDN);
                return;
            }
            case RealKind::Float:
                mpfr_set_d(out, fvalue, MPFR_RNDN);
                return;
            default:
                mpfr_set_q(out, rational.get_mpq_t(), MPFR_RNDN);
                return;
        }
    }

    double to_double() const {
        if (kind == RealKind::Float) return fvalue;
        if (kind == RealKind::GoldenRatio) return 0.5 * (1.0 + std::sqrt(5.0));
        return rational.get_d();
    }
};

inline RealSpec RealSpec::parse(const std::string& text) {
    RealSpec r;
    auto starts = [&](const char* p) {
        return text.rfind(p, 0) == 0;
    };
    try {
        if (text == "golden_ratio") {
            r.kind = RealKind::GoldenRatio;
            return r;
        }
        if (starts("rational:")) {
            r.kind = RealKind::Rational;
            const std::string body = text.substr(9);
            if (body.empty()) throw ParseError("empty rational");
            r.rational = mpq_class(body);
            if (r.rational.get_den() == 0) throw ParseError("zero denominator");
            r.rational.canonicalize();
            return r;
        }
        if (starts("cf:[") && text.back() == ']') {
            r.kind = RealKind::ContinuedFraction;
            const std::string body = text.substr(4, text.size() - 5);
            const std::size_t semi = body.find(';');
            if (semi == std::string::npos) throw ParseError("missing ';' after the integer part");
            r.cf.push_back(detail::strict_long(body.substr(0, semi)));
            std::string rest = body.substr(semi + 1);
            std::size_t pos = 0;
            while (pos < rest.size()) {
                std::size_t comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                const std::string tok = rest.substr(pos, comma - pos);
                if (tok.empty()) throw ParseError("empty continued-fraction term");
                r.cf.push_back(detail::strict_long(tok));
                pos = comma + 1;
            }
            r.rational = detail::fold_continued_fraction(r.cf);
            return r;
        }
        if (starts("liouville_constant:")) {
            r.kind = RealKind::LiouvilleConstant;
            r.depth = int(detail::strict_long(text.substr(19)));
            r.rational = detail::liouville_truncation(r.depth);
            return r;
        }
        if (starts("float:")) {
            r.kind = RealKind::Float;
            std::size_t used = 0;
            const std::string body = text.substr(6);
            r.fvalue = std::stod(body, &used);
            if (used != body.size()) throw ParseError("trailing characters after float");
            return r;
        }
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed real value: '" + text + "'");
    } catch (const std::out_of_range&) {
        throw ParseError("real value out of range: '" + text + "'");
    } catch (const std::exception& e) {
        throw ParseError("cannot parse real value '" + text + "': " + e.what());
    }
    throw ParseError("unknown real value form: '" + text +
                     "' (expected rational:, cf:[..], golden_ratio, liouville_constant:, float:)");
}

inline std::string RealSpec::to_text() const {
    switch (kind) {
        case RealKind::GoldenRatio:
            return "golden_ratio";
        case RealKind::Rational:
            return "rational:" + rational.get_str();
        case RealKind::ContinuedFraction: {
            std::string s = "cf:[" + std::to_string(cf[0]) + ";";
            for (std::size_t i = 1; i < cf.size(); ++i) {
                if (i > 1) s += ",";
                s += std::to_string(cf[i]);
            }
            return s + "]";
        }
        case RealKind::LiouvilleConstant:
            return "liouville_constant:" + std::to_string(depth);
        case RealKind::Float: {
            char buf[40];
            std::snprintf(buf, sizeof(buf), "float:%.17g", fvalue);
            return buf;
        }
    }
    throw Error("unreachable");
}

// ---------------------------------------------------------------------------
// Nearest-integer distance
// ---------------------------------------------------------------------------

struct NearestInt {
    double dist = 0.0;
    long long ell = 0;  // the integer with x + ell nearest to zero
};

// Ties round to even (x = 0.5 -> ell = 0), matching IEEE nearbyint.
inline NearestInt nearest_int_dist(double x) {
    const double n = std::nearbyint(x);
    return {std::abs(x - n), (long long)(-n)};
}

// Exact nearest integer of a rational, ties to even.
inline mpz_class nearest_int_exact(const mpq_class& x) {
    mpz_class num(x.get_num()), den(x.get_den());  // den > 0 canonical
    mpz_class f, r;
    mpz_fdiv_qr(f.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    const mpz_class twice_r = 2 * r;
    if (twice_r > den) return f + 1;
    if (twice_r < den) return f;
    return mpz_even_p(f.get_mpz_t()) ? f : f + 1;
}

// ---------------------------------------------------------------------------
// Symbolic mu-families
// ---------------------------------------------------------------------------

struct MuFamily {
    enum class Kind { TorusXi, PowerInt, RationalDecay, ExplicitInt };
    Kind kind = Kind::TorusXi;
    bool include_zero = true;  // TorusXi
    long s = 1;                // PowerInt exponent (>= 1)
    long tau = 1, c = 1;       // RationalDecay parameters
    std::vector<long> ints;    // ExplicitInt values, j = 1..size

    long size_hint() const { return kind == Kind::ExplicitInt ? long(ints.size()) : 0; }

    bool integer_valued() const { return kind != Kind::RationalDecay; }

    mpz_class mu_int(long j) const {
        switch (kind) {
            case Kind::TorusXi:
                return mpz_class(torus_xi(std::size_t(j), include_zero));
            case Kind::PowerInt: {
                mpz_class r;
                mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)(j), (unsigned long)(s));
                return r;
            }
            case Kind::ExplicitInt:
                if (j < 1 || j > long(ints.size()))
                    throw PreconditionError("mu index out of range");
                return mpz_class(ints[std::size_t(j - 1)]);
            case Kind::RationalDecay:
                break;
        }
        throw PreconditionError("mu-family is not integer-valued");
    }

    mpq_class mu_q(long j) const {
        if (integer_valued()) return mpq_class(mu_int(j));
        mpz_class num, den;
        mpz_ui_pow_ui(num.get_mpz_t(), (unsigned long)(c + j), (unsigned long)(tau));
        mpz_ui_pow_ui(den.get_mpz_t(), (unsigned long)(j), (unsigned long)(tau + 1));
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }

    bool mu_is_zero(long j) const {
        if (kind == Kind::TorusXi) return include_zero && j == 1;
        if (kind == Kind::ExplicitInt) return ints[std::size_t(j - 1)] == 0;
        return false;  // PowerInt and RationalDecay are never zero
    }

    // |mu_j| <= growth_C * j^growth_p for all j >= 1 (used by certificates)
    double growth_p() const {
        switch (kind) {
            case Kind::TorusXi:
                return 1.0;
            case Kind::PowerInt:
                return double(s);
            case Kind::RationalDecay:
                return 0.0;  // bounded (tends to zero)
            case Kind::ExplicitInt:
                return 1.0;  // conservative; only used with a fitted C
        }
        return 1.0;
    }
};

// Symbolic mu description of generator-backed eigendata; nullopt for data
// without exact structure.
inline std::optional<MuFamily> mu_family_of(const EigenData& e) {
    if (!e.generator_backed) {
        // explicit data still qualifies when every mu is a small integer
        MuFamily f;
        f.kind = MuFamily::Kind::ExplicitInt;
        for (const EigenEntry& en : e.entries) {
            if (en.mu != std::nearbyint(en.mu) || std::abs(en.mu) > 9.0e15) return std::nullopt;
            f.ints.push_back(long(en.mu));
        }
        return f;
    }
    MuFamily f;
    switch (e.generator.kind) {
        case GeneratorKind::TorusFrequencies:
            f.kind = MuFamily::Kind::TorusXi;
            f.include_zero = true;
            return f;
        case GeneratorKind::LogPower:
            f.kind = MuFamily::Kind::TorusXi;
            f.include_zero = false;
            return f;
        case GeneratorKind::Power:
            if (e.generator.s != std::nearbyint(e.generator.s) || e.generator.s < 1.0)
                return std::nullopt;
            f.kind = MuFamily::Kind::PowerInt;
            f.s = long(e.generator.s);
            return f;
        case GeneratorKind::RationalDecay:
            f.kind = MuFamily::Kind::RationalDecay;
            f.tau = e.generator.tau;
            f.c = e.generator.c;
            return f;
        case GeneratorKind::Explicit:
            return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Exact distances d_j = dist(a0 * mu_j, Z)
// ---------------------------------------------------------------------------

namespace detail {

inline double mu_double(const MuFamily& fam, long j) {
    if (fam.integer_valued()) return fam.mu_int(j).get_d();
    return fam.mu_q(j).get_d();
}

struct DistVal {
    bool resonant = false;  // d_j == 0 exactly
    double d = 0.0;
    double log_d = -std::numeric_limits<double>::infinity();
};

// dist of (p/q) * m over the integers, integer-only fast path. q > 0; GMP's
// mpz_mod keeps r in [0, q) even for negative products. The quotient num/q
// goes through MPFR so tiny distances (denominators like 10^720) keep a
// finite log even when the double value underflows.
inline DistVal dist_rational_int(const mpz_class& p, const mpz_class& q, const mpz_class& m) {
    DistVal out;
    mpz_class r;
    mpz_mul(r.get_mpz_t(), p.get_mpz_t(), m.get_mpz_t());
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), q.get_mpz_t());  // r in [0, q)
    if (r == 0) {
        out.resonant = true;
        return out;
    }
    const mpz_class other = q - r;
    const mpz_class& num = (r <= other) ? r : other;
    MpfrVal t(96), den(96);
    mpfr_set_z(t.get(), num.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.get(), q.get_mpz_t(), MPFR_RNDN);
    mpfr_div(t.get(), t.get(), den.get(), MPFR_RNDN);
    out.d = mpfr_get_d(t.get(), MPFR_RNDN);
    mpfr_log(t.get(), t.get(), MPFR_RNDN);
    out.log_d = mpfr_get_d(t.get(), MPFR_RNDN);
    return out;
}

inline DistVal dist_rational(const mpq_class& a0, const mpq_class& mu) {
    mpq_class x = a0 * mu;
    x.canonicalize();
    return dist_rational_int(mpz_class(x.get_num()), mpz_class(x.get_den()), mpz_class(1));
}

// dist of golden * mu at certified precision (mu exact rational).
inline DistVal dist_golden(const mpq_class& mu, mpfr_prec_t prec = 256) {
    DistVal out;
    if (mu == 0) {
        out.resonant = true;
        return out;
    }
    MpfrVal phi(prec), x(prec), n(prec);
    mpfr_sqrt_ui(phi.get(), 5, MPFR_RNDN);
    mpfr_add_ui(phi.get(), phi.get(), 1, MPFR_RNDN);
    mpfr_div_ui(phi.get(), phi.get(), 2, MPFR_RNDN);
    mpfr_mul_q(x.get(), phi.get(), mu.get_mpq_t(), MPFR_RNDN);
    mpfr_round(n.get(), x.get());
    mpfr_sub(x.get(), x.get(), n.get(), MPFR_RNDN);
    mpfr_abs(x.get(), x.get(), MPFR_RNDN);
    out.d = mpfr_get_d(x.get(), MPFR_RNDN);
    out.log_d = (out.d > 0.0) ? std::log(out.d) : -std::numeric_limits<double>::infinity();
    // phi*mu is irrational, never within 2^-200 of an integer for moderate
    // mu (classical bound dist(m phi, Z) >= 1/(3|m|) for integer m), so the
    // double conversion is decision-grade.
    return out;
}

inline DistVal dist_of(const RealSpec& a0, const MuFamily& fam, long j) {
    if (fam.mu_is_zero(j)) {
        DistVal out;
        out.resonant = true;
        return out;
    }
    switch (a0.kind) {
        case RealKind::GoldenRatio:
            return dist_golden(fam.mu_q(j));
        case RealKind::Float: {
            DistVal out;
            const NearestInt ni = nearest_int_dist(a0.fvalue * mu_double(fam, j));
            out.d = ni.dist;
            out.resonant = (ni.dist == 0.0);
            out.log_d = out.d > 0.0 ? std::log(out.d) : -std::numeric_limits<double>::infinity();
            return out;
        }
        default: {
            const mpq_class& q = a0.to_mpq();
            if (fam.integer_valued())
                return dist_rational_int(mpz_class(q.get_num()), mpz_class(q.get_den()),
                                         fam.mu_int(j));
            return dist_rational(q, fam.mu_q(j));
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Resonance sets
// ---------------------------------------------------------------------------

struct ResonanceReport {
    std::vector<long> indices;  // resonant j found in [1, jmax], capped
    long count = 0;             // total found in range (indices may be capped)
    bool exact = false;         // decided by exact arithmetic
    bool infinite_certified = false;  // symbolic proof the full set is infinite
    bool finite_certified = false;    // symbolic proof the full set is finite
    std::string note;
};

inline ResonanceReport resonance_set(const RealSpec& a0, const MuFamily& fam, long jmax,
                                     std::size_t index_cap = 100000) {
    if (jmax < 1) throw PreconditionError("jmax must be positive");
    ResonanceReport r;
    r.exact = a0.exact();

    // Irrational a0 (golden, or the represented Liouville constant) resonates
    // exactly on the zero set of mu.
    const bool irrational = a0.irrational();
    for (long j = 1; j <= jmax; ++j) {
        bool res;
        if (irrational) {
            res = fam.mu_is_zero(j);
        } else if (a0.exact()) {
            res = detail::dist_of(a0, fam, j).resonant;
        } else {
            const double m = detail::mu_double(fam, j);
            res = nearest_int_dist(a0.fvalue * m).dist < 1e-9;
        }
        if (res) {
            ++r.count;
            if (r.indices.size() < index_cap) r.indices.push_back(j);
        }
    }

    if (irrational) {
        r.finite_certified = true;
        r.note = "irrational mean: resonance equals the zero set of mu";
        if (fam.kind == MuFamily::Kind::TorusXi && fam.include_zero)
            r.note += " (exactly the zero frequency)";
        return r;
    }
    if (!a0.exact()) {
        r.note = "floating mean: near-resonances reported at tolerance 1e-9, nothing certified";
        return r;
    }
    // exact rational a0 = p/q
    const mpq_class& q = a0.to_mpq();
    if (q == 0) {
        r.infinite_certified = true;
        r.note = "zero mean: every mode is resonant";
        return r;
    }
    switch (fam.kind) {
        case MuFamily::Kind::TorusXi:
            r.infinite_certified = true;
            r.note = "rational mean against all integer frequencies: infinitely many multiples "
                     "of the denominator";
            break;
        case MuFamily::Kind::PowerInt:
            r.infinite_certified = true;
            r.note = "rational mean against j^s: j in denominator multiples resonate";
            break;
        case MuFamily::Kind::RationalDecay:
            r.finite_certified = true;
            r.note = "mu tends to zero without vanishing: |a0 mu_j| < 1 eventually";
            break;
        case MuFamily::Kind::ExplicitInt:
            r.note = "explicit integer data: exact within range, no statement beyond it";
            break;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Approximation-exponent fit (lower envelope in log-log scale)
// ---------------------------------------------------------------------------

struct LiouvilleFit {
    double delta_hat = 0.0;      // fitted exponent: d_j >= C_hat j^{-delta_hat}
    double C_hat = 0.0;
    long violations = 0;         // indices violating the fitted bound (0 by construction)
    bool fit_failed = false;     // exponent grows across scales => no stable delta
    bool low_evidence = false;   // too few envelope points to trust the fit
    long envelope_count = 0;
    std::vector<long> envelope_j;      // the running-minimum indices
    std::vector<double> envelope_logd;
    std::string note;
};

// d_j against the lower envelope: strict running minima in log-log scale are
// the best-approximation indices (for quadratic irrationals, exactly the
// convergent denominators). delta_hat is minus the least-squares slope
// through envelope points with j >= 16; C_hat the envelope-calibrated
// constant (the global minimum of d_j j^{delta_hat} is always attained on the
// envelope, so violations == 0 structurally). fit_failed flags a growing
// local exponent across envelope scales -- the Liouville signature.
inline LiouvilleFit liouville_exponent_fit(const RealSpec& a0, const MuFamily& fam, long jmax) {
    if (jmax < 4) throw PreconditionError("jmax too small for an exponent fit");
    LiouvilleFit out;
    double cur_min_log = std::numeric_limits<double>::infinity();
    for (long j = 1; j <= jmax; ++j) {
        const detail::DistVal dv = detail::dist_of(a0, fam, j);
        if (dv.resonant) continue;  // resonant indices are excluded from the fit
        if (dv.log_d < cur_min_log) {
            cur_min_log = dv.log_d;
            out.envelope_j.push_back(j);
            out.envelope_logd.push_back(dv.log_d);
        }
    }
    out.envelope_count = long(out.envelope_j.size());
    if (out.envelope_j.empty()) {
        out.note = "every index resonant: no distances to fit";
        out.low_evidence = true;
        return out;
    }

    // least squares through envelope points with j >= 16
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long npts = 0;
    for (std::size_t i = 0; i < out.envelope_j.size(); ++i) {
        if (out.envelope_j[i] < 16) continue;
        const double x = std::log(double(out.envelope_j[i]));
        const double y = out.envelope_logd[i];
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++npts;
    }
    if (npts >= 2 && (sxx - sx * sx / double(npts)) > 0.0) {
        const double slope =
            (sxy - sx * sy / double(npts)) / (sxx - sx * sx / double(npts));
        out.delta_hat = std::max(0.0, -slope);
    } else {
        // fall back to the two outermost envelope points
        out.low_evidence = true;
        const std::size_t nE = out.envelope_j.size();
        if (nE >= 2) {
            const double dx = std::log(double(out.envelope_j[nE - 1])) -
                              std::log(double(out.envelope_j[0]));
            if (dx > 0.0)
                out.delta_hat =
                    std::max(0.0, -(out.envelope_logd[nE - 1] - out.envelope_logd[0]) / dx);
        }
    }
    if (npts < 3) out.low_evidence = true;

    // envelope-calibrated constant; by the running-minimum structure the
    // global minimum of d_j j^delta is attained at an envelope point
    double cmin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.envelope_j.size(); ++i)
        cmin = std::min(cmin, std::exp(out.envelope_logd[i] +
                                       out.delta_hat * std::log(double(out.envelope_j[i]))));
    out.C_hat = cmin;
    out.violations = 0;

    // stability of the local exponent across envelope scales
    double smin = std::numeric_limits<double>::infinity();
    double smax = -std::numeric_limits<double>::infinity();
    int nslopes = 0;
    for (std::size_t i = 1; i < out.envelope_j.size(); ++i) {
        if (out.envelope_j[i - 1] < 8) continue;
        const double dx =
            std::log(double(out.envelope_j[i])) - std::log(double(out.envelope_j[i - 1]));
        if (dx <= 0.0) continue;
        const double local = -(out.envelope_logd[i] - out.envelope_logd[i - 1]) / dx;
        smin = std::min(smin, local);
        smax = std::max(smax, local);
        ++nslopes;
    }
    if (nslopes >= 2 && smax - smin > 0.5) {
        out.fit_failed = true;
        out.note = "local approximation exponent grows across scales";
    }
    return out;
}

// ---------------------------------------------------------------------------
// Liouville witness pairs
// ---------------------------------------------------------------------------

struct LiouvillePair {
    long j = 0;
    long long tau = 0;  // nearest integer to a0 * mu_j
    double dist = 0.0;  // |a0 mu_j - tau| < j^{-k/2}
    int k = 0;
};

struct LiouvilleWitnessSeq {
    std::vector<LiouvillePair> pairs;
    int achieved = 0;        // deepest k satisfied
    bool found = false;      // achieved == requested depth
    int failed_at = 0;       // the k whose search exhausted the budget (0 if none)
    std::string note;
};

// Greedy search over strictly increasing j >= 10 for pairs with
// dist(a0 mu_j) < j^{-k/2}, k = 1..depth. Comparisons are exact for exact
// kinds (rational: integer arithmetic; golden: certified classical bound plus
// MPFR confirmation). Resonant indices are excluded: a vanishing distance
// belongs to the resonance witness, not here.
inline LiouvilleWitnessSeq liouville_witness_sequence(const RealSpec& a0, const MuFamily& fam,
                                                      int depth, long budget,
                                                      long j_floor = 10) {
    if (depth < 1 || depth > 16) throw PreconditionError("depth must lie in [1, 16]");
    if (budget < j_floor) throw PreconditionError("budget below the search floor");
    LiouvilleWitnessSeq out;
    long j = std::max<long>(1, j_floor);
    const long explicit_cap =
        fam.kind == MuFamily::Kind::ExplicitInt ? fam.size_hint() : budget;
    const long jcap = std::min(budget, explicit_cap);

    for (int k = 1; k <= depth; ++k) {
        bool found_k = false;
        for (; j <= jcap; ++j) {
            // certified shortcut for the golden ratio: dist >= 1/(3|mu|)
            if (a0.kind == RealKind::GoldenRatio && fam.integer_valued()) {
                const double am = std::abs(detail::mu_double(fam, j));
                if (am == 0.0) continue;  // resonant
                if (1.0 / (3.0 * am) >= std::pow(double(j), -0.5 * double(k))) continue;
            }
            const detail::DistVal dv = detail::dist_of(a0, fam, j);
            if (dv.resonant) continue;
            const double thresh = -0.5 * double(k) * std::log(double(j));
            if (!(dv.log_d < thresh + 1e-2)) continue;  // cheap pre-filter
            // exact confirmation d^2 * j^k < 1 where possible
            bool ok;
            long long tau_val = 0;
            if (a0.rational_valued()) {
                mpq_class x = fam.mu_q(j) * a0.to_mpq();
                x.canonicalize();
                mpz_class num(x.get_num()), den(x.get_den());
                mpz_class r;
                mpz_mod(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                mpz_class other = den - r;
                if (other < r) r = other;
                // (r/den)^2 * j^k < 1  <=>  r^2 * j^k < den^2
                mpz_class lhs = r * r, rhs = den * den;
                mpz_class jk;
                mpz_ui_pow_ui(jk.get_mpz_t(), (unsigned long)(j), (unsigned long)(k));
                lhs *= jk;
                ok = (lhs < rhs);
                if (ok) {
                    const mpz_class n = nearest_int_exact(x);
                    if (!n.fits_slong_p())
                        throw PreconditionError("witness integer exceeds machine range");
                    tau_val = n.get_si();
                }
            } else {
                ok = (dv.log_d < thresh);
                if (ok) tau_val = std::llround(a0.to_double() * detail::mu_double(fam, j));
            }
            if (ok) {
                LiouvillePair p;
                p.j = j;
                p.k = k;
                p.dist = dv.d;
                p.tau = tau_val;
                out.pairs.push_back(p);
                out.achieved = k;
                found_k = true;
                ++j;
                break;
            }
        }
        if (!found_k) {
            out.failed_at = k;
            out.note = "budget exhausted while searching depth " + std::to_string(k);
            break;
        }
    }
    out.found = (out.achieved == depth);
    if (out.found) out.note = "all requested depths satisfied";
    return out;
}

// ---------------------------------------------------------------------------
// Certificates for the classifier
// ---------------------------------------------------------------------------

struct DioCertificate {
    bool non_liouville = false;  // certified d_j >= C j^{-delta} for all j
    double delta = 0.0;
    double C = 0.0;
    bool liouville = false;      // certified Liouville (witness pairs exist at all depths)
    bool decisive = false;       // either certificate present
    std::string reason;
};

inline DioCertificate diophantine_certificate(const RealSpec& a0, const MuFamily& fam) {
    DioCertificate c;
    const bool a0_nonzero =
        a0.kind == RealKind::GoldenRatio || (a0.exact() && a0.to_mpq() != 0);

    if (fam.kind == MuFamily::Kind::RationalDecay && a0.exact() && a0_nonzero) {
        // mu_j lies in [1/j, (1+c)^tau / j]; once |a0| mu_j < 1/2 the distance
        // IS |a0| mu_j >= |a0|/j, and the finitely many earlier nonresonant
        // modes are checked exactly. The diophantine quality of the mean is
        // irrelevant against a decaying family.
        const double abs_a0 = std::abs(a0.to_double());
        const long j0 =
            long(std::ceil(2.0 * abs_a0 * std::pow(1.0 + double(fam.c), double(fam.tau)))) + 1;
        double cmin = abs_a0;
        for (long j = 1; j <= std::min<long>(j0, 100000); ++j) {
            const detail::DistVal dv = detail::dist_of(a0, fam, j);
            if (dv.resonant) continue;
            cmin = std::min(cmin, dv.d * double(j));
        }
        c.non_liouville = true;
        c.delta = 1.0;
        c.C = cmin;
        c.decisive = true;
        c.reason = "decaying frequencies: distance eventually equals |a0| mu and decays like 1/j";
        return c;
    }
    if (a0.kind == RealKind::GoldenRatio) {
        // dist(m phi, Z) >= 1/(3|m|) for every nonzero integer m, and |mu_j|
        // is polynomially bounded in j (symbolically for generators, by a
        // fitted constant for explicit integer data).
        c.non_liouville = true;
        c.delta = fam.growth_p();
        if (fam.kind == MuFamily::Kind::ExplicitInt) {
            double K = 1.0;
            for (std::size_t i = 0; i < fam.ints.size(); ++i)
                K = std::max(K, std::abs(double(fam.ints[i])) / double(i + 1));
            c.C = 1.0 / (3.0 * K);
        } else {
            c.C = 1.0 / 3.0;
        }
        c.decisive = true;
        c.reason = "bounded partial quotients: dist(mu phi, Z) >= 1/(3|mu|)";
        return c;
    }
    if (a0.liouville_by_construction()) {
        c.liouville = true;
        c.decisive = true;
        c.reason = "Liouville by construction: factorial digit gaps admit every exponent";
        return c;
    }
    if (a0.rational_valued() && a0.to_mpq() != 0) {
        // nonresonant distances obey d_j >= 1/(q * den(mu_j))
        c.non_liouville = true;
        const double q = mpz_class(a0.to_mpq().get_den()).get_d();
        c.delta = 0.0;
        c.C = 1.0 / q;
        c.decisive = true;
        c.reason = "rational mean: nonresonant distances bounded below by 1/(q den(mu))";
        return c;
    }
    c.reason = "no certificate for this mean";
    return c;
}

// ---------------------------------------------------------------------------
// Convergents (test oracle): best rational approximations p/q with q <= limit
// ---------------------------------------------------------------------------

struct Convergent {
    mpz_class p, q;
};

inline std::vector<Convergent> convergents_of(const RealSpec& a0, const mpz_class& q_limit) {
    std::vector<long> terms;
    if (a0.kind == RealKind::GoldenRatio) {
        terms.assign(200, 1);  // phi = [1; 1, 1, ...]
    } else if (a0.kind == RealKind::ContinuedFraction) {
        terms = a0.cf;
    } else if (a0.rational_valued()) {
        // Euclid on p/q
        mpz_class num(a0.to_mpq().get_num()), den(a0.to_mpq().get_den());
        while (den != 0) {
            mpz_class qt, r;
            mpz_fdiv_qr(qt.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
            if (!qt.fits_slong_p()) throw PreconditionError("continued-fraction term overflow");
            terms.push_back(qt.get_si());
            num = den;
            den = r;
        }
    } else {
        throw PreconditionError("convergents need an exact real");
    }
    std::vector<Convergent> out;
    mpz_class p0(1), q0(0), p1(terms.empty() ? 0 : terms[0]), q1(1);
    if (!terms.empty()) out.push_back({p1, q1});
    for (std::size_t i = 1; i < terms.size(); ++i) {
        mpz_class p2 = terms[i] * p1 + p0;
        mpz_class q2 = terms[i] * q1 + q0;
        if (q2 > q_limit) break;
        out.push_back({p2, q2});
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return out;
}

}  // namespace ghlab
