#pragma once

// Run configuration and machine-readable reports.
//
// One structured-text (JSON) document is shared by every command; a command
// reads the sections it needs. Parsing is strict: unknown keys anywhere are
// rejected with their location, keys that do not apply to the selected eigen
// generator kind are rejected too, and every syntactically valid document
// round-trips exactly (parse(serialize(config)) == config, doubles preserved
// bit-for-bit by shortest round-trip number printing).
//
// Reports pair a payload with provenance {config hash, version, seed} and a
// timings block. The canonical report text excludes timings, so identical
// (config, seed) runs produce byte-identical canonical output; the config
// hash is FNV-1a 64 over the compact canonical serialization.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ghlab/common.hpp"
#include "ghlab/eigen_data.hpp"
#include "ghlab/operator_model.hpp"
#include "ghlab/trig_poly.hpp"

namespace ghlab {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Configuration model
// ---------------------------------------------------------------------------

struct CoeffSpec {
    std::vector<double> cos, sin;

    TrigPoly to_poly() const { return TrigPoly(cos, sin); }
    static CoeffSpec of(const TrigPoly& p) { return {p.cos_coeffs, p.sin_coeffs}; }
    bool operator==(const CoeffSpec&) const = default;
};

struct EigenSpec {
    std::string kind = "power";  // torus | log_power | power | rational_decay | explicit
    double s = 1.0;              // power only
    double rho = 1.0;            // log_power only
    long tau = 1, c = 1;         // rational_decay only
    std::vector<double> lambda, mu, nu;  // explicit only (equal lengths)

    bool operator==(const EigenSpec&) const = default;
};

struct ToleranceSpec {
    double residual = 1e-8;   // mode-ODE and conjugation residual gate
    double resonance = 1e-8;  // dist(c0, iZ) below which a mode is resonant

    bool operator==(const ToleranceSpec&) const = default;
};

struct SolveSection {
    CoeffSpec rhs_re, rhs_im;  // forcing f(t) = rhs_re(t) + i rhs_im(t)
    long j_lo = 1, j_hi = 1;

    bool operator==(const SolveSection&) const = default;
};

struct WitnessSection {
    long j_lo = 1, j_hi = 1, j_step = 1;

    bool operator==(const WitnessSection&) const = default;
};

struct DiophantineSection {
    long fit_jmax = 0;   // 0 = use the top-level jmax
    int depth = 0;       // witness-pair depth; 0 = no pair search
    long budget = 100000;

    bool operator==(const DiophantineSection&) const = default;
};

struct ConjugateSection {
    bool allow_superlog = false;

    bool operator==(const ConjugateSection&) const = default;
};

struct RunConfig {
    CoeffSpec a, b;
    std::string a0;  // textual real spec; empty = exact dyadic mean of a
    EigenSpec eigen;
    long jmax = 64;
    std::size_t grid_points = 256;
    std::uint64_t seed = 0;
    ToleranceSpec tolerances;
    std::optional<SolveSection> solve;
    std::optional<WitnessSection> witness;
    std::optional<DiophantineSection> diophantine;
    std::optional<ConjugateSection> conjugate;

    bool operator==(const RunConfig&) const = default;
};

// ---------------------------------------------------------------------------
// Strict parsing
// ---------------------------------------------------------------------------

namespace detail {

inline std::string join_path(const std::string& path, const char* key) {
    return (path == "/" ? std::string("/") : path + "/") + key;
}

inline void reject_unknown_keys(const json& obj, const std::string& path,
                                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) known = true;
        if (!known) throw ParseError("unknown key \"" + item.key() + "\" at " + path);
    }
}

inline const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw ParseError("expected an object at " + path);
    return j;
}

inline std::vector<double> number_list(const json& obj, const std::string& path,
                                       const char* key) {
    std::vector<double> out;
    if (!obj.contains(key)) return out;
    const json& arr = obj.at(key);
    if (!arr.is_array()) throw ParseError("expected an array of numbers at " + join_path(path, key));
    for (const json& v : arr) {
        if (!v.is_number())
            throw ParseError("expected an array of numbers at " + join_path(path, key));
        out.push_back(v.get<double>());
    }
    return out;
}

inline double number_field(const json& obj, const std::string& path, const char* key,
                           double dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number()) throw ParseError("expected a number at " + join_path(path, key));
    return v.get<double>();
}

inline long integer_field(const json& obj, const std::string& path, const char* key, long dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) throw ParseError("expected an integer at " + join_path(path, key));
    return v.get<long>();
}

inline bool bool_field(const json& obj, const std::string& path, const char* key, bool dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_boolean()) throw ParseError("expected a boolean at " + join_path(path, key));
    return v.get<bool>();
}

inline std::string string_field(const json& obj, const std::string& path, const char* key,
                                const std::string& dflt) {
    if (!obj.contains(key)) return dflt;
    const json& v = obj.at(key);
    if (!v.is_string()) throw ParseError("expected a string at " + join_path(path, key));
    return v.get<std::string>();
}

inline CoeffSpec coeff_spec(const json& obj, const std::string& path) {
    require_object(obj, path);
    reject_unknown_keys(obj, path, {"cos", "sin"});
    CoeffSpec c;
    c.cos = number_list(obj, path, "cos");
    c.sin = number_list(obj, path, "sin");
    if (!c.sin.empty() && c.sin[0] != 0.0)
        throw ParseError("the sin coefficient at frequency 0 must be zero at " + path + "/sin");
    return c;
}

inline EigenSpec eigen_spec(const json& obj, const std::string& path) {
    require_object(obj, path);
    EigenSpec e;
    e.kind = string_field(obj, path, "kind", "");
    if (e.kind == "torus") {
        reject_unknown_keys(obj, path, {"kind"});
    } else if (e.kind == "power") {
        reject_unknown_keys(obj, path, {"kind", "s"});
        e.s = number_field(obj, path, "s", 1.0);
    } else if (e.kind == "log_power") {
        reject_unknown_keys(obj, path, {"kind", "rho"});
        e.rho = number_field(obj, path, "rho", 1.0);
    } else if (e.kind == "rational_decay") {
        reject_unknown_keys(obj, path, {"kind", "tau", "c"});
        e.tau = integer_field(obj, path, "tau", 1);
        e.c = integer_field(obj, path, "c", 1);
    } else if (e.kind == "explicit") {
        reject_unknown_keys(obj, path, {"kind", "lambda", "mu", "nu"});
        e.lambda = number_list(obj, path, "lambda");
        e.mu = number_list(obj, path, "mu");
        e.nu = number_list(obj, path, "nu");
        if (e.lambda.empty() || e.lambda.size() != e.mu.size() || e.mu.size() != e.nu.size())
            throw ParseError("explicit eigen data needs nonempty lambda/mu/nu of equal length at " +
                             path);
    } else {
        throw ParseError("unknown eigen generator kind \"" + e.kind + "\" at " + path +
                         "/kind (expected torus, power, log_power, rational_decay, explicit)");
    }
    return e;
}

}  // namespace detail

inline RunConfig config_from_json(const json& root) {
    detail::require_object(root, "/");
    detail::reject_unknown_keys(root, "/",
                                {"operator", "eigen", "jmax", "grid_points", "seed", "tolerances",
                                 "solve", "witness", "diophantine", "conjugate"});
    RunConfig c;

    if (!root.contains("operator")) throw ParseError("missing required section /operator");
    const json& op = detail::require_object(root.at("operator"), "/operator");
    detail::reject_unknown_keys(op, "/operator", {"a", "b", "a0"});
    if (op.contains("a")) c.a = detail::coeff_spec(op.at("a"), "/operator/a");
    if (op.contains("b")) c.b = detail::coeff_spec(op.at("b"), "/operator/b");
    c.a0 = detail::string_field(op, "/operator", "a0", "");

    if (!root.contains("eigen")) throw ParseError("missing required section /eigen");
    c.eigen = detail::eigen_spec(root.at("eigen"), "/eigen");

    c.jmax = detail::integer_field(root, "/", "jmax", 64);
    if (c.jmax < 1) throw ParseError("jmax must be >= 1 at /jmax");
    const long grid = detail::integer_field(root, "/", "grid_points", 256);
    if (grid < 16 || !is_pow2(std::size_t(grid)))
        throw ParseError("grid_points must be a power of two >= 16 at /grid_points");
    c.grid_points = std::size_t(grid);
    const long seed = detail::integer_field(root, "/", "seed", 0);
    if (seed < 0) throw ParseError("seed must be nonnegative at /seed");
    c.seed = std::uint64_t(seed);

    if (root.contains("tolerances")) {
        const json& tol = detail::require_object(root.at("tolerances"), "/tolerances");
        detail::reject_unknown_keys(tol, "/tolerances", {"residual", "resonance"});
        c.tolerances.residual = detail::number_field(tol, "/tolerances", "residual", 1e-8);
        c.tolerances.resonance = detail::number_field(tol, "/tolerances", "resonance", 1e-8);
        if (!(c.tolerances.residual > 0.0) || !(c.tolerances.resonance > 0.0))
            throw ParseError("tolerances must be positive at /tolerances");
    }

    if (root.contains("solve")) {
        const json& s = detail::require_object(root.at("solve"), "/solve");
        detail::reject_unknown_keys(s, "/solve", {"rhs_re", "rhs_im", "j_lo", "j_hi"});
        SolveSection sec;
        if (s.contains("rhs_re")) sec.rhs_re = detail::coeff_spec(s.at("rhs_re"), "/solve/rhs_re");
        if (s.contains("rhs_im")) sec.rhs_im = detail::coeff_spec(s.at("rhs_im"), "/solve/rhs_im");
        sec.j_lo = detail::integer_field(s, "/solve", "j_lo", 1);
        sec.j_hi = detail::integer_field(s, "/solve", "j_hi", sec.j_lo);
        if (sec.j_lo < 1 || sec.j_hi < sec.j_lo)
            throw ParseError("mode range must satisfy 1 <= j_lo <= j_hi at /solve");
        c.solve = sec;
    }

    if (root.contains("witness")) {
        const json& w = detail::require_object(root.at("witness"), "/witness");
        detail::reject_unknown_keys(w, "/witness", {"j_lo", "j_hi", "j_step"});
        WitnessSection sec;
        sec.j_lo = detail::integer_field(w, "/witness", "j_lo", 1);
        sec.j_hi = detail::integer_field(w, "/witness", "j_hi", sec.j_lo);
        sec.j_step = detail::integer_field(w, "/witness", "j_step", 1);
        if (sec.j_lo < 1 || sec.j_hi < sec.j_lo || sec.j_step < 1)
            throw ParseError("mode range must satisfy 1 <= j_lo <= j_hi, j_step >= 1 at /witness");
        c.witness = sec;
    }

    if (root.contains("diophantine")) {
        const json& d = detail::require_object(root.at("diophantine"), "/diophantine");
        detail::reject_unknown_keys(d, "/diophantine", {"fit_jmax", "depth", "budget"});
        DiophantineSection sec;
        sec.fit_jmax = detail::integer_field(d, "/diophantine", "fit_jmax", 0);
        sec.depth = int(detail::integer_field(d, "/diophantine", "depth", 0));
        sec.budget = detail::integer_field(d, "/diophantine", "budget", 100000);
        if (sec.fit_jmax < 0 || sec.depth < 0 || sec.budget < 1)
            throw ParseError("fit_jmax/depth must be >= 0 and budget >= 1 at /diophantine");
        c.diophantine = sec;
    }

    if (root.contains("conjugate")) {
        const json& g = detail::require_object(root.at("conjugate"), "/conjugate");
        detail::reject_unknown_keys(g, "/conjugate", {"allow_superlog"});
        ConjugateSection sec;
        sec.allow_superlog = detail::bool_field(g, "/conjugate", "allow_superlog", false);
        c.conjugate = sec;
    }

    return c;
}

inline RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(root);
}

// ---------------------------------------------------------------------------
// Serialization (canonical: keys sorted by the JSON object order)
// ---------------------------------------------------------------------------

inline json config_to_json(const RunConfig& c) {
    json root;
    json& op = root["operator"];
    op["a"] = {{"cos", c.a.cos}, {"sin", c.a.sin}};
    op["b"] = {{"cos", c.b.cos}, {"sin", c.b.sin}};
    if (!c.a0.empty()) op["a0"] = c.a0;

    json& e = root["eigen"];
    e["kind"] = c.eigen.kind;
    if (c.eigen.kind == "power") e["s"] = c.eigen.s;
    if (c.eigen.kind == "log_power") e["rho"] = c.eigen.rho;
    if (c.eigen.kind == "rational_decay") {
        e["tau"] = c.eigen.tau;
        e["c"] = c.eigen.c;
    }
    if (c.eigen.kind == "explicit") {
        e["lambda"] = c.eigen.lambda;
        e["mu"] = c.eigen.mu;
        e["nu"] = c.eigen.nu;
    }

    root["jmax"] = c.jmax;
    root["grid_points"] = c.grid_points;
    root["seed"] = c.seed;
    root["tolerances"] = {{"residual", c.tolerances.residual},
                          {"resonance", c.tolerances.resonance}};
    if (c.solve) {
        root["solve"] = {{"rhs_re", {{"cos", c.solve->rhs_re.cos}, {"sin", c.solve->rhs_re.sin}}},
                         {"rhs_im", {{"cos", c.solve->rhs_im.cos}, {"sin", c.solve->rhs_im.sin}}},
                         {"j_lo", c.solve->j_lo},
                         {"j_hi", c.solve->j_hi}};
    }
    if (c.witness) {
        root["witness"] = {{"j_lo", c.witness->j_lo},
                           {"j_hi", c.witness->j_hi},
                           {"j_step", c.witness->j_step}};
    }
    if (c.diophantine) {
        root["diophantine"] = {{"fit_jmax", c.diophantine->fit_jmax},
                               {"depth", c.diophantine->depth},
                               {"budget", c.diophantine->budget}};
    }
    if (c.conjugate) {
        root["conjugate"] = {{"allow_superlog", c.conjugate->allow_superlog}};
    }
    return root;
}

inline std::string serialize_config(const RunConfig& c) { return config_to_json(c).dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Config -> operator
// ---------------------------------------------------------------------------

inline OperatorSpec build_operator(const RunConfig& c) {
    OperatorSpec op;
    op.a = c.a.to_poly();
    op.b = c.b.to_poly();
    op.a0_exact = c.a0;
    if (c.eigen.kind == "explicit") {
        EigenData e;
        e.generator.kind = GeneratorKind::Explicit;
        e.generator_backed = false;
        for (std::size_t i = 0; i < c.eigen.lambda.size(); ++i) {
            EigenEntry en;
            en.lambda = c.eigen.lambda[i];
            en.mu = c.eigen.mu[i];
            en.nu = c.eigen.nu[i];
            e.entries.push_back(en);
        }
        e.validate();
        op.eigen = std::move(e);
        return op;
    }
    EigenGenerator gen;
    if (c.eigen.kind == "torus") gen.kind = GeneratorKind::TorusFrequencies;
    if (c.eigen.kind == "power") gen.kind = GeneratorKind::Power;
    if (c.eigen.kind == "log_power") gen.kind = GeneratorKind::LogPower;
    if (c.eigen.kind == "rational_decay") gen.kind = GeneratorKind::RationalDecay;
    gen.s = c.eigen.s;
    gen.rho = c.eigen.rho;
    gen.tau = c.eigen.tau;
    gen.c = c.eigen.c;
    op.eigen = eigen_generate(gen, std::size_t(c.jmax));
    return op;
}

// ---------------------------------------------------------------------------
// Reports and provenance
// ---------------------------------------------------------------------------

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

// Hash of the compact canonical serialization: whitespace- and key-order-
// independent identity of the configuration document.
inline std::uint64_t config_hash(const RunConfig& c) { return fnv1a64(config_to_json(c).dump()); }

// Floating-point text with 17 significant digits (used by all CSV exports).
inline std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Provenance {
    std::uint64_t config_hash = 0;
    std::string version = kVersion;
    std::uint64_t seed = 0;
};

struct Report {
    json payload = json::object();
    Provenance provenance;
    double elapsed_seconds = 0.0;

    json to_json(bool with_timings = true) const {
        json j;
        j["payload"] = payload;
        j["provenance"] = {{"config_hash", hex64(provenance.config_hash)},
                           {"version", provenance.version},
                           {"seed", provenance.seed}};
        if (with_timings) j["timings"] = {{"elapsed_seconds", elapsed_seconds}};
        return j;
    }

    // Determinism basis: identical (config, seed) must reproduce this text
    // byte for byte. Timings are excluded here and from all hashing.
    std::string canonical_text() const { return to_json(false).dump(2) + "\n"; }
    std::string full_text() const { return to_json(true).dump(2) + "\n"; }
};

inline Report make_report(const RunConfig& c, json payload) {
    Report r;
    r.payload = std::move(payload);
    r.provenance.config_hash = config_hash(c);
    r.provenance.seed = c.seed;
    return r;
}

}  // namespace ghlab
