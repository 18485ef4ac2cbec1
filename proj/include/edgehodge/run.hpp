#pragma once

// Report builders shared by the command-line tool and config-driven runs.
// Every builder returns JSON; `render_text` turns any report into aligned
// plain-text tables. Numeric entries carry a provenance tag: "exact" for
// values computed in rational arithmetic, "numeric" with a tolerance otherwise.

#include "edgehodge/serialize.hpp"
#include "edgehodge/verify.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace edgehodge {

/// Bad user input (unknown names, malformed files, out-of-range options).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum ExitCode { exit_ok = 0, exit_config = 2, exit_model = 3, exit_verification = 4 };

/// Worker count from EDGEHODGE_THREADS (default 1).
inline unsigned thread_count() {
    const char* env = std::getenv("EDGEHODGE_THREADS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        throw ConfigError(std::string("EDGEHODGE_THREADS must be a positive integer, got '") + env + "'");
    }
    return static_cast<unsigned>(std::min<long>(v, 64));
}

/// out[i] = fn(i) for i < n, spread over `threads` workers; order of results
/// is fixed regardless of scheduling.
template <class T>
std::vector<T> parallel_map(std::size_t n, unsigned threads, const std::function<T(std::size_t)>& fn) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](unsigned id) {
        for (std::size_t i = id; i < n; i += threads) {
            try {
                slots[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (threads <= 1 || n <= 1) {
        work(0);
        threads = 1;
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    std::vector<T> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (errors[i]) {
            std::rethrow_exception(errors[i]);
        }
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// ---------------------------------------------------------------------------
// inputs

inline EdgeSpaceModel load_space(const std::string& name, const std::string& file) {
    if (!file.empty()) {
        return model_from_json(read_json_file(file));
    }
    if (name.empty()) {
        throw ConfigError("no space given (use a built-in name or a model file)");
    }
    try {
        return builtin_space(name);
    } catch (const UnknownSpaceError& e) {
        throw ConfigError(e.what());
    }
}

/// "mbar", "mlow" or a rational value.
inline Perversity parse_perversity(const std::string& text, long f) {
    MiddlePerversities mp = middle_perversities(f);
    if (text == "mbar") {
        return mp.upper;
    }
    if (text == "mlow") {
        return mp.lower;
    }
    try {
        return Perversity(parse_rational(text));
    } catch (const ParseError& e) {
        throw ConfigError("perversity must be mbar, mlow or a rational: " + std::string(e.what()));
    }
}

inline Rational parse_weight(const std::string& text) {
    try {
        return parse_rational(text);
    } catch (const ParseError& e) {
        throw ConfigError("weight '" + text + "': " + e.what());
    }
}

/// Closed-form spectrum by fibre name: circle, torus, sphere2.
inline FibreSpectrum named_fibre_spectrum(const std::string& name) {
    if (name == "circle") {
        return spectra::circle();
    }
    if (name == "torus") {
        return spectra::flat_torus();
    }
    if (name == "sphere2") {
        return spectra::round_sphere2();
    }
    throw ConfigError("unknown fibre '" + name + "' (circle, torus, sphere2)");
}

/// Closed-form fibre spectrum for the built-in fibres, if known.
inline std::optional<FibreSpectrum> builtin_fibre_spectrum(const EdgeSpaceModel& s) {
    static const std::map<std::string, std::string> fibre_of = {
        {"cone-circle", "circle"},       {"edge-circle-over-circle", "circle"}, {"cone-torus", "torus"},
        {"susp-torus", "torus"},         {"edge-torus-over-circle", "torus"},   {"cone-sphere2", "sphere2"}};
    auto it = fibre_of.find(s.name);
    if (it == fibre_of.end()) {
        return std::nullopt;
    }
    return named_fibre_spectrum(it->second);
}

// ---------------------------------------------------------------------------
// JSON helpers

inline Json exact_entry(const Rational& v) { return Json{{"value", to_string(v)}, {"provenance", "exact"}}; }

inline Json numeric_entry(double v, double tol) {
    return Json{{"value", v}, {"provenance", "numeric"}, {"tolerance", tol}};
}

inline Json dims_entry(const GradedDims& d) { return Json{{"dims", d}, {"provenance", "exact"}}; }

inline Json space_header(const EdgeSpaceModel& s) {
    return Json{{"name", s.name}, {"n", s.n}, {"b", s.b}, {"f", s.f}, {"description", s.description}};
}

inline Json root_entry(const IndicialRootPair& r) {
    Json j{{"degree", r.degree}, {"double_root", r.double_root}};
    j["lambda2"] = r.lambda2.exact ? exact_entry(*r.lambda2.exact) : numeric_entry(r.lambda2.value, 0.0);
    if (r.exact_minus) {
        j["gamma_minus"] = exact_entry(*r.exact_minus);
        j["gamma_plus"] = exact_entry(*r.exact_plus);
    } else {
        j["gamma_minus"] = numeric_entry(r.minus, r.error_bound);
        j["gamma_plus"] = numeric_entry(r.plus, r.error_bound);
    }
    return j;
}

inline Json suite_entry(const SuiteResult& s) {
    Json checks = Json::array();
    for (const auto& c : s.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    return Json{{"name", s.name}, {"passed", s.passed()}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// report builders

inline Json ih_report(const EdgeSpaceModel& s, const Perversity& p) {
    return Json{{"kind", "ih"},
                {"space", space_header(s)},
                {"perversity", to_string(p.value)},
                {"cutoff", p.truncation_cutoff(s.f)},
                {"ih", dims_entry(ih_dims(s, p))}};
}

inline Json predicates_entry(const EdgeSpaceModel& s, const Rational& a, const std::optional<FibreSpectrum>& spec) {
    GradedDims fb = cohomology_dims(s.fibre);
    Json j{{"unique_closed_extension_d", unique_closed_extension_d(s.f, a, fb)}};
    if (spec) {
        CriticalRoots cr = critical_roots(s.f, a, *spec);
        Json roots = Json::array();
        for (const auto& r : cr.roots) {
            roots.push_back(root_entry(r));
        }
        Json boundary = Json::array();
        for (const auto& r : cr.boundary) {
            boundary.push_back(root_entry(r));
        }
        j["essentially_selfadjoint"] = essentially_selfadjoint(s.f, a, *spec);
        j["critical_roots"] = roots;
        j["boundary_roots"] = boundary;
        j["spectrum_provenance"] = to_string(spec->provenance);
    } else {
        j["essentially_selfadjoint"] = nullptr;
    }
    return j;
}

inline Json weight_entry(const EdgeSpaceModel& s, const Rational& a, const std::optional<FibreSpectrum>& spec) {
    WeightedReport mx = weighted_derham_dims(s, a, Extension::max);
    WeightedReport mn = weighted_derham_dims(s, a, Extension::min);
    WeightedReport mh = minimal_hodge_dims(s, a);
    Json j{{"a", to_string(a)},
           {"max", {{"perversity", to_string(mx.perversity.value)}, {"dims", mx.dims}}},
           {"min", {{"perversity", to_string(mn.perversity.value)}, {"dims", mn.dims}}},
           {"minimal_hodge",
            {{"source_perversity", to_string(mh.source_perversity.value)},
             {"target_perversity", to_string(mh.perversity.value)},
             {"dims", mh.dims}}},
           {"provenance", "exact"}};
    j["predicates"] = predicates_entry(s, a, spec);
    if (is_product_space(s) && s.b == 0) {
        LocalCohomologyTable t = local_cohomology(cohomology_dims(s.fibre), s.f, a);
        j["local_cohomology"] = {{"max", t.max}, {"min", t.min}};
    }
    return j;
}

inline Json weights_report(const EdgeSpaceModel& s, const std::vector<Rational>& weights,
                           const std::optional<FibreSpectrum>& spec, unsigned threads = 1) {
    std::vector<Json> entries =
        parallel_map<Json>(weights.size(), threads, [&](std::size_t i) { return weight_entry(s, weights[i], spec); });
    return Json{{"kind", "weights"}, {"space", space_header(s)}, {"weights", entries}};
}

inline Json complete_report(const EdgeSpaceModel& s) {
    Json rows = Json::array();
    for (long k = 0; k <= s.n; ++k) {
        CompleteL2Answer ans = complete_l2(s, k);
        Json row{{"degree", k}, {"perversity", to_string(ans.perversity.value)}};
        if (ans.infinite) {
            row["verdict"] = "infinite";
        } else {
            row["verdict"] = "finite";
            row["dim"] = ans.dim;
        }
        rows.push_back(std::move(row));
    }
    return Json{{"kind", "complete"}, {"space", space_header(s)}, {"degrees", rows}, {"provenance", "exact"}};
}

inline Json spectral_report(long f, const Rational& a, const FibreSpectrum& spec, const GradedDims& fibre_betti) {
    CriticalRoots cr = critical_roots(f, a, spec);
    Json roots = Json::array();
    for (const auto& r : cr.roots) {
        roots.push_back(root_entry(r));
    }
    Json boundary = Json::array();
    for (const auto& r : cr.boundary) {
        boundary.push_back(root_entry(r));
    }
    Json zero_roots = Json::array();
    for (long k = 0; k <= f; ++k) {
        zero_roots.push_back(root_entry(indicial_roots(f, a, k, Rational(0))));
    }
    Json j{{"kind", "spectral"},
           {"f", f},
           {"a", to_string(a)},
           {"fibre_betti", fibre_betti},
           {"spectrum_provenance", to_string(spec.provenance)},
           {"critical_roots", roots},
           {"boundary_roots", boundary},
           {"harmonic_mode_roots", zero_roots},
           {"essentially_selfadjoint", essentially_selfadjoint(f, a, spec)},
           {"unique_closed_extension_d", unique_closed_extension_d(f, a, fibre_betti)}};
    if (!cr.boundary.empty()) {
        j["warnings"] = Json::array({"eigenvalues on the edge of the critical window; treated as non-critical"});
    }
    return j;
}

inline Json fibre_report(const DiscreteFibre& fib, long count) {
    Json degrees = Json::array();
    for (long q = 0; q <= fib.top_degree(); ++q) {
        SpectrumResult r = fibre_spectrum(fib, q, std::min(count, fib.dim(q)));
        degrees.push_back({{"degree", q},
                           {"dimension", fib.dim(q)},
                           {"eigenvalues", r.eigenvalues},
                           {"harmonic_dim", r.harmonic_dim},
                           {"exact_betti", fib.exact_betti[static_cast<std::size_t>(q)]},
                           {"zero_tolerance", r.zero_tolerance},
                           {"max_residual", r.max_residual},
                           {"provenance", "numeric"}});
    }
    return Json{{"kind", "fibre-spec"},
                {"fibre", to_string(fib.kind)},
                {"sizes", fib.sizes},
                {"lengths", fib.lengths},
                {"degrees", degrees}};
}

struct RadialParams {
    double x0 = 1e-4;
    long per_decade = 400;
    double c = 0.75;
};

/// Local cohomology, pullback and slice constants, homotopy bound, harmonic
/// mode membership and exponent recovery for one (F, a).
inline Json cone_lab_report(const GradedDims& fibre_betti, const Rational& a, const RadialParams& rp,
                            const std::optional<FibreSpectrum>& spec) {
    long f = static_cast<long>(fibre_betti.size()) - 1;
    LocalCohomologyTable t = local_cohomology(fibre_betti, f, a);
    Json per_degree = Json::array();
    for (long k = 0; k <= f + 1; ++k) {
        PullbackNorm pn = pullback_norm(k, f, a);
        SliceConstant sc = slice_constant(k, f, a);
        Json row{{"degree", k}};
        row["pullback_norm"] = pn.finite ? exact_entry(pn.value) : Json("divergent");
        row["slice_constant"] = sc.exact ? exact_entry(*sc.exact) : numeric_entry(sc.value, 1e-15);
        if (Rational(k) < make_rational(f + 3, 2) - a) {
            row["homotopy_bound"] = numeric_entry(homotopy_bound_coefficient(k, f, a, rp.c), 1e-14);
        }
        Membership m_const = min_membership(k, f, a, power_profile(k, 0, rp.x0, 10));
        row["harmonic_constant_mode"] = to_string(m_const);
        per_degree.push_back(std::move(row));
    }
    Json modes = Json::array();
    if (spec) {
        for (long k = 0; k <= f; ++k) {
            const auto& list = spec->degrees[static_cast<std::size_t>(k)];
            for (std::size_t i = 0; i < list.size() && i < 3; ++i) {
                IndicialRootPair ir = indicial_roots(f, a, k, list[i]);
                Json row{{"degree", k}, {"lambda2", list[i].value}, {"closed_form", root_entry(ir)}};
                try {
                    ModeExponents me = mode_exponent(k, list[i].value, f, a, rp.x0, rp.per_decade);
                    row["recovered_minus"] = numeric_entry(me.minus, 1e-3);
                    row["recovered_plus"] = numeric_entry(me.plus, 1e-3);
                    row["double_root"] = me.double_root;
                    row["within_tolerance"] =
                        me.double_root || (std::abs(me.minus - ir.minus) <= 1e-3 && std::abs(me.plus - ir.plus) <= 1e-3);
                } catch (const std::exception& e) {
                    row["error"] = e.what();
                }
                modes.push_back(std::move(row));
            }
        }
    }
    return Json{{"kind", "cone-lab"},
                {"f", f},
                {"a", to_string(a)},
                {"fibre_betti", fibre_betti},
                {"local_cohomology", {{"max", t.max}, {"min", t.min}, {"provenance", "exact"}}},
                {"degrees", per_degree},
                {"modes", modes},
                {"radial", {{"x0", rp.x0}, {"per_decade", rp.per_decade}, {"c", rp.c}}}};
}

inline Json list_report() {
    Json rows = Json::array();
    for (const auto& e : list_spaces()) {
        rows.push_back({{"name", e.name}, {"n", e.n}, {"b", e.b}, {"f", e.f}, {"description", e.description}});
    }
    return Json{{"kind", "list"}, {"spaces", rows}};
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"cochain", "stratified", "weights", "spectral",
                                                   "fibredec", "radial",     "cli"};
    return names;
}

struct RunConfig;
inline Json run_report(const RunConfig& cfg);

/// Runs the named suites; stratified and weights use `spaces`.
inline Json verify_report(const std::vector<std::string>& suites, const std::vector<EdgeSpaceModel>& spaces);

// ---------------------------------------------------------------------------
// config-driven runs

struct FibreGrid {
    FibreKind kind = FibreKind::torus;
    std::vector<long> sizes;
    double scale = 1.0;
};

struct RunConfig {
    std::string space;
    std::string space_file;
    std::vector<Rational> weights{Rational(0)};
    std::optional<std::pair<long, long>> degrees;
    std::optional<FibreGrid> fibre_grid;
    std::string spectrum_file;
    RadialParams radial;
    std::vector<std::string> suites;
};

inline FibreKind parse_fibre_kind(const std::string& s) {
    if (s == "circle") {
        return FibreKind::circle;
    }
    if (s == "torus") {
        return FibreKind::torus;
    }
    if (s == "product") {
        return FibreKind::product;
    }
    throw ConfigError("unknown fibre kind '" + s + "' (circle, torus, product)");
}

inline RunConfig parse_run_config(const Json& j) {
    if (!j.is_object()) {
        throw ConfigError("config must be an object");
    }
    static const std::set<std::string> known = {"space", "space_file", "weights", "degrees", "fibre",
                                                "spectrum_file", "radial", "suites"};
    for (const auto& [key, value] : j.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    RunConfig cfg;
    try {
        cfg.space = j.value("space", std::string());
        cfg.space_file = j.value("space_file", std::string());
        if (j.contains("weights")) {
            if (!j.at("weights").is_array()) {
                throw ConfigError("weights must be an array");
            }
            cfg.weights.clear();
            for (const auto& w : j.at("weights")) {
                cfg.weights.push_back(w.is_string() ? parse_weight(w.get<std::string>()) : Rational(w.get<long>()));
            }
        }
        if (j.contains("degrees")) {
            auto d = j.at("degrees").get<std::vector<long>>();
            if (d.size() != 2 || d[0] > d[1]) {
                throw ConfigError("degrees must be [lo, hi] with lo <= hi");
            }
            cfg.degrees = std::make_pair(d[0], d[1]);
        }
        if (j.contains("fibre")) {
            const Json& fj = j.at("fibre");
            FibreGrid g;
            g.kind = parse_fibre_kind(fj.value("kind", std::string("torus")));
            g.sizes = fj.at("sizes").get<std::vector<long>>();
            g.scale = fj.value("scale", 1.0);
            for (long n : g.sizes) {
                if (n < 3) {
                    throw ConfigError("fibre grid sizes must be >= 3");
                }
            }
            cfg.fibre_grid = g;
        }
        cfg.spectrum_file = j.value("spectrum_file", std::string());
        if (j.contains("radial")) {
            const Json& rj = j.at("radial");
            cfg.radial.x0 = rj.value("x0", cfg.radial.x0);
            cfg.radial.per_decade = rj.value("per_decade", cfg.radial.per_decade);
            cfg.radial.c = rj.value("c", cfg.radial.c);
        }
        if (j.contains("suites")) {
            cfg.suites = j.at("suites").get<std::vector<std::string>>();
            for (const auto& s : cfg.suites) {
                if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
                    throw ConfigError("unknown suite '" + s + "'");
                }
            }
        }
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (cfg.space.empty() && cfg.space_file.empty()) {
        throw ConfigError("config needs 'space' or 'space_file'");
    }
    if (!(cfg.radial.x0 > 0.0 && cfg.radial.x0 <= 0.1) || cfg.radial.per_decade < 1 ||
        !(cfg.radial.c > 0.5 && cfg.radial.c < 1.0)) {
        throw ConfigError("radial parameters out of range (x0 in (0, 0.1], per_decade >= 1, c in (1/2, 1))");
    }
    return cfg;
}

inline Json run_report(const RunConfig& cfg) {
    EdgeSpaceModel s = load_space(cfg.space, cfg.space_file);
    std::optional<FibreSpectrum> spec;
    if (!cfg.spectrum_file.empty()) {
        spec = spectrum_from_json(read_json_file(cfg.spectrum_file));
    } else if (cfg.fibre_grid) {
        spec = spectrum_for_predicates(build_fibre(cfg.fibre_grid->kind, cfg.fibre_grid->sizes, cfg.fibre_grid->scale));
    } else {
        spec = builtin_fibre_spectrum(s);
    }
    if (spec && spec->f != s.f) {
        throw ConfigError("spectrum is for a fibre of dimension " + std::to_string(spec->f) + ", space has f = " +
                          std::to_string(s.f));
    }
    unsigned threads = thread_count();
    Json weights = weights_report(s, cfg.weights, spec, threads);
    Json complete = complete_report(s);
    if (cfg.degrees) {
        Json kept = Json::array();
        for (const auto& row : complete["degrees"]) {
            long k = row["degree"].get<long>();
            if (k >= cfg.degrees->first && k <= cfg.degrees->second) {
                kept.push_back(row);
            }
        }
        complete["degrees"] = kept;
    }
    Json cone_labs = Json::array();
    for (const auto& a : cfg.weights) {
        cone_labs.push_back(cone_lab_report(cohomology_dims(s.fibre), a, cfg.radial, spec));
    }
    Json report{{"kind", "run"},
                {"space", space_header(s)},
                {"weights", weights["weights"]},
                {"complete", complete["degrees"]},
                {"cone_lab", cone_labs}};
    if (!cfg.suites.empty()) {
        Json v = verify_report(cfg.suites, {s});
        report["suites"] = v["suites"];
        report["passed"] = v["passed"];
    } else {
        report["passed"] = true;
    }
    return report;
}

/// Runs a fixed config twice and compares the serialized reports.
inline SuiteResult verify_cli() {
    SuiteResult r{"cli", {}};
    RunConfig cfg;
    cfg.space = "cone-torus";
    cfg.weights = {make_rational(-1, 2), Rational(0), make_rational(1, 2), Rational(1)};
    cfg.radial.per_decade = 50;
    cfg.radial.x0 = 1e-3;
    std::string first = run_report(cfg).dump(2);
    std::string second = run_report(cfg).dump(2);
    r.add("repeated runs give byte-identical reports", first == second);
    Json weights = weights_report(builtin_space("cone-torus"), {Rational(0)}, std::nullopt);
    const Json& w = weights["weights"][0];
    r.add("cone-torus a=0 max (1,2,0,0)", w["max"]["dims"] == Json({1, 2, 0, 0}));
    r.add("cone-torus a=0 min (1,0,0,0)", w["min"]["dims"] == Json({1, 0, 0, 0}));
    r.add("cone-torus a=0 minimal Hodge (1,0,0,0)", w["minimal_hodge"]["dims"] == Json({1, 0, 0, 0}));
    bool names = list_spaces().size() >= 6;
    r.add("catalogue lists at least six spaces", names);
    return r;
}

inline Json verify_report(const std::vector<std::string>& suites, const std::vector<EdgeSpaceModel>& spaces) {
    Json out = Json::array();
    bool all = true;
    for (const auto& name : suites) {
        SuiteResult r;
        if (name == "cochain") {
            r = verify_cochain();
        } else if (name == "stratified") {
            r = verify_stratified(spaces);
        } else if (name == "weights") {
            r = verify_weights(spaces);
        } else if (name == "spectral") {
            r = verify_spectral();
        } else if (name == "fibredec") {
            r = verify_fibredec();
        } else if (name == "radial") {
            r = verify_radial();
        } else if (name == "cli") {
            r = verify_cli();
        } else {
            throw ConfigError("unknown suite '" + name + "'");
        }
        all = all && r.passed();
        out.push_back(suite_entry(r));
    }
    return Json{{"kind", "verify"}, {"suites", out}, {"passed", all}};
}

// ---------------------------------------------------------------------------
// text rendering

namespace detail {

inline std::string dims_text(const Json& dims) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dims.size(); ++i) {
        os << (i ? "," : "") << dims[i].get<long>();
    }
    os << ')';
    return os.str();
}

inline std::string value_text(const Json& v) {
    if (v.is_object() && v.contains("value")) {
        return value_text(v.at("value"));
    }
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number_float()) {
        std::ostringstream os;
        os << std::setprecision(10) << v.get<double>();
        return os.str();
    }
    return v.dump();
}

inline void space_line(std::ostream& os, const Json& s) {
    os << "space " << s["name"].get<std::string>() << "  (n,b,f) = (" << s["n"] << "," << s["b"] << "," << s["f"]
       << ")\n";
}

inline void weights_text(std::ostream& os, const Json& weights) {
    os << std::left << std::setw(8) << "a" << std::setw(10) << "ext" << std::setw(10) << "perv" << "dims\n";
    for (const auto& w : weights) {
        std::string a = w["a"].get<std::string>();
        os << std::setw(8) << a << std::setw(10) << "max" << std::setw(10) << w["max"]["perversity"].get<std::string>()
           << dims_text(w["max"]["dims"]) << '\n';
        os << std::setw(8) << "" << std::setw(10) << "min" << std::setw(10) << w["min"]["perversity"].get<std::string>()
           << dims_text(w["min"]["dims"]) << '\n';
        os << std::setw(8) << "" << std::setw(10) << "min-hodge" << std::setw(10) << "" << dims_text(w["minimal_hodge"]["dims"])
           << '\n';
        const Json& p = w["predicates"];
        os << std::setw(8) << "" << "unique closed extension: " << (p["unique_closed_extension_d"].get<bool>() ? "yes" : "no");
        if (!p["essentially_selfadjoint"].is_null()) {
            os << ", essentially self-adjoint: " << (p["essentially_selfadjoint"].get<bool>() ? "yes" : "no") << " ("
               << p["critical_roots"].size() << " critical root pairs)";
        }
        os << '\n';
    }
}

inline void complete_text(std::ostream& os, const Json& rows) {
    os << std::left << std::setw(8) << "k" << std::setw(10) << "perv" << "L2 harmonic\n";
    for (const auto& r : rows) {
        os << std::setw(8) << r["degree"].get<long>() << std::setw(10) << r["perversity"].get<std::string>();
        if (r["verdict"] == "infinite") {
            os << "infinite\n";
        } else {
            os << r["dim"].get<long>() << '\n';
        }
    }
}

inline void roots_text(std::ostream& os, const Json& roots) {
    for (const auto& r : roots) {
        os << "  k=" << r["degree"] << "  lambda^2=" << value_text(r["lambda2"]) << "  gamma = "
           << value_text(r["gamma_minus"]) << ", " << value_text(r["gamma_plus"])
           << (r["double_root"].get<bool>() ? "  (double)" : "") << '\n';
    }
}

inline void cone_lab_text(std::ostream& os, const Json& j) {
    os << "cone lab: f=" << j["f"] << " a=" << j["a"].get<std::string>() << " fibre betti "
       << dims_text(j["fibre_betti"]) << '\n';
    os << "  local cohomology max " << dims_text(j["local_cohomology"]["max"]) << "  min "
       << dims_text(j["local_cohomology"]["min"]) << '\n';
    os << "  " << std::left << std::setw(4) << "k" << std::setw(14) << "pullback" << std::setw(16) << "slice K"
       << std::setw(16) << "K_c bound" << "constant mode\n";
    for (const auto& r : j["degrees"]) {
        os << "  " << std::setw(4) << r["degree"].get<long>() << std::setw(14) << value_text(r["pullback_norm"])
           << std::setw(16) << value_text(r["slice_constant"]) << std::setw(16)
           << (r.contains("homotopy_bound") ? value_text(r["homotopy_bound"]) : std::string("-"))
           << r["harmonic_constant_mode"].get<std::string>() << '\n';
    }
    for (const auto& m : j["modes"]) {
        os << "  mode k=" << m["degree"] << " lambda^2=" << value_text(m["lambda2"]);
        if (m.contains("error")) {
            os << "  error: " << m["error"].get<std::string>() << '\n';
            continue;
        }
        os << "  recovered " << value_text(m["recovered_minus"]) << ", " << value_text(m["recovered_plus"])
           << "  closed form " << value_text(m["closed_form"]["gamma_minus"]) << ", "
           << value_text(m["closed_form"]["gamma_plus"]) << (m["double_root"].get<bool>() ? "  (double root)" : "")
           << '\n';
    }
    if (j.contains("imported_profile")) {
        const Json& p = j["imported_profile"];
        os << "  imported profile k=" << p["degree"] << ": " << p["membership"].get<std::string>()
           << ", norm ratio " << p["norm_ratio"].get<double>() << '\n';
    }
}

} // namespace detail

inline std::string render_text(const Json& report) {
    std::ostringstream os;
    std::string kind = report.value("kind", std::string());
    if (kind == "ih") {
        detail::space_line(os, report["space"]);
        os << "perversity " << report["perversity"].get<std::string>() << " (fibre cutoff " << report["cutoff"]
           << ")\n";
        os << "IH " << detail::dims_text(report["ih"]["dims"]) << '\n';
    } else if (kind == "weights") {
        detail::space_line(os, report["space"]);
        detail::weights_text(os, report["weights"]);
    } else if (kind == "complete") {
        detail::space_line(os, report["space"]);
        detail::complete_text(os, report["degrees"]);
    } else if (kind == "spectral") {
        os << "f=" << report["f"] << " a=" << report["a"].get<std::string>() << " fibre betti "
           << detail::dims_text(report["fibre_betti"]) << " (" << report["spectrum_provenance"].get<std::string>()
           << " spectrum)\n";
        os << "essentially self-adjoint: " << (report["essentially_selfadjoint"].get<bool>() ? "yes" : "no") << '\n';
        os << "unique closed extension of d: " << (report["unique_closed_extension_d"].get<bool>() ? "yes" : "no")
           << '\n';
        os << "critical roots:" << (report["critical_roots"].empty() ? " none" : "") << '\n';
        detail::roots_text(os, report["critical_roots"]);
        if (!report["boundary_roots"].empty()) {
            os << "on the window edge (not critical):\n";
            detail::roots_text(os, report["boundary_roots"]);
        }
        os << "harmonic-mode roots:\n";
        detail::roots_text(os, report["harmonic_mode_roots"]);
    } else if (kind == "fibre-spec") {
        os << "fibre " << report["fibre"].get<std::string>() << " sizes " << report["sizes"].dump() << '\n';
        for (const auto& d : report["degrees"]) {
            os << "degree " << d["degree"] << " (dim " << d["dimension"] << "): harmonic " << d["harmonic_dim"]
               << " (exact betti " << d["exact_betti"] << ")\n  ";
            std::size_t shown = 0;
            for (const auto& v : d["eigenvalues"]) {
                os << std::setprecision(10) << v.get<double>() << ' ';
                if (++shown == 12) {
                    break;
                }
            }
            os << '\n';
        }
    } else if (kind == "cone-lab") {
        detail::cone_lab_text(os, report);
    } else if (kind == "list") {
        os << std::left << std::setw(26) << "name" << std::setw(12) << "(n,b,f)" << "description\n";
        for (const auto& s : report["spaces"]) {
            std::ostringstream nbf;
            nbf << '(' << s["n"] << ',' << s["b"] << ',' << s["f"] << ')';
            os << std::setw(26) << s["name"].get<std::string>() << std::setw(12) << nbf.str()
               << s["description"].get<std::string>() << '\n';
        }
    } else if (kind == "verify") {
        for (const auto& s : report["suites"]) {
            std::size_t failed = 0;
            for (const auto& c : s["checks"]) {
                if (!c["passed"].get<bool>()) {
                    ++failed;
                    os << "  FAIL " << s["name"].get<std::string>() << ": " << c["name"].get<std::string>();
                    if (!c["detail"].get<std::string>().empty()) {
                        os << " [" << c["detail"].get<std::string>() << ']';
                    }
                    os << '\n';
                }
            }
            os << (failed == 0 ? "PASS " : "FAIL ") << s["name"].get<std::string>() << " (" << s["checks"].size()
               << " checks, " << failed << " failed)\n";
        }
    } else if (kind == "run") {
        detail::space_line(os, report["space"]);
        detail::weights_text(os, report["weights"]);
        os << '\n';
        detail::complete_text(os, report["complete"]);
        for (const auto& c : report["cone_lab"]) {
            os << '\n';
            detail::cone_lab_text(os, c);
        }
        if (report.contains("suites")) {
            os << '\n' << render_text(Json{{"kind", "verify"}, {"suites", report["suites"]}});
        }
    } else {
        os << report.dump(2) << '\n';
    }
    return os.str();
}

} // namespace edgehodge
