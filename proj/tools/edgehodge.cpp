// edgehodge command-line front end.
//
// Exit codes: 0 success, 2 bad input or config, 3 model invariant violated,
// 4 a verification suite or numerical check failed.

#include "edgehodge/run.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

namespace eh = edgehodge;

namespace {

struct Common {
    std::string space;
    std::string space_file;
    bool json = false;
    std::string out;
};

void add_space(CLI::App* cmd, Common& c) {
    cmd->add_option("--space", c.space, "built-in space name (see `list`)");
    cmd->add_option("--space-file", c.space_file, "edge-space model as JSON");
}

void add_output(CLI::App* cmd, Common& c) {
    cmd->add_flag("--json", c.json, "emit the machine-readable report");
    cmd->add_option("--out", c.out, "write the report to a file instead of stdout");
}

void emit(const eh::Json& report, const Common& c) {
    std::string text = c.json ? report.dump(2) + "\n" : eh::render_text(report);
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(c.out);
    if (!os) {
        throw eh::ConfigError("cannot write '" + c.out + "'");
    }
    os << text;
}

/// One report per weight: JSON wraps them in a list, text concatenates.
void emit_all(const std::vector<eh::Json>& reports, const std::string& kind, const Common& c) {
    if (reports.size() == 1) {
        emit(reports.front(), c);
        return;
    }
    if (c.json) {
        emit(eh::Json{{"kind", kind}, {"reports", reports}}, c);
        return;
    }
    std::string text;
    for (const auto& r : reports) {
        text += eh::render_text(r) + "\n";
    }
    std::ofstream file;
    if (!c.out.empty()) {
        file.open(c.out);
        if (!file) {
            throw eh::ConfigError("cannot write '" + c.out + "'");
        }
    }
    (c.out.empty() ? std::cout : file) << text;
}

std::vector<eh::Rational> weights_from(const std::vector<std::string>& texts) {
    std::vector<eh::Rational> out;
    for (const auto& t : texts) {
        out.push_back(eh::parse_weight(t));
    }
    if (out.empty()) {
        out.push_back(eh::Rational(0));
    }
    return out;
}

eh::GradedDims parse_betti(const std::string& text) {
    eh::GradedDims out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            long v = std::stol(item, &used);
            if (used != item.size() || v < 0) {
                throw std::invalid_argument(item);
            }
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw eh::ConfigError("fibre Betti numbers must be nonnegative integers, got '" + text + "'");
        }
    }
    if (out.empty()) {
        throw eh::ConfigError("empty fibre Betti list");
    }
    return out;
}

eh::DiscreteFibre grid_fibre(const std::string& kind, const std::vector<long>& sizes, double scale) {
    try {
        return eh::build_fibre(eh::parse_fibre_kind(kind), sizes, scale);
    } catch (const eh::FibreError& e) {
        throw eh::ConfigError(e.what());
    }
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Intersection cohomology and weighted L2 cohomology of simple edge spaces"};
    app.require_subcommand(1);
    Common c;

    std::string perversity = "mbar";
    auto* ih = app.add_subcommand("ih", "intersection cohomology at one perversity");
    add_space(ih, c);
    ih->add_option("--perversity,-p", perversity, "mbar, mlow or a rational value");
    add_output(ih, c);

    std::vector<std::string> weights;
    std::string spectrum_file;
    auto* wcmd = app.add_subcommand("weights", "max/min/minimal-Hodge cohomology for weights a");
    add_space(wcmd, c);
    wcmd->add_option("--a", weights, "weight as a rational string; repeatable")->take_all();
    wcmd->add_option("--spectrum-file", spectrum_file, "fibre spectrum JSON for the predicates");
    add_output(wcmd, c);

    std::string fibre;
    std::string grid_kind;
    std::vector<long> grid_sizes;
    double scale = 1.0;
    auto* spectral = app.add_subcommand("spectral", "indicial roots and self-adjointness predicates");
    add_space(spectral, c);
    spectral->add_option("--fibre", fibre, "closed-form fibre: circle, torus or sphere2");
    spectral->add_option("--spectrum-file", spectrum_file, "fibre spectrum JSON");
    spectral->add_option("--grid", grid_kind, "use the discrete spectrum of this fibre grid: circle, torus");
    spectral->add_option("--sizes", grid_sizes, "grid sizes per circle factor")->expected(1, 4);
    spectral->add_option("--scale", scale, "circle length divided by 2 pi");
    spectral->add_option("--a", weights, "weight; repeatable")->take_all();
    add_output(spectral, c);

    std::string fibre_kind = "torus";
    long count = 12;
    std::string csv;
    auto* fspec = app.add_subcommand("fibre-spec", "discrete Hodge Laplacian spectrum of a fibre grid");
    fspec->add_option("--fibre", fibre_kind, "circle, torus or product");
    fspec->add_option("--sizes", grid_sizes, "grid sizes per circle factor")->required()->expected(1, 4);
    fspec->add_option("--scale", scale, "circle length divided by 2 pi");
    fspec->add_option("--count", count, "eigenvalues reported per degree")->check(CLI::PositiveNumber);
    fspec->add_option("--csv", csv, "also write all eigenvalues as CSV");
    add_output(fspec, c);

    std::string betti_text;
    eh::RadialParams radial;
    std::string export_dir;
    std::vector<std::string> profile_files;
    long profile_degree = 0;
    auto* lab = app.add_subcommand("cone-lab", "radial checks on the model cone C(F)");
    add_space(lab, c);
    lab->add_option("--fibre-betti", betti_text, "fibre Betti numbers, e.g. 1,2,1 (instead of a space)");
    lab->add_option("--fibre", fibre, "closed-form fibre spectrum for the mode table");
    lab->add_option("--a", weights, "weight; repeatable")->take_all();
    lab->add_option("--x0", radial.x0, "inner radius of the log grid");
    lab->add_option("--per-decade", radial.per_decade, "grid points per decade")->check(CLI::PositiveNumber);
    lab->add_option("--c", radial.c, "homotopy base point in (1/2, 1)");
    lab->add_option("--export", export_dir, "write recovered mode profiles as two-column tables here");
    lab->add_option("--profile", profile_files, "ALPHA BETA tables of a mode profile to classify")->expected(2);
    lab->add_option("--degree", profile_degree, "form degree of the imported profile");
    add_output(lab, c);

    std::vector<long> degree_range;
    auto* complete = app.add_subcommand("complete", "L2 harmonic forms for a complete edge metric");
    add_space(complete, c);
    complete->add_option("--degrees", degree_range, "LO HI")->expected(2);
    add_output(complete, c);

    bool all = false;
    std::vector<std::string> suites;
    std::vector<std::string> spaces;
    auto* verify = app.add_subcommand("verify", "run the executable property suites");
    verify->add_flag("--all", all, "every suite");
    verify->add_option("--suite", suites, "suite name; repeatable")->take_all();
    verify->add_option("--space", spaces, "restrict model suites to these spaces; repeatable")->take_all();
    add_output(verify, c);

    auto* list = app.add_subcommand("list", "built-in spaces");
    add_output(list, c);

    std::string config_path;
    auto* run = app.add_subcommand("run", "config-driven run");
    run->add_option("--config", config_path, "run config JSON")->required();
    add_output(run, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : eh::exit_config;
    }

    if (ih->parsed()) {
        eh::EdgeSpaceModel s = eh::load_space(c.space, c.space_file);
        emit(eh::ih_report(s, eh::parse_perversity(perversity, s.f)), c);
        return eh::exit_ok;
    }
    if (wcmd->parsed()) {
        eh::EdgeSpaceModel s = eh::load_space(c.space, c.space_file);
        std::optional<eh::FibreSpectrum> spec =
            spectrum_file.empty() ? eh::builtin_fibre_spectrum(s) : eh::spectrum_from_json(eh::read_json_file(spectrum_file));
        emit(eh::weights_report(s, weights_from(weights), spec, eh::thread_count()), c);
        return eh::exit_ok;
    }
    if (spectral->parsed()) {
        std::optional<eh::FibreSpectrum> spec;
        eh::GradedDims betti;
        if (!spectrum_file.empty()) {
            spec = eh::spectrum_from_json(eh::read_json_file(spectrum_file));
        } else if (!grid_kind.empty()) {
            eh::DiscreteFibre fib = grid_fibre(grid_kind, grid_sizes, scale);
            spec = eh::spectrum_for_predicates(fib);
            betti = fib.exact_betti;
        } else if (!fibre.empty()) {
            spec = eh::named_fibre_spectrum(fibre);
        }
        if (!c.space.empty() || !c.space_file.empty()) {
            eh::EdgeSpaceModel s = eh::load_space(c.space, c.space_file);
            betti = eh::cohomology_dims(s.fibre);
            if (!spec) {
                spec = eh::builtin_fibre_spectrum(s);
            }
        }
        if (!spec) {
            throw eh::ConfigError("spectral needs a fibre: --space, --fibre, --grid or --spectrum-file");
        }
        if (betti.empty()) {
            for (long q = 0; q <= spec->f; ++q) {
                betti.push_back(static_cast<long>(spec->zero_multiplicity(q)));
            }
        }
        if (static_cast<long>(betti.size()) != spec->f + 1) {
            throw eh::ConfigError("spectrum dimension does not match the fibre");
        }
        std::vector<eh::Json> reports;
        for (const auto& a : weights_from(weights)) {
            reports.push_back(eh::spectral_report(spec->f, a, *spec, betti));
        }
        emit_all(reports, "spectral-list", c);
        return eh::exit_ok;
    }
    if (fspec->parsed()) {
        eh::DiscreteFibre fib = grid_fibre(fibre_kind, grid_sizes, scale);
        emit(eh::fibre_report(fib, count), c);
        if (!csv.empty()) {
            std::vector<eh::SpectrumResult> results;
            for (long q = 0; q <= fib.top_degree(); ++q) {
                results.push_back(eh::fibre_spectrum(fib, q));
            }
            std::ofstream os(csv);
            if (!os) {
                throw eh::ConfigError("cannot write '" + csv + "'");
            }
            eh::write_spectrum_csv(os, results);
        }
        return eh::exit_ok;
    }
    if (lab->parsed()) {
        eh::GradedDims betti;
        std::optional<eh::FibreSpectrum> spec;
        if (!betti_text.empty()) {
            betti = parse_betti(betti_text);
        } else if (c.space.empty() && c.space_file.empty() && !fibre.empty()) {
            // Betti numbers of a named fibre are its zero-mode counts
            eh::FibreSpectrum named = eh::named_fibre_spectrum(fibre);
            for (long k = 0; k <= named.f; ++k) {
                betti.push_back(static_cast<long>(named.zero_multiplicity(k)));
            }
        } else {
            eh::EdgeSpaceModel s = eh::load_space(c.space, c.space_file);
            betti = eh::cohomology_dims(s.fibre);
            spec = eh::builtin_fibre_spectrum(s);
        }
        if (!fibre.empty()) {
            spec = eh::named_fibre_spectrum(fibre);
        }
        if (spec && spec->f + 1 != static_cast<long>(betti.size())) {
            throw eh::ConfigError("fibre spectrum dimension does not match the Betti numbers");
        }
        if (!(radial.x0 > 0.0 && radial.x0 <= 0.1) || !(radial.c > 0.5 && radial.c < 1.0)) {
            throw eh::ConfigError("need 0 < x0 <= 0.1 and 1/2 < c < 1");
        }
        long f = static_cast<long>(betti.size()) - 1;
        std::vector<eh::Json> reports;
        for (const auto& a : weights_from(weights)) {
            eh::Json r = eh::cone_lab_report(betti, a, radial, spec);
            if (!profile_files.empty()) {
                eh::ConeModeProfile p;
                p.degree = profile_degree;
                std::ifstream fa(profile_files[0]);
                std::ifstream fb(profile_files[1]);
                if (!fa || !fb) {
                    throw eh::ConfigError("cannot read profile tables");
                }
                auto [xa, alpha] = eh::read_table(fa);
                auto [xb, beta] = eh::read_table(fb);
                if (xa != xb) {
                    throw eh::ConfigError("profile tables must share the same x column");
                }
                p.x = xa;
                p.alpha = alpha;
                p.beta = beta;
                r["imported_profile"] = {{"degree", profile_degree},
                                         {"membership", eh::to_string(eh::min_membership(profile_degree, f, a, p))},
                                         {"norm_ratio", eh::homotopy_norm_ratio(p, f, a, radial.c)}};
            }
            if (!export_dir.empty() && spec) {
                std::filesystem::create_directories(export_dir);
                for (long k = 0; k <= f; ++k) {
                    const auto& list = spec->degrees[static_cast<std::size_t>(k)];
                    for (std::size_t i = 0; i < list.size() && i < 3; ++i) {
                        eh::ModeExponents me = eh::mode_exponent(k, list[i].value, f, a, radial.x0, radial.per_decade);
                        std::string name = "a" + eh::to_string(a) + "_k" + std::to_string(k) + "_m" + std::to_string(i);
                        std::replace(name.begin(), name.end(), '/', '_');
                        std::string stem = (std::filesystem::path(export_dir) / name).string();
                        std::ofstream oa(stem + "_alpha.tsv");
                        eh::write_table(oa, me.recessive.x, me.recessive.alpha);
                        std::ofstream ob(stem + "_beta.tsv");
                        eh::write_table(ob, me.recessive.x, me.recessive.beta);
                    }
                }
            }
            reports.push_back(std::move(r));
        }
        emit_all(reports, "cone-lab-list", c);
        return eh::exit_ok;
    }
    if (complete->parsed()) {
        eh::EdgeSpaceModel s = eh::load_space(c.space, c.space_file);
        eh::Json r = eh::complete_report(s);
        if (!degree_range.empty()) {
            eh::Json kept = eh::Json::array();
            for (const auto& row : r["degrees"]) {
                long k = row["degree"].get<long>();
                if (k >= degree_range[0] && k <= degree_range[1]) {
                    kept.push_back(row);
                }
            }
            r["degrees"] = kept;
        }
        emit(r, c);
        return eh::exit_ok;
    }
    if (verify->parsed()) {
        if (all) {
            suites = eh::suite_names();
        }
        if (suites.empty()) {
            throw eh::ConfigError("verify needs --all or at least one --suite");
        }
        std::vector<eh::EdgeSpaceModel> models;
        if (spaces.empty()) {
            models = eh::all_builtins();
        }
        for (const auto& name : spaces) {
            models.push_back(eh::load_space(name, ""));
        }
        eh::Json r = eh::verify_report(suites, models);
        emit(r, c);
        return r["passed"].get<bool>() ? eh::exit_ok : eh::exit_verification;
    }
    if (list->parsed()) {
        emit(eh::list_report(), c);
        return eh::exit_ok;
    }
    if (run->parsed()) {
        eh::RunConfig cfg = eh::parse_run_config(eh::read_json_file(config_path));
        eh::Json r = eh::run_report(cfg);
        emit(r, c);
        return r["passed"].get<bool>() ? eh::exit_ok : eh::exit_verification;
    }
    return eh::exit_config;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const eh::ModelError& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return eh::exit_model;
    } catch (const eh::ComplexError& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return eh::exit_model;
    } catch (const eh::ShapeError& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return eh::exit_model;
    } catch (const eh::ExtendedRangeError& e) {
        std::cerr << "model error: " << e.what() << '\n';
        return eh::exit_model;
    } catch (const eh::BettiMismatchError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return eh::exit_verification;
    } catch (const eh::EigensolveError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return eh::exit_verification;
    } catch (const eh::OdeError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return eh::exit_verification;
    } catch (const eh::QuadratureError& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return eh::exit_verification;
    } catch (const std::exception& e) {
        // unknown names, malformed files and bad option values
        std::cerr << "error: " << e.what() << '\n';
        return eh::exit_config;
    }
}
