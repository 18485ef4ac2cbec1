#include "edgehodge/run.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace edgehodge;

namespace {

Json parse(const char* text) { return Json::parse(text); }

} // namespace

TEST_CASE("run config parsing", "[run]") {
    RunConfig cfg = parse_run_config(parse(R"({"space": "cone-torus", "weights": ["-1/2", 0, "1/3"],
        "degrees": [1, 2], "fibre": {"kind": "circle", "sizes": [12]}, "radial": {"x0": 0.001, "per_decade": 40},
        "suites": ["weights"]})"));
    CHECK(cfg.space == "cone-torus");
    REQUIRE(cfg.weights.size() == 3);
    CHECK(cfg.weights[0] == make_rational(-1, 2));
    CHECK(cfg.weights[2] == make_rational(1, 3));
    CHECK(cfg.degrees == std::make_pair(1L, 2L));
    REQUIRE(cfg.fibre_grid);
    CHECK(cfg.fibre_grid->kind == FibreKind::circle);
    CHECK(cfg.radial.per_decade == 40);
    CHECK(cfg.radial.c == 0.75);

    CHECK(parse_run_config(parse(R"({"space": "cone-circle"})")).weights == std::vector<Rational>{Rational(0)});

    for (const char* bad : {R"([1, 2])", R"({})", R"({"space": "cone-torus", "colour": 1})",
                            R"({"space": "cone-torus", "weights": ["1/0"]})",
                            R"({"space": "cone-torus", "degrees": [3, 1]})",
                            R"({"space": "cone-torus", "fibre": {"kind": "klein", "sizes": [4]}})",
                            R"({"space": "cone-torus", "fibre": {"sizes": [2, 8]}})",
                            R"({"space": "cone-torus", "radial": {"c": 0.2}})",
                            R"({"space": "cone-torus", "suites": ["nope"]})",
                            R"({"space": "cone-torus", "weights": "0"})"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_run_config(parse(bad)), ConfigError);
    }
}

TEST_CASE("input helpers", "[run]") {
    CHECK(parse_perversity("mbar", 2) == Perversity(0L));
    CHECK(parse_perversity("mlow", 2) == Perversity(1L));
    CHECK(parse_perversity("3/2", 2) == Perversity(make_rational(3, 2)));
    CHECK_THROWS_AS(parse_perversity("middle", 2), ConfigError);
    CHECK_THROWS_AS(parse_weight("x"), ConfigError);
    CHECK_THROWS_AS(load_space("klein-bottle", ""), ConfigError);
    CHECK_THROWS_AS(load_space("", ""), ConfigError);
    CHECK(load_space("cone-torus", "").name == "cone-torus");
    CHECK_THROWS_AS(named_fibre_spectrum("klein"), ConfigError);
    CHECK(builtin_fibre_spectrum(builtin_space("susp-torus"))->f == 2);
}

TEST_CASE("model files round-trip through load_space", "[run]") {
    auto dir = std::filesystem::temp_directory_path() / "edgehodge_test_run";
    std::filesystem::create_directories(dir);
    auto path = (dir / "model.json").string();
    {
        std::ofstream os(path);
        os << to_json(builtin_space("edge-torus-over-circle")).dump(1);
    }
    EdgeSpaceModel s = load_space("", path);
    CHECK(s.name == "edge-torus-over-circle");
    CHECK(ih_dims(s, Perversity(0L)) == ih_dims(builtin_space("edge-torus-over-circle"), Perversity(0L)));
    {
        std::ofstream os(path);
        os << "{\"name\": \"broken\"";
    }
    CHECK_THROWS(load_space("", path));
    CHECK_THROWS(load_space("", (dir / "missing.json").string()));
    std::filesystem::remove_all(dir);
}

TEST_CASE("reports carry a kind and provenance", "[run]") {
    EdgeSpaceModel ct = builtin_space("cone-torus");
    Json ih = ih_report(ct, parse_perversity("mbar", 2));
    CHECK(ih["kind"] == "ih");
    CHECK(ih["ih"]["dims"] == Json({1, 2, 0, 0}));
    CHECK(ih["ih"]["provenance"] == "exact");

    Json w = weights_report(ct, {Rational(0)}, builtin_fibre_spectrum(ct));
    CHECK(w["kind"] == "weights");
    const Json& e = w["weights"][0];
    CHECK(e["max"]["dims"] == Json({1, 2, 0, 0}));
    CHECK(e["min"]["dims"] == Json({1, 0, 0, 0}));
    CHECK(e["minimal_hodge"]["dims"] == Json({1, 0, 0, 0}));
    CHECK(e["predicates"]["essentially_selfadjoint"] == false);
    CHECK(e["local_cohomology"]["max"] == Json({1, 2, 0, 0}));

    Json c = complete_report(builtin_space("edge-torus-over-circle"));
    CHECK(c["kind"] == "complete");
    CHECK(c["degrees"][1]["verdict"] == "infinite");
    CHECK(c["degrees"][0]["verdict"] == "finite");

    Json sp = spectral_report(2, 0, spectra::flat_torus(), {1, 2, 1});
    CHECK(sp["kind"] == "spectral");

    Json fr = fibre_report(build_fibre(FibreKind::circle, {16}), 4);
    CHECK(fr["kind"] == "fibre-spec");

    RadialParams rp;
    rp.x0 = 1e-3;
    rp.per_decade = 50;
    Json lab = cone_lab_report({1, 2, 1}, 0, rp, spectra::flat_torus());
    CHECK(lab["kind"] == "cone-lab");

    Json list = list_report();
    CHECK(list["kind"] == "list");
    CHECK(list["spaces"].size() >= 6);

    for (const Json* r : {&ih, &w, &c, &sp, &fr, &lab, &list}) {
        CHECK_FALSE(render_text(*r).empty());
    }
}

TEST_CASE("threaded weight sweeps are deterministic", "[run]") {
    EdgeSpaceModel s = builtin_space("susp-torus");
    std::vector<Rational> weights;
    for (long n = -6; n <= 6; ++n) {
        weights.push_back(make_rational(n, 3));
    }
    auto spec = builtin_fibre_spectrum(s);
    std::string one = weights_report(s, weights, spec, 1).dump();
    CHECK(weights_report(s, weights, spec, 4).dump() == one);
    CHECK(weights_report(s, weights, spec, 3).dump() == one);

    std::vector<int> squares = parallel_map<int>(10, 3, [](std::size_t i) { return static_cast<int>(i * i); });
    CHECK(squares[9] == 81);
    CHECK_THROWS_AS(parallel_map<int>(4, 2, [](std::size_t i) -> int {
                        if (i == 2) {
                            throw std::runtime_error("boom");
                        }
                        return 0;
                    }),
                    std::runtime_error);
}

TEST_CASE("full run on a config", "[run]") {
    RunConfig cfg = parse_run_config(parse(R"({"space": "cone-torus", "weights": ["0", "1/2"], "degrees": [0, 1],
        "radial": {"x0": 0.001, "per_decade": 50}, "suites": ["weights", "cli"]})"));
    Json r = run_report(cfg);
    CHECK(r["kind"] == "run");
    CHECK(r["passed"] == true);
    CHECK(r["complete"].size() == 2);
    CHECK(r["cone_lab"].size() == 2);
    CHECK(r["weights"][0]["max"]["dims"] == Json({1, 2, 0, 0}));
    CHECK(run_report(cfg).dump() == r.dump());

    RunConfig mismatch = parse_run_config(parse(R"({"space": "cone-torus", "fibre": {"kind": "circle", "sizes": [8]}})"));
    CHECK_THROWS_AS(run_report(mismatch), ConfigError);
}

TEST_CASE("verify report covers every suite", "[run][suite]") {
    Json v = verify_report(suite_names(), all_builtins());
    CHECK(v["kind"] == "verify");
    CHECK(v["suites"].size() == suite_names().size());
    for (const auto& s : v["suites"]) {
        INFO(s.dump());
        CHECK(s["passed"] == true);
    }
    CHECK(v["passed"] == true);
    CHECK_THROWS_AS(verify_report({"nope"}, {}), ConfigError);
}
