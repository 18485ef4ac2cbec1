#include "edgehodge/verify.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace edgehodge;
using Catch::Approx;

namespace {

ConeModeProfile beta_profile(long k, double s, double x0 = 1e-4, long per_decade = 400) {
    ConeModeProfile p;
    p.degree = k;
    p.x = log_grid(x0, per_decade);
    for (double xi : p.x) {
        p.alpha.push_back(0.0);
        p.beta.push_back(std::pow(xi, s));
    }
    return p;
}

} // namespace

TEST_CASE("indicial roots of the worked cases", "[spectral]") {
    IndicialRootPair r = indicial_roots(1, 0, 0, Rational(0));
    REQUIRE(r.exact_minus);
    CHECK(*r.exact_minus == -1);
    CHECK(*r.exact_plus == 0);
    CHECK_FALSE(r.double_root);

    r = indicial_roots(2, 0, 1, Rational(0));
    CHECK(r.double_root);
    CHECK(*r.exact_minus == -1);
    CHECK(*r.exact_plus == -1);

    r = indicial_roots(3, make_rational(1, 2), 1, Rational(1));
    CHECK(*r.exact_minus == -2);
    CHECK(*r.exact_plus == 0);

    // irrational roots come back as doubles with an error bound
    r = indicial_roots(2, 0, 0, Rational(1));
    CHECK_FALSE(r.exact_minus);
    CHECK(r.minus == Approx(-1.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(r.plus == Approx(-1.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("indicial root symmetric functions", "[spectral][property]") {
    std::mt19937_64 rng(11);
    auto pick = [&rng](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    for (int i = 0; i < 300; ++i) {
        long f = pick(0, 6);
        long k = pick(0, f);
        Rational a = make_rational(pick(-8, 8), pick(1, 4));
        Rational l2 = make_rational(pick(0, 40), pick(1, 5));
        IndicialRootPair r = indicial_roots(f, a, k, l2);
        double sum = to_double(2 * a - Rational(f));
        double centre = to_double(a - make_rational(f, 2));
        double prod = centre * centre - to_double(indicial_discriminant(f, a, k, l2)) / 4.0;
        CHECK(r.minus + r.plus == Approx(sum).margin(1e-9));
        CHECK(r.minus * r.plus == Approx(prod).margin(1e-8));
        CHECK(r.minus <= r.plus);
        CHECK(r.double_root == (l2 == 0 && Rational(f) - 2 * a - Rational(2 * k) == 0));
        if (r.exact_minus) {
            CHECK(to_double(*r.exact_minus) == Approx(r.minus).margin(1e-12));
        }
    }
}

TEST_CASE("critical roots and closed extensions", "[spectral]") {
    CHECK(critical_roots(1, 0, spectra::circle()).roots.empty());
    CriticalRoots t2 = critical_roots(2, 0, spectra::flat_torus());
    REQUIRE(t2.roots.size() == 1);
    CHECK(t2.roots[0].degree == 1);
    CHECK(t2.roots[0].double_root);
    CHECK(*t2.roots[0].exact_minus == -1);
    CHECK(critical_roots(2, 0, spectra::round_sphere2()).roots.empty());
    CHECK_THROWS_AS(critical_roots(1, 0, spectra::flat_torus()), SpectrumError);

    CHECK(unique_closed_extension_d(3, 0, {1, 0, 0, 1}));
    CHECK_FALSE(unique_closed_extension_d(2, 1, {1, 2, 1}));
    CHECK(essentially_selfadjoint(1, 0, spectra::circle()));
    CHECK_FALSE(essentially_selfadjoint(2, 0, spectra::flat_torus()));
    CHECK(essentially_selfadjoint(2, 0, spectra::round_sphere2()));
    CHECK(critical_degree(2, 0) == 1);
    CHECK_FALSE(critical_degree(1, 0).has_value());

    L2Cutoff<Rational> in = l2_cutoff(Rational(0), 1, 0);
    CHECK(in.member);
    CHECK(in.critical_weight == 1);
    L2Cutoff<Rational> out = l2_cutoff(Rational(-1), 1, 0);
    CHECK_FALSE(out.member);
    CHECK(out.critical_weight == 0);
}

TEST_CASE("window boundary roots are flagged, not critical", "[spectral]") {
    // f = 1, a = 0, k = 0: (1 - 0)^2 + 4 lambda^2 = 1 exactly at lambda = 0
    CriticalRoots c = critical_roots(1, 0, spectra::circle());
    CHECK(c.roots.empty());
    CHECK_FALSE(c.boundary.empty());
}

TEST_CASE("closed-form spectra validate", "[spectral]") {
    for (const auto& s : {spectra::point(), spectra::circle(), spectra::flat_torus(), spectra::round_sphere2(),
                          spectra::circle(make_rational(1, 3), 5)}) {
        CHECK_NOTHROW(validate_spectrum(s));
    }
    CHECK(zero_modes_match(spectra::flat_torus(), {1, 2, 1}));
    CHECK(zero_modes_match(spectra::round_sphere2(), {1, 0, 1}));
    CHECK_FALSE(zero_modes_match(spectra::round_sphere2(), {1, 2, 1}));
    FibreSpectrum bad = spectra::circle();
    bad.degrees[0][1].value = -1.0;
    bad.degrees[0][1].exact.reset();
    CHECK_THROWS_AS(validate_spectrum(bad), SpectrumError);
}

TEST_CASE("discrete fibres", "[fibredec]") {
    DiscreteFibre c8 = build_fibre(FibreKind::circle, {8});
    CHECK(c8.dims() == GradedDims{8, 8});
    DiscreteFibre t8 = build_fibre(FibreKind::torus, {8, 8});
    CHECK(t8.dims() == GradedDims{64, 128, 64});
    CHECK(dd_defect(t8) == 0.0);
    CHECK(t8.exact_betti == GradedDims{1, 2, 1});

    DiscreteFibre p8 = build_fibre(FibreKind::product, {8, 8});
    for (long q = 0; q <= 2; ++q) {
        SpectrumResult a = fibre_spectrum(t8, q, 12);
        SpectrumResult b = fibre_spectrum(p8, q, 12);
        REQUIRE(a.eigenvalues.size() == b.eigenvalues.size());
        for (std::size_t i = 0; i < a.eigenvalues.size(); ++i) {
            CHECK(a.eigenvalues[i] == Approx(b.eigenvalues[i]).margin(1e-10));
        }
    }

    SpectrumResult c64 = fibre_spectrum(build_fibre(FibreKind::circle, {64}), 0, 5);
    std::vector<double> want{0, 1, 1, 4, 4};
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(c64.eigenvalues[i] == Approx(want[i]).margin(2e-2));
    }
    SpectrumResult half = fibre_spectrum(build_fibre(FibreKind::circle, {64}, 0.5), 0, 2);
    CHECK(half.eigenvalues[1] == Approx(4.0).margin(1e-2));

    DiscreteFibre c3 = build_fibre(FibreKind::circle, {3});
    CHECK(fibre_spectrum(c3, 0).harmonic_dim == 1);
    CHECK(fibre_spectrum(c3, 1).harmonic_dim == 1);

    CHECK_THROWS_AS(build_fibre(FibreKind::circle, {2}), FibreError);
    CHECK_THROWS_AS(build_fibre(FibreKind::torus, {8}), FibreError);
    CHECK_THROWS_AS(build_fibre(FibreKind::circle, {8}, -1.0), FibreError);
}

TEST_CASE("discrete circle spectra match the exact formula", "[fibredec][property]") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 15; ++i) {
        long n = std::uniform_int_distribution<long>(3, 40)(rng);
        double scale = std::uniform_real_distribution<double>(0.3, 3.0)(rng);
        DiscreteFibre c = build_fibre(FibreKind::circle, {n}, scale);
        double length = 2.0 * M_PI * scale;
        std::vector<double> exact;
        for (long m = 0; m < n; ++m) {
            exact.push_back(discrete_circle_eigenvalue(n, length, m));
        }
        std::sort(exact.begin(), exact.end());
        for (long q = 0; q <= 1; ++q) {
            SpectrumResult r = fibre_spectrum(c, q);
            REQUIRE(r.eigenvalues.size() == exact.size());
            for (std::size_t j = 0; j < exact.size(); ++j) {
                CHECK(r.eigenvalues[j] == Approx(exact[j]).margin(1e-9 * (1.0 + exact.back())));
            }
            CHECK(r.harmonic_dim == 1);
            CHECK(r.max_residual <= kResidualBound);
        }
    }
}

TEST_CASE("torus harmonic dims equal Betti numbers for random grids", "[fibredec][property]") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 6; ++i) {
        long n1 = std::uniform_int_distribution<long>(3, 9)(rng);
        long n2 = std::uniform_int_distribution<long>(3, 9)(rng);
        DiscreteFibre t = build_fibre(FibreKind::torus, {n1, n2});
        GradedDims h;
        for (long q = 0; q <= 2; ++q) {
            h.push_back(fibre_spectrum(t, q).harmonic_dim);
        }
        CHECK(h == GradedDims{1, 2, 1});
        FibreSpectrum spec = spectrum_for_predicates(t);
        CHECK(spec.provenance == SpectrumProvenance::discrete);
        CHECK(zero_modes_match(spec, {1, 2, 1}));
    }
}

TEST_CASE("local cohomology table and pullback norms", "[radial]") {
    LocalCohomologyTable t2 = local_cohomology({1, 2, 1}, 2, 0);
    CHECK(t2.max == GradedDims{1, 2, 0, 0});
    CHECK(t2.min == GradedDims{1, 0, 0, 0});
    LocalCohomologyTable s1 = local_cohomology({1, 1}, 1, 0);
    CHECK(s1.max == GradedDims{1, 0, 0});
    CHECK(s1.min == GradedDims{1, 0, 0});

    PullbackNorm p = pullback_norm(0, 2, 0);
    CHECK(p.finite);
    CHECK(p.value == make_rational(1, 3));
    CHECK(pullback_norm(1, 2, 0).value == 1);
    CHECK_FALSE(pullback_norm(1, 1, 0).finite);

    REQUIRE(slice_constant(0, 2, 0).exact);
    CHECK(*slice_constant(0, 2, 0).exact == make_rational(24, 7));
    CHECK(*slice_constant(1, 2, 0).exact == 2);
    CHECK(slice_constant(1, 1, 0).value == Approx(1.0 / std::log(2.0)));
    CHECK(slice_constant(0, 1, make_rational(1, 4)).value ==
          Approx(1.5 / (1.0 - std::pow(0.5, 1.5))).epsilon(1e-12));
}

TEST_CASE("local tables agree with the weighted dictionary on cones", "[radial][property]") {
    for (const char* name : {"cone-circle", "cone-torus", "cone-sphere2"}) {
        EdgeSpaceModel s = builtin_space(name);
        GradedDims fb = cohomology_dims(s.fibre);
        for (long num = -8; num <= 8; ++num) {
            Rational a = make_rational(num, 4);
            LocalCohomologyTable t = local_cohomology(fb, s.f, a);
            CHECK(t.max == weighted_derham_dims(s, a, Extension::max).dims);
            CHECK(t.min == weighted_derham_dims(s, a, Extension::min).dims);
        }
    }
}

TEST_CASE("homotopy operator on sampled profiles", "[radial]") {
    ConeModeProfile p = beta_profile(1, 1.0);
    std::vector<double> k = homotopy_K(p, 0.75);
    for (std::size_t i = 0; i < p.x.size(); i += 97) {
        CHECK(k[i] == Approx((p.x[i] * p.x[i] - 9.0 / 16.0) / 2.0).margin(1e-12));
    }
    ConeModeProfile zero = beta_profile(1, 0.0);
    std::fill(zero.beta.begin(), zero.beta.end(), 0.0);
    for (double v : homotopy_K(zero, 0.75)) {
        CHECK(v == 0.0);
    }
    CHECK(homotopy_norm_ratio(zero, 2, 0, 0.75) == 0.0);
    CHECK_THROWS(homotopy_K(p, 0.4));
    CHECK_THROWS(homotopy_bound_coefficient(3, 2, 0, 0.75));
}

TEST_CASE("homotopy bound dominates sampled norm ratios", "[radial][property]") {
    std::mt19937_64 rng(21);
    auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    for (int i = 0; i < 40; ++i) {
        long f = std::uniform_int_distribution<long>(1, 4)(rng);
        long k = std::uniform_int_distribution<long>(1, f)(rng);
        Rational a = make_rational(std::uniform_int_distribution<long>(-4, 0)(rng), 2);
        double ep = to_double(Rational(f - 2 * k + 2) - 2 * a);
        if (ep <= -1.0) {
            continue;
        }
        // beta ~ x^s with ||beta||^2 finite in the weight x^ep
        double s = uni(-(ep + 1.0) / 2.0 + 0.3, 3.0);
        double c = uni(0.55, 0.95);
        ConeModeProfile p = beta_profile(k, s, 1e-6, 200);
        double ratio = homotopy_norm_ratio(p, f, a, c);
        INFO("f=" << f << " k=" << k << " a=" << to_string(a) << " s=" << s << " c=" << c);
        CHECK(ratio <= homotopy_bound_coefficient(k, f, a, c) * (1.0 + 1e-6) + 1e-9);
    }
}

TEST_CASE("reconstruction identity on a torus fibre", "[radial][property]") {
    std::mt19937_64 rng(3);
    auto uni = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    DiscreteFibre torus = build_fibre(FibreKind::torus, {4, 3});
    std::vector<double> grid = log_grid(1e-3, 200);
    for (int i = 0; i < 4; ++i) {
        long k = 1 + i % 2;
        std::vector<double> poly{uni(-1, 1), uni(-1, 1), uni(-1, 1)};
        auto dim = static_cast<Eigen::Index>(torus.dim(k - 1));
        Eigen::VectorXd xi = Eigen::VectorXd::NullaryExpr(dim, [&] { return uni(-1, 1); });
        Eigen::VectorXd zeta = Eigen::VectorXd::NullaryExpr(dim, [&] { return uni(-1, 1); });
        ConeForm w = polynomial_closed_form(torus, k, poly, xi, zeta, grid);
        CHECK(reconstruct(torus, w, uni(0.55, 0.95)).max_error() <= 1e-8);
    }
    Eigen::VectorXd xi = Eigen::VectorXd::Zero(torus.dim(0));
    CHECK_THROWS(polynomial_closed_form(torus, 0, {1.0}, xi, xi, grid));
}

TEST_CASE("min-domain membership", "[radial]") {
    CHECK(min_membership(1, 2, 0, power_profile(1, 0)) == Membership::not_member);
    CHECK(min_membership(1, 2, 0, power_profile(1, make_rational(1, 2))) == Membership::member);
    CHECK(min_membership(1, 3, 0, power_profile(1, 0)) == Membership::member);

    // sampled profiles without an exact exponent go through the slope fit
    ConeModeProfile flat = power_profile(1, 0);
    flat.alpha_exponent.reset();
    CHECK(min_membership(1, 2, 0, flat) == Membership::inconclusive);
    ConeModeProfile rising = power_profile(1, make_rational(1, 2));
    rising.alpha_exponent.reset();
    CHECK(min_membership(1, 2, 0, rising) == Membership::member);
    ConeModeProfile falling = power_profile(1, make_rational(-1, 2));
    falling.alpha_exponent.reset();
    CHECK(min_membership(1, 2, 0, falling) == Membership::not_member);
}

TEST_CASE("radial ODE exponents", "[radial]") {
    ModeExponents e = mode_exponent(0, 0.0, 1, 0);
    CHECK(e.minus == Approx(-1.0).margin(1e-6));
    CHECK(e.plus == Approx(0.0).margin(1e-6));
    ModeExponents g = mode_exponent(1, 1.0, 3, make_rational(1, 2));
    CHECK(g.minus == Approx(-2.0).margin(1e-6));
    CHECK(g.plus == Approx(0.0).margin(1e-6));
    CHECK(mode_exponent(1, 0.0, 2, 0).double_root);
    CHECK_THROWS(mode_exponent(0, -1.0, 1, 0));
    CHECK_THROWS(mode_exponent(0, 1.0, 1, 0, 0.5));

    // M has the indicial roots as eigenvalues
    Eigen::Matrix2d m = radial_system(1, 2.0, 2, make_rational(1, 3));
    IndicialRootPair r = indicial_roots(2, make_rational(1, 3), 1, Rational(2));
    Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(m).eigenvalues();
    CHECK(ev(0) == Approx(r.minus).margin(1e-12));
    CHECK(ev(1) == Approx(r.plus).margin(1e-12));
}

TEST_CASE("spectral, fibredec and radial suites pass", "[suite]") {
    for (const SuiteResult& r : {verify_spectral(), verify_fibredec(), verify_radial()}) {
        for (const auto& c : r.checks) {
            INFO(r.name << ": " << c.name << " " << c.detail);
            CHECK(c.passed);
        }
    }
}
