#pragma once

// Executable property suites, one per module. Each check records a name, a
// pass flag and a short detail string; a suite passes when all checks do.
// Random inputs come from a fixed-seed generator, so results are reproducible.

#include "edgehodge/catalogue.hpp"
#include "edgehodge/fibredec.hpp"
#include "edgehodge/radial.hpp"
#include "edgehodge/spectral.hpp"
#include "edgehodge/weights.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace edgehodge {

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct SuiteResult {
    std::string name;
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    void add(std::string check, bool ok, std::string detail = {}) {
        checks.push_back({std::move(check), ok, std::move(detail)});
    }
};

inline std::string dims_string(const GradedDims& d) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < d.size(); ++i) {
        os << (i ? "," : "") << d[i];
    }
    os << ')';
    return os.str();
}

namespace gen {

using Rng = std::mt19937_64;

inline long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

/// Unit lower times unit upper triangular with small integer entries: invertible.
inline QMatrix invertible(Rng& rng, std::size_t n) {
    QMatrix l = QMatrix::identity(n);
    QMatrix u = QMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            l(i, j) = uniform(rng, -2, 2);
            u(j, i) = make_rational(uniform(rng, -3, 3), uniform(rng, 1, 3));
        }
    }
    return l * u;
}

inline QMatrix inverse(const QMatrix& m) {
    QMatrix aug = QMatrix::hstack(m, QMatrix::identity(m.rows()));
    aug.rref_in_place();
    QMatrix inv(m.rows(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.rows(); ++j) {
            inv(i, j) = aug(i, m.cols() + j);
        }
    }
    return inv;
}

/// Conjugates every differential by random invertible changes of basis.
inline CochainComplex change_basis(Rng& rng, const CochainComplex& c) {
    if (c.is_zero_complex()) {
        return c;
    }
    std::vector<QMatrix> p;
    for (int k = c.low_degree(); k <= c.top_degree(); ++k) {
        p.push_back(invertible(rng, c.dim(k)));
    }
    std::vector<QMatrix> d;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        d.push_back(p[i + 1] * c.differentials()[i] * inverse(p[i]));
    }
    return CochainComplex(c.low_degree(), c.dims(), std::move(d));
}

/// Random complex in degrees 0..top assembled from known pieces (cohomology
/// classes and acyclic pairs), then scrambled by a change of basis. Returns the
/// Betti numbers it was built with.
inline CochainComplex random_complex(Rng& rng, int top, GradedDims& betti) {
    std::vector<std::size_t> dims(static_cast<std::size_t>(top + 1), 0);
    betti.assign(static_cast<std::size_t>(top + 1), 0);
    std::vector<std::size_t> pairs(static_cast<std::size_t>(top), 0); // acyclic k -> k+1
    for (int k = 0; k <= top; ++k) {
        betti[static_cast<std::size_t>(k)] = uniform(rng, 0, 2);
        dims[static_cast<std::size_t>(k)] += static_cast<std::size_t>(betti[static_cast<std::size_t>(k)]);
        if (k < top) {
            auto m = static_cast<std::size_t>(uniform(rng, 0, 2));
            pairs[static_cast<std::size_t>(k)] = m;
            dims[static_cast<std::size_t>(k)] += m;
            dims[static_cast<std::size_t>(k + 1)] += m;
        }
    }
    std::vector<QMatrix> d;
    for (int k = 0; k < top; ++k) {
        auto uk = static_cast<std::size_t>(k);
        QMatrix m(dims[uk + 1], dims[uk]);
        // degree k layout: [classes | pair sources (k->k+1) | pair targets (k-1->k)]
        std::size_t src0 = static_cast<std::size_t>(betti[uk]);
        std::size_t dst0 = static_cast<std::size_t>(betti[uk + 1]) + (k + 1 < top ? pairs[uk + 1] : 0);
        for (std::size_t i = 0; i < pairs[uk]; ++i) {
            m(dst0 + i, src0 + i) = 1;
        }
        d.push_back(std::move(m));
    }
    return change_basis(rng, CochainComplex(0, dims, std::move(d)));
}

inline Rational random_weight(Rng& rng) { return make_rational(uniform(rng, -8, 8), uniform(rng, 1, 4)); }

} // namespace gen

// ---------------------------------------------------------------------------

inline SuiteResult verify_cochain(unsigned long seed = 1) {
    SuiteResult r{"cochain", {}};
    gen::Rng rng(seed);
    using namespace complexes;
    std::vector<std::pair<std::string, CochainComplex>> named = {
        {"point", point()},     {"circle", circle()},          {"pentagon", polygon(5)},
        {"torus", torus()},     {"sphere2", sphere2()},        {"interval", interval()},
        {"circle x interval", tensor(circle(), interval())}};
    for (int i = 0; i < 12; ++i) {
        GradedDims b;
        named.push_back({"random#" + std::to_string(i), gen::random_complex(rng, static_cast<int>(i % 4), b)});
        GradedDims got = cohomology_dims(named.back().second);
        r.add("construction betti " + named.back().first, got == b, dims_string(got) + " vs " + dims_string(b));
    }
    for (const auto& [name, c] : named) {
        long chi_chain = c.euler_characteristic();
        long chi_h = euler_characteristic(cohomology_dims(c), c.low_degree());
        r.add("euler " + name, chi_chain == chi_h, std::to_string(chi_chain) + " vs " + std::to_string(chi_h));
    }
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            const auto& a = named[i].second;
            const auto& b = named[j].second;
            GradedDims got = cohomology_dims(tensor(a, b));
            GradedDims want = convolve(cohomology_dims(a), cohomology_dims(b));
            r.add("kunneth " + named[i].first + " (x) " + named[j].first, got == want,
                  dims_string(got) + " vs " + dims_string(want));
        }
    }
    {
        const auto& a = named[1].second;
        const auto& b = named[5].second;
        const auto& c = named[2].second;
        GradedDims left = cohomology_dims(tensor(tensor(a, b), c));
        GradedDims right = cohomology_dims(tensor(a, tensor(b, c)));
        r.add("tensor associativity", left == right, dims_string(left) + " vs " + dims_string(right));
    }
    for (const auto& [name, c] : named) {
        GradedDims before = cohomology_dims(c);
        GradedDims after = cohomology_dims(gen::change_basis(rng, c));
        r.add("basis change " + name, before == after, dims_string(before) + " vs " + dims_string(after));
    }
    // long exact sequence of the cone: dim H^k(Cone) = coker(phi_k) + ker(phi_{k+1})
    std::vector<std::pair<std::string, ComplexMap>> maps = {
        {"id circle", identity_map(circle())},
        {"zero circle", zero_map(circle(), circle())},
        {"point -> circle", ComplexMap(point(), circle(), 0, {QMatrix{{1}, {1}}})},
    };
    {
        QMatrix two = QMatrix::identity(2);
        two *= 2;
        maps.push_back({"twice id circle", ComplexMap(circle(), circle(), 0, {two, two})});
    }
    for (const auto& name : builtin_names()) {
        EdgeSpaceModel s = builtin_space(name);
        maps.push_back({"restriction " + name, s.restriction});
        MiddlePerversities mp = middle_perversities(s.f);
        maps.push_back({"perversity change " + name, perversity_change_map(s, mp.lower, mp.upper)});
    }
    for (const auto& [name, phi] : maps) {
        CochainComplex cone = mapping_cone(phi);
        bool ok = true;
        for (int k = phi.min_degree() - 1; k <= phi.max_degree(); ++k) {
            long rank_k = k >= phi.min_degree() ? static_cast<long>(induced_map_rank(phi, k)) : 0;
            long rank_k1 = k + 1 <= phi.max_degree() ? static_cast<long>(induced_map_rank(phi, k + 1)) : 0;
            long coker = betti(phi.target(), k) - rank_k;
            long ker = betti(phi.source(), k + 1) - rank_k1;
            if (betti(cone, k) != coker + ker) {
                ok = false;
            }
        }
        r.add("cone exact sequence " + name, ok);
        long chi = cone.euler_characteristic();
        long want = phi.target().euler_characteristic() - phi.source().euler_characteristic();
        r.add("cone euler " + name, chi == want, std::to_string(chi) + " vs " + std::to_string(want));
    }
    return r;
}

inline std::vector<EdgeSpaceModel> all_builtins() {
    std::vector<EdgeSpaceModel> out;
    for (const auto& name : builtin_names()) {
        out.push_back(builtin_space(name));
    }
    return out;
}

/// Weights -2, -3/2, ..., 2.
inline std::vector<Rational> half_integer_weights(long lo = -2, long hi = 2) {
    std::vector<Rational> out;
    for (long t = 2 * lo; t <= 2 * hi; ++t) {
        out.push_back(make_rational(t, 2));
    }
    return out;
}

inline SuiteResult verify_stratified(const std::vector<EdgeSpaceModel>& spaces) {
    SuiteResult r{"stratified", {}};
    for (const auto& s : spaces) {
        std::vector<Perversity> ps;
        for (long p = -3; p <= s.f + 2; ++p) {
            ps.push_back(Perversity(p));
        }
        ps.push_back(Perversity(make_rational(1, 2)));
        ps.push_back(Perversity(Rational(s.f) - make_rational(1, 2)));
        std::vector<GradedDims> dims;
        for (const auto& p : ps) {
            dims.push_back(ih_dims(s, p));
        }
        bool mono = true;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            for (std::size_t j = 0; j < ps.size(); ++j) {
                if (ps[i].truncation_cutoff(s.f) > ps[j].truncation_cutoff(s.f)) {
                    continue;
                }
                ComplexMap change = perversity_change_map(s, ps[i], ps[j]);
                for (long k = 0; k <= s.n; ++k) {
                    auto rk = static_cast<long>(induced_map_rank(change, static_cast<int>(k)));
                    auto uk = static_cast<std::size_t>(k);
                    if (rk > std::min(dims[i][uk], dims[j][uk])) {
                        mono = false;
                    }
                }
            }
        }
        r.add(s.name + ": map rank <= both dims", mono);

        if (s.compact) {
            MiddlePerversities mp = middle_perversities(s.f);
            bool dual = true;
            for (long sh = -2; sh <= 2; ++sh) {
                GradedDims lower = ih_dims(s, mp.lower + Rational(sh));
                GradedDims upper = ih_dims(s, mp.upper - Rational(sh));
                for (long j = 0; j <= s.n; ++j) {
                    if (lower[static_cast<std::size_t>(j)] != upper[static_cast<std::size_t>(s.n - j)]) {
                        dual = false;
                    }
                }
            }
            r.add(s.name + ": Poincare duality of extended perversities", dual);
        }

        GradedDims low_sat = ih_dims(s, Perversity(-1));
        bool sat = ih_dims(s, Perversity(-2)) == low_sat && ih_dims(s, Perversity(-3)) == low_sat;
        GradedDims high_sat = ih_dims(s, Perversity(s.f));
        sat = sat && ih_dims(s, Perversity(s.f + 1)) == high_sat && ih_dims(s, Perversity(s.f + 2)) == high_sat;
        r.add(s.name + ": saturation below -1 and above f", sat);

        GradedDims ext_low = extended_identities(s, Perversity(-1));
        GradedDims ext_high = extended_identities(s, Perversity(s.f));
        r.add(s.name + ": H(M) at p = -1", ext_low == low_sat, dims_string(ext_low) + " vs " + dims_string(low_sat));
        r.add(s.name + ": H(X, X_sing) at p = f", ext_high == high_sat,
              dims_string(ext_high) + " vs " + dims_string(high_sat));

        // tube cohomology against the Kunneth count of surviving fibre classes
        GradedDims fb = cohomology_dims(s.fibre);
        GradedDims bb = cohomology_dims(s.base);
        bool tube_ok = true;
        for (const auto& p : ps) {
            long c = p.truncation_cutoff(s.f);
            GradedDims kept = fb;
            for (std::size_t j = 0; j < kept.size(); ++j) {
                if (static_cast<long>(j) > c) {
                    kept[j] = 0;
                }
            }
            GradedDims want = on_degrees(convolve(bb, kept), 0, s.n);
            if (tube_ih(s, p) != want) {
                tube_ok = false;
            }
        }
        r.add(s.name + ": tube cohomology matches Kunneth count", tube_ok);

        if (is_product_space(s)) {
            bool prod_ok = true;
            for (const auto& p : ps) {
                if (ih_dims(s, p) != tube_ih(s, p)) {
                    prod_ok = false;
                }
            }
            r.add(s.name + ": product space IH equals tube cohomology", prod_ok);
        }
    }
    return r;
}

inline SuiteResult verify_weights(const std::vector<EdgeSpaceModel>& spaces) {
    SuiteResult r{"weights", {}};
    for (const auto& s : spaces) {
        bool sandwich = true;
        bool coincide = true;
        bool monotone = true;
        GradedDims prev_max;
        GradedDims prev_min;
        for (const auto& a : half_integer_weights()) {
            GradedDims mx = weighted_derham_dims(s, a, Extension::max).dims;
            GradedDims mn = weighted_derham_dims(s, a, Extension::min).dims;
            GradedDims mh = minimal_hodge_dims(s, a).dims;
            for (long k = 0; k <= s.n; ++k) {
                auto uk = static_cast<std::size_t>(k);
                if (mh[uk] > std::min(mx[uk], mn[uk])) {
                    sandwich = false;
                }
                if (!prev_max.empty() && (mx[uk] > prev_max[uk] || mn[uk] > prev_min[uk])) {
                    monotone = false;
                }
            }
            if (s.f % 2 == 0 && !is_integer(a) && mx != mn) {
                coincide = false;
            }
            prev_max = mx;
            prev_min = mn;
        }
        r.add(s.name + ": minimal Hodge below max and min", sandwich);
        if (s.f % 2 == 0) {
            r.add(s.name + ": max = min at half-integer weights", coincide);
        }
        // increasing a shrinks the local cone contribution; on closed spaces the
        // global count need not be monotone, so this is checked on products
        if (is_product_space(s)) {
            r.add(s.name + ": dims weakly decrease in a", monotone);
        }
        if (s.b % 2 == 0) {
            bool all_finite = true;
            for (long k = 0; k <= s.n; ++k) {
                if (complete_l2(s, k).infinite) {
                    all_finite = false;
                }
            }
            r.add(s.name + ": complete metric, b even, all degrees finite", all_finite);
        } else {
            bool pattern = true;
            GradedDims fb = cohomology_dims(s.fibre);
            for (long k = 0; k <= s.n; ++k) {
                long j = k - (s.b + 1) / 2;
                bool expect = j >= 0 && j < static_cast<long>(fb.size()) && fb[static_cast<std::size_t>(j)] > 0;
                if (complete_l2(s, k).infinite != expect) {
                    pattern = false;
                }
            }
            r.add(s.name + ": complete metric infinite degrees", pattern);
        }
    }
    return r;
}

inline SuiteResult verify_spectral(unsigned long seed = 2) {
    SuiteResult r{"spectral", {}};
    gen::Rng rng(seed);
    bool sum_rule = true;
    bool factor = true;
    bool reflect = true;
    for (int i = 0; i < 200; ++i) {
        long f = gen::uniform(rng, 0, 6);
        long k = gen::uniform(rng, 0, f);
        Rational a = gen::random_weight(rng);
        Rational l2 = make_rational(gen::uniform(rng, 0, 40), gen::uniform(rng, 1, 7));
        IndicialRootPair ex = indicial_roots(f, a, k, l2);
        IndicialRootPair nu = indicial_roots(f, a, k, SpectralValue::numeric(to_double(l2)));
        double want = to_double(2 * a - Rational(f));
        double tol = 4 * std::numeric_limits<double>::epsilon() * (std::abs(nu.minus) + std::abs(nu.plus) + 1);
        if (std::abs(nu.minus + nu.plus - want) > tol || nu.minus > nu.plus) {
            sum_rule = false;
        }
        if (ex.exact_minus && *ex.exact_minus + *ex.exact_plus != 2 * a - Rational(f)) {
            sum_rule = false;
        }
        IndicialRootPair zero = indicial_roots(f, a, k, Rational(0));
        Rational r1 = Rational(-k);
        Rational r2 = Rational(k - f) + 2 * a;
        if (!zero.exact_minus || *zero.exact_minus != std::min(r1, r2) || *zero.exact_plus != std::max(r1, r2)) {
            factor = false;
        }
        Rational a_half = make_rational(gen::uniform(rng, -6, 6), 2);
        Rational k_ref = Rational(f) - 2 * a_half - Rational(k);
        if (indicial_discriminant(f, a_half, k, l2) != indicial_discriminant(f, a_half, to_long(floor(k_ref)), l2)) {
            reflect = false;
        }
    }
    r.add("sum rule on 200 random pairs", sum_rule);
    r.add("zero-eigenvalue roots are {-k, k+2a-f}", factor);
    r.add("discriminant invariant under k -> f-2a-k", reflect);

    struct Named {
        std::string name;
        FibreSpectrum spec;
        GradedDims betti;
    };
    std::vector<Named> fibres = {
        {"circle", spectra::circle(), {1, 1}},
        {"circle scale 1/4", spectra::circle(make_rational(1, 4)), {1, 1}},
        {"circle scale 3", spectra::circle(3, 12), {1, 1}},
        {"flat torus", spectra::flat_torus(), {1, 2, 1}},
        {"flat torus 1 x 5", spectra::flat_torus(1, 5, 12), {1, 2, 1}},
        {"round sphere", spectra::round_sphere2(), {1, 0, 1}},
        {"round sphere radius 4", spectra::round_sphere2(4), {1, 0, 1}},
        {"point", spectra::point(), {1}},
    };
    for (const auto& fib : fibres) {
        r.add(fib.name + ": zero modes match Betti numbers", zero_modes_match(fib.spec, fib.betti));
        bool implication = true;
        for (const auto& a : half_integer_weights(-3, 3)) {
            for (const Rational& shift : {Rational(0), make_rational(1, 3)}) {
                Rational w = a + shift;
                if (essentially_selfadjoint(fib.spec.f, w, fib.spec) &&
                    !unique_closed_extension_d(fib.spec.f, w, fib.betti)) {
                    implication = false;
                }
            }
        }
        r.add(fib.name + ": self-adjoint implies unique closed extension", implication);
    }
    return r;
}

inline SuiteResult verify_fibredec() {
    SuiteResult r{"fibredec", {}};
    std::vector<std::pair<std::string, DiscreteFibre>> fibres = {
        {"circle n=3", build_fibre(FibreKind::circle, {3})},
        {"circle n=16 L=pi", build_fibre(FibreKind::circle, {16}, 0.5)},
        {"torus 4x4", build_fibre(FibreKind::torus, {4, 4})},
        {"torus 8x6 scale 2", build_fibre(FibreKind::torus, {8, 6}, 2.0)},
        {"3-torus 3x3x3", build_fibre(FibreKind::product, {3, 3, 3})},
    };
    for (const auto& [name, fib] : fibres) {
        r.add(name + ": d o d = 0 exactly", dd_defect(fib) == 0.0);
        bool symmetric = true;
        for (long q = 0; q <= fib.top_degree(); ++q) {
            Eigen::MatrixXd s = symmetric_laplacian(fib, q);
            if ((s - s.transpose()).cwiseAbs().maxCoeff() > 4 * std::numeric_limits<double>::epsilon() *
                                                                 std::max(1.0, s.cwiseAbs().maxCoeff())) {
                symmetric = false;
            }
        }
        r.add(name + ": Laplacian symmetric in the weighted inner product", symmetric);
        try {
            FibreSpectrum spec = spectrum_for_predicates(fib);
            r.add(name + ": snapped zero modes equal Betti numbers", zero_modes_match(spec, fib.exact_betti));
        } catch (const std::exception& e) {
            r.add(name + ": snapped zero modes equal Betti numbers", false, e.what());
        }
    }
    {
        DiscreteFibre t = build_fibre(FibreKind::torus, {8, 8});
        SpectrumResult s0 = fibre_spectrum(t, 0);
        SpectrumResult s2 = fibre_spectrum(t, 2);
        double worst = 0.0;
        for (std::size_t i = 0; i < s0.eigenvalues.size(); ++i) {
            worst = std::max(worst, std::abs(s0.eigenvalues[i] - s2.eigenvalues[i]));
        }
        r.add("torus 8x8: degree 0 and degree 2 spectra coincide", worst <= 1e-9 * s0.largest,
              "max difference " + std::to_string(worst));
    }
    {
        double l = 2.0 * M_PI;
        double e32 = std::abs(fibre_spectrum(build_fibre(FibreKind::circle, {32}), 0, 2).eigenvalues[1] - 1.0);
        double e64 = std::abs(fibre_spectrum(build_fibre(FibreKind::circle, {64}), 0, 2).eigenvalues[1] - 1.0);
        double ratio = e32 / e64;
        r.add("circle mesh convergence ratio in [3.5, 4.5]", ratio >= 3.5 && ratio <= 4.5,
              "ratio " + std::to_string(ratio));
        double d64 = fibre_spectrum(build_fibre(FibreKind::circle, {64}), 0, 2).eigenvalues[1];
        r.add("circle eigenvalue matches the discrete sine formula",
              std::abs(d64 - discrete_circle_eigenvalue(64, l, 1)) < 1e-10);
    }
    return r;
}

inline SuiteResult verify_radial(unsigned long seed = 3) {
    SuiteResult r{"radial", {}};
    gen::Rng rng(seed);
    bool triangle = true;
    bool min_le_max = true;
    std::vector<GradedDims> fibre_bettis = {{1}, {1, 1}, {1, 2, 1}, {1, 0, 1}, {1, 3, 3, 1}, {1, 0, 0, 0, 1},
                                            {1, 1, 0, 1, 1, 0}};
    for (const auto& fb : fibre_bettis) {
        long f = static_cast<long>(fb.size()) - 1;
        for (const auto& a : half_integer_weights()) {
            LocalCohomologyTable t = local_cohomology(fb, f, a);
            for (long k = 0; k <= f + 1; ++k) {
                auto uk = static_cast<std::size_t>(k);
                long h = k <= f ? fb[uk] : 0;
                long passing = pullback_norm(k, f, a).finite ? h : 0;
                if (t.max[uk] != passing) {
                    triangle = false;
                }
                if (t.min[uk] > t.max[uk]) {
                    min_le_max = false;
                }
            }
        }
    }
    r.add("local max cohomology counts classes with finite pullback norm", triangle);
    r.add("local min dims <= max dims over f = 0..5, a in [-2, 2]", min_le_max);

    DiscreteFibre torus = build_fibre(FibreKind::torus, {4, 4});
    std::vector<double> grid = log_grid(1e-4, 400);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        long k = 1 + i % 2;
        std::vector<double> poly;
        for (int j = 0; j <= 4; ++j) {
            poly.push_back(static_cast<double>(gen::uniform(rng, -20, 20)) / 10.0);
        }
        auto dim = static_cast<Eigen::Index>(torus.dim(k - 1));
        Eigen::VectorXd xi(dim);
        Eigen::VectorXd zeta(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            xi(j) = static_cast<double>(gen::uniform(rng, -10, 10)) / 7.0;
            zeta(j) = static_cast<double>(gen::uniform(rng, -10, 10)) / 3.0;
        }
        ConeForm w = polynomial_closed_form(torus, k, poly, xi, zeta, grid);
        worst = std::max(worst, reconstruct(torus, w, 0.6 + 0.1 * i).max_error());
    }
    r.add("homotopy identity d(eta + K_c omega) = omega", worst <= 1e-8, "max error " + std::to_string(worst));

    struct Mode {
        long k;
        double l2;
        long f;
        Rational a;
    };
    std::vector<Mode> modes = {{0, 0, 1, 0}, {1, 1, 3, make_rational(1, 2)}, {0, 1, 2, 0}, {1, 0.5, 2, make_rational(1, 4)}};
    double exp_err = 0.0;
    double sum_err = 0.0;
    for (const auto& m : modes) {
        ModeExponents me = mode_exponent(m.k, m.l2, m.f, m.a);
        IndicialRootPair ir = indicial_roots(m.f, m.a, m.k, SpectralValue::numeric(m.l2));
        exp_err = std::max({exp_err, std::abs(me.minus - ir.minus), std::abs(me.plus - ir.plus)});
        sum_err = std::max(sum_err, std::abs(me.minus + me.plus - to_double(2 * m.a - Rational(m.f))));
    }
    r.add("recovered exponents within 1e-3", exp_err <= 1e-3, "max error " + std::to_string(exp_err));
    r.add("recovered exponents obey the sum rule within 2e-3", sum_err <= 2e-3, "max error " + std::to_string(sum_err));

    bool dichotomy = true;
    for (long f = 0; f <= 5; ++f) {
        for (const auto& a : half_integer_weights()) {
            for (long k = 0; k <= f; ++k) {
                Rational lo = make_rational(f - 1, 2) - a;
                Rational hi = lo + 1;
                bool inside = Rational(k) > lo && Rational(k) < hi;
                Membership pos = min_membership(k, f, a, power_profile(k, make_rational(1, 2), 1e-2, 20));
                Membership flat = min_membership(k, f, a, power_profile(k, 0, 1e-2, 20));
                if (pos != Membership::member) {
                    dichotomy = false;
                }
                if (flat != (inside ? Membership::not_member : Membership::member)) {
                    dichotomy = false;
                }
            }
        }
    }
    r.add("x^gamma membership: gamma > 0 in, gamma = 0 out exactly in the open window", dichotomy);
    return r;
}

} // namespace edgehodge
