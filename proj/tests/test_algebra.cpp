#include "edgehodge/serialize.hpp"
#include "edgehodge/verify.hpp"

#include "oracle.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <sstream>

using namespace edgehodge;

namespace {

using Rng = std::mt19937_64;

long draw(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

QMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, long spread, int zero_bias) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            if (draw(rng, 0, 9) < zero_bias) {
                continue;
            }
            m(i, j) = make_rational(draw(rng, -spread, spread), draw(rng, 1, 3));
        }
    }
    return m;
}

/// Low-rank product A B, so rank deficiency is common.
QMatrix random_low_rank(Rng& rng, std::size_t rows, std::size_t cols) {
    std::size_t inner = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(std::min(rows, cols))));
    return random_matrix(rng, rows, inner, 4, 3) * random_matrix(rng, inner, cols, 4, 3);
}

ComplexMap map_between(const CochainComplex& a, const CochainComplex& b, std::vector<QMatrix> maps) {
    return ComplexMap(a, b, a.low_degree(), std::move(maps));
}

} // namespace

TEST_CASE("rationals parse exactly and canonicalize", "[rational]") {
    CHECK(parse_rational("2/4") == make_rational(1, 2));
    CHECK(to_string(parse_rational("-6/4")) == "-3/2");
    CHECK(parse_rational("0.125") == make_rational(1, 8));
    CHECK(parse_rational("-1.5e1") == Rational(-15));
    CHECK(parse_rational(" 3 ") == Rational(3));
    CHECK(make_rational(2, 2) == Rational(1));
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK(floor(make_rational(-1, 2)) == -1);
    CHECK(ceil(make_rational(-1, 2)) == 0);
    Rational root;
    CHECK(exact_sqrt(make_rational(9, 4), root));
    CHECK(root == make_rational(3, 2));
    CHECK_FALSE(exact_sqrt(Rational(2), root));
}

TEST_CASE("rank and kernel agree with the cpp_rational oracle", "[qmatrix][property]") {
    Rng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        auto rows = static_cast<std::size_t>(draw(rng, 0, 7));
        auto cols = static_cast<std::size_t>(draw(rng, 0, 7));
        QMatrix m = trial % 2 == 0 ? random_low_rank(rng, rows, cols) : random_matrix(rng, rows, cols, 3, 5);
        std::size_t r = m.rank();
        REQUIRE(r == oracle::rank(oracle::from_engine(m)));
        KernelBasis k = m.kernel();
        REQUIRE(k.basis.rows() == cols);
        REQUIRE(k.basis.cols() + r == cols);
        REQUIRE((m * k.basis).is_zero());
        REQUIRE(k.basis.rank() == k.basis.cols());
    }
}

TEST_CASE("QMatrix shape errors", "[qmatrix]") {
    QMatrix a(2, 3);
    QMatrix b(2, 2);
    CHECK_THROWS_AS(a * a, ShapeError);
    CHECK_THROWS_AS(a += b, ShapeError);
    CHECK(QMatrix::kron(QMatrix::identity(2), QMatrix{{1, 2}}).cols() == 4);
    CHECK(QMatrix(0, 5).rank() == 0);
}

TEST_CASE("verify_complex", "[cochain]") {
    CHECK(verify_complex(complexes::circle()));
    CochainComplex bad(0, {1, 1, 1}, {QMatrix{{1}}, QMatrix{{1}}});
    CHECK_FALSE(verify_complex(bad));
    CHECK(verify_complex(CochainComplex::with_zero_differentials(0, {3, 0, 5})));
    CHECK_THROWS_AS(CochainComplex(0, {2, 2}, {QMatrix(3, 2)}), ShapeError);
}

TEST_CASE("cohomology of named complexes", "[cochain]") {
    CHECK(cohomology_dims(complexes::circle()) == GradedDims{1, 1});
    CHECK(cohomology_dims(complexes::polygon(7)) == GradedDims{1, 1});
    CHECK(cohomology_dims(complexes::torus()) == GradedDims{1, 2, 1});
    CHECK(complexes::torus().dims() == std::vector<std::size_t>{4, 8, 4});
    CHECK(cohomology_dims(complexes::sphere2()) == GradedDims{1, 0, 1});
    CHECK(cohomology_dims(CochainComplex{}).empty());
    CHECK(cohomology_dims(complexes::interval()) == GradedDims{1, 0});
    CHECK(cohomology_dims(complexes::disjoint_union(complexes::circle(), complexes::point())) == GradedDims{2, 1});
    CHECK(betti(complexes::torus(), 1) == 2);
    CHECK(betti(complexes::torus(), 7) == 0);
}

TEST_CASE("tensor products", "[cochain]") {
    CochainComplex c = complexes::circle();
    CHECK(cohomology_dims(tensor(c, c)) == GradedDims{1, 2, 1});
    CHECK(cohomology_dims(tensor(c, complexes::point())) == cohomology_dims(c));
    CHECK(cohomology_dims(tensor(complexes::point(), c)) == cohomology_dims(c));
    CHECK(cohomology_dims(tensor(c, complexes::interval())) == GradedDims{1, 1, 0});
    CHECK(cohomology_dims(tensor(complexes::sphere2(), c)) == GradedDims{1, 1, 1, 1});

    TensorLayout layout = tensor_layout(c, c);
    REQUIRE(layout.blocks.size() == 3);
    REQUIRE(layout.blocks[1].size() == 2);
    CHECK(layout.blocks[1][0].left_degree == 0);
    CHECK(layout.blocks[1][0].right_degree == 1);
    CHECK(layout.blocks[1][1].offset == 4);
}

TEST_CASE("Kunneth on random complexes", "[cochain][property]") {
    Rng rng(5);
    for (int trial = 0; trial < 25; ++trial) {
        GradedDims ba;
        GradedDims bb;
        CochainComplex a = gen::random_complex(rng, static_cast<int>(draw(rng, 0, 2)), ba);
        CochainComplex b = gen::random_complex(rng, static_cast<int>(draw(rng, 0, 2)), bb);
        REQUIRE(verify_complex(a));
        REQUIRE(cohomology_dims(a) == ba);
        CochainComplex t = tensor(a, b);
        REQUIRE(verify_complex(t));
        REQUIRE(cohomology_dims(t) == convolve(ba, bb));
        REQUIRE(t.euler_characteristic() == a.euler_characteristic() * b.euler_characteristic());
        REQUIRE(oracle::betti(oracle::from_engine(t)) == cohomology_dims(t));
    }
}

TEST_CASE("mapping cones", "[cochain]") {
    CochainComplex c = complexes::circle();
    CochainComplex id_cone = mapping_cone(identity_map(c));
    for (long d : cohomology_dims(id_cone)) {
        CHECK(d == 0);
    }
    CochainComplex zero_cone = mapping_cone(zero_map(c, c));
    CHECK(zero_cone.low_degree() == -1);
    CHECK(cohomology_dims(zero_cone) == GradedDims{1, 2, 1});

    // restriction C(S^1) -> C(pt) at vertex v0: the cone computes H^{*+1}(S^1, pt)
    ComplexMap restrict = map_between(c, complexes::point(), {QMatrix{{1, 0}}});
    REQUIRE(verify_map(restrict));
    CHECK(cohomology_dims(mapping_cone(restrict)) == GradedDims{0, 1});

    ComplexMap not_a_map = map_between(complexes::point(), c, {QMatrix{{1}, {0}}});
    CHECK_FALSE(verify_map(not_a_map));
    CHECK_THROWS_AS(mapping_cone(not_a_map), ComplexError);
}

TEST_CASE("induced map ranks", "[cochain]") {
    CochainComplex c = complexes::circle();
    CHECK(induced_map_rank(identity_map(c), 0) == 1);
    CHECK(induced_map_rank(identity_map(complexes::torus()), 1) == 2);
    CHECK(induced_map_rank(zero_map(c, c), 1) == 0);
    QMatrix two = QMatrix::identity(2);
    two *= Rational(2);
    ComplexMap doubling = map_between(c, c, {two, two});
    REQUIRE(verify_map(doubling));
    CHECK(induced_map_rank(doubling, 1) == 1);
}

TEST_CASE("cone long exact sequence on random maps", "[cochain][property]") {
    // phi = projection onto a random subcomplex direct summand keeps the map
    // a chain map; the cone's Euler characteristic is chi(B) - chi(A)
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        GradedDims ba;
        GradedDims bb;
        CochainComplex a = gen::random_complex(rng, 2, ba);
        CochainComplex b = gen::random_complex(rng, 2, bb);
        CochainComplex ab = direct_sum(a, b);
        std::vector<QMatrix> proj;
        for (int k = 0; k <= 2; ++k) {
            QMatrix p(b.dim(k), a.dim(k) + b.dim(k));
            p.set_block(0, a.dim(k), QMatrix::identity(b.dim(k)));
            proj.push_back(p);
        }
        ComplexMap phi(ab, b, 0, proj);
        REQUIRE(verify_map(phi));
        CochainComplex cone = mapping_cone(phi);
        GradedDims h = cohomology_dims(cone);
        REQUIRE(euler_characteristic(h, cone.low_degree()) == b.euler_characteristic() - ab.euler_characteristic());
        // the projection is onto in cohomology, so H(cone) is H(A) shifted down one
        GradedDims shifted = on_degrees(h, cone.low_degree() + 1, 2);
        REQUIRE(shifted == on_degrees(ba, 0, 2));
        for (int k = 0; k <= 2; ++k) {
            REQUIRE(static_cast<long>(induced_map_rank(phi, k)) == bb[static_cast<std::size_t>(k)]);
        }
    }
}

TEST_CASE("cohomology is invariant under change of basis", "[cochain][property]") {
    Rng rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        GradedDims want;
        CochainComplex c = gen::random_complex(rng, 3, want);
        CochainComplex moved = gen::change_basis(rng, c);
        REQUIRE(verify_complex(moved));
        REQUIRE(cohomology_dims(moved) == want);
    }
}

TEST_CASE("cochain suite passes", "[cochain][suite]") {
    SuiteResult r = verify_cochain();
    for (const auto& c : r.checks) {
        INFO(c.name << " " << c.detail);
        CHECK(c.passed);
    }
}

TEST_CASE("JSON round trips", "[serialize]") {
    CochainComplex t = complexes::torus();
    CHECK(complex_from_json(to_json(t)) == t);
    CochainComplex shifted = mapping_cone(zero_map(complexes::circle(), complexes::circle()));
    CHECK(complex_from_json(Json::parse(to_json(shifted).dump())) == shifted);

    for (const auto& name : builtin_names()) {
        EdgeSpaceModel s = builtin_space(name);
        EdgeSpaceModel back = model_from_json(Json::parse(to_json(s).dump()));
        CHECK(back.name == s.name);
        CHECK(back.compact == s.compact);
        CHECK(back.regular == s.regular);
        CHECK(ih_dims(back, middle_perversities(s.f).upper) == ih_dims(s, middle_perversities(s.f).upper));
    }

    FibreSpectrum sphere = spectra::round_sphere2(make_rational(3, 2), 3);
    FibreSpectrum again = spectrum_from_json(to_json(sphere));
    REQUIRE(again.degrees.size() == sphere.degrees.size());
    CHECK(*again.degrees[1][0].exact == *sphere.degrees[1][0].exact);
    CHECK(to_json(again) == to_json(sphere));
}

TEST_CASE("malformed JSON is rejected", "[serialize]") {
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"dims":[1,1],"differentials":[]})")), FormatError);
    CHECK_THROWS_AS(complex_from_json(Json::parse(R"({"dims":[1,1],"differentials":[[["1","2"]]]})")), FormatError);
    Json bad_model = to_json(builtin_space("cone-circle"));
    bad_model["f"] = 3;
    CHECK_THROWS_AS(model_from_json(bad_model), ModelError);
    Json bad_spectrum = to_json(spectra::circle());
    bad_spectrum["degrees"][0][0]["value"] = true;
    CHECK_THROWS_AS(spectrum_from_json(bad_spectrum), FormatError);
}

TEST_CASE("two-column tables round-trip bit-exactly", "[serialize]") {
    std::vector<double> x = log_grid(1e-3, 7);
    std::vector<double> y;
    for (double t : x) {
        y.push_back(std::sqrt(t) / 3.0);
    }
    std::stringstream ss;
    ss << "# x value\n";
    write_table(ss, x, y);
    auto [x2, y2] = read_table(ss);
    CHECK(x2 == x);
    CHECK(y2 == y);
    std::stringstream bad("1 2 3\n");
    CHECK_THROWS_AS(read_table(bad), FormatError);
}
