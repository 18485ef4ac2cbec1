#pragma once

// Intersection cohomology of a space with one simple edge stratum.
//
// X = M u T where T is the tube B x C(F) around the singular stratum and
// M n T ~ Y = B x F. IH^*_p(X, B) is the cohomology of the chain-level
// Mayer-Vietoris complex
//
//     K^k = M^k (+) T_p^k (+) Y^{k-1},
//     d(m, t, y) = (dm, dt, r(m) - i(t) - dy),
//
// where r : M -> Y is the restriction, T_p = B (x) trunc_{<= c} F with
// c = floor(f - 1 - p), and i is the inclusion T_p -> B (x) F = Y. The long
// exact sequence of K is the Mayer-Vietoris sequence
//     ... -> H^{k-1}(Y) -> IH^k(X) -> H^k(M) (+) IH^k(T) -> H^k(Y) -> ...

#include "edgehodge/cochain.hpp"

#include <optional>
#include <string>
#include <utility>

namespace edgehodge {

/// Model data that violates its own invariants.
class ModelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Value of a perversity at the link codimension f + 1. Any rational is
/// accepted; values <= 0 and >= f are the extended range.
struct Perversity {
    Rational value;

    Perversity() = default;
    explicit Perversity(Rational v) : value(std::move(v)) { value.canonicalize(); }
    explicit Perversity(long v) : value(v) {}

    /// Largest fibre degree kept by the cone truncation: floor(f - 1 - p).
    long truncation_cutoff(long f) const { return to_long(floor(Rational(f - 1) - value)); }

    friend Perversity operator+(const Perversity& p, const Rational& s) { return Perversity(p.value + s); }
    friend Perversity operator-(const Perversity& p, const Rational& s) { return Perversity(p.value - s); }
    friend bool operator==(const Perversity& a, const Perversity& b) { return a.value == b.value; }
    friend bool operator<(const Perversity& a, const Perversity& b) { return a.value < b.value; }
    friend bool operator<=(const Perversity& a, const Perversity& b) { return a.value <= b.value; }
};

struct MiddlePerversities {
    Perversity lower;
    Perversity upper;
};

inline MiddlePerversities middle_perversities(long f) {
    if (f < 0) {
        throw std::invalid_argument("middle_perversities: fibre dimension must be >= 0");
    }
    if (f % 2 != 0) {
        return {Perversity((f - 1) / 2), Perversity((f - 1) / 2)};
    }
    return {Perversity(f / 2), Perversity(f / 2 - 1)};
}

/// Local intersection cohomology of the cone C(F) in degree k.
inline long cone_local_ih(const GradedDims& fibre_betti, long f, const Perversity& p, long k) {
    if (k < 0 || k >= static_cast<long>(fibre_betti.size())) {
        return 0;
    }
    return k <= p.truncation_cutoff(f) ? fibre_betti[static_cast<std::size_t>(k)] : 0;
}

/// A simple edge space (X, B) presented by finite complexes.
struct EdgeSpaceModel {
    std::string name;
    std::string description;
    long n = 0;
    long b = 0;
    long f = 0;
    CochainComplex fibre;      // F
    CochainComplex base;       // B
    CochainComplex regular;    // M
    CochainComplex link_bundle; // Y, equal to base (x) fibre
    ComplexMap restriction;    // M -> Y
    TensorLayout bigrading;    // (base, fibre) bidegree blocks of Y
    bool compact = false;      // X closed, so IH satisfies Poincare duality
};

/// Throws ModelError when any structural invariant fails.
inline void validate_model(const EdgeSpaceModel& s) {
    auto fail = [&](const std::string& why) { throw ModelError("model '" + s.name + "': " + why); };
    for (const auto* c : {&s.fibre, &s.base, &s.regular, &s.link_bundle}) {
        if (!c->is_zero_complex() && c->low_degree() != 0) {
            fail("component complexes must start in degree 0");
        }
        if (!verify_complex(*c)) {
            fail("a component complex has d o d != 0");
        }
    }
    if (s.fibre.is_zero_complex() || s.base.is_zero_complex()) {
        fail("fibre and base must be nonempty");
    }
    if (s.f != s.fibre.top_degree()) {
        fail("f must equal the top degree of F");
    }
    if (s.b != s.base.top_degree()) {
        fail("b must equal the top degree of B");
    }
    if (s.n != s.b + s.f + 1) {
        fail("n must equal b + f + 1");
    }
    if (!(s.link_bundle == tensor(s.base, s.fibre))) {
        fail("Y must be the tensor product of B and F (only product bundles are supported)");
    }
    TensorLayout expected = tensor_layout(s.base, s.fibre);
    if (expected.low != s.bigrading.low || expected.blocks.size() != s.bigrading.blocks.size()) {
        fail("bigrading does not match B (x) F");
    }
    for (std::size_t i = 0; i < expected.blocks.size(); ++i) {
        const auto& e = expected.blocks[i];
        const auto& g = s.bigrading.blocks[i];
        if (e.size() != g.size()) {
            fail("bigrading does not match B (x) F");
        }
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (e[j].left_degree != g[j].left_degree || e[j].right_degree != g[j].right_degree ||
                e[j].offset != g[j].offset || e[j].size != g[j].size) {
                fail("bigrading does not match B (x) F");
            }
        }
    }
    if (!(s.restriction.source() == s.regular) || !(s.restriction.target() == s.link_bundle)) {
        fail("restriction must map M to Y");
    }
    if (!verify_map(s.restriction)) {
        fail("restriction does not commute with the differentials");
    }
    if (!s.regular.is_zero_complex() && s.regular.top_degree() > s.n) {
        fail("M has cells above degree n");
    }
}

/// Degree-c truncation of F with its inclusion into F.
struct Truncation {
    long cutoff;
    ComplexMap inclusion; // trunc F -> F
};

/// trunc_{<= c} F: F^j for j < c, the cocycles Z^c in degree c, 0 above.
inline Truncation truncate(const CochainComplex& fibre, long cutoff) {
    if (cutoff < fibre.low_degree()) {
        return {cutoff, ComplexMap(CochainComplex{}, fibre, 0, {})};
    }
    int c = static_cast<int>(std::min<long>(cutoff, fibre.top_degree()));
    KernelBasis cycles = fibre.diff(c).kernel();
    std::vector<std::size_t> dims;
    std::vector<QMatrix> d;
    std::vector<QMatrix> maps;
    for (int j = fibre.low_degree(); j < c; ++j) {
        dims.push_back(fibre.dim(j));
        maps.push_back(QMatrix::identity(fibre.dim(j)));
    }
    dims.push_back(cycles.basis.cols());
    maps.push_back(cycles.basis);
    for (int j = fibre.low_degree(); j < c - 1; ++j) {
        d.push_back(fibre.diff(j));
    }
    if (c > fibre.low_degree()) {
        // boundaries land in Z^c; record them in kernel coordinates
        d.push_back(cycles.coordinates_of(fibre.diff(c - 1)));
    }
    CochainComplex trunc(fibre.low_degree(), std::move(dims), std::move(d));
    return {cutoff, ComplexMap(std::move(trunc), fibre, fibre.low_degree(), std::move(maps))};
}

/// Inclusion trunc_{<= small} F -> trunc_{<= large} F for small <= large.
inline ComplexMap truncation_inclusion(const CochainComplex& fibre, long small, long large) {
    if (small > large) {
        throw std::invalid_argument("truncation_inclusion: cutoffs out of order");
    }
    Truncation src = truncate(fibre, small);
    Truncation dst = truncate(fibre, large);
    const CochainComplex& s = src.inclusion.source();
    const CochainComplex& t = dst.inclusion.source();
    if (s.is_zero_complex()) {
        return ComplexMap(s, t, 0, {});
    }
    int top = fibre.top_degree();
    long cs = std::min<long>(small, top);
    long ct = std::min<long>(large, top);
    std::vector<QMatrix> maps;
    for (int j = s.low_degree(); j <= s.top_degree(); ++j) {
        if (j < cs || cs == ct) {
            maps.push_back(QMatrix::identity(s.dim(j)));
        } else {
            maps.push_back(src.inclusion.at(j)); // Z^c inside the full F^c
        }
    }
    return ComplexMap(s, t, s.low_degree(), std::move(maps));
}

/// The tube complex B (x) trunc F with its inclusion into Y.
inline ComplexMap tube_inclusion(const EdgeSpaceModel& s, const Perversity& p) {
    Truncation trunc = truncate(s.fibre, p.truncation_cutoff(s.f));
    return tensor_map(identity_map(s.base), trunc.inclusion);
}

/// Chain-level Mayer-Vietoris complex over degrees 0..n.
inline CochainComplex mayer_vietoris_complex(const ComplexMap& restriction, const ComplexMap& tube, int top) {
    const CochainComplex& m = restriction.source();
    const CochainComplex& t = tube.source();
    const CochainComplex& y = restriction.target();
    std::vector<std::size_t> dims;
    for (int k = 0; k <= top; ++k) {
        dims.push_back(m.dim(k) + t.dim(k) + y.dim(k - 1));
    }
    std::vector<QMatrix> d;
    for (int k = 0; k < top; ++k) {
        QMatrix blk(dims[static_cast<std::size_t>(k + 1)], dims[static_cast<std::size_t>(k)]);
        std::size_t m1 = m.dim(k + 1);
        std::size_t t1 = t.dim(k + 1);
        std::size_t m0 = m.dim(k);
        std::size_t t0 = t.dim(k);
        blk.set_block(0, 0, m.diff(k));
        blk.set_block(m1, m0, t.diff(k));
        blk.set_block(m1 + t1, 0, restriction.at(k));
        blk.set_block(m1 + t1, m0, -tube.at(k));
        blk.set_block(m1 + t1, m0 + t0, -y.diff(k - 1));
        d.push_back(std::move(blk));
    }
    return CochainComplex(0, std::move(dims), std::move(d));
}

inline CochainComplex ih_complex(const EdgeSpaceModel& s, const Perversity& p) {
    return mayer_vietoris_complex(s.restriction, tube_inclusion(s, p), static_cast<int>(s.n));
}

/// Pads or trims a dimension list that starts in degree `low` to degrees 0..n.
inline GradedDims on_degrees(const GradedDims& dims, int low, long n) {
    GradedDims out(static_cast<std::size_t>(n + 1), 0);
    for (std::size_t i = 0; i < dims.size(); ++i) {
        long k = low + static_cast<long>(i);
        if (k >= 0 && k <= n) {
            out[static_cast<std::size_t>(k)] = dims[i];
        } else if (dims[i] != 0) {
            throw ComplexError("cohomology outside degrees 0..n");
        }
    }
    return out;
}

/// IH^k_p(X, B) for k = 0..n.
inline GradedDims ih_dims(const EdgeSpaceModel& s, const Perversity& p) {
    CochainComplex k = ih_complex(s, p);
    return on_degrees(cohomology_dims(k), k.low_degree(), s.n);
}

inline long ih_dim(const EdgeSpaceModel& s, const Perversity& p, long k) {
    if (k < 0 || k > s.n) {
        return 0;
    }
    return ih_dims(s, p)[static_cast<std::size_t>(k)];
}

/// Cohomology of the tube B x C(F) at perversity p, degrees 0..n.
inline GradedDims tube_ih(const EdgeSpaceModel& s, const Perversity& p) {
    ComplexMap inclusion = tube_inclusion(s, p);
    const CochainComplex& tube = inclusion.source();
    if (tube.is_zero_complex()) {
        return GradedDims(static_cast<std::size_t>(s.n + 1), 0);
    }
    return on_degrees(cohomology_dims(tube), tube.low_degree(), s.n);
}

/// The map between Mayer-Vietoris complexes induced by the inclusion of
/// truncations; requires p_src >= p_tgt (the source keeps fewer degrees).
inline ComplexMap perversity_change_map(const EdgeSpaceModel& s, const Perversity& p_src, const Perversity& p_tgt) {
    long c_src = p_src.truncation_cutoff(s.f);
    long c_tgt = p_tgt.truncation_cutoff(s.f);
    if (c_src > c_tgt) {
        throw std::invalid_argument("perversity change map needs p_src >= p_tgt");
    }
    ComplexMap tube_src = tube_inclusion(s, p_src);
    ComplexMap tube_tgt = tube_inclusion(s, p_tgt);
    ComplexMap fibre_incl = truncation_inclusion(s.fibre, c_src, c_tgt);
    ComplexMap tube_map = tensor_map(identity_map(s.base), fibre_incl);
    int top = static_cast<int>(s.n);
    CochainComplex k_src = mayer_vietoris_complex(s.restriction, tube_src, top);
    CochainComplex k_tgt = mayer_vietoris_complex(s.restriction, tube_tgt, top);
    const CochainComplex& m = s.regular;
    const CochainComplex& y = s.link_bundle;
    std::vector<QMatrix> maps;
    for (int k = 0; k <= top; ++k) {
        QMatrix blk(k_tgt.dim(k), k_src.dim(k));
        blk.set_block(0, 0, QMatrix::identity(m.dim(k)));
        blk.set_block(m.dim(k), m.dim(k), tube_map.at(k));
        blk.set_block(m.dim(k) + tube_tgt.source().dim(k), m.dim(k) + tube_src.source().dim(k),
                      QMatrix::identity(y.dim(k - 1)));
        maps.push_back(std::move(blk));
    }
    return ComplexMap(std::move(k_src), std::move(k_tgt), 0, std::move(maps));
}

/// Rank of IH^k_{p_src} -> IH^k_{p_tgt}.
inline long ih_map_rank(const EdgeSpaceModel& s, const Perversity& p_src, const Perversity& p_tgt, long k) {
    if (p_src.truncation_cutoff(s.f) > p_tgt.truncation_cutoff(s.f)) {
        throw std::invalid_argument("ih_map_rank: the source truncation must be contained in the target truncation");
    }
    if (k < 0 || k > s.n) {
        return 0;
    }
    return static_cast<long>(induced_map_rank(perversity_change_map(s, p_src, p_tgt), static_cast<int>(k)));
}

/// H^*(X, X^sing) presented as the cohomology of Cone(r : M -> Y), shifted up
/// by one so that degree k of the result is H^{k-1}(Cone).
inline GradedDims relative_to_stratum_dims(const EdgeSpaceModel& s) {
    CochainComplex cone = mapping_cone(s.restriction);
    if (cone.is_zero_complex()) {
        return GradedDims(static_cast<std::size_t>(s.n + 1), 0);
    }
    return on_degrees(cohomology_dims(cone), cone.low_degree() + 1, s.n);
}

class ExtendedRangeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cohomology predicted for perversities past either end of the truncation
/// range: H^*(M) when nothing is truncated, H^*(X, X^sing) when everything is.
inline GradedDims extended_identities(const EdgeSpaceModel& s, const Perversity& p) {
    if (p.value <= -1) {
        return on_degrees(cohomology_dims(s.regular), 0, s.n);
    }
    if (p.value >= s.f) {
        return relative_to_stratum_dims(s);
    }
    throw ExtendedRangeError("extended_identities: perversity " + to_string(p.value) + " lies in (-1, f)");
}

} // namespace edgehodge
