#pragma once

// Named built-in edge spaces.

#include "edgehodge/stratified.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace edgehodge {

class UnknownSpaceError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline EdgeSpaceModel assemble(std::string name, std::string description, CochainComplex base, CochainComplex fibre,
                               CochainComplex regular, const QMatrix& base_class, bool compact) {
    // r(m) = u (x) m with u a degree-0 cocycle of B and M built on a copy of F
    EdgeSpaceModel s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.b = base.top_degree();
    s.f = fibre.top_degree();
    s.n = s.b + s.f + 1;
    s.link_bundle = tensor(base, fibre);
    s.bigrading = tensor_layout(base, fibre);
    CochainComplex unit = complexes::point();
    ComplexMap u(unit, base, 0, {base_class});
    ComplexMap lift = tensor_map(u, identity_map(fibre));
    // point (x) F has the same matrices as F; re-seat the map on `regular`
    if (!(lift.source() == regular)) {
        throw ModelError("model '" + s.name + "': M must be a copy of F");
    }
    std::vector<QMatrix> maps;
    for (int k = 0; k <= s.link_bundle.top_degree(); ++k) {
        maps.push_back(lift.at(k));
    }
    s.restriction = ComplexMap(regular, s.link_bundle, 0, std::move(maps));
    s.fibre = std::move(fibre);
    s.base = std::move(base);
    s.regular = std::move(regular);
    s.compact = compact;
    validate_model(s);
    return s;
}

/// X = B x C(F): M = Y = B (x) F and r is the identity.
inline EdgeSpaceModel product_model(std::string name, std::string description, CochainComplex base,
                                    CochainComplex fibre) {
    EdgeSpaceModel s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.b = base.top_degree();
    s.f = fibre.top_degree();
    s.n = s.b + s.f + 1;
    s.link_bundle = tensor(base, fibre);
    s.bigrading = tensor_layout(base, fibre);
    s.regular = s.link_bundle;
    s.restriction = identity_map(s.link_bundle);
    s.fibre = std::move(fibre);
    s.base = std::move(base);
    validate_model(s);
    return s;
}

inline QMatrix constant_cochain(std::size_t vertices) {
    QMatrix u(vertices, 1);
    for (std::size_t i = 0; i < vertices; ++i) {
        u(i, 0) = 1;
    }
    return u;
}

} // namespace detail

struct CatalogueEntry {
    std::string name;
    long n;
    long b;
    long f;
    std::string description;
};

inline const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"cone-circle",  "cone-torus",           "cone-sphere2",
                                                   "susp-torus",   "edge-circle-over-circle", "edge-torus-over-circle"};
    return names;
}

inline EdgeSpaceModel builtin_space(const std::string& name) {
    using namespace complexes;
    if (name == "cone-circle") {
        return detail::product_model(name, "open cone over a circle; B = point, F = S^1", point(), circle());
    }
    if (name == "cone-torus") {
        return detail::product_model(name, "open cone over a torus; B = point, F = T^2", point(), torus());
    }
    if (name == "cone-sphere2") {
        return detail::product_model(name, "open cone over a 2-sphere; B = point, F = S^2", point(), sphere2());
    }
    if (name == "susp-torus") {
        return detail::assemble(name, "suspension of T^2; B = two cone points, F = T^2, M = (0,1) x T^2", points(2),
                                torus(), torus(), detail::constant_cochain(2), true);
    }
    if (name == "edge-circle-over-circle") {
        return detail::product_model(name, "S^1 x C(S^1); B = S^1, F = S^1", circle(), circle());
    }
    if (name == "edge-torus-over-circle") {
        return detail::assemble(name,
                                "compact: (D^2 x T^2) with the T^2 fibres of its boundary coned off; B = S^1, "
                                "F = T^2, M ~ T^2",
                                circle(), torus(), torus(), detail::constant_cochain(2), true);
    }
    throw UnknownSpaceError("unknown space '" + name + "'");
}

inline std::vector<CatalogueEntry> list_spaces() {
    std::vector<CatalogueEntry> out;
    for (const auto& name : builtin_names()) {
        EdgeSpaceModel s = builtin_space(name);
        out.push_back({s.name, s.n, s.b, s.f, s.description});
    }
    return out;
}

/// True when X is the product B x C(F), so IH(X) is the tube cohomology.
inline bool is_product_space(const EdgeSpaceModel& s) {
    if (!(s.regular == s.link_bundle)) {
        return false;
    }
    for (int k = 0; k <= s.link_bundle.top_degree(); ++k) {
        if (!(s.restriction.at(k) == QMatrix::identity(s.link_bundle.dim(k)))) {
            return false;
        }
    }
    return true;
}

} // namespace edgehodge
