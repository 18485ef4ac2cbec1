#pragma once

// Weighted L2 de Rham cohomology of incomplete edge metrics expressed as
// perversity-shifted intersection cohomology, and the complete edge case.

#include "edgehodge/stratified.hpp"

#include <string>

namespace edgehodge {

/// Least integer strictly greater than t.
inline Integer ceil_strict(const Rational& t) { return floor(t) + 1; }

/// Least integer greater than or equal to t.
inline Integer ceil_weak(const Rational& t) { return ceil(t); }

enum class Extension { max, min, minimal_hodge };

inline const char* to_string(Extension e) {
    switch (e) {
    case Extension::max:
        return "max";
    case Extension::min:
        return "min";
    case Extension::minimal_hodge:
        return "minimal-hodge";
    }
    return "?";
}

struct WeightedReport {
    Rational weight;
    Extension extension = Extension::max;
    GradedDims dims;
    Perversity perversity;        // for minimal-hodge: the target (max) perversity
    Perversity source_perversity; // minimal-hodge only: the min perversity
};

/// Perversity whose IH equals the max-extension cohomology at weight a.
inline Perversity max_extension_perversity(long f, const Rational& a) {
    MiddlePerversities m = middle_perversities(f);
    Rational shift = f % 2 != 0 ? Rational(ceil_strict(a - 1)) : Rational(ceil_strict(a - make_rational(1, 2)));
    return m.upper + shift;
}

/// Perversity whose IH equals the min-extension cohomology at weight a.
inline Perversity min_extension_perversity(long f, const Rational& a) {
    MiddlePerversities m = middle_perversities(f);
    Rational shift = f % 2 != 0 ? Rational(ceil_weak(a)) : Rational(ceil_weak(a - make_rational(1, 2)));
    return m.lower + shift;
}

inline WeightedReport weighted_derham_dims(const EdgeSpaceModel& s, const Rational& a, Extension ext) {
    if (ext == Extension::minimal_hodge) {
        throw std::invalid_argument("weighted_derham_dims: use minimal_hodge_dims for the minimal Hodge cohomology");
    }
    WeightedReport r;
    r.weight = a;
    r.extension = ext;
    r.perversity = ext == Extension::max ? max_extension_perversity(s.f, a) : min_extension_perversity(s.f, a);
    r.source_perversity = r.perversity;
    r.dims = ih_dims(s, r.perversity);
    return r;
}

/// Image of the min-extension IH in the max-extension IH, degreewise.
inline WeightedReport minimal_hodge_dims(const EdgeSpaceModel& s, const Rational& a) {
    WeightedReport r;
    r.weight = a;
    r.extension = Extension::minimal_hodge;
    r.source_perversity = min_extension_perversity(s.f, a);
    r.perversity = max_extension_perversity(s.f, a);
    ComplexMap change = perversity_change_map(s, r.source_perversity, r.perversity);
    for (long k = 0; k <= s.n; ++k) {
        r.dims.push_back(static_cast<long>(induced_map_rank(change, static_cast<int>(k))));
    }
    return r;
}

/// L2 Hodge cohomology of a complete edge metric in one degree.
struct CompleteL2Answer {
    long degree = 0;
    bool infinite = false;
    long dim = 0;              // meaningful when !infinite
    Perversity perversity;     // f + b/2 - k
};

inline Perversity complete_metric_perversity(const EdgeSpaceModel& s, long k) {
    return Perversity(Rational(s.f) + make_rational(s.b, 2) - Rational(k));
}

inline CompleteL2Answer complete_l2(const EdgeSpaceModel& s, long k) {
    CompleteL2Answer out;
    out.degree = k;
    out.perversity = complete_metric_perversity(s, k);
    // infinite iff k = j + (b+1)/2 with H^j(F) != 0
    if ((s.b + 1) % 2 == 0) {
        long j = k - (s.b + 1) / 2;
        if (betti(s.fibre, static_cast<int>(j)) > 0) {
            out.infinite = true;
            return out;
        }
    }
    out.dim = ih_dim(s, out.perversity, k);
    return out;
}

} // namespace edgehodge
