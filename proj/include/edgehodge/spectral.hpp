#pragma once

// Indicial roots of the weighted Gauss-Bonnet operator on a cone C(F) and the
// predicates built from them.
//
// On pairs (alpha_k, beta_k) of fibre k-forms in a Laplace eigenspace with
// eigenvalue lambda^2, the indicial equation is
//     gamma^2 + (f - 2a) gamma + k (f - k - 2a) - lambda^2 = 0,
// with roots a - f/2 +- sqrt((f - 2a - 2k)^2 + 4 lambda^2) / 2.

#include "edgehodge/cochain.hpp"
#include "edgehodge/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgehodge {

/// One eigenvalue lambda^2 of the fibre Laplacian with its multiplicity.
struct SpectralValue {
    double value = 0.0;
    std::optional<Rational> exact;
    std::size_t multiplicity = 1;

    static SpectralValue exact_value(const Rational& v, std::size_t mult = 1) {
        return {to_double(v), v, mult};
    }
    static SpectralValue numeric(double v, std::size_t mult = 1) { return {v, std::nullopt, mult}; }
};

enum class SpectrumProvenance { closed_form, discrete };

inline const char* to_string(SpectrumProvenance p) {
    return p == SpectrumProvenance::closed_form ? "closed-form" : "discrete";
}

/// Per form degree 0..f, ascending eigenvalues of the fibre Laplacian. Only a
/// finite part of the spectrum is ever stored; `complete_below` records the
/// bound under which every eigenvalue is listed.
struct FibreSpectrum {
    long f = 0;
    std::vector<std::vector<SpectralValue>> degrees;
    SpectrumProvenance provenance = SpectrumProvenance::closed_form;
    double complete_below = std::numeric_limits<double>::infinity();

    std::size_t zero_multiplicity(long k) const {
        if (k < 0 || k >= static_cast<long>(degrees.size())) {
            return 0;
        }
        std::size_t m = 0;
        for (const auto& v : degrees[static_cast<std::size_t>(k)]) {
            bool zero = v.exact ? sgn(*v.exact) == 0 : v.value == 0.0;
            if (zero) {
                m += v.multiplicity;
            }
        }
        return m;
    }
};

class SpectrumError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void validate_spectrum(const FibreSpectrum& s) {
    if (static_cast<long>(s.degrees.size()) != s.f + 1) {
        throw SpectrumError("spectrum must list degrees 0..f");
    }
    for (const auto& deg : s.degrees) {
        double prev = -1.0;
        for (const auto& v : deg) {
            if (v.value < 0.0 || (v.exact && sgn(*v.exact) < 0)) {
                throw SpectrumError("negative Laplace eigenvalue");
            }
            if (v.value < prev) {
                throw SpectrumError("eigenvalues must be sorted ascending");
            }
            if (v.multiplicity == 0) {
                throw SpectrumError("zero multiplicity");
            }
            prev = v.value;
        }
    }
}

/// Checks that the zero eigenvalues match the given Betti numbers.
inline bool zero_modes_match(const FibreSpectrum& s, const GradedDims& fibre_betti) {
    for (long k = 0; k <= s.f; ++k) {
        long expected = k < static_cast<long>(fibre_betti.size()) ? fibre_betti[static_cast<std::size_t>(k)] : 0;
        if (static_cast<long>(s.zero_multiplicity(k)) != expected) {
            return false;
        }
    }
    return true;
}

namespace spectra {

namespace detail {

inline void push_grouped(std::vector<SpectralValue>& out, std::vector<Rational> values, std::size_t each = 1) {
    std::sort(values.begin(), values.end());
    for (const auto& v : values) {
        if (!out.empty() && out.back().exact && *out.back().exact == v) {
            out.back().multiplicity += each;
        } else {
            out.push_back(SpectralValue::exact_value(v, each));
        }
    }
}

} // namespace detail

/// A point: one zero mode in degree 0.
inline FibreSpectrum point() {
    FibreSpectrum s;
    s.f = 0;
    s.degrees = {{SpectralValue::exact_value(0)}};
    return s;
}

/// Round circle of length 2 pi * scale: eigenvalues (m / scale)^2, m = 0..max_mode,
/// identical in degrees 0 and 1.
inline FibreSpectrum circle(const Rational& scale = 1, long max_mode = 8) {
    std::vector<Rational> vals{Rational(0)};
    for (long m = 1; m <= max_mode; ++m) {
        Rational v = Rational(m * m) / (scale * scale);
        vals.push_back(v);
        vals.push_back(v);
    }
    FibreSpectrum s;
    s.f = 1;
    s.degrees.resize(2);
    detail::push_grouped(s.degrees[0], vals);
    detail::push_grouped(s.degrees[1], vals);
    s.complete_below = to_double(Rational((max_mode + 1) * (max_mode + 1)) / (scale * scale));
    return s;
}

/// Flat torus with periods 2 pi * s1 and 2 pi * s2. One-forms carry each
/// function eigenvalue twice.
inline FibreSpectrum flat_torus(const Rational& s1 = 1, const Rational& s2 = 1, long max_mode = 4) {
    std::vector<Rational> vals;
    for (long m1 = -max_mode; m1 <= max_mode; ++m1) {
        for (long m2 = -max_mode; m2 <= max_mode; ++m2) {
            vals.push_back(Rational(m1 * m1) / (s1 * s1) + Rational(m2 * m2) / (s2 * s2));
        }
    }
    FibreSpectrum s;
    s.f = 2;
    s.degrees.resize(3);
    detail::push_grouped(s.degrees[0], vals);
    detail::push_grouped(s.degrees[1], vals, 2);
    detail::push_grouped(s.degrees[2], vals);
    Rational m1 = Rational((max_mode + 1) * (max_mode + 1)) / (s1 * s1);
    Rational m2 = Rational((max_mode + 1) * (max_mode + 1)) / (s2 * s2);
    s.complete_below = to_double(std::min(m1, m2));
    return s;
}

/// Round sphere of the given radius: l(l+1)/r^2 with multiplicity 2l+1 on
/// functions and top forms, 2(2l+1) for l >= 1 on one-forms.
inline FibreSpectrum round_sphere2(const Rational& radius = 1, long max_l = 6) {
    FibreSpectrum s;
    s.f = 2;
    s.degrees.resize(3);
    Rational r2 = radius * radius;
    for (long l = 0; l <= max_l; ++l) {
        Rational v = Rational(l * (l + 1)) / r2;
        auto mult = static_cast<std::size_t>(2 * l + 1);
        s.degrees[0].push_back(SpectralValue::exact_value(v, mult));
        s.degrees[2].push_back(SpectralValue::exact_value(v, mult));
        if (l >= 1) {
            s.degrees[1].push_back(SpectralValue::exact_value(v, 2 * mult));
        }
    }
    s.complete_below = to_double(Rational((max_l + 1) * (max_l + 2)) / r2);
    return s;
}

} // namespace spectra

struct IndicialRootPair {
    long f = 0;
    Rational weight;
    long degree = 0;
    SpectralValue lambda2;
    double minus = 0.0;
    double plus = 0.0;
    std::optional<Rational> exact_minus;
    std::optional<Rational> exact_plus;
    bool double_root = false;
    double error_bound = 0.0; // absolute, on each root; 0 when exact
};

/// (f - 2a - 2k)^2 + 4 lambda^2, exactly.
inline Rational indicial_discriminant(long f, const Rational& a, long k, const Rational& lambda2) {
    Rational t = Rational(f) - 2 * a - Rational(2 * k);
    return t * t + 4 * lambda2;
}

inline IndicialRootPair indicial_roots(long f, const Rational& a, long k, const SpectralValue& lambda2) {
    if (lambda2.value < 0.0 || (lambda2.exact && sgn(*lambda2.exact) < 0)) {
        throw std::domain_error("indicial_roots: lambda^2 must be nonnegative");
    }
    IndicialRootPair out;
    out.f = f;
    out.weight = a;
    out.degree = k;
    out.lambda2 = lambda2;
    Rational center = a - make_rational(f, 2);
    if (lambda2.exact) {
        Rational disc = indicial_discriminant(f, a, k, *lambda2.exact);
        Rational root;
        out.double_root = sgn(disc) == 0;
        if (exact_sqrt(disc, root)) {
            out.exact_minus = center - root / 2;
            out.exact_plus = center + root / 2;
            out.minus = to_double(*out.exact_minus);
            out.plus = to_double(*out.exact_plus);
            return out;
        }
        double half = std::sqrt(to_double(disc)) / 2.0;
        out.minus = to_double(center) - half;
        out.plus = to_double(center) + half;
        out.error_bound = 4.0 * std::numeric_limits<double>::epsilon() * (std::abs(to_double(center)) + half);
        return out;
    }
    double t = static_cast<double>(f) - 2.0 * to_double(a) - 2.0 * static_cast<double>(k);
    double disc = t * t + 4.0 * lambda2.value;
    double half = std::sqrt(disc) / 2.0;
    out.minus = to_double(center) - half;
    out.plus = to_double(center) + half;
    out.double_root = disc == 0.0;
    out.error_bound = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(to_double(center)) + half + 1.0);
    return out;
}

inline IndicialRootPair indicial_roots(long f, const Rational& a, long k, const Rational& lambda2) {
    return indicial_roots(f, a, k, SpectralValue::exact_value(lambda2));
}

/// Sign of (f - 2a - 2k)^2 + 4 lambda^2 - 1: negative means the pair lies in the
/// critical window. Exact when lambda^2 is; numeric values within rounding of
/// the boundary report 0.
inline int window_sign(long f, const Rational& a, long k, const SpectralValue& lambda2) {
    if (lambda2.exact) {
        return sgn(indicial_discriminant(f, a, k, *lambda2.exact) - 1);
    }
    Rational t = Rational(f) - 2 * a - Rational(2 * k);
    double base = to_double(t * t);
    double w = base + 4.0 * lambda2.value - 1.0;
    double tol = 16.0 * std::numeric_limits<double>::epsilon() * (base + 4.0 * lambda2.value + 1.0);
    if (std::abs(w) <= tol) {
        return 0;
    }
    return w < 0 ? -1 : 1;
}

struct CriticalRoots {
    std::vector<IndicialRootPair> roots;    // strictly inside the window
    std::vector<IndicialRootPair> boundary; // on the closed window's edge; not critical, but flagged
};

inline CriticalRoots critical_roots(long f, const Rational& a, const FibreSpectrum& spec) {
    validate_spectrum(spec);
    if (spec.f != f) {
        throw SpectrumError("critical_roots: spectrum is for a fibre of dimension " + std::to_string(spec.f));
    }
    CriticalRoots out;
    for (long k = 0; k <= f; ++k) {
        for (const auto& v : spec.degrees[static_cast<std::size_t>(k)]) {
            int s = window_sign(f, a, k, v);
            if (s < 0) {
                out.roots.push_back(indicial_roots(f, a, k, v));
            } else if (s == 0) {
                out.boundary.push_back(indicial_roots(f, a, k, v));
            }
        }
    }
    return out;
}

/// No indicial roots in the critical window.
inline bool essentially_selfadjoint(long f, const Rational& a, const FibreSpectrum& spec) {
    CriticalRoots c = critical_roots(f, a, spec);
    if (c.roots.empty()) {
        // only eigenvalues below 1/4 can be critical; the stored part must reach there
        if (spec.complete_below <= 0.25) {
            throw SpectrumError("spectrum truncated below the critical threshold 1/4");
        }
        return true;
    }
    return false;
}

/// The unique integer q_a in ((f-1)/2 - a, (f+1)/2 - a), if any.
inline std::optional<long> critical_degree(long f, const Rational& a) {
    Rational lo = make_rational(f - 1, 2) - a;
    if (is_integer(lo)) {
        return std::nullopt;
    }
    return to_long(floor(lo) + 1);
}

/// d_max,a = d_min,a on the cone: no integer in the window, or the fibre has
/// no cohomology in that degree.
inline bool unique_closed_extension_d(long f, const Rational& a, const GradedDims& fibre_betti) {
    std::optional<long> q = critical_degree(f, a);
    if (!q) {
        return true;
    }
    if (*q < 0 || *q >= static_cast<long>(fibre_betti.size())) {
        return true;
    }
    return fibre_betti[static_cast<std::size_t>(*q)] == 0;
}

template <class Real>
struct L2Cutoff {
    bool member;
    Real critical_weight;
};

/// x^gamma (times a fibre form) lies in x^a L2 near 0 iff gamma > a - f/2; the
/// critical weight is gamma + (f+1)/2 - a.
inline L2Cutoff<Rational> l2_cutoff(const Rational& gamma, long f, const Rational& a) {
    return {gamma > a - make_rational(f, 2), gamma + make_rational(f + 1, 2) - a};
}

inline L2Cutoff<double> l2_cutoff(double gamma, long f, const Rational& a) {
    return {gamma > to_double(a - make_rational(f, 2)), gamma + to_double(make_rational(f + 1, 2) - a)};
}

} // namespace edgehodge
