#pragma once

// Cone-level checks on C_1(F) with g = dx^2 + x^2 kappa: local weighted
// cohomology, the pullback and slice bounds, the radial homotopy operator
// K_c(omega) = int_c^x beta(s) ds, min-domain membership of fibre-harmonic
// modes, and numerical recovery of indicial exponents from the radial ODE.

#include "edgehodge/fibredec.hpp"
#include "edgehodge/rational.hpp"
#include "edgehodge/spectral.hpp"

#include <Eigen/Dense>
#include <boost/numeric/odeint.hpp>

#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgehodge {

// ---------------------------------------------------------------------------
// local cohomology and the pullback / slice constants

struct LocalCohomologyTable {
    long f = 0;
    Rational a;
    GradedDims max; // degrees 0..f+1
    GradedDims min;
};

inline LocalCohomologyTable local_cohomology(const GradedDims& fibre_betti, long f, const Rational& a) {
    LocalCohomologyTable t;
    t.f = f;
    t.a = a;
    Rational max_bound = make_rational(f + 1, 2) - a; // k < bound
    Rational min_bound = make_rational(f - 1, 2) - a; // k <= bound
    for (long k = 0; k <= f + 1; ++k) {
        long h = k < static_cast<long>(fibre_betti.size()) ? fibre_betti[static_cast<std::size_t>(k)] : 0;
        t.max.push_back(Rational(k) < max_bound ? h : 0);
        t.min.push_back(Rational(k) <= min_bound ? h : 0);
    }
    return t;
}

/// Squared x^a L2 norm of the pullback of a unit fibre k-form: int_0^1 x^e dx
/// with e = f - 2k - 2a.
struct PullbackNorm {
    bool finite = false;
    Rational exponent;
    Rational value; // 1/(e+1) when finite
};

inline PullbackNorm pullback_norm(long k, long f, const Rational& a) {
    PullbackNorm out;
    out.exponent = Rational(f - 2 * k) - 2 * a;
    out.finite = out.exponent > -1;
    if (out.finite) {
        out.value = 1 / (out.exponent + 1);
    }
    return out;
}

/// K = (int_{1/2}^1 x^e dx)^{-1}, e = f - 2k - 2a. Exact when e is an integer
/// other than -1.
struct SliceConstant {
    double value = 0.0;
    std::optional<Rational> exact;
};

inline SliceConstant slice_constant(long k, long f, const Rational& a) {
    Rational e = Rational(f - 2 * k) - 2 * a;
    SliceConstant out;
    if (e == -1) {
        out.value = 1.0 / std::log(2.0);
        return out;
    }
    if (is_integer(e)) {
        long ei = to_long(floor(e)) + 1;
        Rational half_pow = 1;
        for (long i = 0; i < std::abs(ei); ++i) {
            half_pow *= make_rational(1, 2);
        }
        if (ei < 0) {
            half_pow = 1 / half_pow;
        }
        Rational integral = (1 - half_pow) / Rational(ei);
        out.exact = 1 / integral;
        out.value = to_double(*out.exact);
        return out;
    }
    double ed = to_double(e);
    out.value = (ed + 1.0) / (1.0 - std::pow(0.5, ed + 1.0));
    return out;
}

/// Coefficient C with ||K_c omega||^2 <= C ||beta||^2, from the Cauchy-Schwarz
/// estimate with weight exponent e' = f - 2k + 2 - 2a; finite for k < (f+3)/2 - a.
/// Computed as int_0^1 |x - c^{1-e'} x^{e'}| / |1 - e'| dx (the integrand changes
/// sign at x = c), and int_0^1 x |ln x - ln c| dx in the log case e' = 1.
inline double homotopy_bound_coefficient(long k, long f, const Rational& a, double c) {
    if (!(c > 0.5 && c < 1.0)) {
        throw std::domain_error("homotopy_bound_coefficient: c must lie in (1/2, 1)");
    }
    Rational ep = Rational(f - 2 * k + 2) - 2 * a;
    if (ep <= -1) {
        throw std::domain_error("homotopy_bound_coefficient: needs k < (f+3)/2 - a");
    }
    if (ep == 1) {
        return c * c / 2.0 - 0.25 - std::log(c) / 2.0;
    }
    double e = to_double(ep);
    double below = c * c / (2.0 * (e + 1.0));
    double above = ((1.0 - c * c) / 2.0 - std::pow(c, 1.0 - e) * (1.0 - std::pow(c, e + 1.0)) / (e + 1.0)) / (1.0 - e);
    return below + above;
}

// ---------------------------------------------------------------------------
// radial grids and quadrature

/// Equal steps in log x from x0 to 1, `per_decade` steps per factor of 10.
inline std::vector<double> log_grid(double x0 = 1e-4, long per_decade = 400) {
    if (!(x0 > 0.0 && x0 < 1.0)) {
        throw std::domain_error("log_grid: x0 must lie in (0, 1)");
    }
    if (per_decade < 1) {
        throw std::domain_error("log_grid: need at least one point per decade");
    }
    double decades = -std::log10(x0);
    auto steps = static_cast<long>(std::ceil(decades * static_cast<double>(per_decade) - 1e-9));
    steps = std::max<long>(steps, 4);
    std::vector<double> x(static_cast<std::size_t>(steps + 1));
    double l0 = std::log(x0);
    for (long i = 0; i <= steps; ++i) {
        x[static_cast<std::size_t>(i)] = std::exp(l0 * (1.0 - static_cast<double>(i) / static_cast<double>(steps)));
    }
    x.front() = x0;
    x.back() = 1.0;
    return x;
}

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline constexpr std::size_t kStencil = 5; // local interpolation degree 4

inline std::size_t stencil_start(std::size_t i, std::size_t n) {
    std::size_t s = i >= 2 ? i - 2 : 0;
    return std::min(s, n - kStencil);
}

inline void check_grid(const std::vector<double>& x) {
    if (x.size() < kStencil) {
        throw QuadratureError("radial grid needs at least 5 points");
    }
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!(x[i] < x[i + 1])) {
            throw QuadratureError("radial grid must be strictly increasing");
        }
    }
}

/// Lagrange basis weights of the stencil at point t.
inline std::array<double, kStencil> lagrange_weights(const double* xs, double t) {
    std::array<double, kStencil> w{};
    for (std::size_t j = 0; j < kStencil; ++j) {
        double v = 1.0;
        for (std::size_t m = 0; m < kStencil; ++m) {
            if (m != j) {
                v *= (t - xs[m]) / (xs[j] - xs[m]);
            }
        }
        w[j] = v;
    }
    return w;
}

/// Derivative weights of the stencil's Lagrange basis at t.
inline std::array<double, kStencil> lagrange_derivative_weights(const double* xs, double t) {
    std::array<double, kStencil> w{};
    for (std::size_t j = 0; j < kStencil; ++j) {
        double sum = 0.0;
        for (std::size_t skip = 0; skip < kStencil; ++skip) {
            if (skip == j) {
                continue;
            }
            double v = 1.0 / (xs[j] - xs[skip]);
            for (std::size_t m = 0; m < kStencil; ++m) {
                if (m != j && m != skip) {
                    v *= (t - xs[m]) / (xs[j] - xs[m]);
                }
            }
            sum += v;
        }
        w[j] = sum;
    }
    return w;
}

/// Weights w_j with int_lo^hi p = sum_j w_j p(xs[j]) for the stencil's
/// interpolant p; 3-point Gauss-Legendre, exact for degree 5.
inline std::array<double, kStencil> integration_weights(const double* xs, double lo, double hi) {
    static const double nodes[3] = {-0.7745966692414834, 0.0, 0.7745966692414834};
    static const double gw[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    std::array<double, kStencil> w{};
    double mid = (lo + hi) / 2.0;
    double half = (hi - lo) / 2.0;
    for (int g = 0; g < 3; ++g) {
        auto lw = lagrange_weights(xs, mid + half * nodes[g]);
        for (std::size_t j = 0; j < kStencil; ++j) {
            w[j] += half * gw[g] * lw[j];
        }
    }
    return w;
}

/// Locates the grid interval containing t (clamped to the grid).
inline std::size_t interval_of(const std::vector<double>& x, double t) {
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = it == x.begin() ? 0 : static_cast<std::size_t>(it - x.begin()) - 1;
    return std::min(i, x.size() - 2);
}

} // namespace detail

/// Samples of a (vector-valued) function on a grid, with the local degree-4
/// interpolation used for all radial quadrature. Exact on polynomials of
/// degree <= 4 up to rounding.
template <class Value>
class RadialSamples {
public:
    RadialSamples(std::vector<double> x, std::vector<Value> y) : x_(std::move(x)), y_(std::move(y)) {
        detail::check_grid(x_);
        if (x_.size() != y_.size()) {
            throw QuadratureError("sample count does not match the grid");
        }
    }

    const std::vector<double>& grid() const { return x_; }
    const std::vector<Value>& values() const { return y_; }

    Value at(double t) const {
        std::size_t s = detail::stencil_start(detail::interval_of(x_, t), x_.size());
        auto w = detail::lagrange_weights(&x_[s], t);
        return combine(s, w);
    }

    /// Integral over [lo, hi] within one grid interval i.
    Value integrate_in(std::size_t i, double lo, double hi) const {
        std::size_t s = detail::stencil_start(i, x_.size());
        auto w = detail::integration_weights(&x_[s], lo, hi);
        return combine(s, w);
    }

    /// increments[i] = int_{x_i}^{x_{i+1}}.
    std::vector<Value> increments() const {
        std::vector<Value> out;
        for (std::size_t i = 0; i + 1 < x_.size(); ++i) {
            out.push_back(integrate_in(i, x_[i], x_[i + 1]));
        }
        return out;
    }

    /// int_c^{x_i} at every grid point.
    std::vector<Value> integral_from(double c) const {
        if (!(c >= x_.front() && c <= x_.back())) {
            throw QuadratureError("integration base point outside the grid");
        }
        std::vector<Value> inc = increments();
        std::vector<Value> cumulative;
        cumulative.reserve(x_.size());
        cumulative.push_back(zero_like());
        for (const auto& v : inc) {
            cumulative.push_back(cumulative.back() + v);
        }
        std::size_t i = detail::interval_of(x_, c);
        Value at_c = cumulative[i] + integrate_in(i, x_[i], c);
        std::vector<Value> out;
        out.reserve(x_.size());
        for (const auto& v : cumulative) {
            out.push_back(v - at_c);
        }
        return out;
    }

    /// Derivative at grid point i of the integral of these samples, from local
    /// increments only (no accumulated rounding).
    Value integral_derivative(std::size_t i) const {
        std::size_t s = detail::stencil_start(i, x_.size());
        auto w = detail::lagrange_derivative_weights(&x_[s], x_[i]);
        // values of the antiderivative relative to x_s
        Value acc = zero_like();
        Value out = zero_like();
        for (std::size_t j = 0; j < detail::kStencil; ++j) {
            if (j > 0) {
                acc = acc + integrate_in(s + j - 1, x_[s + j - 1], x_[s + j]);
            }
            out = out + w[j] * acc;
        }
        return out;
    }

private:
    Value zero_like() const {
        if constexpr (std::is_same_v<Value, double>) {
            return 0.0;
        } else {
            return Value::Zero(y_.front().size());
        }
    }

    Value combine(std::size_t s, const std::array<double, detail::kStencil>& w) const {
        Value out = zero_like();
        for (std::size_t j = 0; j < detail::kStencil; ++j) {
            out = out + w[j] * y_[s + j];
        }
        return out;
    }

    std::vector<double> x_;
    std::vector<Value> y_;
};

/// int |y|^2 x^e dx over the grid.
inline double weighted_square_norm(const std::vector<double>& x, const std::vector<double>& y, double e) {
    std::vector<double> integrand;
    for (std::size_t i = 0; i < x.size(); ++i) {
        integrand.push_back(y[i] * y[i] * std::pow(x[i], e));
    }
    double total = 0.0;
    for (double v : RadialSamples<double>(x, integrand).increments()) {
        total += v;
    }
    return total;
}

// ---------------------------------------------------------------------------
// scalar mode profiles and the homotopy operator

/// Radial coefficients of one fibre mode: omega = alpha(x) phi + dx ^ beta(x) psi.
struct ConeModeProfile {
    long degree = 0;
    double lambda2 = 0.0;
    std::vector<double> x;
    std::vector<double> alpha;
    std::vector<double> beta;
    std::optional<Rational> alpha_exponent; // set when alpha(x) = x^gamma exactly
};

inline void validate_profile(const ConeModeProfile& p) {
    detail::check_grid(p.x);
    if (p.alpha.size() != p.x.size() || p.beta.size() != p.x.size()) {
        throw std::invalid_argument("profile samples do not match the grid");
    }
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        if (!std::isfinite(p.alpha[i]) || !std::isfinite(p.beta[i])) {
            throw std::invalid_argument("profile samples must be finite");
        }
    }
}

/// alpha(x) = x^gamma, beta = 0, tagged as closed form.
inline ConeModeProfile power_profile(long k, const Rational& gamma, double x0 = 1e-4, long per_decade = 400) {
    ConeModeProfile p;
    p.degree = k;
    p.x = log_grid(x0, per_decade);
    double g = to_double(gamma);
    for (double xi : p.x) {
        p.alpha.push_back(std::pow(xi, g));
        p.beta.push_back(0.0);
    }
    p.alpha_exponent = gamma;
    return p;
}

/// K_c applied to the dx-component: int_c^x beta(s) ds at every grid point.
inline std::vector<double> homotopy_K(const ConeModeProfile& p, double c) {
    validate_profile(p);
    if (!(c > 0.5 && c < 1.0)) {
        throw std::domain_error("homotopy_K: c must lie in (1/2, 1)");
    }
    return RadialSamples<double>(p.x, p.beta).integral_from(c);
}

/// Sampled ratio ||K_c omega||^2 / ||beta||^2 in x^a L2 (fibre mode of unit norm).
inline double homotopy_norm_ratio(const ConeModeProfile& p, long f, const Rational& a, double c) {
    std::vector<double> k_values = homotopy_K(p, c);
    double e = to_double(Rational(f - 2 * p.degree + 2) - 2 * a);
    double den = weighted_square_norm(p.x, p.beta, e);
    if (den == 0.0) {
        return 0.0;
    }
    return weighted_square_norm(p.x, k_values, e) / den;
}

// ---------------------------------------------------------------------------
// full forms on the cone over a discrete fibre and the reconstruction identity

/// omega = alpha(x) + dx ^ beta(x) with alpha a fibre k-cochain and beta a fibre
/// (k-1)-cochain at each grid point.
struct ConeForm {
    long degree = 0;
    std::vector<double> x;
    std::vector<Eigen::VectorXd> alpha;
    std::vector<Eigen::VectorXd> beta;
};

/// Closed form alpha = p(x) d xi + d zeta, beta = p'(x) xi; p given by its
/// coefficients p_0 + p_1 x + ...
inline ConeForm polynomial_closed_form(const DiscreteFibre& fib, long k, const std::vector<double>& poly,
                                       const Eigen::VectorXd& xi, const Eigen::VectorXd& zeta,
                                       const std::vector<double>& grid) {
    if (k < 1 || k > fib.top_degree()) {
        throw std::domain_error("polynomial_closed_form: degree must lie in 1..f");
    }
    const Eigen::MatrixXd& d = fib.d[static_cast<std::size_t>(k - 1)];
    if (xi.size() != d.cols() || zeta.size() != d.cols()) {
        throw std::invalid_argument("polynomial_closed_form: xi and zeta must be (k-1)-cochains");
    }
    Eigen::VectorXd dxi = d * xi;
    Eigen::VectorXd dzeta = d * zeta;
    ConeForm w;
    w.degree = k;
    w.x = grid;
    for (double t : grid) {
        double p = 0.0;
        double dp = 0.0;
        for (std::size_t j = poly.size(); j-- > 0;) {
            p = p * t + poly[j];
        }
        for (std::size_t j = poly.size(); j-- > 1;) {
            dp = dp * t + static_cast<double>(j) * poly[j];
        }
        w.alpha.push_back(p * dxi + dzeta);
        w.beta.push_back(dp * xi);
    }
    return w;
}

inline std::vector<Eigen::VectorXd> homotopy_K(const ConeForm& w, double c) {
    if (!(c > 0.5 && c < 1.0)) {
        throw std::domain_error("homotopy_K: c must lie in (1/2, 1)");
    }
    return RadialSamples<Eigen::VectorXd>(w.x, w.beta).integral_from(c);
}

struct ReconstructionCheck {
    Eigen::VectorXd eta;        // fibre primitive of alpha(c)
    double primitive_residual;  // |d_F eta - alpha(c)|_inf
    double fibre_error;         // max_x |d_F(eta + K_c omega(x)) - alpha(x)|_inf
    double radial_error;        // max_x |d/dx K_c omega(x) - beta(x)|_inf
    double max_error() const { return std::max({primitive_residual, fibre_error, radial_error}); }
};

/// Checks d(eta + K_c omega) = omega for a closed form omega whose slice
/// alpha(c) is fibre-exact.
inline ReconstructionCheck reconstruct(const DiscreteFibre& fib, const ConeForm& w, double c) {
    if (w.degree < 1 || w.degree > fib.top_degree()) {
        throw std::domain_error("reconstruct: degree must lie in 1..f");
    }
    const Eigen::MatrixXd& d = fib.d[static_cast<std::size_t>(w.degree - 1)];
    RadialSamples<Eigen::VectorXd> alpha(w.x, w.alpha);
    RadialSamples<Eigen::VectorXd> beta(w.x, w.beta);
    Eigen::VectorXd alpha_c = alpha.at(c);
    ReconstructionCheck out;
    out.eta = d.completeOrthogonalDecomposition().solve(alpha_c);
    out.primitive_residual = (d * out.eta - alpha_c).cwiseAbs().maxCoeff();
    std::vector<Eigen::VectorXd> k_values = beta.integral_from(c);
    out.fibre_error = 0.0;
    out.radial_error = 0.0;
    for (std::size_t i = 0; i < w.x.size(); ++i) {
        Eigen::VectorXd fibre_part = d * (out.eta + k_values[i]);
        out.fibre_error = std::max(out.fibre_error, (fibre_part - w.alpha[i]).cwiseAbs().maxCoeff());
        Eigen::VectorXd radial_part = beta.integral_derivative(i);
        out.radial_error = std::max(out.radial_error, (radial_part - w.beta[i]).cwiseAbs().maxCoeff());
    }
    return out;
}

// ---------------------------------------------------------------------------
// min-domain membership of fibre-harmonic modes

enum class Membership { member, not_member, inconclusive };

inline const char* to_string(Membership m) {
    switch (m) {
    case Membership::member:
        return "member";
    case Membership::not_member:
        return "not-member";
    case Membership::inconclusive:
        return "inconclusive";
    }
    return "?";
}

inline constexpr double kSlopeTolerance = 1e-3;

/// Least-squares slope of log|y| against log x over [lo, hi].
inline double log_log_slope(const std::vector<double>& x, const std::vector<double>& y, double lo, double hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] < lo * (1 - 1e-12) || x[i] > hi * (1 + 1e-12)) {
            continue;
        }
        if (y[i] == 0.0) {
            throw std::domain_error("log_log_slope: zero sample");
        }
        double lx = std::log(x[i]);
        double ly = std::log(std::abs(y[i]));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) {
        throw std::domain_error("log_log_slope: fewer than two samples in the window");
    }
    double nn = static_cast<double>(n);
    return (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
}

/// Whether a max-domain fibre-harmonic mode lies in the min domain. Outside the
/// open window ((f-1)/2 - a, (f+1)/2 - a) every such mode does, endpoints
/// included (there the boundary pairing already vanishes); inside, the radial
/// coefficient must be o(1).
inline Membership min_membership(long k, long f, const Rational& a, const ConeModeProfile& p) {
    validate_profile(p);
    Rational lo = make_rational(f - 1, 2) - a;
    Rational hi = make_rational(f + 1, 2) - a;
    Rational kk(k);
    if (kk <= lo || kk >= hi) {
        return Membership::member;
    }
    if (p.lambda2 != 0.0) {
        throw std::domain_error("min_membership: profile must be a fibre-harmonic mode");
    }
    if (p.alpha_exponent) {
        return sgn(*p.alpha_exponent) > 0 ? Membership::member : Membership::not_member;
    }
    double x0 = p.x.front();
    double slope = log_log_slope(p.x, p.alpha, x0, 10.0 * x0);
    if (std::abs(slope) < kSlopeTolerance) {
        return Membership::inconclusive;
    }
    return slope > 0 ? Membership::member : Membership::not_member;
}

// ---------------------------------------------------------------------------
// indicial exponents from the radial system

/// Radial system for one fibre mode in t = ln x: d/dt (u, v) = M (u, v) with
/// M = [[-k, lambda], [lambda, -(f - k - 2a)]], whose eigenvalues are the
/// indicial roots.
inline Eigen::Matrix2d radial_system(long k, double lambda2, long f, const Rational& a) {
    double lambda = std::sqrt(lambda2);
    Eigen::Matrix2d m;
    m << -static_cast<double>(k), lambda, lambda, -(static_cast<double>(f - k) - 2.0 * to_double(a));
    return m;
}

struct ModeExponents {
    double minus = 0.0;
    double plus = 0.0;
    bool double_root = false;
    ConeModeProfile dominant;  // solution ~ x^{gamma_-} as x -> 0
    ConeModeProfile recessive; // solution ~ x^{gamma_+}
};

class OdeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kOdeTolerance = 1e-10;

/// Integrates the fundamental matrix from x = 1 down to x0 with adaptive
/// Dormand-Prince steps; the leading right singular vector of Phi(x0) gives the
/// dominant solution. The recessive one cannot be followed towards x = 0
/// (rounding feeds the dominant mode), so it is integrated upwards from far
/// below x0, where any start vector has collapsed onto it, renormalizing every
/// decade. Each exponent is the log-log slope on [x0, 10 x0].
inline ModeExponents mode_exponent(long k, double lambda2, long f, const Rational& a, double x0 = 1e-4,
                                   long per_decade = 400) {
    if (!(x0 > 0.0 && x0 <= 0.1)) {
        throw std::domain_error("mode_exponent: x0 must lie in (0, 1/10]");
    }
    if (lambda2 < 0.0) {
        throw std::domain_error("mode_exponent: lambda^2 must be nonnegative");
    }
    namespace ode = boost::numeric::odeint;
    using State = std::array<double, 4>; // column-major Phi
    Eigen::Matrix2d m = radial_system(k, lambda2, f, a);
    auto rhs = [&m](const State& s, State& ds, double) {
        ds[0] = m(0, 0) * s[0] + m(0, 1) * s[1];
        ds[1] = m(1, 0) * s[0] + m(1, 1) * s[1];
        ds[2] = m(0, 0) * s[2] + m(0, 1) * s[3];
        ds[3] = m(1, 0) * s[2] + m(1, 1) * s[3];
    };

    std::vector<double> grid = log_grid(x0, per_decade);
    std::vector<double> times;
    for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
        times.push_back(std::log(*it));
    }
    times.front() = 0.0;
    std::vector<Eigen::Matrix2d> phi;
    phi.reserve(times.size());
    State s{1.0, 0.0, 0.0, 1.0};
    auto stepper = ode::make_dense_output(kOdeTolerance, kOdeTolerance, ode::runge_kutta_dopri5<State>());
    auto observe = [&phi](const State& st, double) {
        Eigen::Matrix2d p;
        p << st[0], st[2], st[1], st[3];
        phi.push_back(p);
    };
    try {
        ode::integrate_times(stepper, rhs, s, times.begin(), times.end(), -1e-3, observe);
    } catch (const std::exception& e) {
        throw OdeError(std::string("radial integration failed: ") + e.what());
    }
    if (phi.size() != grid.size()) {
        throw OdeError("radial integration returned an incomplete trajectory");
    }
    std::reverse(phi.begin(), phi.end()); // now aligned with the ascending grid
    for (const auto& p : phi) {
        if (!p.allFinite()) {
            throw OdeError("radial integration produced non-finite values");
        }
    }

    Eigen::JacobiSVD<Eigen::Matrix2d> svd(phi.front(), Eigen::ComputeFullV);
    Eigen::Vector2d v_dom = svd.matrixV().col(0);
    Eigen::Vector2d v_rec = svd.matrixV().col(1);

    ModeExponents out;
    double t = static_cast<double>(f) - 2.0 * to_double(a) - 2.0 * static_cast<double>(k);
    out.double_root = t * t + 4.0 * lambda2 < 1e-12;
    auto make_profile = [&](const Eigen::Vector2d& v) {
        ConeModeProfile p;
        p.degree = k;
        p.lambda2 = lambda2;
        p.x = grid;
        for (const auto& ph : phi) {
            Eigen::Vector2d w = ph * v;
            p.alpha.push_back(w(0));
            p.beta.push_back(w(1));
        }
        return p;
    };
    out.dominant = make_profile(v_dom);
    auto magnitude = [](const ConeModeProfile& p) {
        std::vector<double> r;
        for (std::size_t i = 0; i < p.x.size(); ++i) {
            r.push_back(std::hypot(p.alpha[i], p.beta[i]));
        }
        return r;
    };
    out.minus = log_log_slope(grid, magnitude(out.dominant), x0, 10.0 * x0);

    // upward pass: depth chosen so the start vector's dominant part decays
    // below rounding before x0 is reached; sigma_1 / sigma_2 ~ x0^-gap, and
    // rounding in sigma_2 only makes this estimate smaller
    Eigen::Vector2d sv = svd.singularValues();
    double gap = sv(1) > 0.0 ? std::log(sv(0) / sv(1)) / std::log(1.0 / x0) : 0.0;
    double decades = std::min(44.0, 4.0 + std::ceil(14.0 / std::max(gap, 0.32)));
    Eigen::Vector2d w = phi.front() * v_rec;
    if (!(w.norm() > 0.0) || !w.allFinite()) {
        w = Eigen::Vector2d(1.0, 1.0);
    }
    w.normalize();
    State up{w(0), w(1), 0.0, 0.0};
    double t0 = std::log(x0);
    auto up_stepper = ode::make_dense_output(kOdeTolerance, kOdeTolerance, ode::runge_kutta_dopri5<State>());
    try {
        for (double d = decades; d > 0.0; d -= 1.0) {
            double from = t0 - d * std::log(10.0);
            double to = t0 - std::max(d - 1.0, 0.0) * std::log(10.0);
            ode::integrate_adaptive(up_stepper, rhs, up, from, to, 1e-3);
            double norm = std::hypot(up[0], up[1]);
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                throw OdeError("recessive integration degenerated");
            }
            up[0] /= norm;
            up[1] /= norm;
        }
        std::vector<double> up_times;
        for (double x : grid) {
            up_times.push_back(std::log(x));
        }
        up_times.front() = t0;
        out.recessive.degree = k;
        out.recessive.lambda2 = lambda2;
        out.recessive.x = grid;
        ode::integrate_times(up_stepper, rhs, up, up_times.begin(), up_times.end(), 1e-3,
                             [&out](const State& st, double) {
                                 out.recessive.alpha.push_back(st[0]);
                                 out.recessive.beta.push_back(st[1]);
                             });
    } catch (const OdeError&) {
        throw;
    } catch (const std::exception& e) {
        throw OdeError(std::string("radial integration failed: ") + e.what());
    }
    if (out.recessive.alpha.size() != grid.size()) {
        throw OdeError("recessive integration returned an incomplete trajectory");
    }
    out.plus = log_log_slope(grid, magnitude(out.recessive), x0, 10.0 * x0);
    if (out.minus > out.plus) {
        std::swap(out.minus, out.plus);
        std::swap(out.dominant, out.recessive);
    }
    return out;
}

} // namespace edgehodge
