#pragma once

// Combinatorial Hodge Laplacians on periodic grids (circles and products of
// circles) with diagonal metric weights. The incidence matrices come from the
// exact cochain module, so d o d = 0 and the Betti numbers are exact; only the
// eigensolve is floating point.

#include "edgehodge/cochain.hpp"
#include "edgehodge/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgehodge {

enum class FibreKind { circle, torus, product };

inline const char* to_string(FibreKind k) {
    switch (k) {
    case FibreKind::circle:
        return "circle";
    case FibreKind::torus:
        return "torus";
    case FibreKind::product:
        return "product";
    }
    return "?";
}

class FibreError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when the eigensolver fails or a reported pair misses the residual bound.
class EigensolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when the zero-eigenvalue count at tolerance disagrees with the exact
/// Betti number (the grid is under-resolved or the tolerance is off).
class BettiMismatchError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DiscreteFibre {
    FibreKind kind = FibreKind::circle;
    std::vector<long> sizes;     // segments per circle factor
    std::vector<double> lengths; // total length per circle factor
    std::vector<Eigen::MatrixXd> d;       // d[q] : C^q -> C^{q+1}, integer entries
    std::vector<Eigen::VectorXd> weights; // diagonal inner product per degree
    GradedDims exact_betti;

    long top_degree() const { return static_cast<long>(weights.size()) - 1; }
    long dim(long q) const {
        return q < 0 || q > top_degree() ? 0 : static_cast<long>(weights[static_cast<std::size_t>(q)].size());
    }
    GradedDims dims() const {
        GradedDims out;
        for (const auto& w : weights) {
            out.push_back(static_cast<long>(w.size()));
        }
        return out;
    }
};

namespace detail {

inline Eigen::MatrixXd to_dense(const QMatrix& m) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m(i, j));
        }
    }
    return out;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Eigen::VectorXd kron(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    Eigen::VectorXd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

} // namespace detail

/// Circle cut into n equal segments of total length L: vertex weight h,
/// edge weight 1/h with h = L/n.
inline DiscreteFibre discrete_circle(long n, double length) {
    if (n < 3) {
        throw FibreError("circle grid needs at least 3 segments, got " + std::to_string(n));
    }
    if (!(length > 0.0) || !std::isfinite(length)) {
        throw FibreError("circle length must be positive and finite");
    }
    CochainComplex c = complexes::polygon(static_cast<std::size_t>(n));
    double h = length / static_cast<double>(n);
    DiscreteFibre out;
    out.kind = FibreKind::circle;
    out.sizes = {n};
    out.lengths = {length};
    out.d = {detail::to_dense(c.diff(0))};
    out.weights = {Eigen::VectorXd::Constant(n, h), Eigen::VectorXd::Constant(n, 1.0 / h)};
    out.exact_betti = cohomology_dims(c);
    return out;
}

/// Product fibre with the tensor-product cochain complex (same block layout and
/// signs as `tensor`) and product weights.
inline DiscreteFibre product_fibre(const DiscreteFibre& a, const DiscreteFibre& b) {
    long fa = a.top_degree();
    long fb = b.top_degree();
    long top = fa + fb;
    DiscreteFibre out;
    out.kind = FibreKind::product;
    out.sizes = a.sizes;
    out.sizes.insert(out.sizes.end(), b.sizes.begin(), b.sizes.end());
    out.lengths = a.lengths;
    out.lengths.insert(out.lengths.end(), b.lengths.begin(), b.lengths.end());

    // block offsets per total degree, left degree ascending
    std::vector<std::vector<std::pair<long, Eigen::Index>>> offsets(static_cast<std::size_t>(top + 1));
    std::vector<Eigen::Index> totals(static_cast<std::size_t>(top + 1), 0);
    for (long n = 0; n <= top; ++n) {
        for (long i = 0; i <= fa; ++i) {
            long j = n - i;
            if (j < 0 || j > fb) {
                continue;
            }
            offsets[static_cast<std::size_t>(n)].push_back({i, totals[static_cast<std::size_t>(n)]});
            totals[static_cast<std::size_t>(n)] += a.dim(i) * b.dim(j);
        }
    }
    for (long n = 0; n <= top; ++n) {
        Eigen::VectorXd w(totals[static_cast<std::size_t>(n)]);
        for (auto [i, off] : offsets[static_cast<std::size_t>(n)]) {
            Eigen::VectorXd blk = detail::kron(a.weights[static_cast<std::size_t>(i)],
                                               b.weights[static_cast<std::size_t>(n - i)]);
            w.segment(off, blk.size()) = blk;
        }
        out.weights.push_back(std::move(w));
    }
    for (long n = 0; n < top; ++n) {
        Eigen::MatrixXd m =
            Eigen::MatrixXd::Zero(totals[static_cast<std::size_t>(n + 1)], totals[static_cast<std::size_t>(n)]);
        for (auto [i, src] : offsets[static_cast<std::size_t>(n)]) {
            long j = n - i;
            for (auto [i2, dst] : offsets[static_cast<std::size_t>(n + 1)]) {
                if (i2 == i + 1) {
                    Eigen::MatrixXd blk = detail::kron(a.d[static_cast<std::size_t>(i)],
                                                       Eigen::MatrixXd::Identity(b.dim(j), b.dim(j)));
                    m.block(dst, src, blk.rows(), blk.cols()) = blk;
                } else if (i2 == i && j < fb) {
                    Eigen::MatrixXd blk = detail::kron(Eigen::MatrixXd::Identity(a.dim(i), a.dim(i)),
                                                       b.d[static_cast<std::size_t>(j)]);
                    if (i % 2 != 0) {
                        blk = -blk;
                    }
                    m.block(dst, src, blk.rows(), blk.cols()) = blk;
                }
            }
        }
        out.d.push_back(std::move(m));
    }
    out.exact_betti = convolve(a.exact_betti, b.exact_betti);
    return out;
}

/// `sizes` gives the segment count of each circle factor; each factor has
/// length 2 pi * scale.
inline DiscreteFibre build_fibre(FibreKind kind, const std::vector<long>& sizes, double scale = 1.0) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw FibreError("scale must be positive and finite");
    }
    double length = 2.0 * M_PI * scale;
    switch (kind) {
    case FibreKind::circle:
        if (sizes.size() != 1) {
            throw FibreError("circle fibre takes one grid size");
        }
        return discrete_circle(sizes[0], length);
    case FibreKind::torus: {
        if (sizes.size() != 2) {
            throw FibreError("torus fibre takes two grid sizes");
        }
        DiscreteFibre t = product_fibre(discrete_circle(sizes[0], length), discrete_circle(sizes[1], length));
        t.kind = FibreKind::torus;
        return t;
    }
    case FibreKind::product: {
        if (sizes.empty()) {
            throw FibreError("product fibre needs at least one factor");
        }
        DiscreteFibre out = discrete_circle(sizes[0], length);
        for (std::size_t i = 1; i < sizes.size(); ++i) {
            out = product_fibre(out, discrete_circle(sizes[i], length));
        }
        out.kind = FibreKind::product;
        return out;
    }
    }
    throw FibreError("unknown fibre kind");
}

/// max |(d_{q+1} d_q)_{ij}| over all q; exactly 0 for a valid fibre.
inline double dd_defect(const DiscreteFibre& fib) {
    double worst = 0.0;
    for (std::size_t q = 0; q + 1 < fib.d.size(); ++q) {
        worst = std::max(worst, (fib.d[q + 1] * fib.d[q]).cwiseAbs().maxCoeff());
    }
    return worst;
}

/// Symmetrized Hodge Laplacian W^{1/2} (delta d + d delta) W^{-1/2} in degree q,
/// where delta is the adjoint of d in the weighted inner products.
inline Eigen::MatrixXd symmetric_laplacian(const DiscreteFibre& fib, long q) {
    if (q < 0 || q > fib.top_degree()) {
        throw FibreError("degree " + std::to_string(q) + " out of range");
    }
    auto uq = static_cast<std::size_t>(q);
    Eigen::Index n = fib.dim(q);
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd wq = fib.weights[uq].cwiseSqrt();
    if (q < fib.top_degree()) {
        Eigen::VectorXd wn = fib.weights[uq + 1].cwiseSqrt();
        Eigen::MatrixXd a = wn.asDiagonal() * fib.d[uq] * wq.cwiseInverse().asDiagonal();
        s += a.transpose() * a;
    }
    if (q > 0) {
        Eigen::VectorXd wp = fib.weights[uq - 1].cwiseSqrt();
        Eigen::MatrixXd b = wq.asDiagonal() * fib.d[uq - 1] * wp.cwiseInverse().asDiagonal();
        s += b * b.transpose();
    }
    return s;
}

struct SpectrumResult {
    long degree = 0;
    std::vector<double> eigenvalues; // ascending, lowest `count`
    Eigen::MatrixXd eigenvectors;    // columns, in cochain coordinates, W-normalized
    long harmonic_dim = 0;           // over the full spectrum
    double zero_tolerance = 0.0;
    double largest = 0.0;
    double max_residual = 0.0; // relative to the Laplacian norm
};

inline constexpr double kZeroTolerance = 1e-8;
inline constexpr double kResidualBound = 1e-9;

/// Lowest `count` eigenpairs of delta d + d delta in degree q (count < 0: all).
inline SpectrumResult fibre_spectrum(const DiscreteFibre& fib, long q, long count = -1) {
    Eigen::MatrixXd s = symmetric_laplacian(fib, q);
    Eigen::Index n = s.rows();
    if (count < 0) {
        count = n;
    }
    if (count > n) {
        throw FibreError("requested " + std::to_string(count) + " eigenvalues from a space of dimension " +
                         std::to_string(n));
    }
    SpectrumResult out;
    out.degree = q;
    if (n == 0) {
        return out;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    if (solver.info() != Eigen::Success) {
        throw EigensolveError("symmetric eigensolve did not converge in degree " + std::to_string(q));
    }
    const Eigen::VectorXd& vals = solver.eigenvalues();
    const Eigen::MatrixXd& vecs = solver.eigenvectors();
    out.largest = std::max(std::abs(vals(0)), std::abs(vals(n - 1)));
    double norm = out.largest > 0.0 ? out.largest : 1.0;
    out.zero_tolerance = kZeroTolerance * norm;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(vals(i)) < out.zero_tolerance) {
            ++out.harmonic_dim;
        } else if (vals(i) < 0.0) {
            throw EigensolveError("negative Laplace eigenvalue " + std::to_string(vals(i)));
        }
    }
    Eigen::VectorXd inv_sqrt_w = fib.weights[static_cast<std::size_t>(q)].cwiseSqrt().cwiseInverse();
    out.eigenvectors.resize(n, count);
    for (Eigen::Index i = 0; i < count; ++i) {
        Eigen::VectorXd u = vecs.col(i);
        double res = (s * u - vals(i) * u).norm() / norm;
        out.max_residual = std::max(out.max_residual, res);
        if (res > kResidualBound) {
            throw EigensolveError("eigenpair residual " + std::to_string(res) + " exceeds bound");
        }
        Eigen::VectorXd v = inv_sqrt_w.asDiagonal() * u;
        // sign convention: first component that is not negligible is positive
        for (Eigen::Index j = 0; j < v.size(); ++j) {
            if (std::abs(v(j)) > 1e-12 * v.cwiseAbs().maxCoeff()) {
                if (v(j) < 0.0) {
                    v = -v;
                }
                break;
            }
        }
        out.eigenvectors.col(i) = v;
        out.eigenvalues.push_back(vals(i));
    }
    return out;
}

/// Full spectrum in every degree with zero modes snapped to exact 0, checked
/// against the exact Betti numbers.
inline FibreSpectrum spectrum_for_predicates(const DiscreteFibre& fib) {
    FibreSpectrum out;
    out.f = fib.top_degree();
    out.provenance = SpectrumProvenance::discrete;
    for (long q = 0; q <= fib.top_degree(); ++q) {
        SpectrumResult r = fibre_spectrum(fib, q);
        long exact = q < static_cast<long>(fib.exact_betti.size()) ? fib.exact_betti[static_cast<std::size_t>(q)] : 0;
        if (r.harmonic_dim != exact) {
            throw BettiMismatchError("degree " + std::to_string(q) + ": " + std::to_string(r.harmonic_dim) +
                                     " eigenvalues below tolerance, exact Betti number " + std::to_string(exact));
        }
        std::vector<SpectralValue> deg;
        if (exact > 0) {
            deg.push_back(SpectralValue::exact_value(0, static_cast<std::size_t>(exact)));
        }
        for (std::size_t i = static_cast<std::size_t>(exact); i < r.eigenvalues.size(); ++i) {
            deg.push_back(SpectralValue::numeric(r.eigenvalues[i]));
        }
        out.degrees.push_back(std::move(deg));
    }
    return out;
}

/// Discrete circle eigenvalue of mode m: (2n/L sin(pi m / n))^2.
inline double discrete_circle_eigenvalue(long n, double length, long m) {
    double s = 2.0 * static_cast<double>(n) / length * std::sin(M_PI * static_cast<double>(m) / static_cast<double>(n));
    return s * s;
}

inline void write_spectrum_csv(std::ostream& os, const std::vector<SpectrumResult>& results) {
    os << "degree,index,eigenvalue\n";
    auto old = os.precision(17);
    for (const auto& r : results) {
        for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
            os << r.degree << ',' << i << ',' << r.eigenvalues[i] << '\n';
        }
    }
    os.precision(old);
}

} // namespace edgehodge
