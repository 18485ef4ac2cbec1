#pragma once

// Finite cochain complexes over Q.
//
// A complex lives in degrees low .. low + dims.size() - 1. d[i] maps degree
// low + i to low + i + 1, so there are dims.size() - 1 stored differentials;
// the maps into and out of the ends are zero. Out-of-range degrees have
// dimension 0.

#include "edgehodge/qmatrix.hpp"

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace edgehodge {

using GradedDims = std::vector<long>;

/// A differential composite d[k+1] d[k] that is not zero, or a map that does
/// not commute with the differentials.
class ComplexError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class CochainComplex {
public:
    CochainComplex() = default;

    CochainComplex(int low, std::vector<std::size_t> dims, std::vector<QMatrix> d)
        : low_(low), dims_(std::move(dims)), d_(std::move(d)) {
        check_shapes();
    }

    /// Complex with the given dimensions and zero differentials.
    static CochainComplex with_zero_differentials(int low, std::vector<std::size_t> dims) {
        std::vector<QMatrix> d;
        for (std::size_t i = 0; i + 1 < dims.size(); ++i) {
            d.emplace_back(dims[i + 1], dims[i]);
        }
        return CochainComplex(low, std::move(dims), std::move(d));
    }

    int low_degree() const noexcept { return low_; }
    int top_degree() const noexcept { return low_ + static_cast<int>(dims_.size()) - 1; }
    bool is_zero_complex() const noexcept { return dims_.empty(); }
    const std::vector<std::size_t>& dims() const noexcept { return dims_; }
    const std::vector<QMatrix>& differentials() const noexcept { return d_; }

    std::size_t dim(int k) const {
        if (k < low_ || k > top_degree()) {
            return 0;
        }
        return dims_[static_cast<std::size_t>(k - low_)];
    }

    /// Differential out of degree k; the zero map of the right shape when
    /// either end is outside the stored range.
    QMatrix diff(int k) const {
        if (k >= low_ && k < top_degree()) {
            return d_[static_cast<std::size_t>(k - low_)];
        }
        return QMatrix(dim(k + 1), dim(k));
    }

    long euler_characteristic() const {
        long chi = 0;
        for (int k = low_; k <= top_degree(); ++k) {
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(dim(k));
        }
        return chi;
    }

    friend bool operator==(const CochainComplex& a, const CochainComplex& b) {
        return a.low_ == b.low_ && a.dims_ == b.dims_ && a.d_ == b.d_;
    }

private:
    void check_shapes() const {
        std::size_t expected = dims_.empty() ? 0 : dims_.size() - 1;
        if (d_.size() != expected) {
            throw ShapeError("complex has " + std::to_string(d_.size()) + " differentials, expected " +
                             std::to_string(expected));
        }
        for (std::size_t i = 0; i < d_.size(); ++i) {
            if (d_[i].rows() != dims_[i + 1] || d_[i].cols() != dims_[i]) {
                throw ShapeError("differential " + std::to_string(low_ + static_cast<int>(i)) +
                                 " has shape " + std::to_string(d_[i].rows()) + "x" +
                                 std::to_string(d_[i].cols()) + ", dims say " + std::to_string(dims_[i + 1]) +
                                 "x" + std::to_string(dims_[i]));
            }
        }
    }

    int low_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<QMatrix> d_;
};

/// Degree-preserving cochain map. maps[i] acts in degree low + i; degrees
/// outside the stored range map by zero.
class ComplexMap {
public:
    ComplexMap() = default;
    ComplexMap(CochainComplex source, CochainComplex target, int low, std::vector<QMatrix> maps)
        : source_(std::move(source)), target_(std::move(target)), low_(low), maps_(std::move(maps)) {
        for (std::size_t i = 0; i < maps_.size(); ++i) {
            int k = low_ + static_cast<int>(i);
            if (maps_[i].rows() != target_.dim(k) || maps_[i].cols() != source_.dim(k)) {
                throw ShapeError("complex map in degree " + std::to_string(k) + " has the wrong shape");
            }
        }
    }

    const CochainComplex& source() const noexcept { return source_; }
    const CochainComplex& target() const noexcept { return target_; }

    QMatrix at(int k) const {
        if (k >= low_ && k < low_ + static_cast<int>(maps_.size())) {
            return maps_[static_cast<std::size_t>(k - low_)];
        }
        return QMatrix(target_.dim(k), source_.dim(k));
    }

    /// Degree range spanned by source and target.
    int min_degree() const {
        return std::min(source_.is_zero_complex() ? target_.low_degree() : source_.low_degree(),
                        target_.is_zero_complex() ? source_.low_degree() : target_.low_degree());
    }
    int max_degree() const {
        return std::max(source_.is_zero_complex() ? target_.top_degree() : source_.top_degree(),
                        target_.is_zero_complex() ? source_.top_degree() : target_.top_degree());
    }

private:
    CochainComplex source_;
    CochainComplex target_;
    int low_ = 0;
    std::vector<QMatrix> maps_;
};

// ---------------------------------------------------------------------------
// operations

inline bool verify_complex(const CochainComplex& c) {
    for (int k = c.low_degree(); k + 1 < c.top_degree(); ++k) {
        if (!(c.diff(k + 1) * c.diff(k)).is_zero()) {
            return false;
        }
    }
    return true;
}

inline void require_complex(const CochainComplex& c, const char* what) {
    if (!verify_complex(c)) {
        throw ComplexError(std::string(what) + ": d o d != 0");
    }
}

inline bool verify_map(const ComplexMap& phi) {
    int lo = phi.min_degree();
    int hi = phi.max_degree();
    for (int k = lo - 1; k <= hi; ++k) {
        if (!(phi.at(k + 1) * phi.source().diff(k) == phi.target().diff(k) * phi.at(k))) {
            return false;
        }
    }
    return true;
}

inline void require_map(const ComplexMap& phi, const char* what) {
    if (!verify_map(phi)) {
        throw ComplexError(std::string(what) + ": map does not commute with the differentials");
    }
}

/// dim ker d[k] - rank d[k-1] for every stored degree, in order from the low
/// degree.
inline GradedDims cohomology_dims(const CochainComplex& c) {
    require_complex(c, "cohomology_dims");
    GradedDims out;
    std::size_t prev_rank = 0;
    for (int k = c.low_degree(); k <= c.top_degree(); ++k) {
        std::size_t r = c.diff(k).rank();
        out.push_back(static_cast<long>(c.dim(k) - r - prev_rank));
        prev_rank = r;
    }
    return out;
}

/// Cohomology dimension in one degree (0 outside the stored range).
inline long betti(const CochainComplex& c, int k) {
    if (k < c.low_degree() || k > c.top_degree()) {
        return 0;
    }
    return static_cast<long>(c.dim(k) - c.diff(k).rank() - c.diff(k - 1).rank());
}

/// Layout of one total degree of a tensor product: block (i, j) starts at
/// `offset` and has dim(C1,i) * dim(C2,j) rows.
struct TensorBlock {
    int left_degree;
    int right_degree;
    std::size_t offset;
    std::size_t size;
};

struct TensorLayout {
    int low = 0;
    std::vector<std::vector<TensorBlock>> blocks; // per total degree

    const std::vector<TensorBlock>& at(int k) const {
        static const std::vector<TensorBlock> none;
        if (k < low || k >= low + static_cast<int>(blocks.size())) {
            return none;
        }
        return blocks[static_cast<std::size_t>(k - low)];
    }
};

inline TensorLayout tensor_layout(const CochainComplex& a, const CochainComplex& b) {
    TensorLayout layout;
    if (a.is_zero_complex() || b.is_zero_complex()) {
        return layout;
    }
    layout.low = a.low_degree() + b.low_degree();
    int top = a.top_degree() + b.top_degree();
    for (int n = layout.low; n <= top; ++n) {
        std::vector<TensorBlock> row;
        std::size_t offset = 0;
        for (int i = a.low_degree(); i <= a.top_degree(); ++i) {
            int j = n - i;
            if (j < b.low_degree() || j > b.top_degree()) {
                continue;
            }
            std::size_t size = a.dim(i) * b.dim(j);
            row.push_back({i, j, offset, size});
            offset += size;
        }
        layout.blocks.push_back(std::move(row));
    }
    return layout;
}

/// Tensor product with d(x (x) y) = dx (x) y + (-1)^i x (x) dy for x of degree i.
inline CochainComplex tensor(const CochainComplex& a, const CochainComplex& b) {
    require_complex(a, "tensor");
    require_complex(b, "tensor");
    TensorLayout layout = tensor_layout(a, b);
    if (layout.blocks.empty()) {
        return {};
    }
    std::vector<std::size_t> dims;
    for (const auto& row : layout.blocks) {
        std::size_t total = 0;
        for (const auto& blk : row) {
            total += blk.size;
        }
        dims.push_back(total);
    }
    std::vector<QMatrix> d;
    for (std::size_t idx = 0; idx + 1 < dims.size(); ++idx) {
        int n = layout.low + static_cast<int>(idx);
        QMatrix m(dims[idx + 1], dims[idx]);
        for (const auto& src : layout.at(n)) {
            for (const auto& dst : layout.at(n + 1)) {
                if (dst.left_degree == src.left_degree + 1 && dst.right_degree == src.right_degree) {
                    m.set_block(dst.offset, src.offset,
                                QMatrix::kron(a.diff(src.left_degree), QMatrix::identity(b.dim(src.right_degree))));
                } else if (dst.left_degree == src.left_degree && dst.right_degree == src.right_degree + 1) {
                    QMatrix blk =
                        QMatrix::kron(QMatrix::identity(a.dim(src.left_degree)), b.diff(src.right_degree));
                    if (src.left_degree % 2 != 0) {
                        blk = -blk;
                    }
                    m.set_block(dst.offset, src.offset, blk);
                }
            }
        }
        d.push_back(std::move(m));
    }
    return CochainComplex(layout.low, std::move(dims), std::move(d));
}

/// f (x) g between tensor products, no sign (both maps have degree 0).
inline ComplexMap tensor_map(const ComplexMap& f, const ComplexMap& g) {
    CochainComplex src = tensor(f.source(), g.source());
    CochainComplex dst = tensor(f.target(), g.target());
    TensorLayout src_layout = tensor_layout(f.source(), g.source());
    TensorLayout dst_layout = tensor_layout(f.target(), g.target());
    if (src.is_zero_complex() && dst.is_zero_complex()) {
        return ComplexMap(src, dst, 0, {});
    }
    int lo = src.is_zero_complex() ? dst.low_degree() : src.low_degree();
    int hi = src.is_zero_complex() ? dst.top_degree() : src.top_degree();
    if (!dst.is_zero_complex()) {
        lo = std::min(lo, dst.low_degree());
        hi = std::max(hi, dst.top_degree());
    }
    std::vector<QMatrix> maps;
    for (int n = lo; n <= hi; ++n) {
        QMatrix m(dst.dim(n), src.dim(n));
        for (const auto& s : src_layout.at(n)) {
            for (const auto& t : dst_layout.at(n)) {
                if (s.left_degree == t.left_degree && s.right_degree == t.right_degree) {
                    m.set_block(t.offset, s.offset, QMatrix::kron(f.at(s.left_degree), g.at(s.right_degree)));
                }
            }
        }
        maps.push_back(std::move(m));
    }
    return ComplexMap(std::move(src), std::move(dst), lo, std::move(maps));
}

/// Cone(phi)^k = A^{k+1} (+) B^k with d(a, b) = (-da, phi(a) + db). The long
/// exact sequence reads H^k(A) -> H^k(B) -> H^k(Cone) -> H^{k+1}(A).
inline CochainComplex mapping_cone(const ComplexMap& phi) {
    require_complex(phi.source(), "mapping_cone");
    require_complex(phi.target(), "mapping_cone");
    require_map(phi, "mapping_cone");
    const CochainComplex& a = phi.source();
    const CochainComplex& b = phi.target();
    if (a.is_zero_complex() && b.is_zero_complex()) {
        return {};
    }
    int lo = b.is_zero_complex() ? a.low_degree() - 1 : b.low_degree();
    int hi = b.is_zero_complex() ? a.top_degree() - 1 : b.top_degree();
    if (!a.is_zero_complex()) {
        lo = std::min(lo, a.low_degree() - 1);
        hi = std::max(hi, a.top_degree() - 1);
    }
    std::vector<std::size_t> dims;
    for (int k = lo; k <= hi; ++k) {
        dims.push_back(a.dim(k + 1) + b.dim(k));
    }
    std::vector<QMatrix> d;
    for (int k = lo; k < hi; ++k) {
        QMatrix m(a.dim(k + 2) + b.dim(k + 1), a.dim(k + 1) + b.dim(k));
        m.set_block(0, 0, -a.diff(k + 1));
        m.set_block(a.dim(k + 2), 0, phi.at(k + 1));
        m.set_block(a.dim(k + 2), a.dim(k + 1), b.diff(k));
        d.push_back(std::move(m));
    }
    return CochainComplex(lo, std::move(dims), std::move(d));
}

/// Rank of H^k(phi): H^k(source) -> H^k(target).
inline std::size_t induced_map_rank(const ComplexMap& phi, int k) {
    require_map(phi, "induced_map_rank");
    if (k < phi.min_degree() || k > phi.max_degree()) {
        throw std::out_of_range("induced_map_rank: degree " + std::to_string(k) + " outside [" +
                                std::to_string(phi.min_degree()) + ", " + std::to_string(phi.max_degree()) + "]");
    }
    const QMatrix cycles = phi.source().diff(k).kernel().basis;
    const QMatrix boundaries = phi.target().diff(k - 1);
    const QMatrix images = phi.at(k) * cycles;
    if (images.rows() == 0) {
        return 0;
    }
    return QMatrix::hstack(images, boundaries).rank() - boundaries.rank();
}

inline ComplexMap identity_map(const CochainComplex& c) {
    std::vector<QMatrix> maps;
    for (int k = c.low_degree(); k <= c.top_degree(); ++k) {
        maps.push_back(QMatrix::identity(c.dim(k)));
    }
    return ComplexMap(c, c, c.low_degree(), std::move(maps));
}

inline ComplexMap zero_map(const CochainComplex& source, const CochainComplex& target) {
    return ComplexMap(source, target, 0, {});
}

/// Direct sum, degreewise block diagonal.
inline CochainComplex direct_sum(const CochainComplex& a, const CochainComplex& b) {
    if (a.is_zero_complex()) {
        return b;
    }
    if (b.is_zero_complex()) {
        return a;
    }
    int lo = std::min(a.low_degree(), b.low_degree());
    int hi = std::max(a.top_degree(), b.top_degree());
    std::vector<std::size_t> dims;
    std::vector<QMatrix> d;
    for (int k = lo; k <= hi; ++k) {
        dims.push_back(a.dim(k) + b.dim(k));
    }
    for (int k = lo; k < hi; ++k) {
        QMatrix m(a.dim(k + 1) + b.dim(k + 1), a.dim(k) + b.dim(k));
        m.set_block(0, 0, a.diff(k));
        m.set_block(a.dim(k + 1), a.dim(k), b.diff(k));
        d.push_back(std::move(m));
    }
    return CochainComplex(lo, std::move(dims), std::move(d));
}

/// Graded convolution of two dimension lists (both starting in degree 0).
inline GradedDims convolve(const GradedDims& a, const GradedDims& b) {
    if (a.empty() || b.empty()) {
        return {};
    }
    GradedDims out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i + j] += a[i] * b[j];
        }
    }
    return out;
}

inline long euler_characteristic(const GradedDims& dims, int low = 0) {
    long chi = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int k = low + static_cast<int>(i);
        chi += ((k % 2 + 2) % 2 == 0 ? 1 : -1) * dims[i];
    }
    return chi;
}

// ---------------------------------------------------------------------------
// small named complexes

namespace complexes {

/// One cell in degree 0.
inline CochainComplex point() { return CochainComplex::with_zero_differentials(0, {1}); }

/// `count` isolated points.
inline CochainComplex points(std::size_t count) { return CochainComplex::with_zero_differentials(0, {count}); }

/// Two vertices joined by one edge.
inline CochainComplex interval() { return CochainComplex(0, {2, 1}, {QMatrix{{-1, 1}}}); }

/// CW circle: vertices v0, v1 and two edges both running v0 -> v1.
inline CochainComplex circle() { return CochainComplex(0, {2, 2}, {QMatrix{{-1, 1}, {-1, 1}}}); }

/// Simplicial circle with n >= 3 vertices, edge i from vertex i to i+1.
inline CochainComplex polygon(std::size_t n) {
    if (n < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices");
    }
    QMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        d(i, i) = -1;
        d(i, (i + 1) % n) = 1;
    }
    return CochainComplex(0, {n, n}, {d});
}

inline CochainComplex torus() { return tensor(circle(), circle()); }

/// Boundary of the 3-simplex (vertices 0..3, lexicographic edges and faces).
inline CochainComplex sphere2() {
    // edges: 01 02 03 12 13 23
    QMatrix d0{{-1, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}, {0, -1, 1, 0}, {0, -1, 0, 1}, {0, 0, -1, 1}};
    // faces: 012 013 023 123; (d e)(face) = sum of oriented boundary edges
    QMatrix d1{{1, -1, 0, 1, 0, 0}, {1, 0, -1, 0, 1, 0}, {0, 1, -1, 0, 0, 1}, {0, 0, 0, 1, -1, 1}};
    return CochainComplex(0, {4, 6, 4}, {d0, d1});
}

/// Disjoint union.
inline CochainComplex disjoint_union(const CochainComplex& a, const CochainComplex& b) { return direct_sum(a, b); }

} // namespace complexes

} // namespace edgehodge
