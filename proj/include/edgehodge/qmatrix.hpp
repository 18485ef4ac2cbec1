#pragma once

#include "edgehodge/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace edgehodge {

class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class QMatrix;

/// Column basis of a null space together with the free-column indices used
/// to build it. Row `free_columns[i]` of `basis` is the i-th unit vector, so a
/// kernel vector is recovered from its entries at the free columns.
struct KernelBasis;

/// Dense matrix over Q, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    QMatrix(std::initializer_list<std::initializer_list<long>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_) {
                throw ShapeError("ragged initializer for QMatrix");
            }
            for (long v : row) {
                data_.emplace_back(v);
            }
        }
    }

    static QMatrix zero(std::size_t rows, std::size_t cols) { return QMatrix(rows, cols); }

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const noexcept { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Rational& v) { return sgn(v) == 0; });
    }

    QMatrix transpose() const {
        QMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    QMatrix operator-() const {
        QMatrix r = *this;
        for (auto& v : r.data_) {
            v = -v;
        }
        return r;
    }

    QMatrix& operator+=(const QMatrix& o) {
        require_same_shape(o, "+");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }

    QMatrix& operator-=(const QMatrix& o) {
        require_same_shape(o, "-");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= o.data_[i];
        }
        return *this;
    }

    QMatrix& operator*=(const Rational& s) {
        for (auto& v : data_) {
            v *= s;
        }
        return *this;
    }

    friend QMatrix operator+(QMatrix a, const QMatrix& b) { return a += b; }
    friend QMatrix operator-(QMatrix a, const QMatrix& b) { return a -= b; }
    friend QMatrix operator*(QMatrix a, const Rational& s) { return a *= s; }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw ShapeError("QMatrix product: inner dimensions disagree");
        }
        QMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a(i, k);
                if (sgn(aik) == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (sgn(b(k, j)) != 0) {
                        c(i, j) += aik * b(k, j);
                    }
                }
            }
        }
        return c;
    }

    friend bool operator==(const QMatrix& a, const QMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Reduced row echelon form in place; returns pivot columns.
    std::vector<std::size_t> rref_in_place() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t pivot = row;
            while (pivot < rows_ && sgn((*this)(pivot, col)) == 0) {
                ++pivot;
            }
            if (pivot == rows_) {
                continue;
            }
            swap_rows(pivot, row);
            Rational inv = 1 / (*this)(row, col);
            for (std::size_t j = col; j < cols_; ++j) {
                (*this)(row, j) *= inv;
            }
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row) {
                    continue;
                }
                Rational factor = (*this)(i, col);
                if (sgn(factor) == 0) {
                    continue;
                }
                for (std::size_t j = col; j < cols_; ++j) {
                    if (sgn((*this)(row, j)) != 0) {
                        (*this)(i, j) -= factor * (*this)(row, j);
                    }
                }
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        if (rows_ == 0 || cols_ == 0) {
            return 0;
        }
        // eliminate on the shorter side
        QMatrix work = rows_ <= cols_ ? *this : transpose();
        return work.rref_in_place().size();
    }

    KernelBasis kernel() const;

    /// Submatrix made of the listed rows, in order.
    QMatrix select_rows(const std::vector<std::size_t>& which) const {
        QMatrix r(which.size(), cols_);
        for (std::size_t i = 0; i < which.size(); ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                r(i, j) = (*this)(which[i], j);
            }
        }
        return r;
    }

    /// Writes `block` with its top-left corner at (r0, c0).
    void set_block(std::size_t r0, std::size_t c0, const QMatrix& block) {
        if (r0 + block.rows_ > rows_ || c0 + block.cols_ > cols_) {
            throw ShapeError("QMatrix::set_block out of range");
        }
        for (std::size_t i = 0; i < block.rows_; ++i) {
            for (std::size_t j = 0; j < block.cols_; ++j) {
                (*this)(r0 + i, c0 + j) = block(i, j);
            }
        }
    }

    static QMatrix hstack(const QMatrix& a, const QMatrix& b) {
        if (a.rows_ != b.rows_) {
            throw ShapeError("hstack: row counts differ");
        }
        QMatrix r(a.rows_, a.cols_ + b.cols_);
        r.set_block(0, 0, a);
        r.set_block(0, a.cols_, b);
        return r;
    }

    /// Kronecker product; index (i*b.rows + k, j*b.cols + l).
    static QMatrix kron(const QMatrix& a, const QMatrix& b) {
        QMatrix r(a.rows_ * b.rows_, a.cols_ * b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) {
                const Rational& aij = a(i, j);
                if (sgn(aij) == 0) {
                    continue;
                }
                for (std::size_t k = 0; k < b.rows_; ++k) {
                    for (std::size_t l = 0; l < b.cols_; ++l) {
                        if (sgn(b(k, l)) != 0) {
                            r(i * b.rows_ + k, j * b.cols_ + l) = aij * b(k, l);
                        }
                    }
                }
            }
        }
        return r;
    }

private:
    void require_same_shape(const QMatrix& o, const char* op) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw ShapeError(std::string("QMatrix ") + op + ": shapes differ");
        }
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

struct KernelBasis {
    QMatrix basis;                        // cols() == nullity
    std::vector<std::size_t> free_columns;

    /// Coordinates of a kernel vector (or a matrix of them, column-wise).
    QMatrix coordinates_of(const QMatrix& kernel_vectors) const {
        return kernel_vectors.select_rows(free_columns);
    }
};

inline KernelBasis QMatrix::kernel() const {
    QMatrix work = *this;
    std::vector<std::size_t> pivots = work.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto p : pivots) {
        is_pivot[p] = true;
    }
    KernelBasis out;
    for (std::size_t j = 0; j < cols_; ++j) {
        if (!is_pivot[j]) {
            out.free_columns.push_back(j);
        }
    }
    out.basis = QMatrix(cols_, out.free_columns.size());
    for (std::size_t f = 0; f < out.free_columns.size(); ++f) {
        std::size_t col = out.free_columns[f];
        out.basis(col, f) = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            out.basis(pivots[r], f) = -work(r, col);
        }
    }
    return out;
}

} // namespace edgehodge
