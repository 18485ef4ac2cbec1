#pragma once

// Test-only reference computations. Independent of the engine's QMatrix/GMP
// code: Boost cpp_rational, dense row vectors, textbook elimination, and an
// explicitly assembled truncated tensor complex.

#include "edgehodge/cochain.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Mat = std::vector<std::vector<Q>>; // row-major, rows x cols

struct Sized {
    std::size_t rows = 0;
    std::size_t cols = 0;
    Mat m;
};

inline Sized zeros(std::size_t r, std::size_t c) { return {r, c, Mat(r, std::vector<Q>(c, Q(0)))}; }

inline Sized from_engine(const edgehodge::QMatrix& a) {
    Sized out = zeros(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.m[i][j] = Q(a(i, j).get_str());
        }
    }
    return out;
}

inline std::size_t rank(Sized a) {
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
        std::size_t piv = r;
        while (piv < a.rows && a.m[piv][col] == 0) {
            ++piv;
        }
        if (piv == a.rows) {
            continue;
        }
        std::swap(a.m[piv], a.m[r]);
        for (std::size_t i = r + 1; i < a.rows; ++i) {
            if (a.m[i][col] == 0) {
                continue;
            }
            Q factor = a.m[i][col] / a.m[r][col];
            for (std::size_t j = col; j < a.cols; ++j) {
                a.m[i][j] -= factor * a.m[r][j];
            }
        }
        ++r;
    }
    return r;
}

inline Sized multiply(const Sized& a, const Sized& b) {
    if (a.cols != b.rows) {
        throw std::logic_error("oracle multiply: shape mismatch");
    }
    Sized out = zeros(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            if (a.m[i][k] == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols; ++j) {
                out.m[i][j] += a.m[i][k] * b.m[k][j];
            }
        }
    }
    return out;
}

inline bool is_zero(const Sized& a) {
    for (const auto& row : a.m) {
        for (const auto& v : row) {
            if (v != 0) {
                return false;
            }
        }
    }
    return true;
}

/// Columns spanning the null space of a (as a cols x nullity matrix).
inline Sized null_space(Sized a) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols && r < a.rows; ++col) {
        std::size_t piv = r;
        while (piv < a.rows && a.m[piv][col] == 0) {
            ++piv;
        }
        if (piv == a.rows) {
            continue;
        }
        std::swap(a.m[piv], a.m[r]);
        Q lead = a.m[r][col];
        for (auto& v : a.m[r]) {
            v /= lead;
        }
        for (std::size_t i = 0; i < a.rows; ++i) {
            if (i == r || a.m[i][col] == 0) {
                continue;
            }
            Q factor = a.m[i][col];
            for (std::size_t j = 0; j < a.cols; ++j) {
                a.m[i][j] -= factor * a.m[r][j];
            }
        }
        pivots.push_back(col);
        ++r;
    }
    std::vector<std::size_t> free;
    for (std::size_t col = 0, p = 0; col < a.cols; ++col) {
        if (p < pivots.size() && pivots[p] == col) {
            ++p;
        } else {
            free.push_back(col);
        }
    }
    Sized out = zeros(a.cols, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        out.m[free[f]][f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            out.m[pivots[i]][f] = -a.m[i][free[f]];
        }
    }
    return out;
}

/// x with basis * x = v, for v in the column span of a full-column-rank basis.
inline Sized coordinates(const Sized& basis, const Sized& v) {
    // normal equations are square and invertible for independent columns
    Sized bt = zeros(basis.cols, basis.rows);
    for (std::size_t i = 0; i < basis.rows; ++i) {
        for (std::size_t j = 0; j < basis.cols; ++j) {
            bt.m[j][i] = basis.m[i][j];
        }
    }
    Sized g = multiply(bt, basis);
    Sized rhs = multiply(bt, v);
    std::size_t n = g.rows;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (g.m[piv][col] == 0) {
            ++piv;
        }
        std::swap(g.m[piv], g.m[col]);
        std::swap(rhs.m[piv], rhs.m[col]);
        Q lead = g.m[col][col];
        for (auto& x : g.m[col]) {
            x /= lead;
        }
        for (auto& x : rhs.m[col]) {
            x /= lead;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col || g.m[i][col] == 0) {
                continue;
            }
            Q factor = g.m[i][col];
            for (std::size_t j = 0; j < n; ++j) {
                g.m[i][j] -= factor * g.m[col][j];
            }
            for (std::size_t j = 0; j < rhs.cols; ++j) {
                rhs.m[i][j] -= factor * rhs.m[col][j];
            }
        }
    }
    if (!is_zero([&] {
            Sized back = multiply(basis, rhs);
            for (std::size_t i = 0; i < back.rows; ++i) {
                for (std::size_t j = 0; j < back.cols; ++j) {
                    back.m[i][j] -= v.m[i][j];
                }
            }
            return back;
        }())) {
        throw std::logic_error("oracle coordinates: vector not in span");
    }
    return rhs;
}

/// Complex in degrees 0..dims.size()-1; d[k] : C^k -> C^{k+1}.
struct Complex {
    std::vector<std::size_t> dims;
    std::vector<Sized> d;
};

inline Complex from_engine(const edgehodge::CochainComplex& c) {
    if (c.low_degree() != 0) {
        throw std::logic_error("oracle expects complexes starting in degree 0");
    }
    Complex out;
    for (int k = 0; k <= c.top_degree(); ++k) {
        out.dims.push_back(c.dim(k));
    }
    for (int k = 0; k < c.top_degree(); ++k) {
        out.d.push_back(from_engine(c.diff(k)));
    }
    return out;
}

inline std::vector<long> betti(const Complex& c) {
    std::vector<long> out;
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        std::size_t out_rank = k < c.d.size() ? rank(c.d[k]) : 0;
        std::size_t in_rank = k > 0 ? rank(c.d[k - 1]) : 0;
        out.push_back(static_cast<long>(c.dims[k] - out_rank - in_rank));
    }
    return out;
}

inline bool squares_to_zero(const Complex& c) {
    for (std::size_t k = 0; k + 1 < c.d.size(); ++k) {
        if (!is_zero(multiply(c.d[k + 1], c.d[k]))) {
            return false;
        }
    }
    return true;
}

/// tau_{<= cut}: degrees below cut kept, cocycles at cut, nothing above.
inline Complex truncate(const Complex& c, long cut) {
    Complex out;
    if (cut < 0) {
        return out;
    }
    auto top = static_cast<long>(c.dims.size()) - 1;
    if (cut >= top) {
        return c;
    }
    auto uc = static_cast<std::size_t>(cut);
    for (std::size_t k = 0; k < uc; ++k) {
        out.dims.push_back(c.dims[k]);
    }
    Sized z = null_space(c.d[uc]);
    out.dims.push_back(z.cols);
    for (std::size_t k = 0; k + 1 < uc; ++k) {
        out.d.push_back(c.d[k]);
    }
    if (uc > 0) {
        out.d.push_back(coordinates(z, c.d[uc - 1]));
    }
    return out;
}

inline Sized kron(const Sized& a, const Sized& b) {
    Sized out = zeros(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t j = 0; j < a.cols; ++j) {
            if (a.m[i][j] == 0) {
                continue;
            }
            for (std::size_t p = 0; p < b.rows; ++p) {
                for (std::size_t q = 0; q < b.cols; ++q) {
                    out.m[i * b.rows + p][j * b.cols + q] = a.m[i][j] * b.m[p][q];
                }
            }
        }
    }
    return out;
}

inline Sized identity(std::size_t n) {
    Sized out = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        out.m[i][i] = 1;
    }
    return out;
}

/// Total complex of a (x) b. Degree-k blocks are ordered by the degree of the
/// b factor descending (the engine orders the other way), with sign (-1)^j
/// on the b differential where j is the a degree.
inline Complex tensor(const Complex& a, const Complex& b) {
    Complex out;
    if (a.dims.empty() || b.dims.empty()) {
        return out;
    }
    std::size_t top = a.dims.size() + b.dims.size() - 2;
    // offsets[k][i] = start of block (i, k - i) inside degree k
    std::vector<std::vector<long>> offset(top + 1, std::vector<long>(a.dims.size(), -1));
    for (std::size_t k = 0; k <= top; ++k) {
        std::size_t pos = 0;
        for (std::size_t i = 0; i < a.dims.size(); ++i) {
            if (k < i || k - i >= b.dims.size()) {
                continue;
            }
            offset[k][i] = static_cast<long>(pos);
            pos += a.dims[i] * b.dims[k - i];
        }
        out.dims.push_back(pos);
    }
    for (std::size_t k = 0; k < top; ++k) {
        Sized d = zeros(out.dims[k + 1], out.dims[k]);
        for (std::size_t i = 0; i < a.dims.size(); ++i) {
            if (offset[k][i] < 0) {
                continue;
            }
            std::size_t j = k - i;
            auto place = [&](const Sized& block, std::size_t row0, std::size_t col0) {
                for (std::size_t r = 0; r < block.rows; ++r) {
                    for (std::size_t c = 0; c < block.cols; ++c) {
                        d.m[row0 + r][col0 + c] = block.m[r][c];
                    }
                }
            };
            auto col0 = static_cast<std::size_t>(offset[k][i]);
            if (i + 1 < a.dims.size() && offset[k + 1][i + 1] >= 0) {
                place(kron(a.d[i], identity(b.dims[j])), static_cast<std::size_t>(offset[k + 1][i + 1]), col0);
            }
            if (j + 1 < b.dims.size() && offset[k + 1][i] >= 0) {
                Sized block = kron(identity(a.dims[i]), b.d[j]);
                if (i % 2 == 1) {
                    for (auto& row : block.m) {
                        for (auto& v : row) {
                            v = -v;
                        }
                    }
                }
                place(block, static_cast<std::size_t>(offset[k + 1][i]), col0);
            }
        }
        out.d.push_back(std::move(d));
    }
    return out;
}

/// IH of B x C(F) at perversity p: cohomology of B (x) tau_{<= floor(f-1-p)} F,
/// padded to degrees 0..n.
inline std::vector<long> product_ih(const edgehodge::CochainComplex& base, const edgehodge::CochainComplex& fibre,
                                    const edgehodge::Rational& p, long n) {
    long f = fibre.top_degree();
    edgehodge::Rational t = edgehodge::Rational(f - 1) - p;
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    long cut = fl.get_si();
    Complex truncated = truncate(from_engine(fibre), cut);
    std::vector<long> dims;
    if (!truncated.dims.empty()) {
        Complex total = tensor(from_engine(base), truncated);
        if (!squares_to_zero(total)) {
            throw std::logic_error("oracle tensor complex is not a complex");
        }
        dims = betti(total);
    }
    dims.resize(static_cast<std::size_t>(n + 1), 0);
    return dims;
}

} // namespace oracle
