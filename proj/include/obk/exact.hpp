#pragma once

// Exact integer matrix algebra: Smith normal form, cokernel presentations,
// torsion queries.  All entries are arbitrary-precision (GMP); nothing in
// this header touches floating point.

#include <gmpxx.h>

#include <cassert>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace obk {

using Int = mpz_class;
using Rat = mpq_class;

/// Dense integer matrix, row-major.  Dimensions may be zero.
class IntMatrix {
public:
    IntMatrix() = default;

    IntMatrix(int rows, int cols)
        : rows_(rows), cols_(cols),
          e_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        assert(rows >= 0 && cols >= 0);
    }

    IntMatrix(int rows, int cols, std::initializer_list<long> entries)
        : IntMatrix(rows, cols) {
        assert(entries.size() == e_.size());
        std::size_t k = 0;
        for (long v : entries) e_[k++] = v;
    }

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Int& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }
    const Int& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return e_[static_cast<std::size_t>(i) * cols_ + j];
    }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    void swap_rows(int i, int j) {
        for (int k = 0; k < cols_; ++k) std::swap((*this)(i, k), (*this)(j, k));
    }
    void swap_cols(int i, int j) {
        for (int k = 0; k < rows_; ++k) std::swap((*this)(k, i), (*this)(k, j));
    }
    /// row i += f * row j
    void add_row(int i, int j, const Int& f) {
        for (int k = 0; k < cols_; ++k) (*this)(i, k) += f * (*this)(j, k);
    }
    /// col i += f * col j
    void add_col(int i, int j, const Int& f) {
        for (int k = 0; k < rows_; ++k) (*this)(k, i) += f * (*this)(k, j);
    }
    void negate_row(int i) {
        for (int k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Int> e_;
};

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    assert(a.cols() == b.rows());
    IntMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Int& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline IntMatrix transpose(const IntMatrix& a) {
    IntMatrix t(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
    return m;
}

inline std::string to_string(const IntMatrix& a) {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < a.rows(); ++i) {
        os << (i ? "; " : "");
        for (int j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
    }
    os << "]";
    return os.str();
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant: matrix not square");
    const int n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < n; ++i)
                if (m(i, k) != 0) { piv = i; break; }
            if (piv < 0) return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = std::move(t);
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

inline bool is_unimodular(const IntMatrix& a) {
    if (a.rows() != a.cols()) return false;
    Int d = determinant(a);
    return d == 1 || d == -1;
}

/// U * A * V = D with U, V unimodular and D diagonal, nonnegative,
/// d1 | d2 | ... with zeros trailing.
struct SmithDecomposition {
    IntMatrix u;
    IntMatrix d;
    IntMatrix v;
};

namespace detail {

// Position of the smallest nonzero |entry| in the trailing submatrix
// starting at (t, t); returns false when that submatrix is zero.
inline bool locate_pivot(const IntMatrix& m, int t, int& pi, int& pj) {
    bool found = false;
    Int best;
    for (int i = t; i < m.rows(); ++i)
        for (int j = t; j < m.cols(); ++j) {
            if (m(i, j) == 0) continue;
            Int a = abs(m(i, j));
            if (!found || a < best) {
                found = true;
                best = std::move(a);
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace detail

inline SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const int m = a.rows(), n = a.cols();
    SmithDecomposition s{IntMatrix::identity(m), a, IntMatrix::identity(n)};
    IntMatrix& d = s.d;
    const int nmin = std::min(m, n);

    for (int t = 0; t < nmin; ++t) {
        int pi = 0, pj = 0;
        if (!detail::locate_pivot(d, t, pi, pj)) break;
        for (;;) {
            d.swap_rows(t, pi);
            s.u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            s.v.swap_cols(t, pj);

            // Clear the pivot column, then the pivot row.
            bool dirty = false;
            for (int i = t + 1; i < m; ++i) {
                if (d(i, t) == 0) continue;
                Int q = d(i, t) / d(t, t);
                d.add_row(i, t, -q);
                s.u.add_row(i, t, -q);
                if (d(i, t) != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                if (d(t, j) == 0) continue;
                Int q = d(t, j) / d(t, t);
                d.add_col(j, t, -q);
                s.v.add_col(j, t, -q);
                if (d(t, j) != 0) dirty = true;
            }
            if (dirty) {
                detail::locate_pivot(d, t, pi, pj);
                continue;
            }

            // Pivot isolated.  Pull in any entry it does not divide yet.
            int bi = -1;
            for (int i = t + 1; i < m && bi < 0; ++i)
                for (int j = t + 1; j < n; ++j)
                    if (d(i, j) % d(t, t) != 0) { bi = i; break; }
            if (bi < 0) break;
            d.add_row(t, bi, 1);
            s.u.add_row(t, bi, 1);
            pi = t;
            pj = t;
        }
        if (d(t, t) < 0) {
            d.negate_row(t);
            s.u.negate_row(t);
        }
    }
    return s;
}

inline int smith_rank(const SmithDecomposition& s) {
    int r = 0;
    const int nmin = std::min(s.d.rows(), s.d.cols());
    while (r < nmin && s.d(r, r) != 0) ++r;
    return r;
}

/// Torsion divisor chain plus free rank of a finitely generated abelian group.
/// Unit divisors are dropped; no entry is 0 or 1.
struct DivisorChain {
    std::vector<Int> torsion;
    int free_rank = 0;

    bool operator==(const DivisorChain& o) const {
        return free_rank == o.free_rank && torsion == o.torsion;
    }
    bool operator!=(const DivisorChain& o) const { return !(*this == o); }
};

inline std::string to_string(const DivisorChain& c) {
    std::ostringstream os;
    os << "Z^" << c.free_rank;
    for (const Int& t : c.torsion) os << " + Z/" << t;
    return os.str();
}

/// Presentation of Z^rows / column-span(A).
inline DivisorChain cokernel_divisors(const IntMatrix& a) {
    SmithDecomposition s = smith_normal_form(a);
    DivisorChain c;
    const int r = smith_rank(s);
    for (int i = 0; i < r; ++i)
        if (s.d(i, i) > 1) c.torsion.push_back(s.d(i, i));
    c.free_rank = a.rows() - r;
    return c;
}

inline bool has_two_torsion(const DivisorChain& c) {
    for (const Int& t : c.torsion)
        if (t % 2 == 0) return true;
    return false;
}

} // namespace obk
