#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "tbf/errors.hpp"

namespace tbf {

// Dense matrix over arbitrary-precision integers.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static IntMatrix identity(int n) {
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static IntMatrix zero(int rows, int cols) { return IntMatrix(rows, cols); }
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
        IntMatrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
        for (int i = 0; i < m.rows(); ++i) {
            if (rows[i].size() != static_cast<std::size_t>(m.cols()))
                throw ValidationError("ragged matrix literal");
            for (int j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& operator()(int i, int j) { return e_[i * cols_ + j]; }
    const mpz_class& operator()(int i, int j) const { return e_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }

    IntMatrix operator*(const IntMatrix& o) const {
        if (cols_ != o.rows_) throw ValidationError("matrix shape mismatch in product");
        IntMatrix r(rows_, o.cols_);
        for (int i = 0; i < rows_; ++i)
            for (int k = 0; k < cols_; ++k) {
                const mpz_class& a = (*this)(i, k);
                if (a == 0) continue;
                for (int j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
            }
        return r;
    }

    IntMatrix operator+(const IntMatrix& o) const {
        require_same_shape(o);
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
        return r;
    }

    IntMatrix operator-(const IntMatrix& o) const {
        require_same_shape(o);
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
        return r;
    }

    IntMatrix operator*(const mpz_class& s) const {
        IntMatrix r(rows_, cols_);
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * s;
        return r;
    }

    std::vector<mpz_class> apply(const std::vector<mpz_class>& v) const {
        if (static_cast<int>(v.size()) != cols_) throw ValidationError("vector length mismatch");
        std::vector<mpz_class> r(rows_, 0);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    IntMatrix pow(int k) const {
        if (rows_ != cols_) throw ValidationError("power of non-square matrix");
        if (k < 0) throw ValidationError("negative matrix power");
        IntMatrix acc = identity(rows_), base = *this;
        while (k) {
            if (k & 1) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    IntMatrix transpose() const {
        IntMatrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    // Horizontal concatenation [this | o].
    IntMatrix hconcat(const IntMatrix& o) const {
        if (rows_ != o.rows_) throw ValidationError("hconcat row mismatch");
        IntMatrix r(rows_, cols_ + o.cols_);
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) r(i, j) = (*this)(i, j);
            for (int j = 0; j < o.cols_; ++j) r(i, cols_ + j) = o(i, j);
        }
        return r;
    }

    IntMatrix submatrix(int row0, int col0, int nrows, int ncols) const {
        IntMatrix r(nrows, ncols);
        for (int i = 0; i < nrows; ++i)
            for (int j = 0; j < ncols; ++j) r(i, j) = (*this)(row0 + i, col0 + j);
        return r;
    }

    std::string to_string() const {
        std::string s = "[";
        for (int i = 0; i < rows_; ++i) {
            s += i ? ",[" : "[";
            for (int j = 0; j < cols_; ++j) {
                if (j) s += ",";
                s += (*this)(i, j).get_str();
            }
            s += "]";
        }
        return s + "]";
    }

  private:
    void require_same_shape(const IntMatrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("matrix shape mismatch");
    }

    int rows_ = 0, cols_ = 0;
    std::vector<mpz_class> e_;
};

// Determinant by Bareiss fraction-free elimination (exact).
inline mpz_class det(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (a(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            for (int j = 0; j < n; ++j) swap(a(k, j), a(p, j));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_class q;
                mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                a(i, j) = q;
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

struct SmithResult {
    IntMatrix u, d, v;  // u*m*v = d, u and v unimodular, d diagonal with divisibility chain
    std::vector<mpz_class> invariant_factors() const {
        std::vector<mpz_class> f;
        for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
            if (d(i, i) != 0) f.push_back(d(i, i));
        return f;
    }
    int rank() const {
        int r = 0;
        for (int i = 0; i < std::min(d.rows(), d.cols()); ++i)
            if (d(i, i) != 0) ++r;
        return r;
    }
};

// Smith normal form by gcd pivoting with explicit transform accumulation.
// The postcondition u*m*v == d is re-verified before returning.
inline SmithResult smith_normal_form(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    IntMatrix d = m, u = IntMatrix::identity(rows), v = IntMatrix::identity(cols);

    auto swap_rows = [&](int a, int b) {
        for (int j = 0; j < cols; ++j) swap(d(a, j), d(b, j));
        for (int j = 0; j < rows; ++j) swap(u(a, j), u(b, j));
    };
    auto swap_cols = [&](int a, int b) {
        for (int i = 0; i < rows; ++i) swap(d(i, a), d(i, b));
        for (int i = 0; i < cols; ++i) swap(v(i, a), v(i, b));
    };
    auto add_row = [&](int dst, int src, const mpz_class& c) {  // row dst += c*row src
        for (int j = 0; j < cols; ++j) d(dst, j) += c * d(src, j);
        for (int j = 0; j < rows; ++j) u(dst, j) += c * u(src, j);
    };
    auto add_col = [&](int dst, int src, const mpz_class& c) {
        for (int i = 0; i < rows; ++i) d(i, dst) += c * d(i, src);
        for (int i = 0; i < cols; ++i) v(i, dst) += c * v(i, src);
    };
    auto negate_row = [&](int r) {
        for (int j = 0; j < cols; ++j) d(r, j) = -d(r, j);
        for (int j = 0; j < rows; ++j) u(r, j) = -u(r, j);
    };

    const int t = std::min(rows, cols);
    for (int k = 0; k < t; ++k) {
        // Find a nonzero pivot of minimal absolute value in the trailing block.
        int pi = -1, pj = -1;
        mpz_class best;
        for (int i = k; i < rows; ++i)
            for (int j = k; j < cols; ++j)
                if (d(i, j) != 0) {
                    mpz_class a = abs(d(i, j));
                    if (pi < 0 || a < best) { best = a; pi = i; pj = j; }
                }
        if (pi < 0) break;  // trailing block is zero
        swap_rows(k, pi);
        swap_cols(k, pj);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = k + 1; i < rows; ++i)
                if (d(i, k) != 0) {
                    mpz_class q = d(i, k) / d(k, k);  // truncated division is fine: we loop
                    add_row(i, k, -q);
                    if (d(i, k) != 0) { swap_rows(k, i); dirty = true; }
                }
            for (int j = k + 1; j < cols; ++j)
                if (d(k, j) != 0) {
                    mpz_class q = d(k, j) / d(k, k);
                    add_col(j, k, -q);
                    if (d(k, j) != 0) { swap_cols(k, j); dirty = true; }
                }
        }
        if (d(k, k) < 0) negate_row(k);
        // Enforce divisibility d(k,k) | d(i,j) for the trailing block.
        for (int i = k + 1; i < rows; ++i)
            for (int j = k + 1; j < cols; ++j)
                if (d(i, j) % d(k, k) != 0) {
                    add_row(k, i, 1);
                    // redo this pivot from scratch
                    --k;
                    i = rows;
                    break;
                }
    }
    SmithResult r{std::move(u), std::move(d), std::move(v)};
    if (!(r.u * m * r.v == r.d)) throw ValidationError("SNF postcondition failed");
    mpz_class du = abs(det(r.u)), dv = abs(det(r.v));
    if (du != 1 || dv != 1) throw ValidationError("SNF transforms not unimodular");
    return r;
}

struct HermiteResult {
    IntMatrix h, u;  // h = m*u (column-style), u unimodular
};

// Column-style Hermite normal form: h upper-triangular on its column profile,
// pivot entries positive, entries to the right of a pivot reduced mod it.
inline HermiteResult hermite_normal_form(const IntMatrix& m) {
    const int rows = m.rows(), cols = m.cols();
    IntMatrix h = m, u = IntMatrix::identity(cols);

    auto add_col = [&](int dst, int src, const mpz_class& c) {
        for (int i = 0; i < rows; ++i) h(i, dst) += c * h(i, src);
        for (int i = 0; i < cols; ++i) u(i, dst) += c * u(i, src);
    };
    auto swap_cols = [&](int a, int b) {
        for (int i = 0; i < rows; ++i) swap(h(i, a), h(i, b));
        for (int i = 0; i < cols; ++i) swap(u(i, a), u(i, b));
    };
    auto negate_col = [&](int c) {
        for (int i = 0; i < rows; ++i) h(i, c) = -h(i, c);
        for (int i = 0; i < cols; ++i) u(i, c) = -u(i, c);
    };

    // Pivots are assigned from the bottom row and the rightmost column, so a
    // full-column-rank result is upper triangular with positive diagonal.
    int pivot_col = cols - 1;
    for (int row = rows - 1; row >= 0 && pivot_col >= 0; --row) {
        while (true) {
            int nz = -1;
            mpz_class best;
            for (int j = pivot_col; j >= 0; --j)
                if (h(row, j) != 0) {
                    mpz_class a = abs(h(row, j));
                    if (nz < 0 || a < best) { best = a; nz = j; }
                }
            if (nz < 0) break;  // row is zero in the leading columns
            swap_cols(pivot_col, nz);
            bool reduced = true;
            for (int j = pivot_col - 1; j >= 0; --j)
                if (h(row, j) != 0) {
                    mpz_class q = h(row, j) / h(row, pivot_col);
                    add_col(j, pivot_col, -q);
                    if (h(row, j) != 0) reduced = false;
                }
            if (reduced) {
                if (h(row, pivot_col) < 0) negate_col(pivot_col);
                // Entries to the right of the pivot in its row lie in [0, pivot).
                for (int j = pivot_col + 1; j < cols; ++j) {
                    mpz_class q;
                    mpz_fdiv_q(q.get_mpz_t(), h(row, j).get_mpz_t(), h(row, pivot_col).get_mpz_t());
                    if (q != 0) add_col(j, pivot_col, -q);
                }
                --pivot_col;
                break;
            }
        }
    }
    HermiteResult r{std::move(h), std::move(u)};
    if (!(m * r.u == r.h)) throw ValidationError("HNF postcondition failed");
    return r;
}

// Rank over the rationals.
inline int rational_rank(const IntMatrix& m) { return smith_normal_form(m).rank(); }

// Basis of the integer kernel {x : m x = 0}, as columns.
inline IntMatrix integer_kernel(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    const int r = s.rank();
    const int cols = m.cols();
    // m v e_j = u^-1 d e_j = 0 exactly for j >= r, so kernel basis = last cols-r columns of v.
    return s.v.submatrix(0, r, cols, cols - r);
}

// Inverse of a unimodular matrix (exact, via adjugate-free SNF transforms).
inline IntMatrix unimodular_inverse(const IntMatrix& m) {
    mpz_class d = det(m);
    if (d != 1 && d != -1) throw ValidationError("matrix is not unimodular");
    const int n = m.rows();
    // Adjugate via cofactors through Bareiss on bordered systems would be quadratic
    // in determinant evaluations; n is tiny here, so cofactor expansion is fine.
    IntMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntMatrix minor(n - 1, n - 1);
            for (int a = 0, ai = 0; a < n; ++a) {
                if (a == j) continue;
                for (int b = 0, bi = 0; b < n; ++b) {
                    if (b == i) continue;
                    minor(ai, bi) = m(a, b);
                    ++bi;
                }
                ++ai;
            }
            mpz_class c = det(minor);
            if ((i + j) & 1) c = -c;
            inv(i, j) = c / d;
        }
    if (!(m * inv == IntMatrix::identity(n))) throw ValidationError("unimodular inverse check failed");
    return inv;
}

}  // namespace tbf
