#pragma once

#include <vector>

#include "tbf/intmat.hpp"

namespace tbf {

// Full-rank sublattice of Z^n, stored as a canonical HNF column basis
// (upper triangular, positive diagonal). Equality of lattices is equality
// of the stored basis.
class Lattice {
  public:
    // Span of the columns of `generators`; must have full rank n.
    static Lattice span(const IntMatrix& generators) {
        const int n = generators.rows();
        HermiteResult hr = hermite_normal_form(generators);
        // Nonzero columns sit at the right after bottom-up pivoting.
        int zero_cols = 0;
        while (zero_cols < hr.h.cols()) {
            bool all_zero = true;
            for (int i = 0; i < n; ++i)
                if (hr.h(i, zero_cols) != 0) { all_zero = false; break; }
            if (!all_zero) break;
            ++zero_cols;
        }
        const int rank = hr.h.cols() - zero_cols;
        if (rank != n) throw ValidationError("lattice generators do not have full rank");
        Lattice l;
        l.basis_ = hr.h.submatrix(0, zero_cols, n, n);
        return l;
    }

    static Lattice full(int n) { return span(IntMatrix::identity(n)); }

    int rank() const { return basis_.rows(); }
    const IntMatrix& basis() const { return basis_; }

    // Index [Z^n : L] = det of the basis (positive by canonical form).
    mpz_class index() const { return det(basis_); }

    bool operator==(const Lattice& o) const { return basis_ == o.basis_; }

    bool contains(const std::vector<mpz_class>& v) const {
        // Back-substitution against the upper-triangular basis.
        const int n = rank();
        std::vector<mpz_class> r = v;
        for (int i = n - 1; i >= 0; --i) {
            if (r[i] % basis_(i, i) != 0) return false;
            mpz_class c = r[i] / basis_(i, i);
            for (int k = 0; k <= i; ++k) r[k] -= c * basis_(k, i);
        }
        return true;
    }

    bool contains(const Lattice& sub) const {
        for (int j = 0; j < sub.rank(); ++j) {
            std::vector<mpz_class> col(sub.rank());
            for (int i = 0; i < sub.rank(); ++i) col[i] = sub.basis_(i, j);
            if (!contains(col)) return false;
        }
        return true;
    }

    // Canonical coset representative of v + L: coordinates reduced from the
    // bottom against the triangular basis, each into [0, diagonal).
    std::vector<mpz_class> reduce(std::vector<mpz_class> v) const {
        const int n = rank();
        for (int i = n - 1; i >= 0; --i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), v[i].get_mpz_t(), basis_(i, i).get_mpz_t());
            if (q != 0)
                for (int k = 0; k <= i; ++k) v[k] -= q * basis_(k, i);
        }
        return v;
    }

    // All canonical coset representatives of Z^n / L, in lexicographic order.
    std::vector<std::vector<mpz_class>> coset_representatives() const {
        const int n = rank();
        std::vector<std::vector<mpz_class>> out;
        std::vector<mpz_class> cur(n, 0);
        auto rec = [&](auto&& self, int i) -> void {
            if (i == n) {
                out.push_back(reduce(cur));
                return;
            }
            for (mpz_class x = 0; x < basis_(i, i); ++x) {
                cur[i] = x;
                self(self, i + 1);
            }
        };
        rec(rec, 0);
        return out;
    }

    Lattice transformed(const IntMatrix& a) const {  // a * L, a unimodular
        return span(a * basis_);
    }

    Lattice scaled(const mpz_class& k) const { return span(basis_ * k); }

    // L1 ∩ L2 via the integer kernel of [B1 | -B2].
    static Lattice intersect(const Lattice& l1, const Lattice& l2) {
        const int n = l1.rank();
        if (n != l2.rank()) throw ValidationError("lattice rank mismatch");
        IntMatrix stacked = l1.basis_.hconcat(l2.basis_ * mpz_class(-1));
        IntMatrix ker = integer_kernel(stacked);  // columns (x; y) with B1 x = B2 y
        IntMatrix xs = ker.submatrix(0, 0, n, ker.cols());
        return span(l1.basis_ * xs);
    }

    // {v : a*v ∈ L}; full rank because v ↦ a*v mod L has finite-index kernel.
    static Lattice preimage(const IntMatrix& a, const Lattice& l) {
        const int n = l.rank();
        IntMatrix stacked = a.hconcat(l.basis_ * mpz_class(-1));
        IntMatrix ker = integer_kernel(stacked);
        IntMatrix vs = ker.submatrix(0, 0, n, ker.cols());
        return span(vs);
    }

  private:
    Lattice() = default;
    IntMatrix basis_;
};

}  // namespace tbf
