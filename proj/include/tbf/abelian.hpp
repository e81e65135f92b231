#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbf/intmat.hpp"
#include "tbf/lattice.hpp"

namespace tbf {

// Reidemeister count: a positive integer or INFINITE. Kept as a distinct
// value type so the finite/infinite dichotomy can never be lost in an int.
class RCount {
  public:
    static RCount infinite() { return RCount(); }
    static RCount of(mpz_class v) {
        RCount r;
        r.value_ = std::move(v);
        return r;
    }
    bool is_finite() const { return value_.has_value(); }
    const mpz_class& value() const {
        if (!value_) throw ValidationError("Reidemeister number is infinite");
        return *value_;
    }
    bool operator==(const RCount& o) const { return value_ == o.value_; }
    std::string to_string() const { return value_ ? value_->get_str() : "INFINITE"; }

  private:
    RCount() = default;
    std::optional<mpz_class> value_;
};

// R(φ^k) for φ the endomorphism of Z^n given by M: |det(I - M^k)|, or
// INFINITE when the determinant vanishes.
inline RCount reidemeister_number_zn(const IntMatrix& m, int power = 1) {
    if (m.rows() != m.cols()) throw ValidationError("endomorphism matrix must be square");
    if (power < 1) throw ValidationError("power must be >= 1");
    mpz_class d = det(IntMatrix::identity(m.rows()) - m.pow(power));
    if (d == 0) return RCount::infinite();
    return RCount::of(abs(d));
}

// Canonical representatives of Z^n / M Z^n (here M plays the role of I - φ).
inline std::vector<std::vector<mpz_class>> coker_representatives(const IntMatrix& m) {
    if (det(m) == 0) throw InfiniteCokernel();
    Lattice l = Lattice::span(m);
    return l.coset_representatives();
}

// Rank of ker(I - M) over the rationals.
inline int fixed_subgroup_rank(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw ValidationError("matrix must be square");
    return m.rows() - rational_rank(IntMatrix::identity(m.rows()) - m);
}

// Finitely generated abelian group Z^r ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k with d_i | d_{i+1}.
struct FgAbelian {
    int rank = 0;
    std::vector<mpz_class> torsion;

    FgAbelian(int r, std::vector<mpz_class> d) : rank(r), torsion(std::move(d)) {
        if (rank < 0) throw ValidationError("negative rank");
        for (std::size_t i = 0; i < torsion.size(); ++i) {
            if (torsion[i] < 2) throw ValidationError("torsion invariant must be >= 2");
            if (i > 0 && torsion[i] % torsion[i - 1] != 0)
                throw ValidationError("torsion invariants must form a divisibility chain");
        }
    }
    int dim() const { return rank + static_cast<int>(torsion.size()); }
};

// Endomorphism of an f.g. abelian group, as an integer matrix in the
// coordinates (free generators, torsion generators). Validated eagerly.
class FgAbelianEndo {
  public:
    FgAbelianEndo(FgAbelian g, IntMatrix m) : group_(std::move(g)), matrix_(std::move(m)) {
        const int n = group_.dim();
        if (matrix_.rows() != n || matrix_.cols() != n)
            throw ValidationError("endomorphism matrix has wrong shape");
        const int r = group_.rank;
        const int k = static_cast<int>(group_.torsion.size());
        // Torsion cannot map into the free part.
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < k; ++j)
                if (matrix_(i, r + j) != 0)
                    throw ValidationError("torsion generator maps into the free part");
        // Z/d_j -> Z/d_i needs the entry to be a multiple of d_i / gcd(d_i, d_j).
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                mpz_class g_ij = gcd(group_.torsion[i], group_.torsion[j]);
                mpz_class need = group_.torsion[i] / g_ij;
                if (matrix_(r + i, r + j) % need != 0)
                    throw ValidationError("torsion entry violates well-definedness divisibility");
            }
        (void)n;
    }

    const FgAbelian& group() const { return group_; }
    const IntMatrix& matrix() const { return matrix_; }

  private:
    FgAbelian group_;
    IntMatrix matrix_;
};

// |coker(I - φ^power)| over Z^r ⊕ ⊕ Z/d_i: stack the torsion relations next
// to I - M^power and read the invariant factors. INFINITE iff rank-deficient.
inline RCount reidemeister_number_fg_abelian(const FgAbelianEndo& phi, int power = 1) {
    if (power < 1) throw ValidationError("power must be >= 1");
    const FgAbelian& g = phi.group();
    const int n = g.dim();
    const int r = g.rank;
    const int k = static_cast<int>(g.torsion.size());
    IntMatrix rel = IntMatrix::identity(n) - phi.matrix().pow(power);
    IntMatrix tors(n, k);
    for (int j = 0; j < k; ++j) tors(r + j, j) = g.torsion[j];
    SmithResult s = smith_normal_form(rel.hconcat(tors));
    if (s.rank() < n) return RCount::infinite();
    mpz_class size = 1;
    for (const mpz_class& f : s.invariant_factors()) size *= f;
    return RCount::of(size);
}

struct AbelianSeparatingQuotient {
    Lattice sublattice;               // H = (I - M) Z^n
    std::vector<mpz_class> factors;   // invariant factors of Z^n / H (all >= 1)
    mpz_class order;                  // |Z^n / H| = R(φ)
};

// The class of e is the subgroup H = (I - M) Z^n; the quotient Z^n/H carries
// the trivial induced twisting and its order is R(φ).
inline AbelianSeparatingQuotient abelian_separating_quotient(const IntMatrix& m) {
    IntMatrix rel = IntMatrix::identity(m.rows()) - m;
    if (det(rel) == 0) throw InfiniteCokernel();
    AbelianSeparatingQuotient q{Lattice::span(rel), {}, 1};
    SmithResult s = smith_normal_form(rel);
    for (const mpz_class& f : s.invariant_factors()) {
        q.factors.push_back(f);
        q.order *= f;
    }
    if (q.order != q.sublattice.index()) throw ValidationError("quotient order mismatch");
    return q;
}

}  // namespace tbf
