#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "tbf/abelian.hpp"
#include "tbf/char_table.hpp"
#include "tbf/lattice.hpp"
#include "tbf/twisted.hpp"

namespace tbf {

// G = Z^n ⋊_theta F with F finite and theta: F -> GL_n(Z).
struct LatticeExtension {
    int n = 0;
    FiniteGroup finite_part;
    std::vector<IntMatrix> theta;  // per element of F, unimodular

    LatticeExtension(int rank, FiniteGroup f, std::vector<IntMatrix> action)
        : n(rank), finite_part(std::move(f)), theta(std::move(action)) {
        if (theta.size() != static_cast<std::size_t>(finite_part.order()))
            throw ValidationError("one action matrix per finite-part element required");
        for (const auto& m : theta) {
            if (m.rows() != n || m.cols() != n) throw ValidationError("action matrix shape mismatch");
            mpz_class d = det(m);
            if (d != 1 && d != -1) throw ValidationError("action matrix is not unimodular");
        }
        if (!(theta[0] == IntMatrix::identity(n)))
            throw ValidationError("theta(e) must be the identity matrix");
        for (int a = 0; a < finite_part.order(); ++a)
            for (int b = 0; b < finite_part.order(); ++b)
                if (!(theta[a] * theta[b] == theta[finite_part.mul(a, b)]))
                    throw ValidationError("theta is not a homomorphism at (" + std::to_string(a) +
                                          "," + std::to_string(b) + ")");
    }
};

// Endomorphism phi(v, f) = (M v + c(f), psi(f)). Validated on construction:
// M theta(f) = theta(psi(f)) M and the cocycle identity over all of F.
class ExtensionEndo {
  public:
    ExtensionEndo(const LatticeExtension& ext, IntMatrix m, FiniteEndo psi,
                  std::vector<std::vector<mpz_class>> cocycle)
        : ext_(&ext), m_(std::move(m)), psi_(std::move(psi)), c_(std::move(cocycle)) {
        const int n = ext.n;
        const FiniteGroup& f = ext.finite_part;
        if (m_.rows() != n || m_.cols() != n) throw ValidationError("lattice matrix shape mismatch");
        if (&psi_.group() != &f) throw GroupMismatch();
        if (c_.size() != static_cast<std::size_t>(f.order()))
            throw ValidationError("one cocycle vector per finite-part element required");
        for (const auto& v : c_)
            if (v.size() != static_cast<std::size_t>(n))
                throw ValidationError("cocycle vector length mismatch");
        for (const mpz_class& x : c_[0])
            if (x != 0) throw ValidationError("cocycle must vanish at the identity");
        for (int g = 0; g < f.order(); ++g)
            if (!(m_ * ext.theta[g] == ext.theta[psi_(g)] * m_)) throw EquivarianceFailure(g);
        for (int a = 0; a < f.order(); ++a)
            for (int b = 0; b < f.order(); ++b) {
                std::vector<mpz_class> lhs = c_[f.mul(a, b)];
                std::vector<mpz_class> rhs = ext.theta[psi_(a)].apply(c_[b]);
                for (int i = 0; i < n; ++i) rhs[i] += c_[a][i];
                if (lhs != rhs) throw CocycleFailure(a, b);
            }
    }

    const LatticeExtension& ext() const { return *ext_; }
    const IntMatrix& lattice_matrix() const { return m_; }
    const FiniteEndo& finite_endo() const { return psi_; }
    const std::vector<mpz_class>& cocycle(int f) const { return c_[f]; }

    static ExtensionEndo trivial(const LatticeExtension& ext) {
        return ExtensionEndo(ext, IntMatrix::zero(ext.n, ext.n),
                             FiniteEndo::trivial(ext.finite_part),
                             std::vector<std::vector<mpz_class>>(
                                 ext.finite_part.order(), std::vector<mpz_class>(ext.n, 0)));
    }

    // this ∘ other; cocycles composed operationally and the result re-validated.
    ExtensionEndo compose(const ExtensionEndo& other) const {
        if (ext_ != other.ext_) throw GroupMismatch();
        const FiniteGroup& f = ext_->finite_part;
        IntMatrix m = m_ * other.m_;
        FiniteEndo psi = psi_.compose(other.psi_);
        std::vector<std::vector<mpz_class>> c(f.order());
        for (int g = 0; g < f.order(); ++g) {
            // phi1(phi2(0, g)) = (M1 c2(g) + c1(psi2(g)), ...)
            std::vector<mpz_class> v = m_.apply(other.c_[g]);
            for (int i = 0; i < ext_->n; ++i) v[i] += c_[psi_(g)][i];
            c[g] = std::move(v);
        }
        return ExtensionEndo(*ext_, std::move(m), std::move(psi), std::move(c));
    }

    ExtensionEndo iterate(int n) const {
        if (n < 1) throw ValidationError("extension iterate needs n >= 1");
        ExtensionEndo acc = *this;
        for (int i = 1; i < n; ++i) acc = compose(acc);
        return acc;
    }

  private:
    const LatticeExtension* ext_;
    IntMatrix m_;
    FiniteEndo psi_;
    std::vector<std::vector<mpz_class>> c_;
};

// Per twisted-class representative f of psi on F, the lattice matrix of
// tau_{(0,f)^-1} ∘ phi restricted to Z^n, i.e. theta(f)^-1 M.
inline std::map<int, IntMatrix> fiber_matrices(const ExtensionEndo& phi) {
    const auto part = twisted_classes(phi.ext().finite_part, phi.finite_endo());
    std::map<int, IntMatrix> out;
    for (int rep : part.reps)
        out.emplace(rep, unimodular_inverse(phi.ext().theta[rep]) * phi.lattice_matrix());
    return out;
}

struct FinitenessReport {
    bool finite = true;
    int witness_fiber = -1;  // fiber rep with vanishing det(I - A_f) when infinite
};

// R(phi) is finite iff every fiber determinant det(I - theta(f)^-1 M) is
// nonzero: an infinite fiber cokernel acted on by the finite group F still
// has infinitely many orbits.
inline FinitenessReport reidemeister_finiteness(const ExtensionEndo& phi) {
    for (const auto& [rep, a] : fiber_matrices(phi)) {
        if (det(IntMatrix::identity(phi.ext().n) - a) == 0) return {false, rep};
    }
    return {};
}

// The induced endomorphism references the materialized group by pointer, so
// the group is heap-backed and shared.
struct SeparatingQuotient {
    std::optional<Lattice> sublattice;                // H' ⊂ Z^n
    std::shared_ptr<const FiniteGroup> group;         // (Z^n/H') ⋊ F materialized
    std::optional<FiniteEndo> induced;                // endomorphism on the quotient
    std::vector<std::vector<mpz_class>> coset_reps;   // index -> lattice coset rep
    int f_size = 0;  // |F|; element index = coset_index * |F| + f

    const FiniteGroup& quotient() const { return *group; }
    const FiniteEndo& endo() const { return *induced; }
    const Lattice& lattice() const { return *sublattice; }
};

namespace detail {

// Materialize (Z^n/H) ⋊ F with multiplication (v,f)(w,g) = (v + theta(f) w, f g)
// and the endomorphism (v,f) -> (M v + c(f), psi(f)).
inline SeparatingQuotient materialize_quotient(const ExtensionEndo& phi, const Lattice& h) {
    const LatticeExtension& ext = phi.ext();
    const int n = ext.n;
    const FiniteGroup& f = ext.finite_part;

    for (int g = 0; g < f.order(); ++g)
        if (!(h.transformed(ext.theta[g]) == h)) throw NotInvariant("lattice under theta");
    {
        // M H ⊆ H
        const IntMatrix& b = h.basis();
        for (int j = 0; j < n; ++j) {
            std::vector<mpz_class> col(n);
            for (int i = 0; i < n; ++i) col[i] = b(i, j);
            if (!h.contains(phi.lattice_matrix().apply(col)))
                throw NotInvariant("lattice under the endomorphism matrix");
        }
    }

    mpz_class lattice_index = h.index();
    mpz_class total = lattice_index * f.order();
    const std::size_t cap = Caps::instance().quotient;
    if (total > static_cast<long>(cap)) throw CapExceeded("quotient order", cap);

    SeparatingQuotient q;
    q.sublattice = h;
    q.f_size = f.order();
    q.coset_reps = h.coset_representatives();
    const int nc = static_cast<int>(q.coset_reps.size());

    std::map<std::vector<mpz_class>, int> coset_index;
    for (int i = 0; i < nc; ++i) coset_index[q.coset_reps[i]] = i;

    const int order = nc * f.order();
    std::vector<std::vector<int>> table(order, std::vector<int>(order));
    for (int x = 0; x < order; ++x) {
        int vx = x / f.order(), fx = x % f.order();
        for (int y = 0; y < order; ++y) {
            int vy = y / f.order(), fy = y % f.order();
            std::vector<mpz_class> v = ext.theta[fx].apply(q.coset_reps[vy]);
            for (int i = 0; i < n; ++i) v[i] += q.coset_reps[vx][i];
            table[x][y] = coset_index.at(h.reduce(std::move(v))) * f.order() + f.mul(fx, fy);
        }
    }
    // identity is (0, e); coset rep 0 is the zero vector, so index 0
    q.group = std::make_shared<const FiniteGroup>(FiniteGroup::from_cayley(std::move(table), 0));

    std::vector<int> endo_map(order);
    for (int x = 0; x < order; ++x) {
        int vx = x / f.order(), fx = x % f.order();
        std::vector<mpz_class> v = phi.lattice_matrix().apply(q.coset_reps[vx]);
        for (int i = 0; i < n; ++i) v[i] += phi.cocycle(fx)[i];
        endo_map[x] = coset_index.at(h.reduce(std::move(v))) * f.order() + phi.finite_endo()(fx);
    }
    q.induced.emplace(*q.group, std::move(endo_map));  // validated
    return q;
}

}  // namespace detail

// H' per the fiber recipe: for each twisted-class representative f of psi,
// the class-of-zero lattice (I - theta(f)^-1 M) Z^n, closed under the F-action,
// intersected across fibers, then closed under the endomorphism preimage until
// stable so the materialized endomorphism is well defined.
inline SeparatingQuotient build_separating_quotient(const ExtensionEndo& phi) {
    FinitenessReport fin = reidemeister_finiteness(phi);
    if (!fin.finite) throw ValidationError("Reidemeister number is infinite; no separating quotient");

    const LatticeExtension& ext = phi.ext();
    const int n = ext.n;
    std::optional<Lattice> acc;
    for (const auto& [rep, a] : fiber_matrices(phi)) {
        Lattice l = Lattice::span(IntMatrix::identity(n) - a);
        acc = acc ? Lattice::intersect(*acc, l) : l;
    }
    Lattice h = *acc;
    // close under the F-action and under M-preimage; both keep finite index
    for (int round = 0; round < 64; ++round) {
        Lattice refined = h;
        for (int g = 0; g < ext.finite_part.order(); ++g)
            refined = Lattice::intersect(refined, h.transformed(ext.theta[g]));
        refined = Lattice::intersect(refined, Lattice::preimage(phi.lattice_matrix(), h));
        if (refined == h) break;
        h = refined;
        if (round == 63) throw NotInvariant("separating lattice failed to stabilize");
    }
    return detail::materialize_quotient(phi, h);
}

// R(phi) through the finite quotient, with the stabilization check: refining
// the lattice to k*H' for k in {2,3} must leave the count unchanged.
inline RCount reidemeister_number_extension(const ExtensionEndo& phi, bool stabilize = true) {
    if (!reidemeister_finiteness(phi).finite) return RCount::infinite();
    SeparatingQuotient q = build_separating_quotient(phi);
    int r = reidemeister_number(q.quotient(), q.endo());
    if (stabilize) {
        for (int k : {2, 3}) {
            SeparatingQuotient refined = detail::materialize_quotient(phi, q.lattice().scaled(k));
            if (reidemeister_number(refined.quotient(), refined.endo()) != r)
                throw StabilizationFailure(k);
        }
    }
    return RCount::of(r);
}

struct TbftFfCertificate {
    SeparatingQuotient quotient;
    int reidemeister = 0;
    int fixed_characters = 0;
    bool stabilization_pass = false;
    bool certified = false;
};

// Constructive TBFT_ff witness: the finite quotient separates classes
// (stabilization) and its fixed-irreducible-character count equals R(phi).
inline TbftFfCertificate tbft_ff_certify(const ExtensionEndo& phi) {
    TbftFfCertificate cert;
    RCount r = reidemeister_number_extension(phi, true);  // throws on stabilization failure
    cert.stabilization_pass = true;
    cert.quotient = build_separating_quotient(phi);
    cert.reidemeister = static_cast<int>(r.value().get_si());
    CharTable table = character_table(cert.quotient.quotient());
    cert.fixed_characters = f_point_count(cert.quotient.quotient(), cert.quotient.endo(), table).count;
    cert.certified = cert.fixed_characters == cert.reidemeister;
    return cert;
}

struct ShiftFinitenessReport {
    int class_count = 0;
    int distinct_shifted_subsets = 0;
    std::vector<int> stabilizer_indices;  // per class, index of its right-shift stabilizer
};

// Finite-quotient shadow of the shift-finiteness criterion: enumerate the
// right shifts of every twisted class by every element.
inline ShiftFinitenessReport shift_finiteness_probe(const ExtensionEndo& phi) {
    SeparatingQuotient q = build_separating_quotient(phi);
    const FiniteGroup& g = q.quotient();
    const auto part = twisted_classes(g, q.endo());
    ShiftFinitenessReport rep;
    rep.class_count = part.count();
    std::set<std::vector<int>> subsets;
    for (const auto& cls : part.classes) {
        int stab = 0;
        for (int s = 0; s < g.order(); ++s) {
            std::vector<int> shifted;
            shifted.reserve(cls.size());
            for (int x : cls) shifted.push_back(g.mul(x, s));
            std::sort(shifted.begin(), shifted.end());
            if (shifted == cls) ++stab;
            subsets.insert(std::move(shifted));
        }
        rep.stabilizer_indices.push_back(g.order() / stab);
    }
    rep.distinct_shifted_subsets = static_cast<int>(subsets.size());
    return rep;
}

}  // namespace tbf
