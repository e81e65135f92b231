#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "tbf/abelian.hpp"
#include "tbf/catalog.hpp"
#include "tbf/twisted.hpp"

using namespace tbf;

namespace {

// Brute-force twisted-class count of the linear map x -> M x on (Z/m)^n.
int brute_force_count_mod(const IntMatrix& m_mat, int mod) {
    const int n = m_mat.rows();
    FiniteGroup g = catalog::cyclic_power(mod, n);
    auto digits = [&](int idx) {
        std::vector<int> d(n);
        for (int i = 0; i < n; ++i) { d[i] = idx % mod; idx /= mod; }
        return d;
    };
    auto index_of = [&](const std::vector<mpz_class>& v) {
        int idx = 0, place = 1;
        for (int i = 0; i < n; ++i) {
            mpz_class r;
            mpz_class mm = mod;
            mpz_mod(r.get_mpz_t(), v[i].get_mpz_t(), mm.get_mpz_t());
            idx += static_cast<int>(r.get_si()) * place;
            place *= mod;
        }
        return idx;
    };
    std::vector<int> map(g.order());
    for (int x = 0; x < g.order(); ++x) {
        std::vector<mpz_class> v;
        for (int d : digits(x)) v.push_back(d);
        map[x] = index_of(m_mat.apply(v));
    }
    FiniteEndo phi(g, std::move(map));
    return twisted_classes(g, phi).count();
}

}  // namespace

TEST_CASE("lattice canonical form, membership and cosets") {
    Lattice l = Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(l.index() == 6);
    CHECK(l.contains(std::vector<mpz_class>{2, 3}));
    CHECK(!l.contains(std::vector<mpz_class>{1, 0}));
    CHECK(l.coset_representatives().size() == 6);
    CHECK(l.reduce(std::vector<mpz_class>{5, -4}) == std::vector<mpz_class>{1, 2});

    // span is basis-independent
    Lattice l2 = Lattice::span(IntMatrix::from_rows({{2, 2}, {3, 0}}));
    CHECK(l == l2);
    CHECK(Lattice::full(3).index() == 1);
    CHECK_THROWS_AS(Lattice::span(IntMatrix::from_rows({{1, 2}, {2, 4}})), ValidationError);
}

TEST_CASE("lattice intersection, preimage and transforms") {
    Lattice a = Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 1}}));
    Lattice b = Lattice::span(IntMatrix::from_rows({{3, 0}, {0, 1}}));
    CHECK(Lattice::intersect(a, b) == Lattice::span(IntMatrix::from_rows({{6, 0}, {0, 1}})));

    Lattice h = Lattice::span(IntMatrix::from_rows({{3, 0}, {0, 3}}));
    IntMatrix m2 = IntMatrix::identity(2) * mpz_class(2);
    // {v : 2v in 3Z^2} = 3Z^2
    CHECK(Lattice::preimage(m2, h) == h);
    IntMatrix m3 = IntMatrix::identity(2) * mpz_class(3);
    // {v : 3v in 3Z^2} = Z^2
    CHECK(Lattice::preimage(m3, h) == Lattice::full(2));

    IntMatrix swap = IntMatrix::from_rows({{0, 1}, {1, 0}});
    Lattice asym = Lattice::span(IntMatrix::from_rows({{2, 0}, {0, 5}}));
    CHECK(asym.transformed(swap) == Lattice::span(IntMatrix::from_rows({{5, 0}, {0, 2}})));
    CHECK(asym.scaled(2).index() == 40);
    CHECK(a.contains(Lattice::intersect(a, b)));
}

TEST_CASE("lattice count on fixed instances") {
    CHECK(!reidemeister_number_zn(IntMatrix::from_rows({{1}})).is_finite());
    CHECK(reidemeister_number_zn(IntMatrix::from_rows({{-1}})).value() == 2);
    CHECK(reidemeister_number_zn(IntMatrix::from_rows({{2, 1}, {1, 1}})).value() == 1);
    CHECK(reidemeister_number_zn(IntMatrix::from_rows({{2}}), 5).value() == 31);
    CHECK(reidemeister_number_zn(IntMatrix::from_rows({{0, -1}, {1, 0}})).value() == 2);
}

TEST_CASE("negation on Z: the two classes seen in a large window") {
    // x ~ x + (v - (-v)) = x + 2v, so classes are the parities; check the
    // count against an explicit orbit scan on the window [-10, 10].
    std::set<int> residues;
    for (int x = -10; x <= 10; ++x) residues.insert(((x % 2) + 2) % 2);
    CHECK(static_cast<int>(residues.size()) ==
          static_cast<int>(reidemeister_number_zn(IntMatrix::from_rows({{-1}})).value().get_si()));
}

TEST_CASE("cokernel representatives") {
    auto reps = coker_representatives(IntMatrix::from_rows({{2, 0}, {0, 3}}));
    CHECK(reps.size() == 6);
    CHECK_THROWS_AS(coker_representatives(IntMatrix::from_rows({{0}})), InfiniteCokernel);
    CHECK(coker_representatives(IntMatrix::from_rows({{1, 0}, {0, 1}})).size() == 1);
}

TEST_CASE("fixed subgroup rank") {
    CHECK(fixed_subgroup_rank(IntMatrix::identity(3)) == 3);
    CHECK(fixed_subgroup_rank(IntMatrix::from_rows({{-1}})) == 0);
    CHECK(fixed_subgroup_rank(IntMatrix::from_rows({{1, 0}, {0, -1}})) == 1);
}

TEST_CASE("finitely generated abelian carrier validation") {
    CHECK_NOTHROW(FgAbelian(2, {2, 6}));
    CHECK_THROWS_AS(FgAbelian(1, {3, 2}), ValidationError);   // no divisibility chain
    CHECK_THROWS_AS(FgAbelian(0, {1}), ValidationError);      // trivial factor
    CHECK_THROWS_AS(FgAbelian(-1, {}), ValidationError);
    // torsion cannot map into the free part
    CHECK_THROWS_AS(FgAbelianEndo(FgAbelian(1, {2}), IntMatrix::from_rows({{1, 1}, {0, 1}})),
                    ValidationError);
    // Z/2 -> Z/4 needs an even entry
    CHECK_THROWS_AS(FgAbelianEndo(FgAbelian(0, {2, 4}), IntMatrix::from_rows({{1, 0}, {1, 1}})),
                    ValidationError);
    CHECK_NOTHROW(FgAbelianEndo(FgAbelian(0, {2, 4}), IntMatrix::from_rows({{1, 0}, {2, 1}})));
}

TEST_CASE("count on finite abelian groups matches the orbit computation") {
    // identity on Z/4 -> 4 classes; doubling on Z/4 -> 1 class
    FgAbelianEndo ident(FgAbelian(0, {4}), IntMatrix::from_rows({{1}}));
    CHECK(reidemeister_number_fg_abelian(ident).value() == 4);
    FgAbelianEndo dbl(FgAbelian(0, {4}), IntMatrix::from_rows({{2}}));
    CHECK(reidemeister_number_fg_abelian(dbl).value() == 1);
    FiniteGroup z4 = catalog::cyclic(4);
    CHECK(twisted_classes(z4, FiniteEndo(z4, {0, 2, 0, 2})).count() == 1);
}

TEST_CASE("count on mixed rank and torsion") {
    // Z x Z/2 with (x, t) -> (-x, t): |det(I-(-1))| * |Z/2 fixed quotient| = 2 * 2
    FgAbelianEndo phi(FgAbelian(1, {2}), IntMatrix::from_rows({{-1, 0}, {0, 1}}));
    CHECK(reidemeister_number_fg_abelian(phi).value() == 4);
    // identity on Z x anything is infinite
    FgAbelianEndo inf(FgAbelian(1, {2}), IntMatrix::identity(2));
    CHECK(!reidemeister_number_fg_abelian(inf).is_finite());
}

TEST_CASE("multiplicativity across direct summands") {
    // block diagonal over Z^2: R = product of the block counts
    IntMatrix a = IntMatrix::from_rows({{2}});
    IntMatrix b = IntMatrix::from_rows({{-3}});
    IntMatrix block = IntMatrix::from_rows({{2, 0}, {0, -3}});
    CHECK(reidemeister_number_zn(block).value() ==
          reidemeister_number_zn(a).value() * reidemeister_number_zn(b).value());
}

TEST_CASE("cokernel count reduces correctly modulo m") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<int> entry(-4, 4);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + trial % 3;
        IntMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = entry(rng);
        for (int mod : {2, 3, 4, 5}) {
            FgAbelian g(0, std::vector<mpz_class>(n, mod));
            FgAbelianEndo phi(g, m);
            RCount r = reidemeister_number_fg_abelian(phi);
            REQUIRE(r.is_finite());
            CHECK(r.value() == brute_force_count_mod(m, mod));
        }
    }
}

TEST_CASE("separating quotient for the lattice case") {
    auto q = abelian_separating_quotient(IntMatrix::from_rows({{-1, 0}, {0, 2}}));
    CHECK(q.order == 2);
    CHECK(q.factors == std::vector<mpz_class>{1, 2});
    CHECK(q.order == reidemeister_number_zn(IntMatrix::from_rows({{-1, 0}, {0, 2}})).value());
    CHECK_THROWS_AS(abelian_separating_quotient(IntMatrix::identity(2)), InfiniteCokernel);
}
