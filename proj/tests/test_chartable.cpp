#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbf/catalog.hpp"
#include "tbf/char_table.hpp"

using namespace tbf;

namespace {

std::vector<int> degree_vector(const FiniteGroup& g) { return character_table(g).degrees; }

}  // namespace

TEST_CASE("degree vectors of the catalog groups") {
    CHECK(degree_vector(catalog::cyclic(1)) == std::vector<int>{1});
    CHECK(degree_vector(catalog::cyclic(5)) == std::vector<int>(5, 1));
    CHECK(degree_vector(catalog::symmetric3()) == std::vector<int>{1, 1, 2});
    CHECK(degree_vector(catalog::dihedral(4)) == std::vector<int>{1, 1, 1, 1, 2});
    CHECK(degree_vector(catalog::quaternion8()) == std::vector<int>{1, 1, 1, 1, 2});
    CHECK(degree_vector(catalog::alternating4()) == std::vector<int>{1, 1, 1, 3});
    CHECK(degree_vector(catalog::dihedral(6)) == std::vector<int>{1, 1, 1, 1, 2, 2});
}

TEST_CASE("explicit values for the order-two group") {
    FiniteGroup z2 = catalog::cyclic(2);
    CharTable t = character_table(z2);
    REQUIRE(t.k == 2);
    // rows sorted by degree then lexicographic values: sign before trivial
    CHECK(t.values[0][0] == Cyc(t.field, 1));
    CHECK(t.values[0][1] == Cyc(t.field, -1));
    CHECK(t.values[1][0] == Cyc(t.field, 1));
    CHECK(t.values[1][1] == Cyc(t.field, 1));
}

TEST_CASE("the two-dimensional character of the order-six nonabelian group") {
    FiniteGroup s3 = catalog::symmetric3();
    CharTable t = character_table(s3);
    int chi2 = 2;  // degrees sorted ascending, so the last row has degree 2
    REQUIRE(t.degrees[chi2] == 2);
    for (int c = 0; c < t.k; ++c) {
        int rep_order = s3.element_order(t.classes.reps[c]);
        Cyc v = t.values[chi2][c];
        if (rep_order == 1) CHECK(v == Cyc(t.field, 2));
        if (rep_order == 2) CHECK(v.is_zero());
        if (rep_order == 3) CHECK(v == Cyc(t.field, -1));
    }
}

TEST_CASE("exactness: orthogonality and the degree sum hold with zero tolerance") {
    for (const auto& ng : catalog::corpus()) {
        CharTable t = character_table(ng.group);
        CHECK_NOTHROW(verify_char_table(t));
        long long sum_sq = 0;
        for (int d : t.degrees) sum_sq += static_cast<long long>(d) * d;
        CHECK(sum_sq == ng.group.order());
        // column orthogonality as an extra independent identity
        for (int c1 = 0; c1 < t.k; ++c1)
            for (int c2 = 0; c2 < t.k; ++c2) {
                Cyc s(t.field);
                for (int chi = 0; chi < t.k; ++chi)
                    s = s + t.values[chi][c1] * t.values[chi][c2].conj();
                mpq_class expect =
                    c1 == c2 ? mpq_class(ng.group.order()) / t.class_sizes[c1] : mpq_class(0);
                CHECK(s == Cyc(t.field, expect));
            }
    }
}

TEST_CASE("fixed characters of the identity and trivial endomorphisms") {
    for (const FiniteGroup& g : {catalog::symmetric3(), catalog::quaternion8()}) {
        CharTable t = character_table(g);
        CHECK(f_point_count(g, FiniteEndo::identity(g), t).count == t.k);
        CHECK(f_point_count(g, FiniteEndo::trivial(g), t).count == 1);
        // the trivial character is fixed by everything
        auto fixed = f_point_count(g, FiniteEndo::trivial(g), t).fixed_character_ids;
        REQUIRE(fixed.size() == 1);
        for (int c = 0; c < t.k; ++c) CHECK(t.values[fixed[0]][c] == Cyc(t.field, 1));
    }
}

TEST_CASE("fixed-character count equals the class count on small corpora") {
    for (const FiniteGroup& g :
         {catalog::symmetric3(), catalog::dihedral(4), catalog::cyclic(12), catalog::alternating4()}) {
        CharTable t = character_table(g);
        for (const auto& phi : enumerate_endomorphisms(g)) {
            TbftReport rep = tbft_verify(g, phi, 3, &t);
            CHECK(rep.all_pass);
        }
    }
}

TEST_CASE("the fixed-character count is invariant under inner twists") {
    FiniteGroup s3 = catalog::symmetric3();
    CharTable t = character_table(s3);
    for (const auto& phi : enumerate_endomorphisms(s3))
        for (int g = 0; g < s3.order(); ++g) {
            FiniteEndo shifted = FiniteEndo::inner(s3, g).compose(phi);
            CHECK(f_point_count(s3, phi, t).count == f_point_count(s3, shifted, t).count);
        }
}

TEST_CASE("precomposition with the endomorphism keeps fixed characters irreducible") {
    for (const FiniteGroup& g : {catalog::symmetric3(), catalog::dihedral(4)}) {
        CharTable t = character_table(g);
        for (const auto& phi : enumerate_endomorphisms(g)) {
            auto fixed = f_point_count(g, phi, t).fixed_character_ids;
            for (int chi : fixed) CHECK(irreducibility_persistence(g, phi, t, chi, 1, 6));
        }
    }
}

TEST_CASE("persistence check rejects characters that are not fixed") {
    FiniteGroup z3 = catalog::cyclic(3);
    CharTable t = character_table(z3);
    FiniteEndo tr = FiniteEndo::trivial(z3);
    auto fixed = f_point_count(z3, tr, t).fixed_character_ids;
    REQUIRE(fixed.size() == 1);
    int not_fixed = fixed[0] == 0 ? 1 : 0;
    CHECK_THROWS_AS(irreducibility_persistence(z3, tr, t, not_fixed, 1), PreconditionNotFPoint);
}

TEST_CASE("dimension of the twisted class-function space") {
    FiniteGroup d4 = catalog::dihedral(4);
    for (const auto& phi : enumerate_endomorphisms(d4))
        CHECK(twisted_class_function_dimension(d4, phi) == reidemeister_number(d4, phi));
}

TEST_CASE("table export ordering is deterministic") {
    CharTable a = character_table(catalog::dihedral(6));
    CharTable b = character_table(catalog::dihedral(6));
    CHECK(a.degrees == b.degrees);
    for (int i = 0; i < a.k; ++i)
        for (int c = 0; c < a.k; ++c) CHECK(a.values[i][c] == b.values[i][c]);
}
