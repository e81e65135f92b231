#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbf/catalog.hpp"
#include "tbf/finite_group.hpp"

using namespace tbf;

TEST_CASE("Cayley constructor normalizes the identity to index 0") {
    // Z/2 with the identity placed at index 1.
    FiniteGroup g = FiniteGroup::from_cayley({{1, 0}, {0, 1}}, 1);
    CHECK(g.order() == 2);
    CHECK(g.identity() == 0);
    CHECK(g.mul(0, 1) == 1);
    CHECK(g.mul(1, 1) == 0);
    CHECK(g.inv(1) == 1);
}

TEST_CASE("Cayley constructor rejects non-groups") {
    // A loop of order 5 with one-sided inverses only.
    CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1, 2, 3, 4},
                                              {1, 0, 3, 4, 2},
                                              {2, 3, 4, 0, 1},
                                              {3, 4, 1, 2, 0},
                                              {4, 2, 0, 1, 3}},
                                             0),
                    NotAGroup);
    // Ragged and out-of-range tables.
    CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1}}, 0), ValidationError);
    CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 2}, {1, 0}}, 0), ValidationError);
    CHECK_THROWS_AS(FiniteGroup::from_cayley({{0, 1}, {1, 0}}, 7), ValidationError);
}

TEST_CASE("permutation closure builds the dihedral group of the square") {
    FiniteGroup d4 = FiniteGroup::from_permutations({{1, 2, 3, 0}, {3, 2, 1, 0}});
    CHECK(d4.order() == 8);
    CHECK(d4.exponent() == 4);
    int rotations = 0;
    for (int x = 0; x < 8; ++x)
        if (d4.element_order(x) == 4) ++rotations;
    CHECK(rotations == 2);
}

TEST_CASE("permutation constructor rejects non-permutations") {
    CHECK_THROWS_AS(FiniteGroup::from_permutations({{0, 0, 1}}), ValidationError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations({{0, 3}}), ValidationError);
    CHECK_THROWS_AS(FiniteGroup::from_permutations({}), ValidationError);
}

TEST_CASE("element orders, powers and exponent on the catalog groups") {
    FiniteGroup s3 = catalog::symmetric3();
    CHECK(s3.order() == 6);
    CHECK(s3.exponent() == 6);
    std::vector<int> orders;
    for (int x = 0; x < 6; ++x) orders.push_back(s3.element_order(x));
    CHECK(std::count(orders.begin(), orders.end(), 1) == 1);
    CHECK(std::count(orders.begin(), orders.end(), 2) == 3);
    CHECK(std::count(orders.begin(), orders.end(), 3) == 2);
    for (int x = 0; x < 6; ++x) {
        CHECK(s3.pow(x, s3.element_order(x)) == 0);
        CHECK(s3.pow(x, -1) == s3.inv(x));
        CHECK(s3.pow(x, 7) == s3.mul(s3.pow(x, 6), x));
    }

    FiniteGroup q8 = catalog::quaternion8();
    CHECK(q8.order() == 8);
    CHECK(q8.exponent() == 4);
    int order2 = 0;
    for (int x = 0; x < 8; ++x)
        if (q8.element_order(x) == 2) ++order2;
    CHECK(order2 == 1);  // only -1

    CHECK(catalog::alternating4().order() == 12);
    CHECK(catalog::dihedral(6).order() == 12);
    CHECK(catalog::cyclic(12).exponent() == 12);
    CHECK(catalog::cyclic_power(2, 3).order() == 8);
    CHECK(catalog::cyclic_power(2, 3).exponent() == 2);
    CHECK(catalog::direct_product(catalog::cyclic(2), catalog::cyclic(3)).exponent() == 6);
}

TEST_CASE("small generating sets generate") {
    for (const auto& ng : catalog::corpus()) {
        auto gens = ng.group.small_generating_set();
        CHECK(ng.group.generates(gens));
        if (ng.group.order() > 1) CHECK(!ng.group.generates({0}));
    }
}

TEST_CASE("conjugacy classes of the catalog groups") {
    CHECK(conjugacy_classes(catalog::symmetric3()).count() == 3);
    CHECK(conjugacy_classes(catalog::dihedral(4)).count() == 5);
    CHECK(conjugacy_classes(catalog::quaternion8()).count() == 5);
    CHECK(conjugacy_classes(catalog::alternating4()).count() == 4);
    CHECK(conjugacy_classes(catalog::dihedral(6)).count() == 6);
    CHECK(conjugacy_classes(catalog::cyclic(7)).count() == 7);
    // class sizes partition the group
    auto part = conjugacy_classes(catalog::alternating4());
    int total = 0;
    for (const auto& c : part.classes) total += static_cast<int>(c.size());
    CHECK(total == 12);
}

TEST_CASE("endomorphism validation produces a witness") {
    FiniteGroup s3 = catalog::symmetric3();
    CHECK_THROWS_AS(FiniteEndo(s3, {1, 1, 1, 1, 1, 1}), NotAHomomorphism);
    CHECK_THROWS_AS(FiniteEndo(s3, {0, 1, 2}), ValidationError);
    try {
        FiniteEndo(s3, {1, 1, 1, 1, 1, 1});
        CHECK(false);
    } catch (const NotAHomomorphism& e) {
        // the witness pair must actually violate the homomorphism law
        std::vector<int> map{1, 1, 1, 1, 1, 1};
        CHECK(map[s3.mul(e.x, e.y)] != s3.mul(map[e.x], map[e.y]));
    }
}

TEST_CASE("inner automorphisms and composition laws") {
    FiniteGroup s3 = catalog::symmetric3();
    for (int g = 0; g < 6; ++g) {
        FiniteEndo tau = FiniteEndo::inner(s3, g);
        // automorphism: bijective homomorphism
        std::vector<int> seen(6, 0);
        for (int x = 0; x < 6; ++x) seen[tau(x)] = 1;
        CHECK(std::count(seen.begin(), seen.end(), 1) == 6);
        // iterated conjugation equals conjugation by the power
        for (int k = 0; k <= 4; ++k)
            CHECK(tau.iterate(k) == FiniteEndo::inner(s3, s3.pow(g, k)));
    }
    FiniteEndo id = FiniteEndo::identity(s3);
    FiniteEndo tr = FiniteEndo::trivial(s3);
    CHECK(id.compose(tr) == tr);
    CHECK(tr.compose(id) == tr);
    CHECK(id.iterate(5) == id);
    CHECK(tr.iterate(3) == tr);
}

TEST_CASE("kernel and image") {
    FiniteGroup z4 = catalog::cyclic(4);
    FiniteEndo dbl(z4, {0, 2, 0, 2});  // x -> 2x
    CHECK(dbl.kernel() == std::vector<int>{0, 2});
    CHECK(dbl.image() == std::vector<int>{0, 2});
    CHECK(FiniteEndo::identity(z4).kernel() == std::vector<int>{0});
}

TEST_CASE("endomorphism enumeration counts") {
    CHECK(enumerate_endomorphisms(catalog::cyclic(2)).size() == 2);
    CHECK(enumerate_endomorphisms(catalog::cyclic(4)).size() == 4);
    CHECK(enumerate_endomorphisms(catalog::cyclic(6)).size() == 6);
    CHECK(enumerate_endomorphisms(catalog::symmetric3()).size() == 10);
    // every enumerated map really is a homomorphism (validated constructor)
    for (const auto& e : enumerate_endomorphisms(catalog::quaternion8()))
        CHECK_NOTHROW(FiniteEndo(catalog::quaternion8(), e.map()));
    // enumeration includes identity and trivial
    auto endos = enumerate_endomorphisms(catalog::symmetric3());
    FiniteGroup s3 = catalog::symmetric3();
    int found_id = 0, found_tr = 0;
    for (const auto& e : endos) {
        if (e.map() == FiniteEndo::identity(s3).map()) ++found_id;
        if (e.map() == FiniteEndo::trivial(s3).map()) ++found_tr;
    }
    CHECK(found_id == 1);
    CHECK(found_tr == 1);
}

TEST_CASE("quotient groups and induced endomorphisms") {
    FiniteGroup s3 = catalog::symmetric3();
    std::vector<int> a3;
    for (int x = 0; x < 6; ++x)
        if (s3.element_order(x) % 2 == 1) a3.push_back(x);
    REQUIRE(a3.size() == 3);
    Quotient q = quotient_group(s3, a3);
    CHECK(q.group.order() == 2);
    FiniteEndo induced = induced_endo(q, s3, FiniteEndo::identity(s3));
    CHECK(induced == FiniteEndo::identity(q.group));

    // a non-normal subgroup is rejected
    int transposition = -1;
    for (int x = 1; x < 6; ++x)
        if (s3.element_order(x) == 2) { transposition = x; break; }
    CHECK_THROWS_AS(quotient_group(s3, {0, transposition}), NotNormal);
    // non-subgroup set is rejected
    CHECK_THROWS_AS(quotient_group(s3, {0, 1, 2}), ValidationError);
}

TEST_CASE("runtime caps have usable defaults") {
    const Caps& caps = Caps::instance();
    CHECK(caps.closure >= 1000);
    CHECK(caps.chartable >= 100);
    CHECK(caps.quotient >= 100);
}
