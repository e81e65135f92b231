#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tbf/catalog.hpp"
#include "tbf/rep.hpp"

using namespace tbf;

namespace {

// Extend generator matrices to the whole group along BFS words.
Representation rep_from_generators(const FiniteGroup& g, std::shared_ptr<const CycField> field,
                                   const std::vector<int>& gens,
                                   const std::vector<std::vector<std::vector<Cyc>>>& images) {
    const int dim = static_cast<int>(images[0].size());
    std::vector<std::vector<Cyc>> ident(dim, std::vector<Cyc>(dim, Cyc(field)));
    for (int i = 0; i < dim; ++i) ident[i][i] = Cyc(field, 1);
    std::vector<std::vector<std::vector<Cyc>>> mats(g.order());
    std::vector<char> seen(g.order(), 0);
    mats[0] = ident;
    seen[0] = 1;
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> fresh;
        for (int x : frontier)
            for (std::size_t i = 0; i < gens.size(); ++i) {
                int y = g.mul(x, gens[i]);
                if (!seen[y]) {
                    seen[y] = 1;
                    mats[y] = mat_mul(mats[x], images[i], field);
                    fresh.push_back(y);
                }
            }
        frontier = std::move(fresh);
    }
    return validate_representation(g, field, std::move(mats));
}

struct S3Reps {
    FiniteGroup g = catalog::symmetric3();
    int t = -1, r = -1;  // a transposition and a three-cycle
    std::shared_ptr<const CycField> field = CycField::get(3);

    S3Reps() {
        for (int x = 0; x < 6; ++x) {
            if (t < 0 && g.element_order(x) == 2) t = x;
            if (r < 0 && g.element_order(x) == 3) r = x;
        }
    }

    Representation trivial() const {
        std::vector<std::vector<Cyc>> one{{Cyc(field, 1)}};
        return rep_from_generators(g, field, {t, r}, {one, one});
    }
    Representation sign() const {
        std::vector<std::vector<Cyc>> minus{{Cyc(field, -1)}};
        std::vector<std::vector<Cyc>> one{{Cyc(field, 1)}};
        return rep_from_generators(g, field, {t, r}, {minus, one});
    }
    Representation standard() const {
        Cyc z = Cyc::zeta_power(field, 1);
        Cyc zero(field), one(field, 1);
        std::vector<std::vector<Cyc>> swap{{zero, one}, {one, zero}};
        std::vector<std::vector<Cyc>> rot{{z, zero}, {zero, z.conj()}};
        return rep_from_generators(g, field, {t, r}, {swap, rot});
    }
};

}  // namespace

TEST_CASE("representation validation accepts the three irreducibles and rejects junk") {
    S3Reps s;
    CHECK_NOTHROW(s.trivial());
    CHECK_NOTHROW(s.sign());
    Representation std2 = s.standard();
    CHECK(std2.dim == 2);
    // trace of the standard rep matches the degree-2 character values
    for (int x = 0; x < 6; ++x) {
        Cyc tr = std2.at(x)[0][0] + std2.at(x)[1][1];
        int ord = s.g.element_order(x);
        if (ord == 1) CHECK(tr == Cyc(s.field, 2));
        if (ord == 2) CHECK(tr.is_zero());
        if (ord == 3) CHECK(tr == Cyc(s.field, -1));
    }
    // wrong identity image
    auto mats = std2.matrices;
    mats[0][0][0] = Cyc(s.field, 3);
    CHECK_THROWS_AS(validate_representation(s.g, s.field, mats), NotARepresentation);
    // wrong count
    mats.pop_back();
    CHECK_THROWS_AS(validate_representation(s.g, s.field, mats), NotARepresentation);
}

TEST_CASE("intertwiner for the identity endomorphism is scalar") {
    S3Reps s;
    Representation std2 = s.standard();
    auto res = intertwiner_class_function(s.g, std2, FiniteEndo::identity(s.g));
    REQUIRE(res.s.has_value());
    // normalized scalar matrix
    CHECK((*res.s)[0][0] == Cyc(s.field, 1));
    CHECK((*res.s)[1][1] == Cyc(s.field, 1));
    CHECK((*res.s)[0][1].is_zero());
    CHECK((*res.s)[1][0].is_zero());
    // the induced class function is the character
    CHECK(res.class_function[0] == Cyc(s.field, 2));
}

TEST_CASE("sign representation intertwines with every endomorphism fixing it") {
    S3Reps s;
    Representation sign = s.sign();
    auto res = intertwiner_class_function(s.g, sign, FiniteEndo::identity(s.g));
    REQUIRE(res.s.has_value());
    CHECK((*res.s)[0][0] == Cyc(s.field, 1));
    CHECK(res.class_function[s.t] == Cyc(s.field, -1));
}

TEST_CASE("no nonzero intertwiner when the twisted representation is inequivalent") {
    S3Reps s;
    FiniteEndo tr = FiniteEndo::trivial(s.g);
    // sign ∘ trivial is the trivial rep, not equivalent to sign
    CHECK(!intertwiner_class_function(s.g, s.sign(), tr).s.has_value());
    // standard ∘ trivial is twice trivial, not equivalent to standard
    CHECK(!intertwiner_class_function(s.g, s.standard(), tr).s.has_value());
    // but the trivial rep always intertwines
    CHECK(intertwiner_class_function(s.g, s.trivial(), tr).s.has_value());
}

TEST_CASE("inner twists intertwine via the representing matrix") {
    S3Reps s;
    Representation std2 = s.standard();
    for (int g = 0; g < 6; ++g) {
        FiniteEndo tau = FiniteEndo::inner(s.g, g);
        auto res = intertwiner_class_function(s.g, std2, tau);
        REQUIRE(res.s.has_value());
        // S must intertwine rho∘tau with rho; the function is constant on
        // twisted classes (verified internally), and nonzero somewhere.
        bool nonzero = false;
        for (const Cyc& v : res.class_function)
            if (!v.is_zero()) nonzero = true;
        CHECK(nonzero);
    }
}
