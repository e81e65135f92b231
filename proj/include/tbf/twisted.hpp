#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tbf/finite_group.hpp"

namespace tbf {

// Partition of G under g ~ x g φ(x)^-1, by breadth-first orbit expansion over
// a small generating set of G (generator moves suffice: the acting group is G).
inline ClassPartition twisted_classes(const FiniteGroup& g, const FiniteEndo& phi) {
    const int n = g.order();
    const std::vector<int> gens = g.small_generating_set();
    std::vector<int> cls(n, -1);
    for (int seed = 0; seed < n; ++seed) {
        if (cls[seed] >= 0) continue;
        cls[seed] = seed;
        std::vector<int> frontier{seed};
        while (!frontier.empty()) {
            std::vector<int> fresh;
            for (int y : frontier)
                for (int x : gens) {
                    int z = g.mul(g.mul(x, y), g.inv(phi(x)));
                    if (cls[z] < 0) { cls[z] = seed; fresh.push_back(z); }
                }
            frontier = std::move(fresh);
        }
    }
    return ClassPartition::from_class_of(std::move(cls));
}

struct ReidemeisterReport {
    ClassPartition partition;
    int number = 0;
    int endo_power = 1;
};

inline ReidemeisterReport reidemeister_report(const FiniteGroup& g, const FiniteEndo& phi, int power) {
    if (power < 1) throw ValidationError("power must be >= 1");
    ReidemeisterReport r;
    r.partition = twisted_classes(g, phi.iterate(power));
    r.number = r.partition.count();
    r.endo_power = power;
    return r;
}

inline int reidemeister_number(const FiniteGroup& g, const FiniteEndo& phi, int power = 1) {
    return reidemeister_report(g, phi, power).number;
}

// Independent oracle: R(φ) as the dimension of the fixed space of the action
// a ↦ g a φ(g)^-1 on the group algebra, computed as the average fixed-point
// count of the permutation action.
inline int burnside_average(const FiniteGroup& g, const FiniteEndo& phi) {
    const int n = g.order();
    long long total = 0;
    for (int x = 0; x < n; ++x) {
        int inv_img = g.inv(phi(x));
        for (int y = 0; y < n; ++y)
            if (g.mul(g.mul(x, y), inv_img) == y) ++total;
    }
    if (total % n != 0) throw NonIntegerAverage();
    return static_cast<int>(total / n);
}

struct WitnessReport {
    bool pass = true;
    std::string witness;  // empty when pass
};

// All Reidemeister classes are unions of right Ker(φ)-cosets.
inline WitnessReport kernel_coset_property(const FiniteGroup& g, const FiniteEndo& phi) {
    const auto part = twisted_classes(g, phi);
    std::vector<char> in_kernel(g.order(), 0);
    for (int k : phi.kernel()) in_kernel[k] = 1;
    for (int a = 0; a < g.order(); ++a)
        for (int b = 0; b < g.order(); ++b)
            if (in_kernel[g.mul(a, g.inv(b))] && part.class_of[a] != part.class_of[b])
                return {false, "elements " + std::to_string(a) + "," + std::to_string(b) +
                                   " share a kernel coset but not a class"};
    return {};
}

// Right shift by g maps classes of φ onto classes of τ_{g^-1} ∘ φ.
inline WitnessReport shift_bijection_property(const FiniteGroup& grp, const FiniteEndo& phi, int g) {
    const auto before = twisted_classes(grp, phi);
    const auto after = twisted_classes(grp, FiniteEndo::inner(grp, grp.inv(g)).compose(phi));
    if (before.count() != after.count())
        return {false, "class counts differ under shift by " + std::to_string(g)};
    // x and y in the same class of φ iff x·g and y·g in the same class of τ_{g^-1}∘φ
    for (int x = 0; x < grp.order(); ++x)
        for (int y = 0; y < grp.order(); ++y) {
            bool same_before = before.class_of[x] == before.class_of[y];
            bool same_after = after.class_of[grp.mul(x, g)] == after.class_of[grp.mul(y, g)];
            if (same_before != same_after)
                return {false, "shift by " + std::to_string(g) + " breaks at pair (" +
                                   std::to_string(x) + "," + std::to_string(y) + ")"};
        }
    return {};
}

// Classes of φ map onto classes of the induced endomorphism on G/H.
struct EpimorphismReport {
    bool pass = true;
    std::string witness;
    int r_quotient = 0;
    int r_full = 0;
};

inline EpimorphismReport epimorphism_of_classes_property(const FiniteGroup& g, const FiniteEndo& phi,
                                                         const std::vector<int>& subgroup) {
    std::vector<char> in(g.order(), 0);
    for (int h : subgroup) in[h] = 1;
    for (int h : subgroup)
        if (!in[phi(h)]) throw NotInvariant("subgroup under the endomorphism");
    Quotient q = quotient_group(g, subgroup);  // throws NotNormal
    FiniteEndo induced = induced_endo(q, g, phi);

    const auto up = twisted_classes(g, phi);
    const auto down = twisted_classes(q.group, induced);
    EpimorphismReport r;
    r.r_full = up.count();
    r.r_quotient = down.count();
    // The projection must be well-defined on classes and surjective onto them.
    std::vector<std::optional<int>> image_class(up.count());
    std::vector<char> hit(down.count(), 0);
    for (int x = 0; x < g.order(); ++x) {
        int up_id = up.class_of[x], down_id = down.class_of[q.proj[x]];
        hit[down_id] = 1;
        if (!image_class[up_id]) image_class[up_id] = down_id;
        else if (*image_class[up_id] != down_id) {
            r.pass = false;
            r.witness = "class of " + std::to_string(x) + " does not project to a single class";
            return r;
        }
    }
    if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
        r.pass = false;
        r.witness = "projection not surjective on classes";
        return r;
    }
    if (r.r_quotient > r.r_full) {
        r.pass = false;
        r.witness = "quotient Reidemeister number exceeds the full one";
    }
    return r;
}

// φ maps every Reidemeister class into itself.
inline bool class_invariance_property(const FiniteGroup& g, const FiniteEndo& phi) {
    const auto part = twisted_classes(g, phi);
    for (int x = 0; x < g.order(); ++x)
        if (part.class_of[phi(x)] != part.class_of[x]) return false;
    return true;
}

// R(φ) equals R of the endomorphism induced on G/Ker(φ).
inline bool finite_image_finiteness_property(const FiniteGroup& g, const FiniteEndo& phi) {
    Quotient q = quotient_group(g, phi.kernel());
    FiniteEndo induced = induced_endo(q, g, phi);
    return reidemeister_number(g, phi) == reidemeister_number(q.group, induced);
}

// Both readings of the restriction bound on finite instances; H must be
// normal and φ-invariant. C is the fixed subgroup of the induced quotient map.
struct RestrictionBoundReport {
    int r_restricted = 0;
    int r_phi = 0;
    int fixed_quotient = 0;
    bool reading_r_phi = false;   // R(φ|_H) <= R(φ)·|C(φ_{G/H})|
    bool reading_r_id = false;    // R(φ|_H) <= R(id_G)·|C(φ_{G/H})| (literal "R(G)" read as classes of G)
};

inline RestrictionBoundReport restriction_bound_report(const FiniteGroup& g, const FiniteEndo& phi,
                                                       std::vector<int> subgroup) {
    std::sort(subgroup.begin(), subgroup.end());
    Quotient q = quotient_group(g, subgroup);
    FiniteEndo induced = induced_endo(q, g, phi);
    // Restriction of φ to H as a group in its own right.
    std::vector<int> idx_in_h(g.order(), -1);
    for (std::size_t i = 0; i < subgroup.size(); ++i) idx_in_h[subgroup[i]] = static_cast<int>(i);
    const int hn = static_cast<int>(subgroup.size());
    std::vector<std::vector<int>> table(hn, std::vector<int>(hn));
    for (int a = 0; a < hn; ++a)
        for (int b = 0; b < hn; ++b)
            table[a][b] = idx_in_h[g.mul(subgroup[a], subgroup[b])];
    FiniteGroup h = FiniteGroup::from_cayley(std::move(table), idx_in_h[0]);
    std::vector<int> restricted(hn);
    for (int a = 0; a < hn; ++a) {
        // from_cayley keeps ordering except a swap putting the identity first
        int img = idx_in_h[phi(subgroup[a])];
        if (img < 0) throw NotInvariant("subgroup under the endomorphism");
        restricted[a] = img;
    }
    // Recompute indices after the identity swap done by from_cayley.
    // subgroup is sorted and contains identity 0 at position 0, so no swap occurred.
    FiniteEndo phi_h(h, std::move(restricted));

    RestrictionBoundReport r;
    r.r_restricted = reidemeister_number(h, phi_h);
    r.r_phi = reidemeister_number(g, phi);
    int fixed = 0;
    for (int x = 0; x < q.group.order(); ++x)
        if (induced(x) == x) ++fixed;
    r.fixed_quotient = fixed;
    r.reading_r_phi = r.r_restricted <= r.r_phi * fixed;
    int r_id = conjugacy_classes(g).count();
    r.reading_r_id = r.r_restricted <= r_id * fixed;
    return r;
}

}  // namespace tbf
