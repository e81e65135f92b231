#pragma once

#include <string>
#include <vector>

#include "tbf/finite_group.hpp"

namespace tbf::catalog {

// Z/n as a Cayley table.
inline FiniteGroup cyclic(int n) {
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    return FiniteGroup::from_cayley(std::move(t), 0);
}

// (Z/m)^n with elements in mixed-radix order.
inline FiniteGroup cyclic_power(int m, int n) {
    int size = 1;
    for (int i = 0; i < n; ++i) size *= m;
    std::vector<std::vector<int>> t(size, std::vector<int>(size));
    auto add = [&](int a, int b) {
        int out = 0, place = 1;
        for (int i = 0; i < n; ++i) {
            out += ((a % m + b % m) % m) * place;
            a /= m;
            b /= m;
            place *= m;
        }
        return out;
    };
    for (int a = 0; a < size; ++a)
        for (int b = 0; b < size; ++b) t[a][b] = add(a, b);
    return FiniteGroup::from_cayley(std::move(t), 0);
}

// Direct product from Cayley tables.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<std::vector<int>> t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int xa = x / nb, xb = x % nb, ya = y / nb, yb = y % nb;
            t[x][y] = a.mul(xa, ya) * nb + b.mul(xb, yb);
        }
    return FiniteGroup::from_cayley(std::move(t), 0);
}

// Symmetric group S3 on 3 points.
inline FiniteGroup symmetric3() {
    return FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}});
}

// Dihedral group of order 2n (symmetries of the n-gon), as permutations.
inline FiniteGroup dihedral(int n) {
    std::vector<int> rot(n), refl(n);
    for (int i = 0; i < n; ++i) {
        rot[i] = (i + 1) % n;
        refl[i] = (n - i) % n;
    }
    return FiniteGroup::from_permutations({rot, refl});
}

// Quaternion group Q8 as permutations of its 8 elements (left regular action
// restricted to the multiplication by i and j).
inline FiniteGroup quaternion8() {
    // Elements 1,-1,i,-i,j,-j,k,-k indexed 0..7; left multiplication by i and j.
    auto mul_table = []() {
        // i*i = -1, j*j = -1, i*j = k, j*i = -k
        auto neg = [](int x) { return x ^ 1; };
        std::vector<std::vector<int>> m(8, std::vector<int>(8));
        // encode x = (sign, unit) with unit in {1,i,j,k} -> idx unit*2 + sign
        auto unit_mul = [&](int a, int b, int& sign) {
            // units: 0=1,1=i,2=j,3=k
            static const int prod[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
            static const int sgn[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
            sign = sgn[a][b];
            return prod[a][b];
        };
        for (int x = 0; x < 8; ++x)
            for (int y = 0; y < 8; ++y) {
                int ux = x / 2, sx = x % 2 ? -1 : 1;
                int uy = y / 2, sy = y % 2 ? -1 : 1;
                int s;
                int u = unit_mul(ux, uy, s);
                int total = s * sx * sy;
                m[x][y] = u * 2 + (total < 0 ? 1 : 0);
            }
        (void)neg;
        return m;
    }();
    return FiniteGroup::from_cayley(std::move(mul_table), 0);
}

// Alternating group A4 on 4 points.
inline FiniteGroup alternating4() {
    return FiniteGroup::from_permutations({{1, 0, 3, 2}, {1, 2, 0, 3}});
}

struct NamedGroup {
    std::string name;
    FiniteGroup group;
};

// The verification corpus used by the acceptance suite.
inline std::vector<NamedGroup> corpus() {
    std::vector<NamedGroup> out;
    for (int n = 1; n <= 12; ++n) out.push_back({"Z" + std::to_string(n), cyclic(n)});
    out.push_back({"S3", symmetric3()});
    out.push_back({"D4", dihedral(4)});
    out.push_back({"Q8", quaternion8()});
    out.push_back({"A4", alternating4()});
    out.push_back({"D6", dihedral(6)});
    return out;
}

}  // namespace tbf::catalog
