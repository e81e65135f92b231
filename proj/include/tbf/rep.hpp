#pragma once

#include <optional>
#include <vector>

#include "tbf/char_table.hpp"
#include "tbf/cyclotomic.hpp"
#include "tbf/twisted.hpp"

namespace tbf {

// Explicit matrix representation of a finite group over Q(zeta_m), one exact
// matrix per element.
struct Representation {
    const FiniteGroup* group = nullptr;
    std::shared_ptr<const CycField> field;
    int dim = 0;
    std::vector<std::vector<std::vector<Cyc>>> matrices;  // [element][row][col]

    const std::vector<std::vector<Cyc>>& at(int g) const { return matrices[g]; }
};

inline std::vector<std::vector<Cyc>> mat_mul(const std::vector<std::vector<Cyc>>& a,
                                             const std::vector<std::vector<Cyc>>& b,
                                             const std::shared_ptr<const CycField>& f) {
    const int n = static_cast<int>(a.size());
    std::vector<std::vector<Cyc>> r(n, std::vector<Cyc>(n, Cyc(f)));
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            if (a[i][l].is_zero()) continue;
            for (int j = 0; j < n; ++j) r[i][j] = r[i][j] + a[i][l] * b[l][j];
        }
    return r;
}

inline Representation validate_representation(const FiniteGroup& g,
                                              std::shared_ptr<const CycField> field,
                                              std::vector<std::vector<std::vector<Cyc>>> mats) {
    if (mats.size() != static_cast<std::size_t>(g.order()))
        throw NotARepresentation("one matrix per element required");
    Representation rep;
    rep.group = &g;
    rep.field = std::move(field);
    rep.dim = static_cast<int>(mats[0].size());
    for (const auto& m : mats) {
        if (static_cast<int>(m.size()) != rep.dim) throw NotARepresentation("inconsistent dimension");
        for (const auto& row : m)
            if (static_cast<int>(row.size()) != rep.dim)
                throw NotARepresentation("matrix not square");
    }
    // identity maps to I
    for (int i = 0; i < rep.dim; ++i)
        for (int j = 0; j < rep.dim; ++j) {
            Cyc expect(rep.field, i == j ? 1 : 0);
            if (!(mats[0][i][j] == expect)) throw NotARepresentation("identity image is not I");
        }
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y)
            if (!(mat_mul(mats[x], mats[y], rep.field) == mats[g.mul(x, y)]))
                throw NotARepresentation("multiplicativity fails at (" + std::to_string(x) + "," +
                                         std::to_string(y) + ")");
    rep.matrices = std::move(mats);
    return rep;
}

struct IntertwinerResult {
    std::optional<std::vector<std::vector<Cyc>>> s;  // nullopt when only S = 0
    std::vector<Cyc> class_function;                 // g -> Tr(S rho(g)), empty when no S
};

// Solve rho(phi(x)) S = S rho(x) over the generators; a nonzero solution is
// unique up to scale (Schur), normalized so its first nonzero entry is 1.
// The induced function is verified constant on every twisted class.
inline IntertwinerResult intertwiner_class_function(const FiniteGroup& g, const Representation& rho,
                                                    const FiniteEndo& phi) {
    const int d = rho.dim;
    const auto& f = rho.field;
    const std::vector<int> gens = g.small_generating_set();

    // Unknowns S_{ab} flattened to index a*d+b; one equation block per generator.
    const int unknowns = d * d;
    std::vector<std::vector<Cyc>> rows;
    for (int x : gens) {
        const auto& left = rho.at(phi(x));   // rho(phi(x))
        const auto& right = rho.at(x);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                // (left*S - S*right)_{ij} = sum_a left_{ia} S_{aj} - sum_b S_{ib} right_{bj}
                std::vector<Cyc> row(unknowns, Cyc(f));
                for (int a = 0; a < d; ++a) row[a * d + j] = row[a * d + j] + left[i][a];
                for (int b = 0; b < d; ++b) row[i * d + b] = row[i * d + b] - right[b][j];
                rows.push_back(std::move(row));
            }
    }

    // Gaussian elimination over the cyclotomic field; collect one nullspace vector.
    const int m = static_cast<int>(rows.size());
    std::vector<int> pivot_of_col(unknowns, -1);
    int r = 0;
    for (int c = 0; c < unknowns && r < m; ++c) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (!rows[i][c].is_zero()) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(rows[r], rows[pr]);
        Cyc inv = rows[r][c].inverse();
        for (int j = 0; j < unknowns; ++j) rows[r][j] = rows[r][j] * inv;
        for (int i = 0; i < m; ++i) {
            if (i == r || rows[i][c].is_zero()) continue;
            Cyc factor = rows[i][c];
            for (int j = 0; j < unknowns; ++j) rows[i][j] = rows[i][j] - factor * rows[r][j];
        }
        pivot_of_col[c] = r;
        ++r;
    }
    IntertwinerResult result;
    int free_col = -1;
    for (int c = 0; c < unknowns; ++c)
        if (pivot_of_col[c] < 0) { free_col = c; break; }
    if (free_col < 0) return result;  // only S = 0

    std::vector<Cyc> sol(unknowns, Cyc(f));
    sol[free_col] = Cyc(f, 1);
    for (int c = 0; c < unknowns; ++c)
        if (pivot_of_col[c] >= 0) sol[c] = -rows[pivot_of_col[c]][free_col];

    // normalize: first nonzero entry = 1
    for (int i = 0; i < unknowns; ++i)
        if (!sol[i].is_zero()) {
            Cyc inv = sol[i].inverse();
            for (auto& v : sol) v = v * inv;
            break;
        }
    std::vector<std::vector<Cyc>> s(d, std::vector<Cyc>(d, Cyc(f)));
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) s[a][b] = sol[a * d + b];

    // verify the intertwining relation on every element, not just generators
    for (int x = 0; x < g.order(); ++x)
        if (!(mat_mul(rho.at(phi(x)), s, f) == mat_mul(s, rho.at(x), f)))
            throw ValidationError("intertwiner fails outside the generating set");

    std::vector<Cyc> fun;
    for (int x = 0; x < g.order(); ++x) {
        Cyc tr(f);
        const auto prod = mat_mul(s, rho.at(x), f);
        for (int i = 0; i < d; ++i) tr = tr + prod[i][i];
        fun.push_back(tr);
    }
    const auto part = twisted_classes(g, phi);
    for (int x = 0; x < g.order(); ++x)
        if (!(fun[x] == fun[part.reps[part.class_of[x]]]))
            throw ValidationError("intertwiner class function not constant on a twisted class");

    result.s = std::move(s);
    result.class_function = std::move(fun);
    return result;
}

}  // namespace tbf
