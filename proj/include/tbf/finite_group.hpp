#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tbf/errors.hpp"

namespace tbf {

// A finite group on dense element indices 0..N-1, identity at index 0.
// Immutable after construction; all queries are table lookups.
class FiniteGroup {
  public:
    static FiniteGroup from_cayley(std::vector<std::vector<int>> table, int identity,
                                   std::vector<std::string> labels = {});
    static FiniteGroup from_permutations(const std::vector<std::vector<int>>& generators,
                                         std::vector<std::string> labels = {});

    int order() const { return n_; }
    int identity() const { return 0; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
    const std::vector<std::vector<int>>& table() const { return mul_; }
    const std::vector<std::string>& labels() const { return labels_; }

    int pow(int g, long long k) const {
        if (k < 0) { g = inv(g); k = -k; }
        int acc = 0;
        while (k) {
            if (k & 1) acc = mul(acc, g);
            g = mul(g, g);
            k >>= 1;
        }
        return acc;
    }

    int element_order(int g) const {
        int k = 1, x = g;
        while (x != 0) { x = mul(x, g); ++k; }
        return k;
    }

    int exponent() const {
        long long e = 1;
        for (int g = 0; g < n_; ++g) e = std::lcm(e, (long long)element_order(g));
        return static_cast<int>(e);
    }

    // Small generating set by greedy closure growth.
    std::vector<int> small_generating_set() const {
        std::vector<int> gens;
        std::vector<char> in(n_, 0);
        in[0] = 1;
        std::size_t covered = 1;
        while (covered < static_cast<std::size_t>(n_)) {
            int next = 0;
            while (in[next]) ++next;
            gens.push_back(next);
            // close
            std::vector<int> frontier{next};
            in[next] = 1;
            ++covered;
            while (!frontier.empty()) {
                std::vector<int> fresh;
                for (int x : frontier)
                    for (int g = 0; g < n_; ++g) {
                        if (!in[g]) continue;
                        for (int y : {mul_[x][g], mul_[g][x]})
                            if (!in[y]) { in[y] = 1; ++covered; fresh.push_back(y); }
                    }
                frontier = std::move(fresh);
            }
        }
        return gens;
    }

    bool generates(const std::vector<int>& gens) const {
        return closure_of(gens).size() == static_cast<std::size_t>(n_);
    }

    std::vector<int> closure_of(const std::vector<int>& gens) const {
        std::vector<char> in(n_, 0);
        in[0] = 1;
        std::vector<int> elems{0}, frontier{0};
        while (!frontier.empty()) {
            std::vector<int> fresh;
            for (int x : frontier)
                for (int g : gens) {
                    int y = mul_[x][g];
                    if (!in[y]) { in[y] = 1; elems.push_back(y); fresh.push_back(y); }
                    y = mul_[g][x];
                    if (!in[y]) { in[y] = 1; elems.push_back(y); fresh.push_back(y); }
                }
            frontier = std::move(fresh);
        }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

  private:
    FiniteGroup() = default;
    void validate() const;

    int n_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<std::string> labels_;
};

// Validated endomorphism of a FiniteGroup, stored as an index map.
class FiniteEndo {
  public:
    FiniteEndo(const FiniteGroup& g, std::vector<int> map, bool check = true)
        : group_(&g), map_(std::move(map)) {
        if (map_.size() != static_cast<std::size_t>(g.order()))
            throw ValidationError("endomorphism map has wrong length");
        if (check) validate();
    }

    static FiniteEndo identity(const FiniteGroup& g) {
        std::vector<int> m(g.order());
        std::iota(m.begin(), m.end(), 0);
        return FiniteEndo(g, std::move(m), false);
    }

    static FiniteEndo trivial(const FiniteGroup& g) {
        return FiniteEndo(g, std::vector<int>(g.order(), 0), false);
    }

    // x -> g x g^-1
    static FiniteEndo inner(const FiniteGroup& grp, int g) {
        std::vector<int> m(grp.order());
        for (int x = 0; x < grp.order(); ++x) m[x] = grp.conj(g, x);
        return FiniteEndo(grp, std::move(m), false);
    }

    const FiniteGroup& group() const { return *group_; }
    int operator()(int x) const { return map_[x]; }
    const std::vector<int>& map() const { return map_; }

    bool operator==(const FiniteEndo& o) const {
        return group_ == o.group_ && map_ == o.map_;
    }

    FiniteEndo compose(const FiniteEndo& inner_map) const {  // this ∘ inner_map
        if (group_ != inner_map.group_) throw GroupMismatch();
        std::vector<int> m(map_.size());
        for (std::size_t x = 0; x < m.size(); ++x) m[x] = map_[inner_map.map_[x]];
        return FiniteEndo(*group_, std::move(m), false);
    }

    FiniteEndo iterate(int n) const {
        if (n < 0) throw ValidationError("negative iteration count");
        FiniteEndo acc = identity(*group_);
        for (int i = 0; i < n; ++i) acc = compose(acc);
        return acc;
    }

    std::vector<int> kernel() const {
        std::vector<int> k;
        for (int x = 0; x < group_->order(); ++x)
            if (map_[x] == 0) k.push_back(x);
        return k;
    }

    std::vector<int> image() const {
        std::set<int> im(map_.begin(), map_.end());
        return {im.begin(), im.end()};
    }

  private:
    void validate() const {
        const int n = group_->order();
        for (int x = 0; x < n; ++x) {
            if (map_[x] < 0 || map_[x] >= n) throw ValidationError("endomorphism image out of range");
            for (int y = 0; y < n; ++y)
                if (map_[group_->mul(x, y)] != group_->mul(map_[x], map_[y]))
                    throw NotAHomomorphism(x, y);
        }
    }

    const FiniteGroup* group_;
    std::vector<int> map_;
};

// Partition of 0..N-1 into classes with minimal-index representatives.
struct ClassPartition {
    int carrier_size = 0;
    std::vector<int> class_of;             // element -> class id
    std::vector<int> reps;                 // class id -> minimal element
    std::vector<std::vector<int>> classes; // class id -> sorted members

    int count() const { return static_cast<int>(reps.size()); }

    static ClassPartition from_class_of(std::vector<int> raw) {
        // Renumber so class ids are ordered by their minimal element.
        ClassPartition p;
        p.carrier_size = static_cast<int>(raw.size());
        std::map<int, std::vector<int>> buckets;  // old id -> members
        for (int x = 0; x < p.carrier_size; ++x) buckets[raw[x]].push_back(x);
        std::vector<std::vector<int>> groups;
        for (auto& [id, members] : buckets) groups.push_back(std::move(members));
        std::sort(groups.begin(), groups.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        p.class_of.assign(p.carrier_size, -1);
        for (std::size_t k = 0; k < groups.size(); ++k) {
            p.reps.push_back(groups[k].front());
            for (int x : groups[k]) p.class_of[x] = static_cast<int>(k);
        }
        p.classes = std::move(groups);
        return p;
    }
};

inline void FiniteGroup::validate() const {
    const int n = n_;
    for (int x = 0; x < n; ++x) {
        if (mul_[0][x] != x || mul_[x][0] != x) throw NotAGroup("identity", x, -1, -1);
        if (mul_[x][inv_[x]] != 0 || mul_[inv_[x]][x] != 0) throw NotAGroup("inverses", x, -1, -1);
    }
    for (int x = 0; x < n; ++x) {
        std::vector<char> row(n, 0), col(n, 0);
        for (int y = 0; y < n; ++y) {
            if (row[mul_[x][y]]++) throw NotAGroup("latin-square", x, y, -1);
            if (col[mul_[y][x]]++) throw NotAGroup("latin-square", y, x, -1);
        }
    }
    auto check_triple = [&](int x, int y, int z) {
        if (mul_[mul_[x][y]][z] != mul_[x][mul_[y][z]]) throw NotAGroup("associativity", x, y, z);
    };
    const Caps& caps = Caps::instance();
    if (caps.force_exhaustive || static_cast<std::size_t>(n) <= caps.assoc_exhaustive) {
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z) check_triple(x, y, z);
    } else {
        std::mt19937 rng(0x5eed);
        std::uniform_int_distribution<int> d(0, n - 1);
        const long long samples = 10LL * n * n;
        for (long long i = 0; i < samples; ++i) check_triple(d(rng), d(rng), d(rng));
    }
}

inline FiniteGroup FiniteGroup::from_cayley(std::vector<std::vector<int>> table, int identity,
                                            std::vector<std::string> labels) {
    const int n = static_cast<int>(table.size());
    if (n == 0) throw ValidationError("empty Cayley table");
    for (const auto& row : table) {
        if (row.size() != static_cast<std::size_t>(n)) throw ValidationError("Cayley table not square");
        for (int v : row)
            if (v < 0 || v >= n) throw ValidationError("Cayley table entry out of range");
    }
    if (identity < 0 || identity >= n) throw ValidationError("identity index out of range");

    // Relabel so the identity sits at index 0.
    std::vector<int> perm(n);  // old -> new
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[identity]);

    FiniteGroup g;
    g.n_ = n;
    g.mul_.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            g.mul_[perm[x]][perm[y]] = perm[table[x][y]];
    g.inv_.assign(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (g.mul_[x][y] == 0) { g.inv_[x] = y; break; }
    for (int x = 0; x < n; ++x)
        if (g.inv_[x] < 0) throw NotAGroup("inverses", x, -1, -1);
    if (!labels.empty()) {
        if (labels.size() != static_cast<std::size_t>(n)) throw ValidationError("label count mismatch");
        g.labels_.resize(n);
        for (int i = 0; i < n; ++i) g.labels_[perm[i]] = labels[i];
    }
    g.validate();
    return g;
}

inline FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<int>>& generators,
                                                  std::vector<std::string> labels) {
    if (generators.empty()) throw ValidationError("no generators");
    const std::size_t deg = generators.front().size();
    for (const auto& p : generators) {
        if (p.size() != deg) throw ValidationError("generators act on different sets");
        std::vector<char> seen(deg, 0);
        for (int v : p) {
            if (v < 0 || static_cast<std::size_t>(v) >= deg || seen[v])
                throw ValidationError("generator is not a permutation");
            seen[v] = 1;
        }
    }
    const std::size_t cap = Caps::instance().closure;

    std::vector<int> id(deg);
    std::iota(id.begin(), id.end(), 0);
    std::map<std::vector<int>, int> index;
    std::vector<std::vector<int>> elems;
    index[id] = 0;
    elems.push_back(id);
    std::vector<int> frontier{0};
    while (!frontier.empty()) {
        std::vector<int> fresh;
        for (int xi : frontier) {
            for (const auto& gen : generators) {
                std::vector<int> prod(deg);
                for (std::size_t i = 0; i < deg; ++i) prod[i] = elems[xi][gen[i]];  // x then gen
                auto [it, inserted] = index.try_emplace(prod, static_cast<int>(elems.size()));
                if (inserted) {
                    if (elems.size() >= cap) throw CapExceeded("permutation closure", cap);
                    elems.push_back(std::move(prod));
                    fresh.push_back(it->second);
                }
            }
        }
        frontier = std::move(fresh);
    }
    const int n = static_cast<int>(elems.size());
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            std::vector<int> prod(deg);
            for (std::size_t i = 0; i < deg; ++i) prod[i] = elems[x][elems[y][i]];
            table[x][y] = index.at(prod);
        }
    return from_cayley(std::move(table), 0, std::move(labels));
}

// Ordinary conjugacy classes by brute-force orbit scan.
inline ClassPartition conjugacy_classes(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<int> cls(n, -1);
    for (int x = 0; x < n; ++x) {
        if (cls[x] >= 0) continue;
        for (int h = 0; h < n; ++h) cls[g.conj(h, x)] = x;
    }
    return ClassPartition::from_class_of(std::move(cls));
}

// All endomorphisms via generator-image backtracking. Candidate images are
// pruned by element-order divisibility, then each full assignment is extended
// along a word expression for every element and checked exhaustively.
inline std::vector<FiniteEndo> enumerate_endomorphisms(
    const FiniteGroup& g, std::vector<int> gens = {}) {
    const int n = g.order();
    if (gens.empty()) gens = g.small_generating_set();
    if (!g.generates(gens)) throw NotGenerating();

    // word[x] = (generator index applied on the right, previous element), with x reached by BFS
    std::vector<std::pair<int, int>> word(n, {-1, -1});
    std::vector<int> bfs_order{0};
    {
        std::vector<char> seen(n, 0);
        seen[0] = 1;
        for (std::size_t head = 0; head < bfs_order.size(); ++head) {
            int x = bfs_order[head];
            for (std::size_t gi = 0; gi < gens.size(); ++gi) {
                int y = g.mul(x, gens[gi]);
                if (!seen[y]) {
                    seen[y] = 1;
                    word[y] = {static_cast<int>(gi), x};
                    bfs_order.push_back(y);
                }
            }
        }
    }

    std::vector<std::vector<int>> candidates(gens.size());
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        int ord = g.element_order(gens[gi]);
        for (int h = 0; h < n; ++h)
            if (ord % g.element_order(h) == 0) candidates[gi].push_back(h);
    }

    std::vector<FiniteEndo> out;
    std::vector<int> images(gens.size());
    auto try_assignment = [&]() {
        std::vector<int> m(n, -1);
        m[0] = 0;
        for (int x : bfs_order) {
            if (x == 0) continue;
            auto [gi, prev] = word[x];
            m[x] = g.mul(m[prev], images[gi]);
        }
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (m[g.mul(x, y)] != g.mul(m[x], m[y])) return;
        out.emplace_back(g, std::move(m), false);
    };
    auto rec = [&](auto&& self, std::size_t gi) -> void {
        if (gi == gens.size()) { try_assignment(); return; }
        for (int h : candidates[gi]) {
            images[gi] = h;
            self(self, gi + 1);
        }
    };
    rec(rec, 0);
    return out;
}

// Quotient of g by a normal subgroup given as an element set. Cosets are
// materialized as sorted index sets mapped to dense new indices.
struct Quotient {
    FiniteGroup group;
    std::vector<int> proj;  // element of g -> element of quotient
};

inline Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& subgroup) {
    const int n = g.order();
    std::vector<char> in(n, 0);
    for (int h : subgroup) in[h] = 1;
    if (!in[0]) throw ValidationError("subgroup does not contain the identity");
    for (int a : subgroup)
        for (int b : subgroup)
            if (!in[g.mul(a, b)]) throw ValidationError("subgroup is not closed");
    for (int a : subgroup)
        for (int x = 0; x < n; ++x)
            if (!in[g.conj(x, a)]) throw NotNormal();

    std::map<std::vector<int>, int> coset_index;
    std::vector<int> proj(n, -1);
    std::vector<int> coset_rep;
    for (int x = 0; x < n; ++x) {
        std::vector<int> coset;
        for (int h : subgroup) coset.push_back(g.mul(x, h));
        std::sort(coset.begin(), coset.end());
        auto [it, inserted] = coset_index.try_emplace(coset, static_cast<int>(coset_rep.size()));
        if (inserted) coset_rep.push_back(coset.front());
        proj[x] = it->second;
    }
    const int q = static_cast<int>(coset_rep.size());
    std::vector<std::vector<int>> table(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[a][b] = proj[g.mul(coset_rep[a], coset_rep[b])];
    Quotient result{FiniteGroup::from_cayley(std::move(table), proj[0]), proj};
    return result;
}

// Endomorphism induced on a quotient; requires the subgroup to be invariant
// (proj ∘ φ constant on cosets), which holds when ker(proj) is φ-invariant.
inline FiniteEndo induced_endo(const Quotient& q, const FiniteGroup& g, const FiniteEndo& phi) {
    const int qn = q.group.order();
    std::vector<int> m(qn, -1);
    for (int x = 0; x < g.order(); ++x) {
        int src = q.proj[x], dst = q.proj[phi(x)];
        if (m[src] < 0) m[src] = dst;
        else if (m[src] != dst) throw NotInvariant("subgroup not endomorphism-invariant");
    }
    return FiniteEndo(q.group, std::move(m));
}

}  // namespace tbf
