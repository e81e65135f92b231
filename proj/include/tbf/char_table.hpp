#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tbf/cyclotomic.hpp"
#include "tbf/twisted.hpp"

namespace tbf {

namespace fp {

// Small prime-field helpers for the Dixon computation. p fits in 32 bits.
inline long long mulmod(long long a, long long b, long long p) {
    return static_cast<long long>(static_cast<__int128>(a) * b % p);
}

inline long long powmod(long long a, long long e, long long p) {
    long long r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline long long invmod(long long a, long long p) { return powmod(((a % p) + p) % p, p - 2, p); }

using Mat = std::vector<std::vector<long long>>;

// Nullspace basis (as columns collected into a Mat of column-vectors).
inline std::vector<std::vector<long long>> nullspace(Mat a, long long p) {
    const int rows = static_cast<int>(a.size());
    const int cols = rows ? static_cast<int>(a[0].size()) : 0;
    std::vector<int> pivot_col_of_row;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (a[i][c] % p != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        long long inv = invmod(a[r][c], p);
        for (int j = 0; j < cols; ++j) a[r][j] = mulmod(a[r][j], inv, p);
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            long long f = a[i][c];
            for (int j = 0; j < cols; ++j)
                a[i][j] = ((a[i][j] - mulmod(f, a[r][j], p)) % p + p) % p;
        }
        pivot_col_of_row.push_back(c);
        ++r;
    }
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivot_col_of_row) is_pivot[c] = 1;
    std::vector<std::vector<long long>> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<long long> v(cols, 0);
        v[c] = 1;
        for (int i = 0; i < r; ++i)
            v[pivot_col_of_row[i]] = ((-a[i][c]) % p + p) % p;
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solve B * X = C for X where B (n x d) has full column rank d.
inline Mat solve_full_rank(const Mat& b, const Mat& c, long long p) {
    const int n = static_cast<int>(b.size());
    const int d = static_cast<int>(b[0].size());
    const int w = static_cast<int>(c[0].size());
    Mat aug(n, std::vector<long long>(d + w));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) aug[i][j] = b[i][j];
        for (int j = 0; j < w; ++j) aug[i][d + j] = c[i][j];
    }
    int r = 0;
    for (int col = 0; col < d; ++col) {
        int pr = -1;
        for (int i = r; i < n; ++i)
            if (aug[i][col] % p != 0) { pr = i; break; }
        if (pr < 0) throw ValidationError("matrix not of full column rank");
        std::swap(aug[r], aug[pr]);
        long long inv = invmod(aug[r][col], p);
        for (int j = 0; j < d + w; ++j) aug[r][j] = mulmod(aug[r][j], inv, p);
        for (int i = 0; i < n; ++i) {
            if (i == r || aug[i][col] == 0) continue;
            long long f = aug[i][col];
            for (int j = 0; j < d + w; ++j)
                aug[i][j] = ((aug[i][j] - mulmod(f, aug[r][j], p)) % p + p) % p;
        }
        ++r;
    }
    Mat x(d, std::vector<long long>(w));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < w; ++j) x[i][j] = aug[i][d + j];
    return x;
}

inline bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline long long primitive_root(long long p) {
    std::vector<long long> prime_factors;
    long long m = p - 1;
    for (long long d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            prime_factors.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) prime_factors.push_back(m);
    for (long long g = 2; g < p; ++g) {
        bool ok = true;
        for (long long q : prime_factors)
            if (powmod(g, (p - 1) / q, p) == 1) { ok = false; break; }
        if (ok) return g;
    }
    throw ValidationError("no primitive root found");
}

}  // namespace fp

// Exact character table of a finite group: ordinary conjugacy classes, class
// sizes, degrees, and irreducible character values as elements of
// Q(zeta_e), e = exponent(G). Computed by the Dixon-Burnside method.
struct CharTable {
    const FiniteGroup* group = nullptr;
    ClassPartition classes;
    int k = 0;                               // class count
    std::shared_ptr<const CycField> field;   // Q(zeta_exponent)
    std::vector<std::vector<Cyc>> values;    // values[chi][class]
    std::vector<int> degrees;
    std::vector<int> class_sizes;
    std::vector<int> inverse_class;          // class id of inverses

    int value_class_of(int element) const { return classes.class_of[element]; }
};

inline void verify_char_table(const CharTable& t) {
    const int n = t.group->order();
    // identity column = degrees
    for (int i = 0; i < t.k; ++i)
        if (!(t.values[i][0] == Cyc(t.field, t.degrees[i])))
            throw ValidationError("character table: identity column mismatch");
    long long sum_sq = 0;
    for (int d : t.degrees) sum_sq += static_cast<long long>(d) * d;
    if (sum_sq != n) throw ValidationError("character table: degree squares do not sum to |G|");
    // row orthogonality over exact cyclotomics
    for (int i = 0; i < t.k; ++i)
        for (int j = 0; j < t.k; ++j) {
            Cyc s(t.field);
            for (int c = 0; c < t.k; ++c)
                s = s + t.values[i][c] * t.values[j][c].conj() * mpq_class(t.class_sizes[c]);
            Cyc expected(t.field, i == j ? mpq_class(n) : mpq_class(0));
            if (!(s == expected)) throw ValidationError("character table: row orthogonality failed");
        }
}

inline CharTable character_table(const FiniteGroup& g) {
    const int n = g.order();
    if (static_cast<std::size_t>(n) > Caps::instance().chartable)
        throw CapExceeded("character table group order", Caps::instance().chartable);

    CharTable t;
    t.group = &g;
    t.classes = conjugacy_classes(g);
    t.k = t.classes.count();
    const int k = t.k;
    t.class_sizes.resize(k);
    for (int c = 0; c < k; ++c) t.class_sizes[c] = static_cast<int>(t.classes.classes[c].size());
    t.inverse_class.resize(k);
    for (int c = 0; c < k; ++c) t.inverse_class[c] = t.classes.class_of[g.inv(t.classes.reps[c])];

    const int e = g.exponent();
    t.field = CycField::get(e);

    // Dixon prime: least p ≡ 1 (mod e) with p > 2*sqrt(|G|).
    long long p = e + 1;
    const long long bound = 2 * static_cast<long long>(std::sqrt(static_cast<double>(n))) + 1;
    while (!fp::is_prime(p) || p <= bound) p += e;

    // Class-sum structure constants: a[i][j][c] with C_i C_j = sum_c a C_c,
    // as matrices A_i with (A_i)[j][c] = #{x in C_i : x^{-1} z_c in C_j}.
    std::vector<fp::Mat> class_mats(k, fp::Mat(k, std::vector<long long>(k, 0)));
    for (int i = 0; i < k; ++i)
        for (int c = 0; c < k; ++c) {
            int zc = t.classes.reps[c];
            for (int x : t.classes.classes[i]) {
                int y = g.mul(g.inv(x), zc);
                ++class_mats[i][t.classes.class_of[y]][c];
            }
        }
    for (auto& m : class_mats)
        for (auto& row : m)
            for (auto& v : row) v %= p;

    // Split the class space into common one-dimensional eigenspaces.
    using Basis = fp::Mat;  // k x dim, columns span the subspace
    Basis full(k, std::vector<long long>(k, 0));
    for (int i = 0; i < k; ++i) full[i][i] = 1;
    std::vector<Basis> spaces{full};
    for (int mi = 0; mi < k; ++mi) {
        bool all_one_dim = true;
        for (const Basis& b : spaces)
            if (b[0].size() > 1) { all_one_dim = false; break; }
        if (all_one_dim) break;
        std::vector<Basis> next;
        for (Basis& b : spaces) {
            const int dim = static_cast<int>(b[0].size());
            if (dim == 1) { next.push_back(std::move(b)); continue; }
            // restriction R with A_mi * B = B * R
            fp::Mat ab(k, std::vector<long long>(dim, 0));
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < dim; ++j) {
                    long long s = 0;
                    for (int l = 0; l < k; ++l)
                        s = (s + fp::mulmod(class_mats[mi][i][l], b[l][j], p)) % p;
                    ab[i][j] = s;
                }
            fp::Mat r = fp::solve_full_rank(b, ab, p);
            // split by eigenvalues of R
            int found = 0;
            for (long long lambda = 0; lambda < p && found < dim; ++lambda) {
                fp::Mat shifted = r;
                for (int i = 0; i < dim; ++i) shifted[i][i] = ((shifted[i][i] - lambda) % p + p) % p;
                auto kernel = fp::nullspace(shifted, p);
                if (kernel.empty()) continue;
                Basis nb(k, std::vector<long long>(kernel.size(), 0));
                for (std::size_t j = 0; j < kernel.size(); ++j)
                    for (int i = 0; i < k; ++i) {
                        long long s = 0;
                        for (int l = 0; l < dim; ++l)
                            s = (s + fp::mulmod(b[i][l], kernel[j][l], p)) % p;
                        nb[i][j] = s;
                    }
                found += static_cast<int>(kernel.size());
                next.push_back(std::move(nb));
            }
            if (found != dim) throw LiftFailure("eigenspace splitting incomplete (p=" + std::to_string(p) + ")");
        }
        spaces = std::move(next);
    }
    if (static_cast<int>(spaces.size()) != k)
        throw LiftFailure("expected " + std::to_string(k) + " common eigenvectors, found " +
                          std::to_string(spaces.size()));

    // Each eigenvector, normalized at the identity class, is the vector of
    // central character values omega_c = |C_c| chi(C_c) / deg mod p.
    const long long z = fp::powmod(fp::primitive_root(p), (p - 1) / e, p);
    const long long inv_e = fp::invmod(e, p);
    const int sqrt_n = static_cast<int>(std::sqrt(static_cast<double>(n)) + 0.5);

    std::vector<std::vector<int>> power_class(k, std::vector<int>(e));  // class of rep^t
    for (int c = 0; c < k; ++c)
        for (int tpow = 0; tpow < e; ++tpow)
            power_class[c][tpow] = t.classes.class_of[g.pow(t.classes.reps[c], tpow)];

    struct Row {
        int degree;
        std::vector<Cyc> values;
        std::vector<std::vector<mpq_class>> sort_key;
    };
    std::vector<Row> rows;
    for (const Basis& b : spaces) {
        std::vector<long long> w(k);
        for (int i = 0; i < k; ++i) w[i] = b[i][0];
        if (w[0] == 0) throw LiftFailure("eigenvector vanishes at the identity class");
        long long norm = fp::invmod(w[0], p);
        for (auto& x : w) x = fp::mulmod(x, norm, p);

        // degree from the second orthogonality relation
        long long s = 0;
        for (int c = 0; c < k; ++c) {
            long long term = fp::mulmod(w[c], w[t.inverse_class[c]], p);
            s = (s + fp::mulmod(term, fp::invmod(t.class_sizes[c], p), p)) % p;
        }
        long long d2 = fp::mulmod(n % p, fp::invmod(s, p), p);
        int degree = -1;
        for (int d = 1; d <= sqrt_n; ++d)
            if (fp::mulmod(d, d, p) == d2) { degree = d; break; }
        if (degree < 0) throw LiftFailure("no degree matches d^2 mod p");

        std::vector<long long> chi_p(k);
        for (int c = 0; c < k; ++c)
            chi_p[c] = fp::mulmod(fp::mulmod(degree, w[c], p), fp::invmod(t.class_sizes[c], p), p);

        // lift: chi(C_c) = sum_j m_j zeta^j with
        // m_j = (1/e) sum_t chi_p(class of rep^t) z^{-jt}
        Row row;
        row.degree = degree;
        for (int c = 0; c < k; ++c) {
            Cyc val(t.field);
            for (int j = 0; j < e; ++j) {
                long long acc = 0;
                for (int tpow = 0; tpow < e; ++tpow) {
                    long long zp = fp::powmod(z, (static_cast<long long>(e) - j) % e * tpow % e, p);
                    acc = (acc + fp::mulmod(chi_p[power_class[c][tpow]], zp, p)) % p;
                }
                long long mj = fp::mulmod(acc, inv_e, p);
                if (mj > degree)
                    throw LiftFailure("root-of-unity multiplicity exceeds the degree");
                if (mj != 0)
                    val = val + Cyc::zeta_power(t.field, j) * mpq_class(static_cast<long>(mj));
            }
            row.values.push_back(std::move(val));
        }
        for (const Cyc& v : row.values) row.sort_key.push_back(v.coords());
        rows.push_back(std::move(row));
    }

    // Deterministic order: by degree, then lexicographic coordinate values.
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.degree != b.degree) return a.degree < b.degree;
        return a.sort_key < b.sort_key;
    });
    for (Row& r : rows) {
        t.degrees.push_back(r.degree);
        t.values.push_back(std::move(r.values));
    }
    verify_char_table(t);
    return t;
}

struct FPointReport {
    std::vector<int> fixed_character_ids;
    int count = 0;
    int power = 1;
};

// Count irreducible characters with chi(phi^n(g)) = chi(g) for all g.
inline FPointReport f_point_count(const FiniteGroup& g, const FiniteEndo& phi, const CharTable& t,
                                  int power = 1) {
    if (t.group != &g) throw ValidationError("character table belongs to a different group");
    FiniteEndo phin = phi.iterate(power);
    FPointReport r;
    r.power = power;
    for (int chi = 0; chi < t.k; ++chi) {
        bool fixed = true;
        for (int c = 0; c < t.k && fixed; ++c) {
            int rep = t.classes.reps[c];
            if (!(t.values[chi][t.classes.class_of[phin(rep)]] == t.values[chi][c])) fixed = false;
        }
        if (fixed) r.fixed_character_ids.push_back(chi);
    }
    r.count = static_cast<int>(r.fixed_character_ids.size());
    return r;
}

struct TbftReport {
    struct Entry {
        int power;
        int reidemeister;
        int f_points;
        bool pass;
    };
    std::vector<Entry> entries;
    bool all_pass = true;
};

// Per-power comparison R(phi^n) vs fixed-character count.
inline TbftReport tbft_verify(const FiniteGroup& g, const FiniteEndo& phi, int max_power,
                              const CharTable* table = nullptr) {
    CharTable local;
    if (!table) {
        local = character_table(g);
        table = &local;
    }
    TbftReport rep;
    for (int n = 1; n <= max_power; ++n) {
        int r = reidemeister_number(g, phi, n);
        int f = f_point_count(g, phi, *table, n).count;
        bool pass = r == f;
        if (!pass) rep.all_pass = false;
        rep.entries.push_back({n, r, f, pass});
    }
    return rep;
}

// chi must satisfy chi ∘ phi^n = chi; then every precomposition chi ∘ phi^m
// stays irreducible, certified by <chi∘phi^m, chi∘phi^m> = 1.
inline bool irreducibility_persistence(const FiniteGroup& g, const FiniteEndo& phi,
                                       const CharTable& t, int chi_id, int n, int max_m = 6) {
    const auto fixed = f_point_count(g, phi, t, n).fixed_character_ids;
    if (std::find(fixed.begin(), fixed.end(), chi_id) == fixed.end())
        throw PreconditionNotFPoint();
    const int order = g.order();
    for (int m = 0; m <= max_m; ++m) {
        FiniteEndo phim = phi.iterate(m);
        Cyc s(t.field);
        for (int x = 0; x < order; ++x) {
            const Cyc& v = t.values[chi_id][t.classes.class_of[phim(x)]];
            s = s + v * v.conj();
        }
        if (!(s == Cyc(t.field, order))) return false;
    }
    return true;
}

// Number of twisted classes = dimension of the space of phi-class functions;
// cross-checked against the fixed-space dimension from the Burnside average.
inline int twisted_class_function_dimension(const FiniteGroup& g, const FiniteEndo& phi) {
    int classes = twisted_classes(g, phi).count();
    if (classes != burnside_average(g, phi))
        throw ValidationError("class-function dimension disagrees with the fixed-space dimension");
    return classes;
}

}  // namespace tbf
