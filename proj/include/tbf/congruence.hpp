#pragma once

#include <string>
#include <vector>

#include "tbf/abelian.hpp"

namespace tbf {

inline int mobius(long long d) {
    if (d < 1) throw ValidationError("Mobius argument must be positive");
    int k = 0;
    for (long long p = 2; p * p <= d; ++p) {
        if (d % p == 0) {
            d /= p;
            if (d % p == 0) return 0;
            ++k;
        }
    }
    if (d > 1) ++k;
    return k % 2 == 0 ? 1 : -1;
}

// {R(φ^n)} for n = 1..N with a provenance tag.
struct ReidemeisterSequence {
    std::vector<RCount> values;  // values[i] = R(φ^{i+1})
    std::string source;          // finite | abelian | extension

    int length() const { return static_cast<int>(values.size()); }
    const RCount& at(int n) const { return values.at(n - 1); }
};

struct CongruenceEntry {
    int n = 0;
    mpz_class sum;      // S_n = Σ_{d|n} μ(d) R(φ^{n/d})
    mpz_class residue;  // S_n mod n
    bool pass = false;
};

struct CongruenceReport {
    std::vector<CongruenceEntry> per_n;
    std::vector<mpz_class> periodic_counts;  // P_n = S_n
    bool all_pass = true;
};

// Gauss congruences S_n ≡ 0 mod n plus the periodic-point sanity checks
// P_n >= 0 and n | P_n. Requires every term finite.
inline CongruenceReport gauss_congruence_check(const ReidemeisterSequence& seq) {
    for (int n = 1; n <= seq.length(); ++n)
        if (!seq.at(n).is_finite()) throw InfiniteTerm(n);

    CongruenceReport report;
    for (int n = 1; n <= seq.length(); ++n) {
        CongruenceEntry e;
        e.n = n;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) e.sum += mobius(d) * seq.at(n / d).value();
        mpz_class nn = n;
        mpz_mod(e.residue.get_mpz_t(), e.sum.get_mpz_t(), nn.get_mpz_t());
        e.pass = e.residue == 0;
        if (!e.pass) report.all_pass = false;
        report.periodic_counts.push_back(e.sum);
        report.per_n.push_back(std::move(e));
    }
    return report;
}

struct PeriodicOrbit {
    int period = 0;
    mpz_class point_count;  // P_d
    mpz_class orbit_count;  // P_d / d
};

// Möbius inversion of the sequence into periodic-point counts per least
// period; reconstruction Σ_{d|n} P_d = R(φ^n) is re-verified.
inline std::vector<PeriodicOrbit> periodic_orbit_decomposition(const ReidemeisterSequence& seq) {
    CongruenceReport report = gauss_congruence_check(seq);
    std::vector<PeriodicOrbit> orbits;
    for (int d = 1; d <= seq.length(); ++d) {
        PeriodicOrbit o;
        o.period = d;
        o.point_count = report.periodic_counts[d - 1];
        if (o.point_count < 0) throw NegativePeriodCount(d);
        if (o.point_count % d != 0) throw NonDivisible(d);
        o.orbit_count = o.point_count / d;
        orbits.push_back(std::move(o));
    }
    for (int n = 1; n <= seq.length(); ++n) {
        mpz_class total = 0;
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) total += orbits[d - 1].point_count;
        if (total != seq.at(n).value())
            throw ValidationError("periodic decomposition does not reconstruct R(phi^" +
                                  std::to_string(n) + ")");
    }
    return orbits;
}

}  // namespace tbf
