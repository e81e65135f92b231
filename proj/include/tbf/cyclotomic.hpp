#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "tbf/errors.hpp"

namespace tbf {

// Coefficients of the m-th cyclotomic polynomial, lowest degree first.
inline std::vector<mpz_class> cyclotomic_polynomial(int m) {
    // x^m - 1 = prod_{d|m} Phi_d; divide out the proper divisors.
    std::vector<mpz_class> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        std::vector<mpz_class> phi_d = cyclotomic_polynomial(d);
        // exact polynomial division num /= phi_d
        std::vector<mpz_class> q(num.size() - phi_d.size() + 1, 0);
        std::vector<mpz_class> rem = num;
        for (int i = static_cast<int>(q.size()) - 1; i >= 0; --i) {
            q[i] = rem[i + phi_d.size() - 1];  // phi_d is monic
            if (q[i] == 0) continue;
            for (std::size_t j = 0; j < phi_d.size(); ++j) rem[i + j] -= q[i] * phi_d[j];
        }
        for (const mpz_class& c : rem)
            if (c != 0) throw ValidationError("cyclotomic polynomial division not exact");
        num = std::move(q);
    }
    return num;
}

// The field Q(zeta_m) in the basis 1, zeta, ..., zeta^{deg-1} with
// deg = phi(m). Shared immutable context for Cyc values.
struct CycField {
    int order;                        // m
    int deg;                          // phi(m)
    std::vector<mpz_class> modulus;   // Phi_m, monic
    std::vector<std::vector<mpq_class>> powers;  // canonical coords of zeta^k

    explicit CycField(int m) : order(m), modulus(cyclotomic_polynomial(m)) {
        deg = static_cast<int>(modulus.size()) - 1;
        const int need = std::max(m, 2 * deg - 1);
        powers.assign(need, std::vector<mpq_class>(deg, 0));
        for (int k = 0; k < std::min(need, deg); ++k) powers[k][k] = 1;
        for (int k = deg; k < need; ++k) {
            // zeta^k = zeta * zeta^{k-1}, then reduce the overflow coefficient
            std::vector<mpq_class> shifted(deg, 0);
            mpq_class top = 0;
            for (int j = deg - 1; j >= 0; --j) {
                mpq_class c = powers[k - 1][j];
                if (j + 1 == deg) top = c;
                else shifted[j + 1] = c;
            }
            if (top != 0)
                for (int j = 0; j < deg; ++j) shifted[j] -= top * mpq_class(modulus[j]);
            powers[k] = std::move(shifted);
        }
    }

    static std::shared_ptr<const CycField> get(int m) {
        // Small process-wide cache; fields are immutable.
        static std::vector<std::shared_ptr<const CycField>> cache;
        for (const auto& f : cache)
            if (f->order == m) return f;
        auto f = std::make_shared<const CycField>(m);
        cache.push_back(f);
        return f;
    }
};

// Element of Q(zeta_m), exact.
class Cyc {
  public:
    Cyc() = default;
    explicit Cyc(std::shared_ptr<const CycField> f) : field_(std::move(f)), c_(field_->deg, 0) {}
    Cyc(std::shared_ptr<const CycField> f, const mpq_class& scalar) : Cyc(std::move(f)) {
        if (field_->deg > 0) c_[0] = scalar;
    }

    static Cyc zeta_power(std::shared_ptr<const CycField> f, long k) {
        Cyc r(f);
        long m = f->order;
        k = ((k % m) + m) % m;
        r.c_ = f->powers[k];
        return r;
    }

    const std::shared_ptr<const CycField>& field() const { return field_; }
    const std::vector<mpq_class>& coords() const { return c_; }

    bool operator==(const Cyc& o) const { return c_ == o.c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }
    mpq_class rational_value() const {
        if (!is_rational()) throw ValidationError("cyclotomic value is not rational");
        return c_.empty() ? mpq_class(0) : c_[0];
    }

    Cyc operator+(const Cyc& o) const {
        Cyc r = *this;
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
        return r;
    }
    Cyc operator-(const Cyc& o) const {
        Cyc r = *this;
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
        return r;
    }
    Cyc operator-() const {
        Cyc r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    Cyc operator*(const Cyc& o) const {
        const int deg = field_->deg;
        Cyc r(field_);
        // schoolbook product, reduced through the precomputed power table
        std::vector<mpq_class> prod(2 * deg - 1, 0);
        for (int i = 0; i < deg; ++i) {
            if (c_[i] == 0) continue;
            for (int j = 0; j < deg; ++j) {
                if (o.c_[j] == 0) continue;
                prod[i + j] += c_[i] * o.c_[j];
            }
        }
        for (int k = 0; k < 2 * deg - 1; ++k) {
            if (prod[k] == 0) continue;
            const auto& pw = field_->powers[k];
            for (int j = 0; j < deg; ++j) r.c_[j] += prod[k] * pw[j];
        }
        return r;
    }
    Cyc operator*(const mpq_class& s) const {
        Cyc r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    // Complex conjugation: zeta -> zeta^{-1}.
    Cyc conj() const {
        Cyc r(field_);
        for (int j = 0; j < field_->deg; ++j) {
            if (c_[j] == 0) continue;
            Cyc term = zeta_power(field_, -j) * mpq_class(c_[j]);
            r = r + term;
        }
        return r;
    }

    // Multiplicative inverse via the extended Euclidean algorithm on
    // polynomials over Q against Phi_m.
    Cyc inverse() const {
        if (is_zero()) throw ValidationError("division by zero cyclotomic");
        using Poly = std::vector<mpq_class>;
        auto degree = [](const Poly& p) {
            for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
                if (p[i] != 0) return i;
            return -1;
        };
        auto scale = [](const Poly& p, const mpq_class& s) {
            Poly r = p;
            for (auto& x : r) x *= s;
            return r;
        };
        auto sub_shift = [](Poly a, const Poly& b, const mpq_class& c, int shift) {
            if (a.size() < b.size() + shift) a.resize(b.size() + shift, 0);
            for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
            return a;
        };

        Poly r0(field_->modulus.size());
        for (std::size_t i = 0; i < field_->modulus.size(); ++i) r0[i] = mpq_class(field_->modulus[i]);
        Poly r1(c_.begin(), c_.end());
        Poly s0{0}, s1{1};  // coefficients of the input polynomial
        while (true) {
            int d1 = degree(r1);
            if (d1 < 0) throw ValidationError("cyclotomic inverse: common factor with modulus");
            int d0 = degree(r0);
            if (d0 < d1) { std::swap(r0, r1); std::swap(s0, s1); continue; }
            if (d1 == 0) break;
            mpq_class c = r0[d0] / r1[d1];
            r0 = sub_shift(r0, r1, c, d0 - d1);
            s0 = sub_shift(s0, s1, c, d0 - d1);
        }
        // r1 is a nonzero constant: inverse = s1 / r1 reduced into the field
        Poly inv_poly = scale(s1, 1 / r1[0]);
        Cyc result(field_);
        for (std::size_t k = 0; k < inv_poly.size(); ++k) {
            if (inv_poly[k] == 0) continue;
            if (k >= field_->powers.size()) throw ValidationError("cyclotomic inverse overflow");
            const auto& pw = field_->powers[k];
            for (int j = 0; j < field_->deg; ++j) result.c_[j] += inv_poly[k] * pw[j];
        }
        if (!((*this) * result == Cyc(field_, 1))) throw ValidationError("cyclotomic inverse check failed");
        return result;
    }

    Cyc operator/(const Cyc& o) const { return *this * o.inverse(); }

    std::string to_string() const {
        std::string s;
        for (int j = 0; j < field_->deg; ++j) {
            if (c_[j] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[j].get_str();
            if (j > 0) s += "*z^" + std::to_string(j);
        }
        return s.empty() ? "0" : s;
    }

  private:
    std::shared_ptr<const CycField> field_;
    std::vector<mpq_class> c_;
};

}  // namespace tbf
