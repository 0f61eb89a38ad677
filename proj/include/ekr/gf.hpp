#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ekr/errors.hpp"

namespace ekr {

// Decomposes q = p^k with p prime; returns false if q is not a prime power.
inline bool prime_power(int q, int& p, int& k) {
    if (q < 2) return false;
    int base = q;
    for (int d = 2; d * d <= base; ++d) {
        if (base % d == 0) {
            p = d;
            k = 0;
            while (base % d == 0) {
                base /= d;
                ++k;
            }
            return base == 1;
        }
    }
    p = q;
    k = 1;
    return true;
}

inline bool is_prime_power(int q) {
    int p, k;
    return prime_power(q, p, k);
}

// Polynomial over a finite field, coefficients lowest degree first.
// Normal form has no trailing zero coefficients; the zero polynomial is {}.
struct Poly {
    std::vector<int> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool monic() const { return !coeffs.empty() && coeffs.back() == 1; }

    void trim() {
        while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    }

    bool operator==(const Poly& o) const { return coeffs == o.coeffs; }

    // "T^3 + T + 1" style rendering, highest degree first.
    std::string str() const {
        if (coeffs.empty()) return "0";
        std::string s;
        for (int d = degree(); d >= 0; --d) {
            int c = coeffs[d];
            if (c == 0) continue;
            if (!s.empty()) s += " + ";
            if (d == 0 || c != 1) s += std::to_string(c);
            if (d >= 1) {
                if (c != 1) s += "*";
                s += "T";
                if (d > 1) s += "^" + std::to_string(d);
            }
        }
        return s.empty() ? "0" : s;
    }
};

// GF(q) with dense element indices 0..q-1 in the polynomial-basis encoding
// (index = sum c_i p^i). Index 0 is the additive and index 1 the
// multiplicative identity. Immutable after construction.
class Field {
public:
    static constexpr int kDefaultMaxQ = 16;

    explicit Field(int q, int max_q = kDefaultMaxQ) {
        if (q < 2 || !prime_power(q, p_, k_))
            throw NotPrimePower("field_new: " + std::to_string(q) + " is not a prime power");
        if (q > max_q)
            throw TooLarge("field_new: q = " + std::to_string(q) + " exceeds bound " +
                           std::to_string(max_q));
        q_ = q;
        if (k_ == 1) {
            modulus_ = {0, 1}; // prime field: arithmetic is plain mod p
        } else {
            modulus_ = smallest_irreducible_modulus(p_, k_);
        }
        build_tables();
    }

    int q() const { return q_; }
    int p() const { return p_; }
    int k() const { return k_; }

    // Modulus coefficients, lowest degree first, length k+1, monic.
    // For prime fields this is the trivial T (unused by arithmetic).
    const std::vector<int>& modulus() const { return modulus_; }

    int add(int a, int b) const { return add_[a * q_ + b]; }
    int mul(int a, int b) const { return mul_[a * q_ + b]; }
    int neg(int a) const { return neg_[a]; }
    int sub(int a, int b) const { return add_[a * q_ + neg_[b]]; }

    int inv(int a) const { return inv_[a]; } // a != 0

    int pow(int a, long long e) const {
        int r = 1, b = a;
        while (e > 0) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    // Raw tables for hot loops (q*q row-major).
    const int* add_table() const { return add_.data(); }
    const int* mul_table() const { return mul_.data(); }
    const int* neg_table() const { return neg_.data(); }
    const int* inv_table() const { return inv_.data(); }

    bool operator==(const Field& o) const {
        return q_ == o.q_ && modulus_ == o.modulus_ && add_ == o.add_ && mul_ == o.mul_;
    }

private:
    int q_ = 0, p_ = 0, k_ = 0;
    std::vector<int> modulus_;
    std::vector<int> add_, mul_, neg_, inv_;

    // Polynomial helpers over GF(p), dense coefficient vectors.
    static std::vector<int> pmod_mul(const std::vector<int>& a, const std::vector<int>& b,
                                     const std::vector<int>& mod, int p) {
        std::vector<int> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        // reduce modulo the monic modulus
        int dm = static_cast<int>(mod.size()) - 1;
        for (int d = static_cast<int>(prod.size()) - 1; d >= dm; --d) {
            int c = prod[d];
            if (c == 0) continue;
            for (int j = 0; j <= dm; ++j) {
                int idx = d - dm + j;
                prod[idx] = ((prod[idx] - c * mod[j]) % p + p) % p;
            }
        }
        prod.resize(dm > 0 ? dm : 1);
        return prod;
    }

    static bool has_root_mod_p(const std::vector<int>& f, int p) {
        for (int x = 0; x < p; ++x) {
            long long v = 0, xp = 1;
            for (int c : f) {
                v = (v + c * xp) % p;
                xp = (xp * x) % p;
            }
            if (v % p == 0) return true;
        }
        return false;
    }

    // Remainder of monic-divisor polynomial division over GF(p).
    static std::vector<int> prem(std::vector<int> a, const std::vector<int>& b, int p) {
        int db = static_cast<int>(b.size()) - 1;
        int lead_inv = 1;
        { // inverse of b's leading coefficient mod p
            int lb = b.back() % p;
            for (int x = 1; x < p; ++x)
                if ((lb * x) % p == 1) { lead_inv = x; break; }
        }
        for (int d = static_cast<int>(a.size()) - 1; d >= db; --d) {
            int c = (a[d] * lead_inv) % p;
            if (c == 0) continue;
            for (int j = 0; j <= db; ++j)
                a[d - db + j] = ((a[d - db + j] - c * b[j]) % p + p) % p;
        }
        a.resize(db > 0 ? db : 1);
        return a;
    }

    static bool irreducible_mod_p(const std::vector<int>& f, int p) {
        int d = static_cast<int>(f.size()) - 1;
        if (d <= 0) return false;
        if (d == 1) return true;
        if (has_root_mod_p(f, p)) return false;
        if (d <= 3) return true;
        // trial division by all monic polynomials of degree 2..d/2
        for (int m = 2; 2 * m <= d; ++m) {
            long long count = 1;
            for (int i = 0; i < m; ++i) count *= p;
            for (long long code = 0; code < count; ++code) {
                std::vector<int> g(m + 1, 0);
                long long c = code;
                for (int i = 0; i < m; ++i) {
                    g[i] = static_cast<int>(c % p);
                    c /= p;
                }
                g[m] = 1;
                auto r = prem(f, g, p);
                bool zero = true;
                for (int x : r)
                    if (x != 0) { zero = false; break; }
                if (zero) return false;
            }
        }
        return true;
    }

    // Lexicographically smallest monic irreducible of degree k over GF(p),
    // scanning candidates in the constant-first index order.
    static std::vector<int> smallest_irreducible_modulus(int p, int k) {
        long long count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (long long code = 0; code < count; ++code) {
            std::vector<int> f(k + 1, 0);
            long long c = code;
            for (int i = 0; i < k; ++i) {
                f[i] = static_cast<int>(c % p);
                c /= p;
            }
            f[k] = 1;
            if (irreducible_mod_p(f, p)) return f;
        }
        throw Error("no irreducible modulus found"); // unreachable for prime p
    }

    void build_tables() {
        add_.assign(q_ * q_, 0);
        mul_.assign(q_ * q_, 0);
        neg_.assign(q_, 0);
        inv_.assign(q_, 0);
        if (k_ == 1) {
            for (int a = 0; a < q_; ++a)
                for (int b = 0; b < q_; ++b) {
                    add_[a * q_ + b] = (a + b) % p_;
                    mul_[a * q_ + b] = (a * b) % p_;
                }
        } else {
            auto digits = [&](int x) {
                std::vector<int> d(k_, 0);
                for (int i = 0; i < k_; ++i) {
                    d[i] = x % p_;
                    x /= p_;
                }
                return d;
            };
            auto index_of = [&](const std::vector<int>& d) {
                int x = 0;
                for (int i = k_ - 1; i >= 0; --i) x = x * p_ + (i < (int)d.size() ? d[i] : 0);
                return x;
            };
            for (int a = 0; a < q_; ++a) {
                auto da = digits(a);
                for (int b = 0; b < q_; ++b) {
                    auto db = digits(b);
                    std::vector<int> s(k_, 0);
                    for (int i = 0; i < k_; ++i) s[i] = (da[i] + db[i]) % p_;
                    add_[a * q_ + b] = index_of(s);
                    mul_[a * q_ + b] = index_of(pmod_mul(da, db, modulus_, p_));
                }
            }
        }
        for (int a = 0; a < q_; ++a) {
            for (int b = 0; b < q_; ++b)
                if (add_[a * q_ + b] == 0) { neg_[a] = b; break; }
            if (a != 0)
                for (int b = 1; b < q_; ++b)
                    if (mul_[a * q_ + b] == 1) { inv_[a] = b; break; }
        }
    }
};

inline Field field_new(int q, int max_q = Field::kDefaultMaxQ) { return Field(q, max_q); }

inline int poly_eval(const Poly& f, int x, const Field& F) {
    int v = 0;
    for (int d = f.degree(); d >= 0; --d) v = F.add(F.mul(v, x), f.coeffs[d]);
    return v;
}

inline Poly poly_mul(const Poly& a, const Poly& b, const Field& F) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly r;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = F.add(r.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    r.trim();
    return r;
}

// Remainder of a by b (b nonzero), over F.
inline Poly poly_rem(Poly a, const Poly& b, const Field& F) {
    int db = b.degree();
    if (db < 0) throw Error("poly_rem: division by zero polynomial");
    int li = F.inv(b.coeffs.back());
    while (a.degree() >= db) {
        int d = a.degree();
        int c = F.mul(a.coeffs[d], li);
        for (int j = 0; j <= db; ++j)
            a.coeffs[d - db + j] = F.sub(a.coeffs[d - db + j], F.mul(c, b.coeffs[j]));
        a.trim();
    }
    return a;
}

inline bool poly_irreducible(const Poly& f, const Field& F) {
    int d = f.degree();
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int x = 0; x < F.q(); ++x)
        if (poly_eval(f, x, F) == 0) return false;
    if (d <= 3) return true;
    for (int m = 2; 2 * m <= d; ++m) {
        long long count = 1;
        for (int i = 0; i < m; ++i) count *= F.q();
        for (long long code = 0; code < count; ++code) {
            Poly g;
            g.coeffs.assign(m + 1, 0);
            long long c = code;
            for (int i = 0; i < m; ++i) {
                g.coeffs[i] = static_cast<int>(c % F.q());
                c /= F.q();
            }
            g.coeffs[m] = 1;
            if (poly_rem(f, g, F).is_zero()) return false;
        }
    }
    return true;
}

// All monic irreducible polynomials of degree d over GF(q), in ascending
// constant-first index order (deterministic).
inline std::vector<Poly> enumerate_irreducible(int q, int d, int max_q = Field::kDefaultMaxQ) {
    if (d < 1) throw UnsupportedDegree("enumerate_irreducible: d must be >= 1");
    double total = 1;
    for (int i = 0; i < d; ++i) total *= q;
    if (total > 1e6) throw TooLarge("enumerate_irreducible: q^d exceeds 10^6");
    Field F(q, max_q);
    long long count = 1;
    for (int i = 0; i < d; ++i) count *= q;
    std::vector<Poly> out;
    for (long long code = 0; code < count; ++code) {
        Poly f;
        f.coeffs.assign(d + 1, 0);
        long long c = code;
        for (int i = 0; i < d; ++i) {
            f.coeffs[i] = static_cast<int>(c % q);
            c /= q;
        }
        f.coeffs[d] = 1;
        if (poly_irreducible(f, F)) out.push_back(std::move(f));
    }
    return out;
}

// Closed-form count of monic irreducibles of degree d in {1,2,3} over GF(q):
// q, (q-1)q/2 and (q^2-1)q/3.
inline long long count_irreducible(int q, int d) {
    if (!is_prime_power(q))
        throw NotPrimePower("count_irreducible: " + std::to_string(q) + " is not a prime power");
    long long Q = q;
    switch (d) {
        case 1: return Q;
        case 2: return (Q - 1) * Q / 2;
        case 3: return (Q * Q - 1) * Q / 3;
        default: throw UnsupportedDegree("count_irreducible: d must be in {1,2,3}");
    }
}

} // namespace ekr
