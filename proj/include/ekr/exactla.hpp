#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/util.hpp"

namespace ekr {

using Int = mpz_class;
using Rat = mpq_class;

// gmpxx has no long long constructor; long is 64-bit on this platform
inline Int int_of(long long v) { return Int(static_cast<long>(v)); }
inline Rat rat_of(long long v) { return Rat(static_cast<long>(v)); }

// Dense matrix of 64-bit integers; the cheap carrier for brute-force counts
// (N, A^T A) before any exact elimination.
struct I64Matrix {
    int rows = 0, cols = 0;
    std::vector<long long> e;

    I64Matrix() = default;
    I64Matrix(int r, int c) : rows(r), cols(c), e(static_cast<std::size_t>(r) * c, 0) {}

    long long& at(int i, int j) { return e[static_cast<std::size_t>(i) * cols + j]; }
    long long at(int i, int j) const { return e[static_cast<std::size_t>(i) * cols + j]; }
};

// Dense matrix over arbitrary-precision integers.
class ExactMatrix {
public:
    ExactMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), e_(static_cast<std::size_t>(rows) * cols) {}

    static ExactMatrix identity(int n) {
        ExactMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static ExactMatrix from_i64(const I64Matrix& a) {
        ExactMatrix m(a.rows, a.cols);
        for (int i = 0; i < a.rows; ++i)
            for (int j = 0; j < a.cols; ++j) m.at(i, j) = static_cast<long>(a.at(i, j));
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int& at(int i, int j) { return e_[static_cast<std::size_t>(i) * cols_ + j]; }
    const Int& at(int i, int j) const { return e_[static_cast<std::size_t>(i) * cols_ + j]; }

    ExactMatrix transposed() const {
        ExactMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

private:
    int rows_, cols_;
    std::vector<Int> e_;
};

// Exact rational vector.
struct ExactVector {
    std::vector<Rat> e;

    ExactVector() = default;
    explicit ExactVector(std::size_t n) : e(n) {}

    std::size_t size() const { return e.size(); }
    Rat& operator[](std::size_t i) { return e[i]; }
    const Rat& operator[](std::size_t i) const { return e[i]; }
};

namespace detail {

inline void check_budget(int rows, int cols) {
    if (static_cast<long long>(rows) * cols > 4'000'000LL)
        throw ResourceExceeded("exact elimination: matrix exceeds memory budget");
}

// Pivot choice: the nonzero candidate of smallest bit length, which keeps
// Bareiss intermediates small.
inline int pick_pivot(const ExactMatrix& w, int from_row, int col) {
    int best = -1;
    std::size_t best_size = 0;
    for (int i = from_row; i < w.rows(); ++i) {
        if (w.at(i, col) == 0) continue;
        std::size_t s = mpz_sizeinbase(w.at(i, col).get_mpz_t(), 2);
        if (best < 0 || s < best_size) {
            best = i;
            best_size = s;
        }
    }
    return best;
}

} // namespace detail

// Rank over the rationals by fraction-free (Bareiss) elimination.
inline int rank_exact(const ExactMatrix& m) {
    detail::check_budget(m.rows(), m.cols());
    ExactMatrix w = m;
    const int rows = w.rows(), cols = w.cols();
    Int prev = 1;
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = detail::pick_pivot(w, r, col);
        if (piv < 0) continue;
        if (piv != r)
            for (int j = col; j < cols; ++j) std::swap(w.at(r, j), w.at(piv, j));
        for (int i = r + 1; i < rows; ++i) {
            for (int j = col + 1; j < cols; ++j) {
                Int t = w.at(r, col) * w.at(i, j) - w.at(i, col) * w.at(r, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, col) = 0;
        }
        prev = w.at(r, col);
        ++r;
    }
    return r;
}

// Rank of m reduced mod a prime (single word). Always <= the rational rank.
inline int rank_mod_p(const I64Matrix& m, std::uint32_t p) {
    const int rows = m.rows, cols = m.cols;
    std::vector<std::uint32_t> w(static_cast<std::size_t>(rows) * cols);
    for (std::size_t i = 0; i < w.size(); ++i) {
        long long v = m.e[i] % static_cast<long long>(p);
        if (v < 0) v += p;
        w[i] = static_cast<std::uint32_t>(v);
    }
    auto at = [&](int i, int j) -> std::uint32_t& {
        return w[static_cast<std::size_t>(i) * cols + j];
    };
    auto modpow = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= p;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<std::uint32_t>(r);
    };
    int r = 0;
    for (int col = 0; col < cols && r < rows; ++col) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = col; j < cols; ++j) std::swap(at(r, j), at(piv, j));
        std::uint64_t inv = modpow(at(r, col), p - 2);
        for (int i = r + 1; i < rows; ++i) {
            std::uint64_t v = at(i, col);
            if (v == 0) continue;
            std::uint64_t f = p - static_cast<std::uint32_t>(v * inv % p);
            for (int j = col; j < cols; ++j)
                at(i, j) = static_cast<std::uint32_t>((at(i, j) + f * at(r, j)) % p);
        }
        ++r;
    }
    return r;
}

inline int rank_mod_p(const ExactMatrix& m, std::uint32_t p) {
    I64Matrix w(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            w.at(i, j) = static_cast<long long>(mpz_fdiv_ui(m.at(i, j).get_mpz_t(), p));
    return rank_mod_p(w, p);
}

// Basis of {x : m x = 0} over the rationals. The vectors are returned as
// primitive integer vectors (first nonzero entry positive).
//
// Uses the integer-preserving Gauss-Jordan (Montante) scheme: at completion
// every pivot column holds d * e_i for the final pivot d, so each free column
// reads off one kernel vector directly.
inline std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
    detail::check_budget(m.rows(), m.cols());
    ExactMatrix w = m;
    const int rows = w.rows(), cols = w.cols();
    std::vector<int> pivot_col;  // pivot columns in order; row k has its pivot there
    std::vector<int> free_cols;
    Int prev = 1;
    int r = 0;
    for (int col = 0; col < cols; ++col) {
        int piv = (r < rows) ? detail::pick_pivot(w, r, col) : -1;
        if (piv < 0) {
            free_cols.push_back(col);
            continue;
        }
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(w.at(r, j), w.at(piv, j));
        Int p = w.at(r, col);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            for (int j = 0; j < cols; ++j) {
                if (j == col) continue;
                Int t = p * w.at(i, j) - w.at(i, col) * w.at(r, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, col) = 0;
        }
        prev = p;
        pivot_col.push_back(col);
        ++r;
    }
    std::vector<ExactVector> basis;
    basis.reserve(free_cols.size());
    for (int f : free_cols) {
        std::vector<Int> x(cols, 0);
        x[f] = prev;
        for (int k = 0; k < r; ++k) x[pivot_col[k]] = -w.at(k, f);
        Int g = 0;
        for (const Int& v : x) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 0) g = 1;
        int lead_sign = 0;
        for (const Int& v : x)
            if (v != 0) { lead_sign = sgn(v); break; }
        if (lead_sign < 0) g = -g;
        ExactVector vec(cols);
        for (int j = 0; j < cols; ++j) {
            Int t;
            mpz_divexact(t.get_mpz_t(), x[j].get_mpz_t(), g.get_mpz_t());
            vec[j] = Rat(t);
        }
        basis.push_back(std::move(vec));
    }
    return basis;
}

// Incremental integer row echelon with gcd-primitive rows; the workhorse for
// span membership and family-rank checks.
class IntEchelon {
public:
    explicit IntEchelon(int cols) : cols_(cols) {}

    int cols() const { return cols_; }
    int rank() const { return static_cast<int>(rows_.size()); }

    // Inserts v into the span; returns true if the rank grew.
    bool insert(std::vector<Int> v) {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatch("IntEchelon: vector length mismatch");
        reduce(v);
        int lead = lead_of(v);
        if (lead < 0) return false;
        make_primitive(v);
        auto pos = std::lower_bound(leads_.begin(), leads_.end(), lead);
        std::size_t idx = static_cast<std::size_t>(pos - leads_.begin());
        leads_.insert(pos, lead);
        rows_.insert(rows_.begin() + idx, std::move(v));
        return true;
    }

    bool contains(std::vector<Int> v) const {
        if (static_cast<int>(v.size()) != cols_)
            throw DimensionMismatch("IntEchelon: vector length mismatch");
        reduce(v);
        return lead_of(v) < 0;
    }

private:
    int cols_;
    std::vector<std::vector<Int>> rows_; // sorted by leading column
    std::vector<int> leads_;

    static int lead_of(const std::vector<Int>& v) {
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) return static_cast<int>(j);
        return -1;
    }

    static void make_primitive(std::vector<Int>& v) {
        Int g = 0;
        for (const Int& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 0) return;
        int lead = lead_of(v);
        if (lead >= 0 && v[lead] < 0) g = -g;
        for (Int& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }

    void reduce(std::vector<Int>& v) const {
        for (std::size_t k = 0; k < rows_.size(); ++k) {
            int lead = leads_[k];
            if (v[lead] == 0) continue;
            const std::vector<Int>& row = rows_[k];
            Int a = row[lead], b = v[lead];
            for (int j = 0; j < lead; ++j) v[j] *= a; // row is zero left of its lead
            for (int j = lead; j < cols_; ++j) v[j] = a * v[j] - b * row[j];
            make_primitive(v);
        }
    }
};

inline std::vector<Int> to_int_vector(const ExactVector& v) {
    Int lcm = 1;
    for (const Rat& x : v.e)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den().get_mpz_t());
    std::vector<Int> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat scaled = v[i] * Rat(lcm);
        out[i] = scaled.get_num(); // exact: denominator divides lcm
    }
    return out;
}

// Exact membership of v in the rational span of basis.
inline bool in_span(const ExactVector& v, const std::vector<ExactVector>& basis) {
    if (!basis.empty())
        for (const auto& b : basis)
            if (b.size() != v.size()) throw DimensionMismatch("in_span: length mismatch");
    IntEchelon ech(static_cast<int>(v.size()));
    for (const auto& b : basis) ech.insert(to_int_vector(b));
    return ech.contains(to_int_vector(v));
}

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
// a is row-major n*n.
inline std::vector<double> jacobi_spectrum(std::vector<double> a, int n, double tol = 1e-10,
                                           int max_sweeps = 100) {
    if (n > 1000) throw ResourceExceeded("jacobi_spectrum: dimension > 1000");
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
        off = std::sqrt(2 * off);
        if (off < tol) {
            std::vector<double> eig(n);
            for (int i = 0; i < n; ++i) eig[i] = at(i, i);
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = at(p, q);
                if (apq == 0) continue;
                double theta = (at(q, q) - at(p, p)) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1), s = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
    }
    throw NoConvergence("jacobi_spectrum: sweep cap reached");
}

// Deterministic Miller-Rabin, valid for 32-bit inputs with bases {2,7,61}.
inline bool is_prime_u32(std::uint32_t x) {
    if (x < 2) return false;
    for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (x == p) return true;
        if (x % p == 0) return false;
    }
    std::uint32_t d = x - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    auto modpow = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t acc = 1;
        b %= x;
        while (e) {
            if (e & 1) acc = acc * b % x;
            b = b * b % x;
            e >>= 1;
        }
        return acc;
    };
    for (std::uint32_t base : {2u, 7u, 61u}) {
        std::uint64_t v = modpow(base, d);
        if (v == 1 || v == x - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            v = v * v % x;
            if (v == x - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline std::vector<std::uint32_t> random_31bit_primes(int count, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint32_t> out;
    while (static_cast<int>(out.size()) < count) {
        std::uint32_t c = static_cast<std::uint32_t>(rng.next() & 0x7FFFFFFFu) | 0x40000000u;
        c |= 1;
        if (!is_prime_u32(c)) continue;
        if (std::find(out.begin(), out.end(), c) != out.end()) continue;
        out.push_back(c);
    }
    return out;
}

} // namespace ekr
