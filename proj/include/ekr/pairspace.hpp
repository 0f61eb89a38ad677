#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "ekr/errors.hpp"
#include "ekr/exactla.hpp"
#include "ekr/geometry.hpp"
#include "ekr/group.hpp"
#include "ekr/util.hpp"

namespace ekr {

inline int pair_index(int a, int b, int n) { return a * n + b; }

// u = (q-2)q(q^2-1)/3 and v = (q-1)q(q^2-1)/3; both always integral.
inline std::pair<long long, long long> uv_constants(long long q) {
    return {(q - 2) * q * (q * q - 1) / 3, (q - 1) * q * (q * q - 1) / 3};
}

// Entry of N as a function of the quadruple position class alone.
inline long long closed_N_entry(QuadClass c, int q) {
    auto [u, v] = uv_constants(q);
    switch (c) {
        case QuadClass::Degenerate:
        case QuadClass::Inconsistent:
        case QuadClass::AllCollinear: return 0;
        case QuadClass::Identical: return static_cast<long long>(q) * q * v;
        case QuadClass::Crossed:
        case QuadClass::ThreeCollinear: return v;
        case QuadClass::GeneralPosition: return u;
    }
    return 0;
}

// Integer vector on the ordered-pair basis e_{alpha beta}, length n^2.
struct PairVector {
    int n = 0;
    std::vector<long long> e;

    PairVector() = default;
    explicit PairVector(int n_) : n(n_), e(static_cast<std::size_t>(n_) * n_, 0) {}

    long long& at(int a, int b) { return e[static_cast<std::size_t>(a) * n + b]; }
    long long at(int a, int b) const { return e[static_cast<std::size_t>(a) * n + b]; }

    PairVector& operator+=(const PairVector& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.e[i];
        return *this;
    }
    PairVector& operator-=(const PairVector& o) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] -= o.e[i];
        return *this;
    }
    PairVector& operator*=(long long s) {
        for (auto& x : e) x *= s;
        return *this;
    }
    friend PairVector operator+(PairVector a, const PairVector& b) { return a += b; }
    friend PairVector operator-(PairVector a, const PairVector& b) { return a -= b; }
    friend PairVector operator*(long long s, PairVector a) { return a *= s; }
    bool operator==(const PairVector& o) const { return n == o.n && e == o.e; }

    std::vector<Int> to_ints() const {
        std::vector<Int> out(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) out[i] = static_cast<long>(e[i]);
        return out;
    }
    ExactVector to_exact() const {
        ExactVector out(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) out[i] = Rat(static_cast<long>(e[i]));
        return out;
    }
};

inline PairVector e_pair(const Plane& P, int a, int b) {
    PairVector x(P.n());
    x.at(a, b) = 1;
    return x;
}

inline PairVector e_diag(const Plane& P, int a) { return e_pair(P, a, a); }

// e^1_alpha: all pairs with first coordinate alpha.
inline PairVector e1_point(const Plane& P, int a) {
    PairVector x(P.n());
    for (int b = 0; b < P.n(); ++b) x.at(a, b) = 1;
    return x;
}

// e^2_alpha: all pairs with second coordinate alpha.
inline PairVector e2_point(const Plane& P, int a) {
    PairVector x(P.n());
    for (int b = 0; b < P.n(); ++b) x.at(b, a) = 1;
    return x;
}

// e_ell: all ordered pairs (including repeats) of points of ell.
inline PairVector e_line(const Plane& P, int l) {
    PairVector x(P.n());
    for (int a : P.points_on_line(l))
        for (int b : P.points_on_line(l)) x.at(a, b) = 1;
    return x;
}

// e: all ordered pairs of distinct points.
inline PairVector e_all(const Plane& P) {
    PairVector x(P.n());
    for (int a = 0; a < P.n(); ++a)
        for (int b = 0; b < P.n(); ++b)
            if (a != b) x.at(a, b) = 1;
    return x;
}

// e_{alpha ell} = sum over beta on ell of e_{alpha beta}; requires alpha on ell.
inline PairVector e_point_line(const Plane& P, int a, int l) {
    if (!P.incident(a, l)) throw GeometryViolation("e_point_line: point not on line");
    PairVector x(P.n());
    for (int b : P.points_on_line(l)) x.at(a, b) = 1;
    return x;
}

// e_{ell alpha} = sum over beta on ell of e_{beta alpha}; requires alpha on ell.
inline PairVector e_line_point(const Plane& P, int l, int a) {
    if (!P.incident(a, l)) throw GeometryViolation("e_line_point: point not on line");
    PairVector x(P.n());
    for (int b : P.points_on_line(l)) x.at(b, a) = 1;
    return x;
}

// Alternating triple vector on the first coordinate:
// (e_{a,avb} - e_{b,avb}) + (e_{b,bvc} - e_{c,bvc}) + (e_{c,cva} - e_{a,cva}).
inline PairVector e_triple1(const Plane& P, int a, int b, int c) {
    if (a == b || b == c || a == c || P.collinear(a, b, c))
        throw GeometryViolation("e_triple1: points must be non-collinear");
    int ab = P.join(a, b), bc = P.join(b, c), ca = P.join(c, a);
    PairVector x = e_point_line(P, a, ab);
    x -= e_point_line(P, b, ab);
    x += e_point_line(P, b, bc);
    x -= e_point_line(P, c, bc);
    x += e_point_line(P, c, ca);
    x -= e_point_line(P, a, ca);
    return x;
}

// The second-coordinate mirror of e_triple1.
inline PairVector e_triple2(const Plane& P, int a, int b, int c) {
    if (a == b || b == c || a == c || P.collinear(a, b, c))
        throw GeometryViolation("e_triple2: points must be non-collinear");
    int ab = P.join(a, b), bc = P.join(b, c), ca = P.join(c, a);
    PairVector x = e_line_point(P, ab, a);
    x -= e_line_point(P, ab, b);
    x += e_line_point(P, bc, b);
    x -= e_line_point(P, bc, c);
    x += e_line_point(P, ca, c);
    x -= e_line_point(P, ca, a);
    return x;
}

// e_{abcd} = (e_{ac} - e_{ad}) + (e_{bd} - e_{bc}) for four distinct collinear points.
inline PairVector e_quad(const Plane& P, int a, int b, int c, int d) {
    int ids[4] = {a, b, c, d};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (ids[i] == ids[j])
                throw GeometryViolation("e_quad: points must be distinct");
    if (!P.collinear(a, b, c) || !P.collinear(a, b, d))
        throw GeometryViolation("e_quad: points must be collinear");
    PairVector x(P.n());
    x.at(a, c) += 1;
    x.at(a, d) -= 1;
    x.at(b, d) += 1;
    x.at(b, c) -= 1;
    return x;
}

// Expansion of N e_{alpha ell} into the four coordinate regions, evaluated
// literally: q^2 v on (alpha, beta != alpha on ell), (q-1)v on (gamma off ell,
// eta off alpha v gamma), qv on (gamma off ell, eta on alpha v gamma, eta !=
// gamma) and (gamma on ell minus alpha, eta off ell).
inline PairVector nalphaell_expansion(const Plane& P, int a, int l) {
    if (!P.incident(a, l)) throw GeometryViolation("nalphaell_expansion: point not on line");
    const int q = P.q(), n = P.n();
    auto [u, v] = uv_constants(q);
    const long long q2v = static_cast<long long>(q) * q * v;
    PairVector w(n);
    for (int b : P.points_on_line(l))
        if (b != a) w.at(a, b) += q2v;
    for (int g = 0; g < n; ++g) {
        if (P.incident(g, l)) continue;
        int ag = P.join(a, g);
        for (int h = 0; h < n; ++h) {
            if (!P.incident(h, ag))
                w.at(g, h) += (q - 1) * v;
            else if (h != g)
                w.at(g, h) += q * v;
        }
    }
    for (int g : P.points_on_line(l)) {
        if (g == a) continue;
        for (int h = 0; h < n; ++h)
            if (!P.incident(h, l)) w.at(g, h) += q * v;
    }
    return w;
}

// The same vector re-expressed through e^1 / e_{alpha ell} building blocks:
// q^2 v (e_{a l} - e_{aa}) + (q-1)v sum_{g off l} (e^1_g - e_{g (a v g)})
// + qv ( sum_{g off l} (e_{g (a v g)} - e_{gg}) + sum_{g on l, g != a} (e^1_g - e_{g l}) ).
inline PairVector nalphaell_line_form(const Plane& P, int a, int l) {
    if (!P.incident(a, l)) throw GeometryViolation("nalphaell_line_form: point not on line");
    const int q = P.q(), n = P.n();
    auto [u, v] = uv_constants(q);
    const long long q2v = static_cast<long long>(q) * q * v;
    PairVector w = q2v * (e_point_line(P, a, l) - e_diag(P, a));
    for (int g = 0; g < n; ++g) {
        if (P.incident(g, l)) continue;
        int ag = P.join(a, g);
        w += (q - 1) * (static_cast<long long>(v) * (e1_point(P, g) - e_point_line(P, g, ag)));
        w += static_cast<long long>(q) * v * (e_point_line(P, g, ag) - e_diag(P, g));
    }
    for (int g : P.points_on_line(l)) {
        if (g == a) continue;
        w += static_cast<long long>(q) * v * (e1_point(P, g) - e_point_line(P, g, l));
    }
    return w;
}

// N = M^T M on the ordered-pair basis, built by the derangement sweep
// N_{(a, a^g), (c, c^g)} += 1.
struct NMatrix {
    int q = 0, n = 0;
    long long u = 0, v = 0;
    I64Matrix m;
};

inline NMatrix build_N(const Group& G, unsigned workers = 0) {
    const int n = G.n();
    const int nn = n * n;
    if (!workers) workers = default_workers();
    NMatrix N;
    N.q = G.q();
    N.n = n;
    std::tie(N.u, N.v) = uv_constants(G.q());
    const auto& ders = G.derangements();
    std::vector<I64Matrix> acc(workers, I64Matrix(nn, nn));
    parallel_chunks(ders.size(), workers, [&](unsigned w, std::size_t b, std::size_t e) {
        I64Matrix& A = acc[w];
        std::vector<int> row(n);
        for (std::size_t k = b; k < e; ++k) {
            auto pp = G.point_perm(ders[k]);
            for (int a = 0; a < n; ++a) row[a] = a * n + pp[a];
            for (int a = 0; a < n; ++a) {
                long long* base = &A.e[static_cast<std::size_t>(row[a]) * nn];
                for (int c = 0; c < n; ++c) ++base[row[c]];
            }
        }
    });
    N.m = std::move(acc[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t i = 0; i < N.m.e.size(); ++i) N.m.e[i] += acc[w].e[i];
    return N;
}

// y = N x (the nonzero support of x is small for every family used here).
inline PairVector apply_N(const NMatrix& N, const PairVector& x) {
    const int nn = N.n * N.n;
    PairVector y(N.n);
    std::vector<int> nz;
    for (int c = 0; c < nn; ++c)
        if (x.e[c] != 0) nz.push_back(c);
    for (int r = 0; r < nn; ++r) {
        const long long* row = &N.m.e[static_cast<std::size_t>(r) * nn];
        long long s = 0;
        for (int c : nz) s += row[c] * x.e[c];
        y.e[r] = s;
    }
    return y;
}

// Gram matrix of A: counts over the whole group, not only derangements.
inline I64Matrix build_gram_A(const Group& G, unsigned workers = 0) {
    const int n = G.n();
    const int nn = n * n;
    if (!workers) workers = default_workers();
    std::vector<I64Matrix> acc(workers, I64Matrix(nn, nn));
    parallel_chunks(static_cast<std::size_t>(G.size()), workers,
                    [&](unsigned w, std::size_t b, std::size_t e) {
                        I64Matrix& A = acc[w];
                        std::vector<int> row(n);
                        for (std::size_t g = b; g < e; ++g) {
                            auto pp = G.point_perm(static_cast<int>(g));
                            for (int a = 0; a < n; ++a) row[a] = a * n + pp[a];
                            for (int a = 0; a < n; ++a) {
                                long long* base = &A.e[static_cast<std::size_t>(row[a]) * nn];
                                for (int c = 0; c < n; ++c) ++base[row[c]];
                            }
                        }
                    });
    I64Matrix out = std::move(acc[0]);
    for (unsigned w = 1; w < workers; ++w)
        for (std::size_t i = 0; i < out.e.size(); ++i) out.e[i] += acc[w].e[i];
    return out;
}

// Closed form of the Gram matrix:
// (q-1)(q^2-1)q^3 I + (q-1)^2 q^2 (J-I) (x) (J-I).
inline long long gram_closed_entry(long long q, int a, int b, int c, int d) {
    if (a == c && b == d) return (q - 1) * (q * q - 1) * q * q * q;
    if (a != c && b != d) return (q - 1) * (q - 1) * q * q;
    return 0;
}

// (B x)_g over non-derangements, in the gid order of G.non_derangements().
inline std::vector<long long> apply_B(const PairVector& x, const Group& G) {
    const int n = G.n();
    std::vector<long long> out;
    out.reserve(G.non_derangements().size());
    for (int g : G.non_derangements()) {
        auto pp = G.point_perm(g);
        long long s = 0;
        for (int a = 0; a < n; ++a) s += x.at(a, pp[a]);
        out.push_back(s);
    }
    return out;
}

// Spanning family of V0: the n diagonal vectors, the two point-difference
// families and the line-difference family; 4(q^2+q)+1 vectors in total.
inline std::vector<PairVector> v0_basis(const Plane& P, int base_point, int base_line) {
    std::vector<PairVector> out;
    out.reserve(4 * P.n() - 3);
    for (int a = 0; a < P.n(); ++a) out.push_back(e_diag(P, a));
    PairVector e1bar = e1_point(P, base_point);
    for (int a = 0; a < P.n(); ++a)
        if (a != base_point) out.push_back(e1bar - e1_point(P, a));
    PairVector e2bar = e2_point(P, base_point);
    for (int a = 0; a < P.n(); ++a)
        if (a != base_point) out.push_back(e2bar - e2_point(P, a));
    PairVector elbar = e_line(P, base_line);
    for (int l = 0; l < P.n(); ++l)
        if (l != base_line) out.push_back(elbar - e_line(P, l));
    return out;
}

// The explicit echelon family of collinear-quadruple vectors on ell,
// q^2 - q - 1 linearly independent vectors; defined for q > 2 only.
inline std::vector<PairVector> f_family(const Plane& P, int line) {
    const int q = P.q();
    if (q <= 2) throw TooSmallField("f_family: needs q > 2 (at least 4 points per line)");
    const std::vector<int>& pt = P.points_on_line(line); // alpha_0 .. alpha_q in id order
    std::vector<PairVector> out;
    out.reserve(q * q - q - 1);
    for (int i = 0; i <= q - 2; ++i)
        for (int j = 0; j <= q - 2; ++j)
            if (i != j) out.push_back(e_quad(P, pt[i], pt[q - 1], pt[j], pt[q]));
    for (int i = 0; i <= q - 3; ++i) out.push_back(e_quad(P, pt[i], pt[q - 2], pt[q - 1], pt[q]));
    for (int i = 0; i <= q - 3; ++i) out.push_back(e_quad(P, pt[q - 1], pt[q], pt[i], pt[q - 2]));
    out.push_back(e_quad(P, pt[q - 2], pt[q], pt[q - 3], pt[q - 1]));
    return out;
}

// Binary dump: 16-byte header (magic "NMAT", u32 q, u32 n, u32 reserved),
// then the n^2 x n^2 entries as little-endian int64, row-major.
inline void write_nmat(const std::string& path, const NMatrix& N) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("write_nmat: cannot open " + path);
    auto put_u32 = [&](std::uint32_t x) {
        unsigned char b[4] = {static_cast<unsigned char>(x), static_cast<unsigned char>(x >> 8),
                              static_cast<unsigned char>(x >> 16),
                              static_cast<unsigned char>(x >> 24)};
        f.write(reinterpret_cast<const char*>(b), 4);
    };
    f.write("NMAT", 4);
    put_u32(static_cast<std::uint32_t>(N.q));
    put_u32(static_cast<std::uint32_t>(N.n));
    put_u32(0);
    for (long long v : N.m.e) {
        unsigned char b[8];
        std::uint64_t x = static_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(x >> (8 * i));
        f.write(reinterpret_cast<const char*>(b), 8);
    }
    if (!f) throw Error("write_nmat: write failed for " + path);
}

inline NMatrix read_nmat(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("read_nmat: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "NMAT", 4) != 0) throw Error("read_nmat: bad magic");
    auto get_u32 = [&]() {
        unsigned char b[4];
        f.read(reinterpret_cast<char*>(b), 4);
        return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
               (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
    };
    NMatrix N;
    N.q = static_cast<int>(get_u32());
    N.n = static_cast<int>(get_u32());
    get_u32(); // reserved
    std::tie(N.u, N.v) = uv_constants(N.q);
    const int nn = N.n * N.n;
    N.m = I64Matrix(nn, nn);
    for (auto& v : N.m.e) {
        unsigned char b[8];
        f.read(reinterpret_cast<char*>(b), 8);
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(b[i]) << (8 * i);
        v = static_cast<long long>(x);
    }
    if (!f) throw Error("read_nmat: truncated file");
    return N;
}

} // namespace ekr
