#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "ekr/pairspace.hpp"

using namespace ekr;

TEST_CASE("uv constants") {
    CHECK(uv_constants(2) == std::pair<long long, long long>{0, 2});
    CHECK(uv_constants(3) == std::pair<long long, long long>{8, 16});
    CHECK(uv_constants(4) == std::pair<long long, long long>{40, 60});
    CHECK(uv_constants(5) == std::pair<long long, long long>{120, 160});
}

TEST_CASE("closed N entries") {
    CHECK(closed_N_entry(QuadClass::Identical, 2) == 8);
    CHECK(closed_N_entry(QuadClass::GeneralPosition, 3) == 8);
    CHECK(closed_N_entry(QuadClass::AllCollinear, 3) == 0);
    CHECK(closed_N_entry(QuadClass::Crossed, 3) == 16);
    CHECK(closed_N_entry(QuadClass::ThreeCollinear, 2) == 2);
    CHECK(closed_N_entry(QuadClass::Degenerate, 4) == 0);
    CHECK(closed_N_entry(QuadClass::Inconsistent, 4) == 0);
}

TEST_CASE("brute-force N equals the closed form at q = 2") {
    Plane P{Field(2)};
    Group G(P);
    NMatrix N = build_N(G);
    const int n = P.n();
    long long total = 0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    long long x = N.m.at(a * n + b, c * n + d);
                    total += x;
                    CHECK(x == closed_N_entry(P.classify_quadruple(a, b, c, d), 2));
                    CHECK(x == N.m.at(c * n + d, a * n + b));               // symmetry
                    CHECK(x == N.m.at(b * n + a, d * n + c));               // swap symmetry
                    if (a == b || c == d) CHECK(x == 0);                    // diagonal pairs
                }
    CHECK(total == 48LL * n * n);
    // entry at mapped pairs equals |D| / (q^2 + q)
    int a = 0, b = 1;
    CHECK(N.m.at(a * P.n() + b, a * P.n() + b) == 8);
}

TEST_CASE("build_N is independent of the worker count") {
    Plane P{Field(3)};
    Group G(P);
    NMatrix n1 = build_N(G, 1);
    NMatrix n3 = build_N(G, 3);
    CHECK(n1.m.e == n3.m.e);
}

TEST_CASE("N at q = 3: modular ranks agree with the exact rank 120") {
    Plane P{Field(3)};
    Group G(P);
    NMatrix N = build_N(G);
    CHECK(rank_exact(ExactMatrix::from_i64(N.m)) == 120);
    for (auto p : random_31bit_primes(3, 2024)) CHECK(rank_mod_p(N.m, p) == 120);
}

TEST_CASE("special vector shapes") {
    Plane P{Field(3)};
    const int n = P.n();
    auto count_ones = [](const PairVector& v) {
        long long c = 0;
        for (long long x : v.e) c += x != 0;
        return c;
    };
    CHECK(count_ones(e1_point(P, 4)) == n);
    CHECK(count_ones(e2_point(P, 4)) == n);
    CHECK(count_ones(e_line(P, 2)) == 16); // (q+1)^2
    CHECK(count_ones(e_all(P)) == static_cast<long long>(n) * (n - 1));
    CHECK(count_ones(e_diag(P, 0)) == 1);
    int l = 0;
    int on = P.points_on_line(l)[0];
    CHECK(count_ones(e_point_line(P, on, l)) == 4); // q+1
    CHECK(count_ones(e_line_point(P, l, on)) == 4);
}

TEST_CASE("geometric preconditions of the special vectors") {
    Plane P2{Field(2)};
    // no 4 distinct collinear points at q = 2
    auto& pts = P2.points_on_line(0);
    CHECK_THROWS_AS(e_quad(P2, pts[0], pts[1], pts[2], 3), GeometryViolation);
    CHECK_THROWS_AS(e_quad(P2, pts[0], pts[1], pts[2], pts[0]), GeometryViolation);
    Plane P3{Field(3)};
    int off = -1;
    for (int p = 0; p < P3.n(); ++p)
        if (!P3.incident(p, 0)) {
            off = p;
            break;
        }
    CHECK_THROWS_AS(e_point_line(P3, off, 0), GeometryViolation);
    CHECK_THROWS_AS(e_line_point(P3, 0, off), GeometryViolation);
    auto& pts3 = P3.points_on_line(0);
    CHECK_THROWS_AS(e_triple1(P3, pts3[0], pts3[1], pts3[2]), GeometryViolation);
    CHECK_THROWS_AS(e_triple2(P3, pts3[0], pts3[1], pts3[2]), GeometryViolation);
    CHECK_THROWS_AS(e_triple1(P3, 0, 0, 1), GeometryViolation);
}

TEST_CASE("f_family sizes and the q = 2 refusal") {
    Plane P2{Field(2)};
    CHECK_THROWS_AS(f_family(P2, 0), TooSmallField);
    Plane P3{Field(3)};
    for (int l = 0; l < P3.n(); ++l) CHECK(f_family(P3, l).size() == 5);
    Plane P4{Field(4)};
    CHECK(f_family(P4, 0).size() == 11);
}

TEST_CASE("v0 family size and independence") {
    Plane P2{Field(2)};
    auto v0 = v0_basis(P2, 0, 0);
    CHECK(v0.size() == 25);
    IntEchelon e2(P2.n() * P2.n());
    for (const auto& v : v0) CHECK(e2.insert(v.to_ints()));
    Plane P3{Field(3)};
    auto v03 = v0_basis(P3, 0, 0);
    CHECK(v03.size() == 49);
    IntEchelon e3(P3.n() * P3.n());
    for (const auto& v : v03) CHECK(e3.insert(v.to_ints()));
}

TEST_CASE("B identities at q = 2") {
    Plane P{Field(2)};
    Group G(P);
    const auto& nd = G.non_derangements();
    for (int a = 0; a < P.n(); ++a) {
        auto ba = apply_B(e_diag(P, a), G);
        for (std::size_t i = 0; i < nd.size(); ++i)
            CHECK(ba[i] == (G.point_image(nd[i], a) == a ? 1 : 0));
    }
    std::vector<std::vector<long long>> bl(P.n());
    for (int l = 0; l < P.n(); ++l) {
        bl[l] = apply_B(e_line(P, l), G);
        for (std::size_t i = 0; i < nd.size(); ++i)
            CHECK(bl[l][i] == (G.line_image(nd[i], l) == l ? 2 : 0) + 1);
    }
    for (int l = 1; l < P.n(); ++l)
        for (std::size_t i = 0; i < nd.size(); ++i) {
            long long chi0 = G.line_image(nd[i], 0) == 0 ? 1 : 0;
            long long chil = G.line_image(nd[i], l) == l ? 1 : 0;
            CHECK(bl[0][i] - bl[l][i] == 2 * (chi0 - chil));
        }
}

TEST_CASE("gram matrix of A at q = 2") {
    Plane P{Field(2)};
    Group G(P);
    I64Matrix gram = build_gram_A(G);
    const int n = P.n();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    CHECK(gram.at(a * n + b, c * n + d) == gram_closed_entry(2, a, b, c, d));
    CHECK(gram.at(0, 0) == 24);                    // |G| / n
    CHECK(gram.at(0 * n + 1, 2 * n + 3) == 4);     // (q-1)^2 q^2
    CHECK(gram.at(0 * n + 1, 0 * n + 2) == 0);     // alpha = gamma, beta != delta
}

TEST_CASE("N binary dump round-trips") {
    Plane P{Field(2)};
    Group G(P);
    NMatrix N = build_N(G);
    std::string path = "nmat_test_q2.bin";
    write_nmat(path, N);
    NMatrix R = read_nmat(path);
    CHECK(R.q == 2);
    CHECK(R.n == 7);
    CHECK(R.u == N.u);
    CHECK(R.v == N.v);
    CHECK(R.m.e == N.m.e);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_nmat("does_not_exist.bin"), Error);
}

TEST_CASE("nalphaell forms agree with the multiply at q = 2") {
    Plane P{Field(2)};
    Group G(P);
    NMatrix N = build_N(G);
    for (int l = 0; l < P.n(); ++l)
        for (int a : P.points_on_line(l)) {
            PairVector y = apply_N(N, e_point_line(P, a, l));
            CHECK(y == nalphaell_expansion(P, a, l));
            CHECK(y == nalphaell_line_form(P, a, l));
        }
}
