#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr/group.hpp"
#include "ekr/util.hpp"

using namespace ekr;

TEST_CASE("group orders") {
    CHECK(Group::order_formula(2) == 168);
    CHECK(Group::order_formula(3) == 5616);
    CHECK(Group::order_formula(4) == 60480);
    CHECK(Group::order_formula(5) == 372000);
    for (int q : {2, 3}) {
        Plane P{Field(q)};
        Group G(P);
        CHECK(G.order() == Group::order_formula(q));
    }
}

TEST_CASE("enumeration refuses beyond the configured bound") {
    Plane P{Field(7)};
    CHECK_THROWS_AS(Group(P, GroupConfig{.max_q = 5}), TooLarge);
}

TEST_CASE("fixed counts and derangements at q = 2, 3") {
    Plane P2{Field(2)};
    Group G2(P2);
    auto [fp, fl] = G2.fixed_counts(G2.identity());
    CHECK(fp == 7);
    CHECK(fl == 7);
    CHECK(!G2.is_derangement(G2.identity()));
    CHECK(G2.derangements().size() == 48);
    for (int d : G2.derangements()) CHECK(G2.fixed_counts(d) == std::pair<int, int>{0, 0});

    Plane P3{Field(3)};
    Group G3(P3);
    CHECK(G3.derangements().size() == 1728);
}

TEST_CASE("duality of fixed counts, exhaustive q <= 3") {
    for (int q : {2, 3}) {
        Plane P{Field(q)};
        Group G(P);
        for (int g = 0; g < G.size(); ++g) {
            auto [fp, fl] = G.fixed_counts(g);
            CHECK(fp == fl);
        }
    }
}

TEST_CASE("compose, inverse and the action homomorphism, exhaustive q = 2") {
    Plane P{Field(2)};
    Group G(P);
    const int id = G.identity();
    for (int g = 0; g < G.size(); ++g) {
        CHECK(G.compose(id, g) == g);
        CHECK(G.compose(g, id) == g);
        CHECK(G.compose(g, G.inverse(g)) == id);
        CHECK(G.inverse(G.inverse(g)) == g);
    }
    // point_perm(compose(g,h)) = point_perm(g) followed by point_perm(h)
    for (int g = 0; g < G.size(); ++g)
        for (int h = 0; h < G.size(); h += 7) {
            int gh = G.compose(g, h);
            for (int a = 0; a < P.n(); ++a)
                CHECK(G.point_image(gh, a) == G.point_image(h, G.point_image(g, a)));
        }
}

TEST_CASE("group action preserves incidence, exhaustive q = 2") {
    Plane P{Field(2)};
    Group G(P);
    for (int g = 0; g < G.size(); ++g)
        for (int a = 0; a < P.n(); ++a)
            for (int l = 0; l < P.n(); ++l)
                CHECK(P.incident(a, l) == P.incident(G.point_image(g, a), G.line_image(g, l)));
}

TEST_CASE("adjugate identity adj(M) M = det(M) I") {
    Plane P{Field(3)};
    Group G(P);
    const Field& F = P.field();
    SplitMix64 rng(7);
    for (int trial = 0; trial < 64; ++trial) {
        int g = static_cast<int>(rng.below(G.size()));
        Mat3 m = G.matrix(g);
        Mat3 adj = Group::adjugate(m.data(), F);
        Mat3 prod = G.mat_mul(adj, m);
        int det = G.det3(m.data());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) CHECK(prod[i * 3 + j] == (i == j ? det : 0));
    }
}

TEST_CASE("characteristic polynomials") {
    Plane P{Field(2)};
    Group G(P);
    const Field& F = P.field();
    // (T-1)^3 over GF(2) is T^3 + T^2 + T + 1
    CHECK(G.char_poly(G.identity()).coeffs == std::vector<int>{1, 1, 1, 1});
    // companion matrix of T^3 + T + 1
    Mat3 comp = {0, 1, 0, 0, 0, 1, 1, 1, 0};
    int gid = G.gid_of(comp.data());
    CHECK(G.char_poly(gid).coeffs == std::vector<int>{1, 1, 0, 1});
    CHECK(G.char_poly(gid).str() == "T^3 + T + 1");
    // derangements have root-free characteristic polynomials (q = 2 and 3)
    for (int q : {2, 3}) {
        Plane Pq{Field(q)};
        Group Gq(Pq);
        for (int d : Gq.derangements()) {
            Poly f = Gq.char_poly(d);
            for (int x = 0; x < q; ++x) CHECK(poly_eval(f, x, Pq.field()) != 0);
        }
    }
}

TEST_CASE("psl coset labeling") {
    Plane P2{Field(2)};
    Group G2(P2);
    CHECK(!G2.has_psl_split());
    for (int g = 0; g < G2.size(); ++g) CHECK(G2.psl_coset_index(g) == 0);

    Plane P4{Field(4)};
    Group G4(P4);
    CHECK(G4.has_psl_split());
    CHECK(G4.psl_coset_index(G4.identity()) == 0);
    long long counts[3] = {0, 0, 0};
    for (int g = 0; g < G4.size(); ++g) ++counts[G4.psl_coset_index(g)];
    CHECK(counts[0] == 20160);
    CHECK(counts[1] == 20160);
    CHECK(counts[2] == 20160);
    SplitMix64 rng(11);
    for (int i = 0; i < 20000; ++i) {
        int g = static_cast<int>(rng.below(G4.size()));
        int h = static_cast<int>(rng.below(G4.size()));
        CHECK(G4.psl_coset_index(G4.compose(g, h)) ==
              (G4.psl_coset_index(g) + G4.psl_coset_index(h)) % 3);
    }
}

TEST_CASE("stabilizers and cosets") {
    Plane P2{Field(2)};
    Group G2(P2);
    for (int a = 0; a < P2.n(); ++a) {
        auto s = G2.stabilizer_point(a);
        CHECK(s.size() == 24);
        CHECK(std::find(s.begin(), s.end(), G2.identity()) != s.end());
    }
    Plane P3{Field(3)};
    Group G3(P3);
    auto sl = G3.stabilizer_line(5);
    CHECK(sl.size() == 432);
    CHECK(std::find(sl.begin(), sl.end(), G3.identity()) != sl.end());
    auto coset = G3.coset_point(0, 1);
    CHECK(coset.size() == 432);
    for (int g : coset) CHECK(G3.point_image(g, 0) == 1);
}

TEST_CASE("witness matrices at the canonical flag and anti-flag") {
    Plane P{Field(2)};
    Group G(P);
    int alpha = P.point_id({1, 0, 0});
    int flag_line = P.line_id({0, 0, 1});  // <e1, e2>, contains alpha
    int anti_line = P.line_id({1, 0, 0});  // <e2, e3>, misses alpha
    Mat3 flag = G.matrix(G.witness_fixing_only(alpha, flag_line));
    CHECK(flag == Mat3{1, 0, 0, 1, 1, 0, 0, 1, 1});
    Mat3 anti = G.matrix(G.witness_fixing_only(alpha, anti_line));
    CHECK(anti == Mat3{1, 0, 0, 0, 0, 1, 0, 1, 1}); // companion block of T^2 + T + 1
}

TEST_CASE("witness fixes exactly the requested flag or anti-flag, exhaustive q = 3") {
    Plane P{Field(3)};
    Group G(P);
    for (int a = 0; a < P.n(); ++a)
        for (int l = 0; l < P.n(); ++l) {
            int g = G.witness_fixing_only(a, l);
            CHECK(G.fixed_counts(g) == std::pair<int, int>{1, 1});
            CHECK(G.point_image(g, a) == a);
            CHECK(G.line_image(g, l) == l);
        }
}
