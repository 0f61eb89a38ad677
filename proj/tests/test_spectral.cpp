#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ekr/spectral.hpp"

using namespace ekr;

TEST_CASE("graph parameters") {
    auto p2 = graph_params(2);
    CHECK(p2.d == 48);
    CHECK(p2.tau == -8);
    CHECK(p2.bound == 24);
    CHECK(!p2.has_psl_split);
    auto p3 = graph_params(3);
    CHECK(p3.d == 1728);
    CHECK(p3.tau == -144);
    CHECK(p3.bound == 432);
    auto p4 = graph_params(4);
    CHECK(p4.d == 19200);
    CHECK(p4.has_psl_split);
    CHECK(p4.psl_order == 20160);
    CHECK(p4.psl_d0 == 5760);
    CHECK(p4.psl_tau0_quoted == -864);
    CHECK(p4.psl_tau0_consistent == -288);
    CHECK(p4.psl_bound == 960);
    auto p5 = graph_params(5);
    CHECK(p5.d == 120000);
    CHECK_THROWS_AS(graph_params(6), NotPrimePower);
    CHECK_THROWS_AS(graph_params(17), TooLarge);
}

TEST_CASE("ratio bound is an exact integer identity for q <= 16") {
    for (int q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        CAPTURE(q);
        auto p = graph_params(q);
        long long Q = q;
        CHECK(p.tau * (Q * Q + Q) == -p.d);              // 1 - d/tau = q^2+q+1
        CHECK(p.bound * (Q * Q + Q + 1) == p.group_order);
        CHECK(p.bound == Q * Q * Q * (Q * Q - 1) * (Q - 1));
        if (p.has_psl_split) {
            CHECK(p.psl_tau0_consistent * (Q * Q + Q) == -p.psl_d0);
            CHECK(p.psl_bound * (Q * Q + Q + 1) == p.psl_order);
        }
    }
}

TEST_CASE("coclique predicate") {
    Plane P{Field(2)};
    Group G(P);
    auto stab = G.stabilizer_point(0);
    CHECK(is_coclique(stab, G));
    std::vector<int> mixed = {G.identity(), G.derangements()[0]};
    CHECK(!is_coclique(mixed, G));
    auto line_coset = G.coset_line(0, 3);
    CHECK(is_coclique(line_coset, G));
}

TEST_CASE("canonical cocliques at q = 2 and q = 3") {
    Plane P2{Field(2)};
    Group G2(P2);
    auto canon2 = canonical_cocliques(G2);
    CHECK(canon2.size() == 98);
    for (const auto& c : canon2) {
        CHECK(c.members.size() == 24);
        CHECK(is_coclique(c.members, G2));
    }
    auto sorted = canon2;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(sorted.size() == 98); // pairwise distinct

    Plane P3{Field(3)};
    Group G3(P3);
    auto canon3 = canonical_cocliques(G3);
    CHECK(canon3.size() == 338);
    for (const auto& c : canon3) CHECK(c.members.size() == 432);
    CHECK(is_coclique(canon3.front().members, G3));
    CHECK(is_coclique(canon3.back().members, G3));
}

TEST_CASE("tau eigenvector certification") {
    Plane P{Field(2)};
    Group G(P);
    CHECK(certify_tau_eigenvector(G.stabilizer_point(0), G, -8));
    CHECK(certify_tau_eigenvector(G.stabilizer_line(0), G, -8));
    CHECK(certify_tau_eigenvector(G.coset_point(0, 1), G, -8));
    CHECK(!certify_tau_eigenvector(G.stabilizer_point(0), G, -7));
    std::vector<int> wrong_size = {G.identity()};
    CHECK_THROWS_AS(certify_tau_eigenvector(wrong_size, G, -8), SizeMismatch);
}

TEST_CASE("coset distribution without a PSL split") {
    Plane P{Field(2)};
    Group G(P);
    auto stab = G.stabilizer_point(0);
    auto d = coset_distribution(stab, G);
    CHECK(d.counts[0] == 24);
    CHECK(d.counts[1] == 0);
    CHECK(d.counts[2] == 0);
    CHECK(d.xi == std::pair<long long, long long>{24, 0}); // nonzero: not equal thirds
}

TEST_CASE("q = 2 spectrum is {48, 6^64, 0^49, -8^54}") {
    Plane P{Field(2)};
    Group G(P);
    auto spec = spectrum_q2(G);
    REQUIRE(spec.size() == 168);
    int c48 = 0, c6 = 0, c0 = 0, cm8 = 0, other = 0;
    double sum = 0;
    for (double x : spec) {
        sum += x;
        if (std::abs(x - 48) < 1e-6) ++c48;
        else if (std::abs(x - 6) < 1e-6) ++c6;
        else if (std::abs(x) < 1e-6) ++c0;
        else if (std::abs(x + 8) < 1e-6) ++cm8;
        else ++other;
    }
    CHECK(c48 == 1);
    CHECK(c6 == 64);
    CHECK(c0 == 49);
    CHECK(cm8 == 54);
    CHECK(other == 0);
    CHECK(std::abs(sum) < 1e-6);
    CHECK(spec.back() == doctest::Approx(48).epsilon(1e-9));  // largest = |D|
    CHECK(spec.front() == doctest::Approx(-8).epsilon(1e-9)); // smallest = tau
}

TEST_CASE("maximum coclique search at q = 2") {
    Plane P{Field(2)};
    Group G(P);
    auto res = max_coclique_search(G, 300.0, /*enumerate_all=*/false);
    CHECK(res.status == SearchStatus::Exact);
    CHECK(res.best_size == 24);
    CHECK(res.witness.members.size() == 24);
    CHECK(is_coclique(res.witness.members, G));
}

TEST_CASE("search honors the budget at q = 3") {
    Plane P{Field(3)};
    Group G(P);
    auto res = max_coclique_search(G, 0.0, false);
    CHECK(res.status == SearchStatus::LowerBoundOnly);
    CHECK(res.best_size == 432); // canonical witness
    CHECK(res.witness.members.size() == 432);
    CHECK(is_coclique(res.witness.members, G));
}
