#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ekr/exactla.hpp"
#include "ekr/util.hpp"

using namespace ekr;

namespace {

ExactMatrix random_matrix(int rows, int cols, int lo, int hi, SplitMix64& rng) {
    ExactMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<long>(lo + static_cast<long long>(rng.below(hi - lo + 1)));
    return m;
}

} // namespace

TEST_CASE("rank_exact basics") {
    CHECK(rank_exact(ExactMatrix::identity(5)) == 5);
    ExactMatrix ones(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) ones.at(i, j) = 1;
    CHECK(rank_exact(ones) == 1);
    ExactMatrix zero(3, 7);
    CHECK(rank_exact(zero) == 0);
}

TEST_CASE("rank_exact equals rank of the transpose") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        ExactMatrix m = random_matrix(6, 9, -4, 4, rng);
        CHECK(rank_exact(m) == rank_exact(m.transposed()));
    }
}

TEST_CASE("rank_mod_p") {
    I64Matrix id(5, 5);
    for (int i = 0; i < 5; ++i) id.at(i, i) = 1;
    CHECK(rank_mod_p(id, 1073741827u) == 5);
    I64Matrix diagp(3, 3);
    for (int i = 0; i < 3; ++i) diagp.at(i, i) = 1073741827LL;
    CHECK(rank_mod_p(diagp, 1073741827u) == 0); // reduction kills the entries
    SplitMix64 rng(42);
    auto primes = random_31bit_primes(3, 7);
    for (int trial = 0; trial < 10; ++trial) {
        ExactMatrix m = random_matrix(7, 7, -3, 3, rng);
        int re = rank_exact(m);
        for (auto p : primes) CHECK(rank_mod_p(m, p) <= re);
    }
}

TEST_CASE("kernel_basis basics") {
    CHECK(kernel_basis(ExactMatrix::identity(4)).empty());
    ExactMatrix row(1, 2);
    row.at(0, 0) = 1;
    row.at(0, 1) = 1;
    auto k = kernel_basis(row);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == 1);
    CHECK(k[0][1] == -1);
}

TEST_CASE("kernel vectors satisfy m x = 0 exactly and count cols - rank") {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        ExactMatrix m = random_matrix(5, 8, -5, 5, rng);
        int r = rank_exact(m);
        auto ker = kernel_basis(m);
        CHECK(static_cast<int>(ker.size()) == 8 - r);
        for (const auto& x : ker) {
            for (int i = 0; i < m.rows(); ++i) {
                Rat s = 0;
                for (int j = 0; j < m.cols(); ++j) s += Rat(m.at(i, j)) * x[j];
                CHECK(s == 0);
            }
        }
        // kernel vectors are independent
        IntEchelon ech(8);
        for (const auto& x : ker) CHECK(ech.insert(to_int_vector(x)));
    }
}

TEST_CASE("in_span") {
    ExactVector v(3);
    v[0] = 1;
    v[1] = 2;
    v[2] = 3;
    CHECK(in_span(v, {v}));
    ExactVector e1(3), e2(3);
    e1[0] = 1;
    e2[1] = 1;
    CHECK(!in_span(e1, {e2}));
    ExactVector sum(3);
    sum[0] = Rat(1, 2);
    sum[1] = Rat(1, 2);
    CHECK(in_span(sum, {e1, e2}));
    ExactVector wrong(2);
    CHECK_THROWS_AS(in_span(wrong, {e1}), DimensionMismatch);
}

TEST_CASE("IntEchelon detects dependence with cross-multiplied heads") {
    // (2,0,-1) = 2 (1,1,0) - (0,2,1): the reduction must scale the leading
    // block of the incoming vector as well
    IntEchelon ech(3);
    CHECK(ech.insert({Int(0), Int(2), Int(1)}));
    CHECK(ech.insert({Int(1), Int(1), Int(0)}));
    CHECK(!ech.insert({Int(2), Int(0), Int(-1)}));
    CHECK(ech.rank() == 2);
    CHECK(ech.contains({Int(2), Int(0), Int(-1)}));
    CHECK(!ech.contains({Int(0), Int(0), Int(1)}));
}

TEST_CASE("jacobi_spectrum") {
    std::vector<double> d = {1, 0, 0, 0, 2, 0, 0, 0, 3};
    auto eig = jacobi_spectrum(d, 3);
    REQUIRE(eig.size() == 3);
    CHECK(eig[0] == doctest::Approx(1).epsilon(1e-9));
    CHECK(eig[1] == doctest::Approx(2).epsilon(1e-9));
    CHECK(eig[2] == doctest::Approx(3).epsilon(1e-9));
    std::vector<double> ones = {1, 1, 1, 1};
    auto e2 = jacobi_spectrum(ones, 2);
    CHECK(e2[0] == doctest::Approx(0).epsilon(1e-9));
    CHECK(e2[1] == doctest::Approx(2).epsilon(1e-9));
    // eigenvalue sum equals the trace on random symmetric input
    SplitMix64 rng(44);
    int n = 20;
    std::vector<double> a(n * n);
    double trace = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= i; ++j) {
            double x = static_cast<double>(static_cast<long long>(rng.below(19)) - 9);
            a[i * n + j] = a[j * n + i] = x;
            if (i == j) trace += x;
        }
    auto spec = jacobi_spectrum(a, n);
    double sum = 0;
    for (double x : spec) sum += x;
    CHECK(std::abs(sum - trace) < 1e-7);
}

TEST_CASE("jacobi rejects oversized input") {
    std::vector<double> big(1001 * 1001, 0.0);
    CHECK_THROWS_AS(jacobi_spectrum(big, 1001), ResourceExceeded);
}

TEST_CASE("elimination rejects oversized matrices") {
    CHECK_THROWS_AS(rank_exact(ExactMatrix(2001, 2001)), ResourceExceeded);
}

TEST_CASE("random 31-bit primes") {
    auto p = random_31bit_primes(3, 99);
    CHECK(p.size() == 3);
    for (auto x : p) {
        CHECK(x > (1u << 30));
        CHECK(is_prime_u32(x));
    }
    CHECK(p == random_31bit_primes(3, 99)); // deterministic
    CHECK(p != random_31bit_primes(3, 100));
}
