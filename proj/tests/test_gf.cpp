#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ekr/gf.hpp"

using namespace ekr;

namespace {
const int kPrimePowers[] = {2, 3, 4, 5, 7, 8, 9};
}

TEST_CASE("field construction basics") {
    Field f2(2);
    CHECK(f2.p() == 2);
    CHECK(f2.k() == 1);
    Field f9(9);
    CHECK(f9.p() == 3);
    CHECK(f9.k() == 2);
    CHECK_THROWS_AS(Field(6), NotPrimePower);
    CHECK_THROWS_AS(Field(12), NotPrimePower);
    CHECK_THROWS_AS(Field(1), NotPrimePower);
    CHECK_THROWS_AS(Field(32), TooLarge); // default bound 16
    CHECK_NOTHROW(Field(32, 64));
}

TEST_CASE("GF(4) modulus is the unique irreducible quadratic over GF(2)") {
    Field f4(4);
    auto irr = enumerate_irreducible(2, 2);
    REQUIRE(irr.size() == 1);
    CHECK(irr[0].coeffs == std::vector<int>{1, 1, 1}); // T^2 + T + 1
    CHECK(f4.modulus() == irr[0].coeffs);
}

TEST_CASE("field axioms hold exhaustively for q <= 9") {
    for (int q : kPrimePowers) {
        CAPTURE(q);
        Field F(q);
        for (int a = 0; a < q; ++a) {
            CHECK(F.add(a, 0) == a);
            CHECK(F.mul(a, 1) == a);
            CHECK(F.add(a, F.neg(a)) == 0);
            if (a != 0) CHECK(F.mul(a, F.inv(a)) == 1);
            for (int b = 0; b < q; ++b) {
                CHECK(F.add(a, b) == F.add(b, a));
                CHECK(F.mul(a, b) == F.mul(b, a));
                // Frobenius
                CHECK(F.pow(F.add(a, b), F.p()) == F.add(F.pow(a, F.p()), F.pow(b, F.p())));
                for (int c = 0; c < q; ++c) {
                    CHECK(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
                    CHECK(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
                    CHECK(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
                }
            }
        }
    }
}

TEST_CASE("field construction is deterministic") {
    for (int q : {4, 8, 9, 16}) {
        Field a(q), b(q);
        CHECK(a == b);
    }
}

TEST_CASE("irreducible counts match enumeration for q <= 9, d <= 3") {
    for (int q : kPrimePowers)
        for (int d : {1, 2, 3}) {
            CAPTURE(q);
            CAPTURE(d);
            CHECK(count_irreducible(q, d) ==
                  static_cast<long long>(enumerate_irreducible(q, d).size()));
        }
}

TEST_CASE("count_irreducible closed forms") {
    CHECK(count_irreducible(2, 2) == 1);
    CHECK(count_irreducible(2, 3) == 2);
    CHECK(count_irreducible(3, 3) == 8);
    CHECK(count_irreducible(5, 1) == 5);
    CHECK_THROWS_AS(count_irreducible(2, 4), UnsupportedDegree);
    CHECK_THROWS_AS(count_irreducible(2, 0), UnsupportedDegree);
    CHECK_THROWS_AS(count_irreducible(6, 2), NotPrimePower);
}

TEST_CASE("enumerate_irreducible known lists") {
    auto lin = enumerate_irreducible(2, 1);
    REQUIRE(lin.size() == 2);
    CHECK(lin[0].coeffs == std::vector<int>{0, 1}); // T
    CHECK(lin[1].coeffs == std::vector<int>{1, 1}); // T + 1
    auto cub = enumerate_irreducible(2, 3);
    REQUIRE(cub.size() == 2);
    CHECK(cub[0].coeffs == std::vector<int>{1, 1, 0, 1}); // T^3 + T + 1
    CHECK(cub[1].coeffs == std::vector<int>{1, 0, 1, 1}); // T^3 + T^2 + 1
    CHECK(cub[0].str() == "T^3 + T + 1");
    // degree 4 goes through trial division: (2^4 - 2^2)/4 = 3 of them
    CHECK(enumerate_irreducible(2, 4).size() == 3);
    // none of the degree-4 irreducibles is the square of the quadratic
    for (const auto& f : enumerate_irreducible(2, 4))
        CHECK(f.coeffs != std::vector<int>{1, 0, 1, 0, 1}); // (T^2+T+1)^2
}

TEST_CASE("enumerate_irreducible bounds") {
    CHECK_THROWS_AS(enumerate_irreducible(9, 8), TooLarge); // 9^8 > 10^6
    CHECK_THROWS_AS(enumerate_irreducible(2, 0), UnsupportedDegree);
}

TEST_CASE("polynomial helpers") {
    Field F(3);
    Poly f{{2, 0, 1}}; // T^2 + 2
    CHECK(poly_eval(f, 1, F) == 0); // 1 + 2 = 0 mod 3
    CHECK(poly_eval(f, 0, F) == 2);
    CHECK(!poly_irreducible(f, F));
    Poly g{{1, 0, 1}}; // T^2 + 1: -1 is not a square mod 3
    CHECK(poly_irreducible(g, F));
    Poly prod = poly_mul(g, g, F);
    CHECK(prod.degree() == 4);
    CHECK(poly_rem(prod, g, F).is_zero());
}
