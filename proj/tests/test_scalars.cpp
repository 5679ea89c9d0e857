#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/fields.hpp"
#include "wsuper/rational.hpp"

using namespace wsuper;

TEST_CASE("rational arithmetic is exact and canonical") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK((a - b).str() == "1/6");
    CHECK((a * b).str() == "1/18");
    CHECK(a / b == Rat(2));
    CHECK(Rat::parse("-4/6").str() == "-2/3");
    CHECK(Rat::parse("7").is_integer());
    CHECK_THROWS(Rat(1, 0));
    CHECK_THROWS(a / Rat(0));
}

TEST_CASE("rational exact square root") {
    Rat r;
    CHECK(Rat(9, 4).sqrt_exact(r));
    CHECK(r == Rat(3, 2));
    CHECK_FALSE(Rat(2).sqrt_exact(r));
    CHECK_FALSE(Rat(-1).sqrt_exact(r));
}

TEST_CASE("prime field arithmetic") {
    Fp a(3, 5), b(4, 5);
    CHECK((a + b).value() == 2);
    CHECK((a * b).value() == 2);
    CHECK((a / b).str() == "2"); // 3 * 4^{-1} = 3*4 = 12 = 2 mod 5
    CHECK(a - a == Fp(0));
    CHECK(Fp(7, 5) == Fp(2, 5));
    // unbound literals adopt the modulus
    CHECK(a * Fp(2) == Fp(1, 5));
    CHECK_THROWS(a / Fp(0, 5));
    CHECK(Fp::from_rat(Rat(1, 2), 5) == Fp(3, 5));
    CHECK_THROWS(Fp::from_rat(Rat(1, 5), 5));
}

TEST_CASE("quadratic extension field") {
    QuadExt s = QuadExt::sqrt_of(Rat(2));
    CHECK(s * s == QuadExt(Rat(2)));
    QuadExt x = QuadExt(Rat(1)) + s;      // 1 + sqrt2
    QuadExt y = x.inv();                  // sqrt2 - 1
    CHECK(x * y == QuadExt(Rat(1)));
    CHECK((x * (QuadExt(Rat(1)) - s)) == QuadExt(Rat(-1)));
    CHECK_THROWS(QuadExt(Rat(0)).inv());
}
