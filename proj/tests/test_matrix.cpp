#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/fields.hpp"
#include "wsuper/matrix.hpp"
#include "wsuper/rational.hpp"

using namespace wsuper;

TEST_CASE("rref, rank and nullspace over Q") {
    Matrix<Rat> a(3, 4);
    // rows: (1 2 3 4), (2 4 6 8), (1 0 1 0)
    int vals[3][4] = {{1, 2, 3, 4}, {2, 4, 6, 8}, {1, 0, 1, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) a(i, j) = Rat(vals[i][j]);
    CHECK(a.rank() == 2);
    auto ns = a.nullspace();
    CHECK(ns.size() == 2);
    for (auto& v : ns) {
        auto img = a.apply(v);
        for (auto& x : img) CHECK(x.is_zero());
    }
}

TEST_CASE("solve and inverse") {
    Matrix<Rat> a(2, 2);
    a(0, 0) = Rat(2); a(0, 1) = Rat(1);
    a(1, 0) = Rat(1); a(1, 1) = Rat(1);
    auto x = a.solve({Rat(3), Rat(2)});
    REQUIRE(x.has_value());
    CHECK((*x)[0] == Rat(1));
    CHECK((*x)[1] == Rat(1));
    auto inv = a.inverse();
    REQUIRE(inv.has_value());
    CHECK((*inv * a) == Matrix<Rat>::identity(2));
    CHECK(a.det() == Rat(1));
}

TEST_CASE("characteristic polynomial") {
    Matrix<Rat> a(2, 2);
    a(0, 0) = Rat(2); a(0, 1) = Rat(1);
    a(1, 0) = Rat(1); a(1, 1) = Rat(2);
    auto c = a.char_poly(); // x^2 - 4x + 3
    CHECK(c[2] == Rat(1));
    CHECK(c[1] == Rat(-4));
    CHECK(c[0] == Rat(3));
}

TEST_CASE("linear algebra over F_p") {
    Matrix<Fp> a(2, 2);
    a(0, 0) = Fp(1, 5); a(0, 1) = Fp(2, 5);
    a(1, 0) = Fp(3, 5); a(1, 1) = Fp(4, 5);
    CHECK(a.det() == Fp(3, 5)); // 4 - 6 = -2 = 3 mod 5
    CHECK(a.rank() == 2);
    auto x = a.solve({Fp(1, 5), Fp(0, 5)});
    REQUIRE(x.has_value());
    CHECK(a.apply(*x) == Vec<Fp>{Fp(1, 5), Fp(0, 5)});
}

TEST_CASE("span utilities") {
    std::vector<Vec<Rat>> rows = {{Rat(1), Rat(0)}, {Rat(1), Rat(1)}};
    CHECK(span_rank(rows, 2) == 2);
    CHECK(in_span(rows, {Rat(5), Rat(7)}));
    std::vector<Vec<Rat>> partial = {{Rat(1), Rat(1)}};
    CHECK_FALSE(in_span(partial, {Rat(1), Rat(0)}));
}
