#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/bounds.hpp"

using namespace wsuper;

TEST_CASE("direct sum bound") {
    // single even summand reduces to the plain KW bound
    auto b1 = direct_sum_bound({{2, 2}}, 5);
    CHECK(b1.l == 0);
    CHECK(b1.bound == mpz_class(10)); // 5 * 2
    // two odd summands: strictly above the floor bound by a factor 2
    auto b2 = direct_sum_bound({{2, 1}, {2, 1}}, 5);
    CHECK(b2.l == 2);
    CHECK(b2.bound == mpz_class(25 * 4)); // p^2 2^{(2+2)/2}
    mpz_class floor_bound = pow_z(5, 2) * pow_z(2, (b2.d1) / 2); // 2^{floor(2/2)}
    CHECK(b2.bound == floor_bound * 2);
    // three odd summands: 2-part exponent (d1'+3)/2
    auto b3 = direct_sum_bound({{2, 1}, {2, 1}, {2, 1}}, 3);
    CHECK(b3.l == 3);
    CHECK(b3.bound == pow_z(3, 3) * pow_z(2, 3));
    // d1' + l is always even for consistent input; an odd d0 is rejected
    CHECK_THROWS_AS(direct_sum_bound({{3, 2}}, 5), std::invalid_argument);
}

TEST_CASE("arbitrary character bound on the gl(2|1) mixed example") {
    auto g = build_gl<Rat>(2, 1);
    int e12 = -1, e33 = -1;
    for (int i = 0; i < g.dim(); ++i) {
        if (g.names[i] == "E1_2") e12 = i;
        if (g.names[i] == "E3_3") e33 = i;
    }
    // x = diag(0,0,1) + E12: s = E33-part, n = E12
    Vec<Rat> x = g.zero();
    x[e33] = Rat(1);
    x[e12] = Rat(1);
    auto an = analyze_character(g, x);
    CHECK(an.paths_agree);
    CHECK(an.d0_direct == 2);
    CHECK(an.d1_direct == 4);
    CHECK(an.u0 == 0);
    CHECK(an.u1 == 2);
    REQUIRE(an.summand_d.size() == 1);
    CHECK(an.summand_d[0] == std::make_pair(2, 0));
    auto bd = arbitrary_char_bound(an, 7);
    CHECK(bd.l == 0);
    CHECK(bd.at_most_one_odd);
    CHECK(bd.bound == pow_z(7, 1) * pow_z(2, 2)); // p^{d0/2} 2^{floor(d1/2)}
    CHECK(bd.compose_identity);
}

TEST_CASE("nilpotent character (s = 0) reduces to the plain KW bound") {
    auto g = build_gl<Rat>(2, 1);
    int e12 = -1;
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == "E1_2") e12 = i;
    auto an = analyze_character(g, g.basis_vec(e12));
    CHECK(an.paths_agree);
    CHECK(an.u0 == 0);
    CHECK(an.u1 == 0);
    auto fr = build_frame(g, g.basis_vec(e12));
    auto bd = arbitrary_char_bound(an, 5);
    CHECK(bd.bound == kw_factor(fr, 5));
}

TEST_CASE("semisimple character: all summand counters vanish") {
    auto g = build_gl<Rat>(2, 1);
    int e33 = -1;
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == "E3_3") e33 = i;
    auto an = analyze_character(g, g.basis_vec(e33));
    CHECK(an.paths_agree);
    for (auto& [a, b] : an.summand_d) {
        CHECK(a == 0);
        CHECK(b == 0);
    }
    auto bd = arbitrary_char_bound(an, 5);
    CHECK(bd.bound == pow_z(5, an.u0) * pow_z(2, an.u1));
}
