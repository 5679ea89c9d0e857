#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/algebra.hpp"
#include "wsuper/rational.hpp"

using namespace wsuper;

namespace {
int find_name(const LieSuperalgebra<Rat>& g, const std::string& n) {
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == n) return i;
    REQUIRE(false);
    return -1;
}
} // namespace

TEST_CASE("gl(1|1): dimensions, supertrace values, odd bracket") {
    auto g = build_gl<Rat>(1, 1);
    CHECK(g.dim_even() == 2);
    CHECK(g.dim_odd() == 2);
    int e11 = find_name(g, "E1_1"), e22 = find_name(g, "E2_2");
    int e12 = find_name(g, "E1_2"), e21 = find_name(g, "E2_1");
    CHECK(g.gram(e11, e11) == Rat(1));
    CHECK(g.gram(e22, e22) == Rat(-1));
    // both odd: the bracket is the anticommutator
    Vec<Rat> br = g.bracket(g.basis_vec(e12), g.basis_vec(e21));
    CHECK(br[e11] == Rat(1));
    CHECK(br[e22] == Rat(1));
    CHECK(validate(g));
}

TEST_CASE("bracket of (E12+E21) with itself in gl(1|1), against the matrix oracle") {
    auto g = build_gl<Rat>(1, 1);
    int e11 = find_name(g, "E1_1"), e22 = find_name(g, "E2_2");
    int e12 = find_name(g, "E1_2"), e21 = find_name(g, "E2_1");
    Vec<Rat> x = g.zero();
    x[e12] = Rat(1);
    x[e21] = Rat(1);
    Vec<Rat> br = g.bracket(x, x);
    CHECK(br[e11] == Rat(2));
    CHECK(br[e22] == Rat(2));
    // oracle: anticommutator in the matrix realization
    Matrix<Rat> xm = g.realize(x);
    Matrix<Rat> anti = xm * xm + xm * xm;
    CHECK(g.realize(br) == anti * Rat(1, 2) * Rat(2)); // {x,x} = 2 x^2
}

TEST_CASE("even bracket with itself vanishes") {
    auto g = build_gl<Rat>(2, 1);
    Vec<Rat> x = g.zero();
    x[find_name(g, "E1_2")] = Rat(3);
    x[find_name(g, "E1_1")] = Rat(-2);
    Vec<Rat> br = g.bracket(x, x);
    for (auto& c : br) CHECK(c.is_zero());
}

TEST_CASE("gl(2|1) passes the exhaustive validators, supertrace form is good") {
    auto g = build_gl<Rat>(2, 1);
    CHECK(g.dim() == 9);
    CHECK(validate(g));
    auto rep = verify_form(g);
    CHECK(rep.all());
}

TEST_CASE("sl(2|1) is supertraceless with a nondegenerate form") {
    auto g = build_gl<Rat>(2, 1, true);
    CHECK(g.dim() == 8);
    for (int i = 0; i < g.dim(); ++i)
        CHECK(supertrace<Rat>(g.matrices[i], g.block_m).is_zero());
    CHECK(validate(g));
    CHECK(verify_form(g).all());
}

TEST_CASE("osp(1|2): dimension (3|2), parity structure, nondegenerate form") {
    auto g = build_osp12n<Rat>(1);
    CHECK(g.dim_even() == 3);
    CHECK(g.dim_odd() == 2);
    CHECK(validate(g));
    auto rep = verify_form(g);
    CHECK(rep.all());
    // bracket of odd root vectors lands in the even part (parity compat)
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            if (g.parity[i] != Parity::Odd || g.parity[j] != Parity::Odd) continue;
            Vec<Rat> br = g.bracket(g.basis_vec(i), g.basis_vec(j));
            for (int k = 0; k < g.dim(); ++k)
                if (!br[k].is_zero()) CHECK(g.parity[k] == Parity::Even);
        }
}

TEST_CASE("osp(1|4) has dimension (10|4)") {
    auto g = build_osp12n<Rat>(2);
    CHECK(g.dim_even() == 10); // 2n^2 + n
    CHECK(g.dim_odd() == 4);
    CHECK(check_super_jacobi(g));
}

TEST_CASE("D(2,1;a) builder: a=2 matches the generator value table") {
    auto g = build_d21a<Rat>(Rat(2));
    CHECK(g.dim() == 17);
    CHECK(g.dim_even() == 9);
    CHECK(g.dim_odd() == 8);
    int h1 = find_name(g, "H1"), h2idx = -1, h3 = find_name(g, "H3");
    // H2 basis vector corresponds to (2h1 - h2 - a h3)/(1+a); recover h2
    h2idx = find_name(g, "H2");
    Vec<Rat> h2 = g.zero();
    h2[h1] = Rat(2);
    h2[h2idx] = -Rat(3); // -(1+a), a=2
    h2[h3] = Rat(-2);    // -a
    Vec<Rat> vh1 = g.basis_vec(h1), vh3 = g.basis_vec(h3);
    CHECK(g.form(vh1, h2) == Rat(-1));
    CHECK(g.form(h2, h2) == Rat(-2));
    CHECK(g.form(vh3, vh3) == Rat(-1)); // -2/a with a=2
    CHECK(g.form(vh1, vh3) == Rat(-1));
    int e1 = find_name(g, "e1"), f1 = find_name(g, "f1");
    int e2 = find_name(g, "e2"), f2 = find_name(g, "f2");
    int e3 = find_name(g, "e3"), f3 = find_name(g, "f3");
    CHECK(g.gram(e1, f1) == Rat(1));
    CHECK(g.gram(e2, f2) == Rat(-1));
    CHECK(g.gram(e3, f3) == Rat(-1, 2));
    // Cartan matrix row 1 = (0, 1, a): [h1, e_j] = a_1j e_j
    Vec<Rat> b1 = g.bracket(vh1, g.basis_vec(e1));
    Vec<Rat> b2 = g.bracket(vh1, g.basis_vec(e2));
    Vec<Rat> b3 = g.bracket(vh1, g.basis_vec(e3));
    CHECK(b1[e1] == Rat(0));
    CHECK(b2[e2] == Rat(1));
    CHECK(b3[e3] == Rat(2));
    // [e_i, f_j] = delta_ij h_i
    Vec<Rat> ef = g.bracket(g.basis_vec(e1), g.basis_vec(f1));
    CHECK(ef[h1] == Rat(1));
    Vec<Rat> cross = g.bracket(g.basis_vec(e1), g.basis_vec(f2));
    for (auto& c : cross) CHECK(c.is_zero());
}

TEST_CASE("D(2,1;a): exhaustive structure validation for a=2 and a=3") {
    for (long av : {2L, 3L}) {
        auto g = build_d21a<Rat>(Rat(av));
        CHECK(validate(g));
        CHECK(verify_form(g).all());
    }
    CHECK_THROWS(build_d21a<Rat>(Rat(0)));
    CHECK_THROWS(build_d21a<Rat>(Rat(-1)));
}

TEST_CASE("direct sums: singleton, additivity, cross brackets vanish") {
    auto a = build_gl<Rat>(1, 1);
    auto b = build_osp12n<Rat>(1);
    auto s1 = direct_sum<Rat>({b});
    CHECK(s1.dim_even() == b.dim_even());
    CHECK(s1.dim_odd() == b.dim_odd());
    CHECK(check_super_jacobi(s1));
    auto s = direct_sum<Rat>({a, b});
    CHECK(s.dim_even() == 5);
    CHECK(s.dim_odd() == 4);
    CHECK(validate(s));
    CHECK(verify_form(s).all());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) {
            Vec<Rat> br = s.bracket(s.basis_vec(i), s.basis_vec(a.dim() + j));
            for (auto& c : br) CHECK(c.is_zero());
            CHECK(s.gram(i, a.dim() + j).is_zero());
        }
    CHECK(s.summand_of[0] == 0);
    CHECK(s.summand_of[a.dim()] == 1);
}

TEST_CASE("a corrupted Gram entry breaks invariance but the report still runs") {
    auto g = build_gl<Rat>(2, 1);
    g.gram(0, 0) += Rat(1);
    auto rep = verify_form(g);
    CHECK_FALSE(rep.invariant);
    CHECK(rep.nondegenerate); // perturbation keeps the determinant nonzero here
}
