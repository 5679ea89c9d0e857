#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/frame.hpp"

using namespace wsuper;

namespace {

int find_name(const LieSuperalgebra<Rat>& g, const std::string& n) {
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == n) return i;
    REQUIRE(false);
    return -1;
}

// first even ad-nilpotent basis vector giving the requested g(-1) odd dim
Vec<Rat> pick_nilpotent(const LieSuperalgebra<Rat>& g, int want_r) {
    for (int i = 0; i < g.dim(); ++i) {
        if (g.parity[i] != Parity::Even) continue;
        Vec<Rat> e = g.basis_vec(i);
        bool zero = true;
        for (auto& c : e) zero = zero && c.is_zero();
        if (zero || !is_ad_nilpotent(g, e)) continue;
        try {
            auto fr = build_frame(g, e);
            if (fr.r == want_r) return e;
        } catch (...) {
        }
    }
    REQUIRE(false);
    return {};
}

bool triple_ok(const LieSuperalgebra<Rat>& g, const SL2Triple<Rat>& t) {
    Vec<Rat> he = g.bracket(t.h, t.e), hf = g.bracket(t.h, t.f), ef = g.bracket(t.e, t.f);
    for (int i = 0; i < g.dim(); ++i) {
        if (he[i] != Rat(2) * t.e[i]) return false;
        if (hf[i] != Rat(-2) * t.f[i]) return false;
        if (ef[i] != t.h[i]) return false;
    }
    return true;
}

} // namespace

TEST_CASE("degenerate triple for e = 0") {
    auto g = build_gl<Rat>(1, 1);
    auto t = complete_sl2(g, g.zero());
    CHECK(t.degenerate);
    auto fr = build_frame(g, t);
    CHECK(fr.degenerate);
    CHECK(fr.l == 2);
    CHECK(fr.q == 2);
    CHECK(fr.d0 == 0);
    CHECK(fr.d1 == 0);
    CHECK(fr.m_basis.empty());
    // whole algebra sits in degree zero
    CHECK(fr.grading.dim_at(0, Parity::Even) == 2);
    CHECK(fr.grading.dim_at(0, Parity::Odd) == 2);
}

TEST_CASE("gl(2|1), e = E12: standard sl2, grading and counters") {
    auto g = build_gl<Rat>(2, 1);
    Vec<Rat> e = g.basis_vec(find_name(g, "E1_2"));
    auto t = complete_sl2(g, e);
    CHECK_FALSE(t.degenerate);
    CHECK(triple_ok(g, t));
    auto fr = build_frame(g, t);
    // g(1), g(-1) purely odd
    CHECK(fr.grading.dim_at(1, Parity::Even) == 0);
    CHECK(fr.grading.dim_at(1, Parity::Odd) == 2);
    CHECK(fr.grading.dim_at(-1, Parity::Even) == 0);
    CHECK(fr.grading.dim_at(-1, Parity::Odd) == 2);
    CHECK(fr.s == 0);
    CHECK(fr.r == 2);
    CHECK(fr.t == 1);
    CHECK(fr.tprime == 1);
    CHECK(fr.l == 3);
    CHECK(fr.q == 2);
    CHECK(fr.d0 == 2);
    CHECK(fr.d1 == 2);
    CHECK(fr.m_count() == 4);
    CHECK(fr.n_count() == 2);
    CHECK(fr.m_basis.size() == 2); // (d0/2, d1/2) = (1,1)
    CHECK(fr.mprime_basis.size() == 2);
    // frame pairing on the hyperbolic pair
    CHECK(fr.pm1_pairing(fr.v_frame[0], fr.v_frame[1]) == Rat(1));
    CHECK(fr.pm1_pairing(fr.v_frame[0], fr.v_frame[0]) == Rat(0));
    CHECK(check_grading_properties(fr));
    CHECK(check_mperp_decomposition(fr));
    CHECK(check_p_decomposition(fr));
}

TEST_CASE("osp(1|2) regular nilpotent frame") {
    auto g = build_osp12n<Rat>(1);
    Vec<Rat> e = pick_nilpotent(g, 1);
    auto t = complete_sl2(g, e);
    CHECK(triple_ok(g, t));
    auto fr = build_frame(g, t);
    // dims ((1,0),(0,1),(1,0),(0,1),(1,0)) across weights -2..2
    CHECK(fr.grading.dim_at(-2, Parity::Even) == 1);
    CHECK(fr.grading.dim_at(-1, Parity::Odd) == 1);
    CHECK(fr.grading.dim_at(0, Parity::Even) == 1);
    CHECK(fr.grading.dim_at(1, Parity::Odd) == 1);
    CHECK(fr.grading.dim_at(2, Parity::Even) == 1);
    CHECK(fr.s == 0);
    CHECK(fr.r == 1);
    CHECK(fr.tprime == 1);
    CHECK(fr.l == 1);
    CHECK(fr.q == 1);
    CHECK(fr.d0 == 2);
    CHECK(fr.d1 == 1);
    // chi(f) = 1 after the frame normalization
    CHECK(fr.chi_of(t.f) == Rat(1));
    // m = span(f); m' adds the middle odd vector
    CHECK(fr.m_basis.size() == 1);
    CHECK(fr.mprime_basis.size() == 2);
    CHECK_FALSE(fr.c_mid.is_zero());
    CHECK(check_grading_properties(fr));
    CHECK(check_mperp_decomposition(fr));
    CHECK(check_p_decomposition(fr));
    // g^e has dim (1,1)
    auto ge = centralizer(g, e);
    CHECK(ge.size() == 2);
}

TEST_CASE("gl(3|1) with Jordan type (2,1|1): a nontrivial symplectic frame") {
    auto g = build_gl<Rat>(3, 1);
    // e = E1_2: Jordan blocks (2,1) on the even part, trivial odd block
    Vec<Rat> e = g.zero();
    for (int i = 0; i < g.dim(); ++i)
        if (g.names[i] == "E1_2") e[i] = Rat(1);
    auto fr = build_frame(g, e);
    CHECK(fr.s == 1); // g(-1)_0 is a hyperbolic plane
    CHECK(fr.r == 2);
    CHECK(fr.d0 == 4);
    CHECK(fr.d1 == 2);
    CHECK(fr.m_basis.size() == 3); // (d0/2, d1/2) = (2, 1)
    CHECK(check_frame_pairings(fr));
    CHECK(check_mperp_decomposition(fr));
    CHECK(check_p_decomposition(fr));
    CHECK(check_grading_properties(fr));
}

TEST_CASE("frame pairing patterns hold on all the worked examples") {
    auto g1 = build_osp12n<Rat>(1);
    auto fr1 = build_frame(g1, pick_nilpotent(g1, 1));
    CHECK(check_frame_pairings(fr1));
    auto g2 = build_gl<Rat>(2, 1);
    Vec<Rat> e2 = g2.zero();
    for (int i = 0; i < g2.dim(); ++i)
        if (g2.names[i] == "E1_2") e2[i] = Rat(1);
    CHECK(check_frame_pairings(build_frame(g2, e2)));
}

TEST_CASE("centralizer of zero is the whole algebra") {
    auto g = build_gl<Rat>(2, 1);
    auto c = centralizer(g, g.zero());
    CHECK((int)c.size() == g.dim());
}

TEST_CASE("restricted roots: trivial torus and the gl(2|1) example") {
    auto g = build_gl<Rat>(2, 1);
    Vec<Rat> e = g.basis_vec(find_name(g, "E1_2"));
    auto fr = build_frame(g, e);
    // t^e = 0
    auto rr0 = restricted_roots(g, fr, {});
    CHECK(rr0.weights_g.size() == 1);
    CHECK(rr0.mult_g[0] == g.dim());
    CHECK(rr0.weight_sets_equal);
    // t^e = span(E11+E22, E33)
    Vec<Rat> t1 = g.zero();
    t1[find_name(g, "E1_1")] = Rat(1);
    t1[find_name(g, "E2_2")] = Rat(1);
    Vec<Rat> t2 = g.basis_vec(find_name(g, "E3_3"));
    auto rr = restricted_roots(g, fr, {t1, t2});
    CHECK(rr.weight_sets_equal);
    CHECK(rr.weights_g.size() > 1);
}

TEST_CASE("jordan decomposition in gl(2|1)") {
    auto g = build_gl<Rat>(2, 1);
    int e12 = find_name(g, "E1_2");
    // nilpotent -> (0, x)
    auto jp = jordan_decompose(g, g.basis_vec(e12));
    for (auto& c : jp.semisimple) CHECK(c.is_zero());
    // semisimple diagonal -> (x, 0)
    Vec<Rat> dg = g.zero();
    dg[find_name(g, "E1_1")] = Rat(2);
    dg[find_name(g, "E3_3")] = Rat(-1);
    auto jp2 = jordan_decompose(g, dg);
    for (auto& c : jp2.nilpotent) CHECK(c.is_zero());
    // diag(1,1,0) + E12 -> s = diag(1,1,0), n = E12
    Vec<Rat> x = g.zero();
    x[find_name(g, "E1_1")] = Rat(1);
    x[find_name(g, "E2_2")] = Rat(1);
    x[e12] = Rat(1);
    auto jp3 = jordan_decompose(g, x);
    CHECK(jp3.nilpotent[e12] == Rat(1));
    CHECK(jp3.semisimple[find_name(g, "E1_1")] == Rat(1));
    CHECK(jp3.semisimple[find_name(g, "E2_2")] == Rat(1));
    CHECK(jp3.semisimple[e12] == Rat(0));
    CHECK(jp3.splits_in_degree_two);
}

TEST_CASE("levi split of gl(2|1)") {
    auto g = build_gl<Rat>(2, 1);
    // s = diag(0,0,1): centralizer gl(2|0) + gl(0|1)
    Vec<Rat> s = g.basis_vec(find_name(g, "E3_3"));
    auto ls = levi_split(g, s);
    CHECK(ls.all_vectors.size() == 5);
    REQUIRE(ls.summands.size() == 1);
    CHECK(ls.summands[0].dim() == 4); // gl(2) block
    CHECK(ls.toral_vectors.size() == 1);
    CHECK(check_super_jacobi(ls.summands[0]));
    // s = 0: one big summand plus the center of gl
    auto ls0 = levi_split(g, g.zero());
    REQUIRE(ls0.summands.size() == 1);
    CHECK(ls0.summands[0].dim() + (int)ls0.toral_vectors.size() == g.dim());
}
