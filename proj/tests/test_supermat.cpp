#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wsuper/bounds.hpp"
#include "wsuper/supermat.hpp"

using namespace wsuper;

TEST_CASE("M and Q superalgebras: dimensions, associativity, classification") {
    auto m11 = build_M<Rat>(1, 1);
    CHECK(m11.dim_even() == 2);
    CHECK(m11.dim_odd() == 2);
    CHECK(check_associative(m11));
    auto k = classify_simple(m11);
    CHECK(k.kind == SimpleKind::TypeM);
    CHECK(k.m == 1);
    CHECK(k.n == 1);

    auto q1 = build_Q<Rat>(1);
    CHECK(q1.dim_even() == 1);
    CHECK(q1.dim_odd() == 1);
    CHECK(check_associative(q1));
    auto kq = classify_simple(q1);
    CHECK(kq.kind == SimpleKind::TypeQ);
    CHECK(kq.n == 1);

    auto q2 = build_Q<Rat>(2);
    CHECK(q2.dim_even() == 4);
    CHECK(q2.dim_odd() == 4);
    CHECK(classify_simple(q2).kind == SimpleKind::TypeQ);
    CHECK(classify_simple(q2).n == 2);
}

TEST_CASE("graded tensor: unit, Koszul signs, associativity on samples") {
    auto m10 = build_M<Rat>(1, 0);
    auto q1 = build_Q<Rat>(1);
    // M_{1,0} (x) A = A
    auto t = graded_tensor(m10, q1);
    CHECK(t.dim() == q1.dim());
    CHECK(classify_simple(t).kind == SimpleKind::TypeQ);
    // sign: (odd (x) 1)(1 (x) odd) = -(1 (x) odd)(odd (x) 1)
    auto m11 = build_M<Rat>(1, 1);
    auto tt = graded_tensor(m11, m11);
    CHECK(check_associative(tt));
    int odd_a = -1, even_unit = -1;
    for (int i = 0; i < m11.dim(); ++i) {
        if (m11.parity[i] == Parity::Odd && odd_a < 0) odd_a = i;
    }
    // x = odd_a (x) unit, y = unit (x) odd_a
    Vec<Rat> x = tt.zero(), y = tt.zero();
    for (int j = 0; j < m11.dim(); ++j) {
        if (!m11.unit[j].is_zero()) {
            x[odd_a * m11.dim() + j] += m11.unit[j];
            y[j * m11.dim() + odd_a] += m11.unit[j];
        }
    }
    Vec<Rat> xy = tt.mul(x, y), yx = tt.mul(y, x);
    for (int i = 0; i < tt.dim(); ++i) CHECK(xy[i] == -yx[i]);
    (void)even_unit;
}

TEST_CASE("tensor identities MxM, MxQ, QxQ for all block sizes <= 3") {
    // M_{m,n} (x) M_{k,l} = M_{mk+nl, ml+nk}
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n) {
            if (m + n == 0 || m + n > 3) continue;
            for (int k = 0; k <= 2; ++k)
                for (int l = 0; l <= 2; ++l) {
                    if (k + l == 0 || k + l > 3) continue;
                    auto A = build_M<Rat>(m, n);
                    auto B = build_M<Rat>(k, l);
                    auto t = graded_tensor(A, B);
                    auto cls = classify_simple(t, tensor_generating_elements(A, B));
                    CHECK(cls.kind == SimpleKind::TypeM);
                    int em = m * k + n * l, en = m * l + n * k;
                    CHECK(cls.m == std::max(em, en));
                    CHECK(cls.n == std::min(em, en));
                }
        }
    // M_{m,n} (x) Q_k = Q_{(m+n)k}
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n) {
            if (m + n == 0 || m + n > 3) continue;
            for (int k = 1; k <= 2; ++k) {
                auto A = build_M<Rat>(m, n);
                auto B = build_Q<Rat>(k);
                auto t = graded_tensor(A, B);
                auto cls = classify_simple(t, tensor_generating_elements(A, B));
                CHECK(cls.kind == SimpleKind::TypeQ);
                CHECK(cls.n == (m + n) * k);
            }
        }
    // Q_m (x) Q_n = M_{mn,mn}
    for (int m = 1; m <= 3; ++m)
        for (int n = 1; n <= 3; ++n) {
            if (m * n > 6) continue;
            auto A = build_Q<Rat>(m);
            auto B = build_Q<Rat>(n);
            auto t = graded_tensor(A, B);
            auto cls = classify_simple(t, tensor_generating_elements(A, B));
            CHECK(cls.kind == SimpleKind::TypeM);
            CHECK(cls.m == m * n);
            CHECK(cls.n == m * n);
        }
}

TEST_CASE("Q1 (x) Q1 (x) Q1 = Q2") {
    auto q1 = build_Q<Rat>(1);
    auto q11 = graded_tensor(q1, q1);
    auto t = graded_tensor(q11, q1);
    auto cls = classify_simple(t, tensor_generating_elements(q11, q1));
    CHECK(cls.kind == SimpleKind::TypeQ);
    CHECK(cls.n == 2);
}

TEST_CASE("natural modules respect the algebra tables") {
    auto m11 = build_M<Rat>(1, 1);
    auto v = natural_module_M<Rat>(1, 1);
    CHECK(check_module(m11, v));
    auto q2 = build_Q<Rat>(2);
    auto w = natural_module_Q<Rat>(2);
    CHECK(check_module(q2, w));
    // supercommutant: M natural is type M, Q natural is type Q
    CHECK(supercommutant_dims(m11.parity, v) == std::make_pair(1, 0));
    CHECK(supercommutant_dims(q2.parity, w) == std::make_pair(1, 1));
}

TEST_CASE("parity change: dimension preserved, grading flipped, involution") {
    auto q2 = build_Q<Rat>(2);
    auto w = natural_module_Q<Rat>(2);
    auto pw = parity_change(w, q2.parity);
    CHECK(pw.dim0 == w.dim1);
    CHECK(pw.dim1 == w.dim0);
    CHECK(pw.dim() == w.dim());
    CHECK(check_module(q2, pw));
    auto ppw = parity_change(pw, q2.parity);
    CHECK(ppw.dim0 == w.dim0);
    for (size_t a = 0; a < w.actions.size(); ++a) CHECK(ppw.actions[a] == w.actions[a]);
    auto m21 = build_M<Rat>(2, 1);
    auto v = natural_module_M<Rat>(2, 1);
    auto pv = parity_change(v, m21.parity);
    CHECK(check_module(m21, pv));
    CHECK(supercommutant_dims(m21.parity, pv) == std::make_pair(1, 0));
}

TEST_CASE("Schur type table for typed irreducibles of dim <= 4") {
    // explicit decompositions need sqrt(-1); run over F_13 where it exists
    const long P = 13;
    struct Entry {
        AssocSuper<Fp> alg;
        SuperModule<Fp> mod;
    };
    std::vector<Entry> pool;
    auto add = [&](AssocSuper<Rat> a, SuperModule<Rat> m) {
        pool.push_back({reduce_assoc(a, P), reduce_module(m, P)});
    };
    add(build_M<Rat>(1, 0), natural_module_M<Rat>(1, 0));
    add(build_M<Rat>(1, 1), natural_module_M<Rat>(1, 1));
    add(build_M<Rat>(2, 1), natural_module_M<Rat>(2, 1));
    add(build_M<Rat>(2, 2), natural_module_M<Rat>(2, 2));
    add(build_Q<Rat>(1), natural_module_Q<Rat>(1));
    add(build_Q<Rat>(2), natural_module_Q<Rat>(2));
    for (auto& a : pool)
        for (auto& b : pool) {
            if (a.mod.dim() * b.mod.dim() > 16) continue;
            auto verdict = outer_tensor_verdict(a.alg, a.mod, b.alg, b.mod);
            CHECK(verdict.commutant_matches);
            if (a.mod.type == SimpleKind::TypeQ && b.mod.type == SimpleKind::TypeQ) {
                CHECK(verdict.splits_in_two);
                CHECK(verdict.constituents_verified);
                REQUIRE(verdict.constituent_dims.size() == 2);
                CHECK(verdict.constituent_dims[0] == verdict.constituent_dims[1]);
                CHECK(verdict.constituent_dims[0] == a.mod.dim() * b.mod.dim() / 2);
            } else {
                CHECK(verdict.constituents_verified);
            }
        }
}
