#pragma once

#include "wsuper/walgebra.hpp"

#include <gmpxx.h>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace wsuper {

// ---------------------------------------------------------------------------
// reduction of algebras and frames from Q to F_p

inline bool rat_reducible(const Rat& r, long p) {
    return !mpz_divisible_ui_p(r.den().get_mpz_t(), static_cast<unsigned long>(p));
}

inline LieSuperalgebra<Fp> reduce_algebra(const LieSuperalgebra<Rat>& g, long p) {
    LieSuperalgebra<Fp> out;
    out.names = g.names;
    out.parity = g.parity;
    out.type_tag = g.type_tag;
    out.summand_of = g.summand_of;
    int d = g.dim();
    out.table.assign(d, std::vector<SparseRow<Fp>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (auto& [k, c] : g.table[i][j]) out.table[i][j].emplace_back(k, Fp::from_rat(c, p));
    out.gram = Matrix<Fp>(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out.gram(i, j) = Fp::from_rat(g.gram(i, j), p);
    if (g.has_matrices) {
        out.has_matrices = true;
        out.block_m = g.block_m;
        out.block_n = g.block_n;
        for (auto& m : g.matrices) {
            Matrix<Fp> mm(m.rows(), m.cols());
            for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) mm(i, j) = Fp::from_rat(m(i, j), p);
            out.matrices.push_back(std::move(mm));
        }
    }
    return out;
}

inline Vec<Fp> reduce_vec(const Vec<Rat>& v, long p) {
    Vec<Fp> out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Fp::from_rat(v[i], p);
    return out;
}

inline NilpotentFrame<Fp> reduce_frame(const NilpotentFrame<Rat>& fr, long p) {
    NilpotentFrame<Fp> out;
    out.g = reduce_algebra(fr.g, p);
    out.triple.e = reduce_vec(fr.triple.e, p);
    out.triple.h = reduce_vec(fr.triple.h, p);
    out.triple.f = reduce_vec(fr.triple.f, p);
    out.triple.degenerate = fr.triple.degenerate;
    out.degenerate = fr.degenerate;
    for (auto& [w, vs] : fr.grading.even)
        for (auto& v : vs) out.grading.even[w].push_back(reduce_vec(v, p));
    for (auto& [w, vs] : fr.grading.odd)
        for (auto& v : vs) out.grading.odd[w].push_back(reduce_vec(v, p));
    out.form_scale = Fp::from_rat(fr.form_scale, p);
    out.chi = reduce_vec(fr.chi, p);
    for (auto& v : fr.u_frame) out.u_frame.push_back(reduce_vec(v, p));
    for (auto& v : fr.v_frame) out.v_frame.push_back(reduce_vec(v, p));
    out.c_mid = Fp::from_rat(fr.c_mid, p);
    for (auto& v : fr.x_letters) out.x_letters.push_back(reduce_vec(v, p));
    out.x_wt = fr.x_wt;
    for (auto& v : fr.y_letters) out.y_letters.push_back(reduce_vec(v, p));
    out.y_wt = fr.y_wt;
    for (auto& v : fr.m_basis) out.m_basis.push_back(reduce_vec(v, p));
    out.m_parity = fr.m_parity;
    out.m_wt = fr.m_wt;
    for (auto& v : fr.mprime_basis) out.mprime_basis.push_back(reduce_vec(v, p));
    out.s = fr.s;
    out.r = fr.r;
    out.t = fr.t;
    out.tprime = fr.tprime;
    out.l = fr.l;
    out.q = fr.q;
    out.d0 = fr.d0;
    out.d1 = fr.d1;
    return out;
}

// ---------------------------------------------------------------------------
// restricted structure

struct AdmissibilityReport {
    long p = 0;
    bool odd_prime = false;
    bool avoids_bad_primes = false;
    bool scalars_reducible = false;   // p does not divide any denominator
    bool gram_invertible = false;     // Gram determinant nonzero mod p
    std::vector<std::string> notes;
    bool ok() const {
        return odd_prime && avoids_bad_primes && scalars_reducible && gram_invertible;
    }
};

struct ModularAlgebra {
    LieSuperalgebra<Fp> g;
    long p = 0;
    AdmissibilityReport report;
    // x_i^{[p]} per even basis element (empty rows for odd indices)
    std::vector<Vec<Fp>> p_map;
};

inline bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// p-th power in the restricted structure: matrix realization when present,
// otherwise a solve of ad(y) = (ad x)^p in the even part
inline std::optional<Vec<Fp>> p_power_adjoint(const LieSuperalgebra<Fp>& g, const Vec<Fp>& x,
                                              long p) {
    Matrix<Fp> adx = g.ad(x), pw = Matrix<Fp>::identity(g.dim());
    for (long i = 0; i < p; ++i) pw = pw * adx;
    std::vector<int> evens;
    for (int i = 0; i < g.dim(); ++i)
        if (g.parity[i] == Parity::Even) evens.push_back(i);
    Matrix<Fp> sys(g.dim() * g.dim(), static_cast<int>(evens.size()));
    Vec<Fp> rhs(g.dim() * g.dim(), Fp(0, p));
    for (size_t c = 0; c < evens.size(); ++c) {
        Matrix<Fp> ady = g.ad(g.basis_vec(evens[c]));
        for (int i = 0; i < g.dim(); ++i)
            for (int j = 0; j < g.dim(); ++j)
                sys(i * g.dim() + j, static_cast<int>(c)) = ady(i, j);
    }
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) rhs[i * g.dim() + j] = pw(i, j);
    auto sol = sys.solve(rhs);
    if (!sol) return std::nullopt;
    Vec<Fp> y(g.dim(), Fp(0, p));
    for (size_t c = 0; c < evens.size(); ++c) y[evens[c]] = (*sol)[c];
    return y;
}

inline std::optional<Vec<Fp>> p_power_matrix(const LieSuperalgebra<Fp>& g, const Vec<Fp>& x,
                                             long p) {
    if (!g.has_matrices) return std::nullopt;
    Matrix<Fp> X = g.realize(x), P = Matrix<Fp>::identity(g.block_m + g.block_n);
    for (long i = 0; i < p; ++i) P = P * X;
    int N = g.block_m + g.block_n, d = g.dim();
    Matrix<Fp> span(N * N, d);
    for (int b = 0; b < d; ++b)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) span(i * N + j, b) = g.matrices[b](i, j);
    Vec<Fp> flat(N * N, Fp(0, p));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) flat[i * N + j] = P(i, j);
    return span.solve(flat);
}

// p-th power choosing the authoritative path (matrix first, ad as fallback)
inline Vec<Fp> p_power(const LieSuperalgebra<Fp>& g, const Vec<Fp>& x, long p) {
    if (auto m = p_power_matrix(g, x, p)) return *m;
    if (auto a = p_power_adjoint(g, x, p)) return *a;
    throw std::runtime_error("p_power: no restricted p-th power found");
}

inline std::vector<long> bad_primes_of(const std::string& tag) {
    if (tag.rfind("osp", 0) == 0) return {2};
    if (tag.rfind("D(2,1", 0) == 0) return {2, 3};
    return {}; // type A and plumbing types
}

inline ModularAlgebra reduce_mod_p(const LieSuperalgebra<Rat>& g, long p) {
    ModularAlgebra out;
    out.p = p;
    auto& rep = out.report;
    rep.p = p;
    rep.odd_prime = (p > 2) && is_prime_long(p);
    rep.avoids_bad_primes = true;
    for (long b : bad_primes_of(g.type_tag))
        if (b == p) rep.avoids_bad_primes = false;
    rep.scalars_reducible = true;
    for (int i = 0; i < g.dim() && rep.scalars_reducible; ++i)
        for (int j = 0; j < g.dim() && rep.scalars_reducible; ++j) {
            if (!rat_reducible(g.gram(i, j), p)) rep.scalars_reducible = false;
            for (auto& [k, c] : g.table[i][j])
                if (!rat_reducible(c, p)) rep.scalars_reducible = false;
        }
    if (!rep.odd_prime || !rep.scalars_reducible) {
        rep.notes.push_back("prime rejected before reduction");
        throw std::invalid_argument("reduce_mod_p: inadmissible prime " + std::to_string(p));
    }
    out.g = reduce_algebra(g, p);
    rep.gram_invertible = !out.g.gram.det().is_zero();
    out.p_map.assign(out.g.dim(), Vec<Fp>());
    for (int i = 0; i < out.g.dim(); ++i) {
        if (out.g.parity[i] != Parity::Even) continue;
        out.p_map[i] = p_power(out.g, out.g.basis_vec(i), p);
    }
    return out;
}

// Def 2.7(b): [x^{[p]}, y] = (ad x)^p (y) on all basis pairs
inline bool check_restricted_b(const ModularAlgebra& ma) {
    const auto& g = ma.g;
    for (int i = 0; i < g.dim(); ++i) {
        if (g.parity[i] != Parity::Even) continue;
        Matrix<Fp> adx = g.ad(g.basis_vec(i)), pw = Matrix<Fp>::identity(g.dim());
        for (long k = 0; k < ma.p; ++k) pw = pw * adx;
        Matrix<Fp> ady = g.ad(ma.p_map[i]);
        if (!(pw == ady)) return false;
    }
    return true;
}

// Def 2.7(c) on a pair: (x+y)^{[p]} = x^{[p]} + y^{[p]} + sum s_i(x,y) where
// i*s_i is the coefficient of lambda^{i-1} in (ad(lambda x + y))^{p-1}(x)
inline bool check_restricted_c(const ModularAlgebra& ma, const Vec<Fp>& x, const Vec<Fp>& y) {
    const auto& g = ma.g;
    long p = ma.p;
    int d = g.dim();
    // polynomial in lambda with vector coefficients: start with x
    std::vector<Vec<Fp>> cur{x}; // cur[k] = lambda^k coefficient
    Matrix<Fp> adx = g.ad(x), ady = g.ad(y);
    for (long rep = 0; rep < p - 1; ++rep) {
        std::vector<Vec<Fp>> next(cur.size() + 1, Vec<Fp>(d, Fp(0, p)));
        for (size_t k = 0; k < cur.size(); ++k) {
            Vec<Fp> a = adx.apply(cur[k]);
            Vec<Fp> b = ady.apply(cur[k]);
            for (int t = 0; t < d; ++t) {
                next[k + 1][t] += a[t];
                next[k][t] += b[t];
            }
        }
        cur = std::move(next);
    }
    Vec<Fp> sum(d, Fp(0, p));
    for (long i = 1; i <= p - 1; ++i) {
        // s_i = coeff of lambda^{i-1} divided by i
        Fp inv_i = Fp(i, p).inv();
        for (int t = 0; t < d; ++t) sum[t] += cur[i - 1][t] * inv_i;
    }
    Vec<Fp> xy(d, Fp(0, p));
    for (int t = 0; t < d; ++t) xy[t] = x[t] + y[t];
    Vec<Fp> lhs = p_power(g, xy, p);
    Vec<Fp> rhs = p_power(g, x, p);
    Vec<Fp> yp = p_power(g, y, p);
    for (int t = 0; t < d; ++t) rhs[t] += yp[t] + sum[t];
    // both sides solve the same adjoint equation; compare their ad images
    // to be robust against central ambiguity in non-faithful cases
    if (g.has_matrices) {
        for (int t = 0; t < d; ++t)
            if (lhs[t] != rhs[t]) return false;
        return true;
    }
    return g.ad(lhs) == g.ad(rhs);
}

// ---------------------------------------------------------------------------
// p-center elements and the transition tensor check

template <class K>
struct PCenterElement {
    int letter = -1;
    SuperPoly<Fp> xi; // x^p - x^{[p]} as a reduced element of Q_{chi,k}
    SuperPoly<Fp> xi_unreduced;
};

// xi = L^p - L^{[p]} for an even p-tilde letter, in the modular PBW context
inline PCenterElement<Fp> p_center_element(PBWContext<Fp>& ctx, const ModularAlgebra& ma,
                                           int L) {
    PCenterElement<Fp> out;
    out.letter = L;
    long p = ma.p;
    SuperPoly<Fp> xi;
    Mono xp{{L, static_cast<int>(p)}};
    xi.emplace(xp, Fp(1, p));
    // [p]-power of the letter vector, in letter coordinates
    Vec<Fp> lv(ma.g.dim(), Fp(0, p));
    for (int i = 0; i < ma.g.dim(); ++i) lv[i] = ctx.letter(L).vec[i];
    Vec<Fp> pm = p_power(ma.g, lv, p);
    Vec<Fp> pml = ctx.to_letter_coords(pm);
    for (int i = 0; i < ctx.letter_count(); ++i)
        if (!pml[i].is_zero()) PBWContext<Fp>::poly_add(xi, mono_of_letter(i), -pml[i]);
    out.xi_unreduced = xi;
    out.xi = ctx.reduce(xi);
    return out;
}

// centrality under normal-form arithmetic: [letter, xi] = 0 in U(g_k)
inline bool p_center_is_central(PBWContext<Fp>& ctx, const PCenterElement<Fp>& pc) {
    for (int A = 0; A < ctx.letter_count(); ++A) {
        SuperPoly<Fp> left = ctx.mul_front_poly(A, pc.xi_unreduced);
        SuperPoly<Fp> right;
        for (auto& [m, c] : pc.xi_unreduced) {
            SuperPoly<Fp> t = ctx.mono_mul(m, [&] {
                SuperPoly<Fp> s;
                s.emplace(mono_of_letter(A), Fp(1));
                return s;
            }());
            PBWContext<Fp>::poly_add(right, t, c);
        }
        PBWContext<Fp>::poly_add(left, right, Fp(-1));
        if (!left.empty()) return false;
    }
    return true;
}

struct TransitionReport {
    bool independent = true;
    bool top_term_law = true; // gr(x^p - x^{[p]}) = gr(x)^p
    std::map<int, long> family_counts; // formal degree -> family size
    long total = 0;
    int witnesses = 0; // p-center generators that fit under the cap
};

// tensor decomposition check: products of Theta-monomials with p-center monomials
// in the a_k-letters stay linearly independent in Q_{chi,k} through degree D
template <class K>
TransitionReport transition_tensor_check(const NilpotentFrame<Rat>& fr, long p, int cap) {
    auto mfr = reduce_frame(fr, p);
    ModularAlgebra ma;
    ma.g = mfr.g;
    ma.p = p;
    auto ctx = PBWContext<Fp>::build(mfr);
    WAlgebra<Fp> w(ctx, cap);
    w.compute_generators();

    TransitionReport rep;
    // a_k even letters: x_{l+1..m} and u_1..u_s
    std::vector<int> a_letters;
    for (int i = ctx.gen_l(); i < ctx.nx(); ++i) a_letters.push_back(i);
    for (int i = ctx.nx() + ctx.ny(); i < ctx.nx() + ctx.ny() + ctx.nu(); ++i)
        a_letters.push_back(i);
    std::vector<PCenterElement<Fp>> xis;
    for (int L : a_letters) {
        auto pc = p_center_element(ctx, ma, L);
        if (!p_center_is_central(ctx, pc))
            throw std::logic_error("p-center element is not central");
        // top-term law: the custom-leading monomial is L^p with coefficient 1
        Mono lead = poly_leading(ctx, pc.xi);
        Mono expect{{L, static_cast<int>(p)}};
        if (!(lead == expect) || pc.xi.at(lead) != Fp(1, p)) rep.top_term_law = false;
        if (ctx.letter(L).kdeg * p <= cap) {
            xis.push_back(pc);
            rep.witnesses++;
        }
    }
    if (rep.witnesses == 0 && !a_letters.empty())
        throw std::runtime_error("transition check: cap too small to witness any "
                                 "p-center element (needs D >= " +
                                 std::to_string(p * 2) + ")");

    // enumerate the product family by formal degree
    struct Item {
        SuperPoly<Fp> val;
        int deg;
    };
    std::vector<Item> family;
    // Theta-monomial part first
    std::vector<std::pair<ThetaMono, int>> tmonos;
    {
        ThetaMono cur;
        std::function<void(int, int)> rec = [&](int gi, int rem) {
            if (gi == w.gen_count()) {
                tmonos.emplace_back(cur, cap - rem);
                return;
            }
            rec(gi + 1, rem);
            int d = w.gen(gi).kdeg();
            int maxe = (w.gen(gi).parity == Parity::Odd) ? 1 : (d > 0 ? rem / d : 0);
            for (int e = 1; e <= maxe && e * d <= rem; ++e) {
                cur.emplace_back(gi, e);
                rec(gi + 1, rem - e * d);
                cur.pop_back();
            }
        };
        rec(0, cap);
    }
    std::function<void(size_t, int, SuperPoly<Fp>)> build = [&](size_t xi_idx, int used,
                                                                SuperPoly<Fp> acc) {
        if (xi_idx == xis.size()) {
            for (auto& [tm, tdeg] : tmonos) {
                if (used + tdeg > cap) continue;
                SuperPoly<Fp> v = ctx.reduce(ctx.mul(acc, w.theta_product(tm)));
                family.push_back({std::move(v), used + tdeg});
            }
            return;
        }
        build(xi_idx + 1, used, acc);
        int d = ctx.letter(xis[xi_idx].letter).kdeg * static_cast<int>(p);
        SuperPoly<Fp> cur = acc;
        for (int e = 1; used + e * d <= cap; ++e) {
            cur = ctx.reduce(ctx.mul(cur, xis[xi_idx].xi));
            build(xi_idx + 1, used + e * d, cur);
        }
    };
    SuperPoly<Fp> one;
    one.emplace(Mono{}, Fp(1, p));
    build(0, 0, one);

    // rank check per formal degree
    std::map<Mono, int> col;
    std::vector<std::map<int, Fp>> rows;
    std::sort(family.begin(), family.end(), [](const Item& a, const Item& b) {
        return a.deg < b.deg;
    });
    for (auto& item : family) {
        rep.family_counts[item.deg]++;
        std::map<int, Fp> row;
        for (auto& [m, c] : item.val) {
            auto it = col.find(m);
            int j = (it == col.end()) ? static_cast<int>(col.size()) : it->second;
            if (it == col.end()) col.emplace(m, j);
            row[j] = c;
        }
        rows.push_back(std::move(row));
    }
    rep.total = static_cast<long>(rows.size());
    Matrix<Fp> mat(static_cast<int>(rows.size()), static_cast<int>(col.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (auto& [j, c] : rows[i]) mat(static_cast<int>(i), j) = c;
    rep.independent = (mat.rank() == static_cast<int>(rows.size()));
    return rep;
}

// ---------------------------------------------------------------------------
// dimension bookkeeping (exact big integers)

inline mpz_class pow_z(long base, long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return out;
}

// dim U_xi(g_k) = p^{dim g_0} 2^{dim g_1}
template <class K>
mpz_class dim_reduced_env(const LieSuperalgebra<K>& g, long p) {
    return pow_z(p, g.dim_even()) * pow_z(2, g.dim_odd());
}

// delta = p^{d0/2} 2^{ceil(d1/2)} (the dimension of U_chi(m'_k))
template <class K>
mpz_class delta_of(const NilpotentFrame<K>& fr, long p) {
    if (fr.d0 % 2 != 0) throw std::logic_error("delta_of: odd d0 signals a broken frame");
    return pow_z(p, fr.d0 / 2) * pow_z(2, (fr.d1 + 1) / 2);
}

// dim U_chi(m_k) = p^{d0/2} 2^{floor(d1/2)}: the super KW divisor and the
// Morita matrix size
template <class K>
mpz_class kw_factor(const NilpotentFrame<K>& fr, long p) {
    if (fr.d0 % 2 != 0) throw std::logic_error("kw_factor: odd d0 signals a broken frame");
    return pow_z(p, fr.d0 / 2) * pow_z(2, fr.d1 / 2);
}

// dim U_chi(g_k, e) = p^l 2^q (r even) or p^l 2^{q+1} (r odd)
template <class K>
mpz_class reduced_w_dim(const NilpotentFrame<K>& fr, long p) {
    return pow_z(p, fr.l) * pow_z(2, fr.q + (fr.r % 2));
}

// the matrix-size identity as exact integers:
// dim U_chi(g_k) = (dim U_chi(m_k))^2 * dim U_chi(g_k,e)
template <class K>
bool matrix_size_identity(const LieSuperalgebra<K>& g, const NilpotentFrame<K>& fr, long p) {
    return dim_reduced_env(g, p) == kw_factor(fr, p) * kw_factor(fr, p) * reduced_w_dim(fr, p);
}

inline bool kw_divisible(const mpz_class& dim, const mpz_class& factor) {
    return mpz_divisible_p(dim.get_mpz_t(), factor.get_mpz_t());
}

// ---------------------------------------------------------------------------
// baby Verma modules at rank one

// Z_chi(lambda) = U_chi(g_k) (x)_{U_chi(b_k)} k_lambda on the PBW basis of
// U_chi(n^-): self-contained normal ordering, independent of PBWContext.
class BabyVerma {
public:
    // letters of n^- ordered by increasing Dynkin weight, then the Borel
    BabyVerma(const ModularAlgebra& ma, const NilpotentFrame<Fp>& fr, Fp lambda)
        : p_(ma.p) {
        const auto& g = ma.g;
        // alphabet: n^- letters first (ascending weight), then g(0), then n^+
        for (auto& [wgt, vs] : fr.grading.even)
            for (auto& v : vs) push_letter(v, Parity::Even, wgt);
        for (auto& [wgt, vs] : fr.grading.odd)
            for (auto& v : vs) push_letter(v, Parity::Odd, wgt);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (wt_[a] != wt_[b]) return wt_[a] < wt_[b];
            return a < b;
        });
        std::vector<int> inv(order_.size());
        for (size_t i = 0; i < order_.size(); ++i) inv[order_[i]] = static_cast<int>(i);
        reorder(inv);
        nneg_ = 0;
        while (nneg_ < (int)wt_.size() && wt_[nneg_] < 0) ++nneg_;
        // letter coordinates
        int d = g.dim();
        Matrix<Fp> tomat(d, d);
        for (int j = 0; j < d; ++j)
            for (int i = 0; i < d; ++i) tomat(i, j) = vecs_[j][i];
        auto invm = tomat.inverse();
        if (!invm) throw std::logic_error("BabyVerma: letters do not span");
        to_letters_ = *invm;
        lbr_.assign(d, std::vector<SparseRow<Fp>>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Vec<Fp> br = g.bracket(vecs_[i], vecs_[j]);
                Vec<Fp> lc = to_letters_.apply(br);
                for (int k = 0; k < d; ++k)
                    if (!lc[k].is_zero()) lbr_[i][j].emplace_back(k, lc[k]);
            }
        // chi and lambda evaluations on the positive part, p-powers on n^-
        chi_.assign(d, Fp(0, p_));
        for (int i = 0; i < d; ++i) {
            Fp acc(0, p_);
            for (int k = 0; k < d; ++k)
                if (!vecs_[i][k].is_zero()) acc += vecs_[i][k] * fr.chi[k];
            chi_[i] = acc;
        }
        eval_.assign(d, Fp(0, p_));
        for (int i = nneg_; i < d; ++i) {
            if (wt_[i] > 0) eval_[i] = Fp(0, p_);
            else eval_[i] = (par_[i] == Parity::Even) ? lambda * cartan_weight(fr, i) : Fp(0, p_);
        }
        for (int i = 0; i < nneg_; ++i)
            if (par_[i] == Parity::Even) {
                Vec<Fp> pm = p_power(g, vecs_[i], p_);
                ppow_.emplace(i, to_letters_.apply(pm));
            }
        // module basis: exponent tuples over n^- letters
        std::vector<int> cur(nneg_, 0);
        std::function<void(int)> rec = [&](int i) {
            if (i == nneg_) {
                index_of_[cur] = static_cast<int>(basis_.size());
                basis_.push_back(cur);
                return;
            }
            int maxe = (par_[i] == Parity::Odd) ? 1 : static_cast<int>(p_ - 1);
            for (int e = 0; e <= maxe; ++e) {
                cur[i] = e;
                rec(i + 1);
            }
            cur[i] = 0;
        };
        rec(0);
    }

    int dim() const { return static_cast<int>(basis_.size()); }
    long p() const { return p_; }
    int nneg() const { return nneg_; }

    // action matrix of an algebra element (algebra coordinates)
    Matrix<Fp> action(const Vec<Fp>& x) const {
        Vec<Fp> lx = to_letters_.apply(x);
        Matrix<Fp> out(dim(), dim());
        for (int L = 0; L < (int)vecs_.size(); ++L) {
            if (lx[L].is_zero()) continue;
            for (int b = 0; b < dim(); ++b) {
                Vec<Fp> img = act_letter(L, b);
                for (int i = 0; i < dim(); ++i) out(i, b) += lx[L] * img[i];
            }
        }
        return out;
    }

    Fp chi_letter(int L) const { return chi_[L]; }

private:
    void push_letter(const Vec<Fp>& v, Parity p, int w) {
        order_.push_back(static_cast<int>(vecs_.size()));
        vecs_.push_back(v);
        par_.push_back(p);
        wt_.push_back(w);
    }
    void reorder(const std::vector<int>& inv) {
        std::vector<Vec<Fp>> v2(vecs_.size());
        std::vector<Parity> p2(par_.size());
        std::vector<int> w2(wt_.size());
        for (size_t i = 0; i < vecs_.size(); ++i) {
            v2[inv[i]] = vecs_[i];
            p2[inv[i]] = par_[i];
            w2[inv[i]] = wt_[i];
        }
        vecs_ = std::move(v2);
        par_ = std::move(p2);
        wt_ = std::move(w2);
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = static_cast<int>(i);
    }
    // lambda evaluated through the Cartan letter: rank-one convention, the
    // toral letter acts by lambda itself
    Fp cartan_weight(const NilpotentFrame<Fp>&, int) const { return Fp(1, p_); }

    // letter action on a module basis vector by in-place normal ordering
    Vec<Fp> act_letter(int L, int bidx) const {
        Vec<Fp> out(dim(), Fp(0, p_));
        struct Term {
            Fp c;
            std::vector<int> w; // word of letters, left to right
        };
        std::vector<Term> work;
        std::vector<int> word{L};
        for (int i = 0; i < nneg_; ++i)
            for (int e = 0; e < basis_[bidx][i]; ++e) word.push_back(i);
        work.push_back({Fp(1, p_), word});
        while (!work.empty()) {
            Term t = work.back();
            work.pop_back();
            if (t.c.is_zero()) continue;
            // evaluate trailing non-negative letters
            bool evaluated = false;
            while (!t.w.empty() && t.w.back() >= nneg_) {
                t.c *= eval_[t.w.back()];
                t.w.pop_back();
                evaluated = true;
            }
            if (evaluated && t.c.is_zero()) continue;
            // find the rightmost violation
            int pos = -1;
            int kind = 0; // 1: inversion, 2: odd square, 3: even power p
            for (int i = static_cast<int>(t.w.size()) - 1; i >= 1 && pos < 0; --i) {
                if (t.w[i - 1] > t.w[i]) {
                    pos = i - 1;
                    kind = 1;
                } else if (t.w[i - 1] == t.w[i] && par_[t.w[i]] == Parity::Odd) {
                    pos = i - 1;
                    kind = 2;
                }
            }
            if (pos < 0) {
                // check even p-th powers
                int run = 1;
                for (int i = 1; i < (int)t.w.size(); ++i) {
                    run = (t.w[i] == t.w[i - 1]) ? run + 1 : 1;
                    if (run == (int)p_ && par_[t.w[i]] == Parity::Even) {
                        pos = i - static_cast<int>(p_) + 1;
                        kind = 3;
                        break;
                    }
                }
            }
            if (pos < 0) {
                // normal word over n^- letters: locate basis vector
                std::vector<int> expo(nneg_, 0);
                bool ok = true;
                for (int letter : t.w) {
                    if (letter >= nneg_) {
                        ok = false;
                        break;
                    }
                    expo[letter]++;
                }
                if (!ok) throw std::logic_error("BabyVerma: unexpected word shape");
                auto it = index_of_.find(expo);
                if (it == index_of_.end()) throw std::logic_error("BabyVerma: exponent overflow");
                out[it->second] += t.c;
                continue;
            }
            if (kind == 1) {
                int a = t.w[pos], b = t.w[pos + 1];
                // a b = (-1)^{|a||b|} b a + [a, b]
                Term swap = t;
                std::swap(swap.w[pos], swap.w[pos + 1]);
                swap.c *= koszul<Fp>(par_[a], par_[b]);
                work.push_back(std::move(swap));
                for (auto& [k, c] : lbr_[a][b]) {
                    Term br;
                    br.c = t.c * c;
                    br.w.assign(t.w.begin(), t.w.begin() + pos);
                    br.w.push_back(k);
                    br.w.insert(br.w.end(), t.w.begin() + pos + 2, t.w.end());
                    work.push_back(std::move(br));
                }
            } else if (kind == 2) {
                int a = t.w[pos];
                for (auto& [k, c] : lbr_[a][a]) {
                    Term br;
                    br.c = t.c * c / Fp(2);
                    br.w.assign(t.w.begin(), t.w.begin() + pos);
                    br.w.push_back(k);
                    br.w.insert(br.w.end(), t.w.begin() + pos + 2, t.w.end());
                    work.push_back(std::move(br));
                }
            } else {
                // z^p -> z^{[p]} + chi(z)^p in the reduced enveloping algebra
                int a = t.w[pos];
                std::vector<int> head(t.w.begin(), t.w.begin() + pos);
                std::vector<int> tail(t.w.begin() + pos + p_, t.w.end());
                Fp chp(1, p_);
                for (long i = 0; i < p_; ++i) chp *= chi_[a];
                Term scal;
                scal.c = t.c * chp;
                scal.w = head;
                scal.w.insert(scal.w.end(), tail.begin(), tail.end());
                work.push_back(std::move(scal));
                auto it = ppow_.find(a);
                if (it != ppow_.end())
                    for (int k = 0; k < (int)vecs_.size(); ++k) {
                        if (it->second[k].is_zero()) continue;
                        Term br;
                        br.c = t.c * it->second[k];
                        br.w = head;
                        br.w.push_back(k);
                        br.w.insert(br.w.end(), tail.begin(), tail.end());
                        work.push_back(std::move(br));
                    }
            }
        }
        return out;
    }

    long p_;
    std::vector<Vec<Fp>> vecs_;
    std::vector<Parity> par_;
    std::vector<int> wt_;
    std::vector<int> order_;
    int nneg_ = 0;
    Matrix<Fp> to_letters_;
    std::vector<std::vector<SparseRow<Fp>>> lbr_;
    Vec<Fp> chi_, eval_;
    std::map<int, Vec<Fp>> ppow_;
    std::vector<std::vector<int>> basis_;
    std::map<std::vector<int>, int> index_of_;
};

// simultaneous kernel of (action(z) - chi(z)) over the m-basis
inline std::vector<Vec<Fp>> whittaker_vectors(const std::vector<Matrix<Fp>>& m_actions,
                                              const std::vector<Fp>& m_chi) {
    if (m_actions.empty()) return {};
    int d = m_actions[0].rows();
    Matrix<Fp> stack(static_cast<int>(m_actions.size()) * d, d);
    for (size_t z = 0; z < m_actions.size(); ++z)
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                Fp v = m_actions[z](i, j);
                if (i == j) v -= m_chi[z];
                stack(static_cast<int>(z) * d + i, j) = v;
            }
    return stack.nullspace();
}

// does every basis vector generate the whole module?
inline bool cyclic_from_every_basis_vector(const std::vector<Matrix<Fp>>& actions, int dim) {
    for (int start = 0; start < dim; ++start) {
        std::vector<Vec<Fp>> span;
        Vec<Fp> v(dim, Fp(0));
        v[start] = Fp(1);
        std::vector<Vec<Fp>> frontier{v};
        span.push_back(v);
        while (!frontier.empty()) {
            std::vector<Vec<Fp>> next;
            for (auto& w : frontier)
                for (auto& a : actions) {
                    Vec<Fp> img = a.apply(w);
                    if (!in_span(span, img)) {
                        span.push_back(img);
                        next.push_back(img);
                    }
                }
            span = span_basis(span, dim);
            frontier = std::move(next);
        }
        if (static_cast<int>(span_rank(span, dim)) != dim) return false;
    }
    return true;
}

// dimension of the (ungraded) matrix algebra generated by the actions;
// equal to dim^2 iff the module is absolutely irreducible
inline int generated_algebra_dim(const std::vector<Matrix<Fp>>& actions, int dim) {
    auto flatten = [&](const Matrix<Fp>& m) {
        Vec<Fp> v(dim * dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) v[i * dim + j] = m(i, j);
        return v;
    };
    std::vector<Matrix<Fp>> gens = actions;
    gens.push_back(Matrix<Fp>::identity(dim));
    std::vector<Vec<Fp>> span;
    std::vector<Matrix<Fp>> reps;
    for (auto& g : gens)
        if (!in_span(span, flatten(g))) {
            span.push_back(flatten(g));
            reps.push_back(g);
        }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<Matrix<Fp>> more;
        for (auto& a : reps)
            for (auto& g : gens) {
                Matrix<Fp> prod = a * g;
                if (!in_span(span, flatten(prod))) {
                    span.push_back(flatten(prod));
                    more.push_back(prod);
                    grew = true;
                }
            }
        for (auto& m : more) reps.push_back(m);
    }
    return span_rank(span, dim * dim);
}

} // namespace wsuper
