#pragma once

#include "wsuper/walgebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wsuper {

// polynomial systems whose common zeros parametrise the 1- and 2-dimensional
// representations of the computed W-superalgebra
template <class K>
struct RepSystem {
    bool twodim = false;
    int l = 0, q = 0;
    bool r_odd = false;
    std::vector<std::string> var_names;
    std::vector<PolyMV<K>> polys;
    std::vector<std::string> labels;
    int vacuous_pairs = 0; // mixed even/odd pairs, trivially satisfied

    bool all_constant_terms_zero() const {
        for (auto& p : polys)
            if (!p.constant_term().is_zero()) return false;
        return true;
    }
    // a constant nonzero polynomial makes the system infeasible outright
    bool trivially_infeasible() const {
        for (auto& p : polys)
            if (!p.is_zero() && p.is_constant()) return true;
        return false;
    }
};

// delete every Theta-monomial containing an odd generator
template <class K>
RepSystem<K> onedim_system(WAlgebra<K>& w, const RelationTable<K>& table) {
    auto& ctx = w.ctx();
    RepSystem<K> sys;
    sys.l = ctx.gen_l();
    sys.q = ctx.gen_q();
    sys.r_odd = ctx.r_odd();
    for (int i = 0; i < sys.l; ++i) sys.var_names.push_back("X" + std::to_string(i + 1));
    int lq = sys.l + sys.q + (sys.r_odd ? 1 : 0);
    for (auto& rel : table.rels) {
        bool even_even = rel.i < sys.l && rel.j < sys.l;
        bool odd_odd = rel.i >= sys.l && rel.j >= sys.l;
        if (!even_even && !odd_odd) {
            // [even, odd] relations act trivially on a 1-dim module
            sys.vacuous_pairs++;
            continue;
        }
        PolyMV<K> p;
        p.nvars = sys.l;
        for (auto& [tm, c] : rel.F) {
            bool has_odd = false;
            std::vector<int> e(sys.l, 0);
            for (auto& [g, ex] : tm) {
                if (g >= sys.l) {
                    has_odd = true;
                    break;
                }
                e[g] = ex;
            }
            if (!has_odd) p.add_term(e, c);
        }
        // even-even pairs: the commutator acts as zero, so F' must vanish;
        // odd-odd pairs: both sides kill the vector, same conclusion
        if (!p.is_zero() || even_even || odd_odd) {
            sys.polys.push_back(std::move(p));
            sys.labels.push_back("F'_" + std::to_string(rel.i + 1) + "," +
                                 std::to_string(rel.j + 1));
        }
    }
    (void)lq;
    return sys;
}

// the A/B/C/D polynomials from the 2x2 action ansatz
template <class K>
RepSystem<K> twodim_system(WAlgebra<K>& w, const RelationTable<K>& table) {
    auto& ctx = w.ctx();
    if (!ctx.r_odd())
        throw std::invalid_argument("twodim_system: requires odd dim g(-1)_1");
    RepSystem<K> sys;
    sys.twodim = true;
    sys.l = ctx.gen_l();
    sys.q = ctx.gen_q();
    sys.r_odd = true;
    int ngen = w.gen_count(); // l + q + 1
    // variables: even i: X0_i, Y1_i; odd i: X1_i, Y0_i
    int nv = 2 * ngen;
    std::vector<std::array<int, 2>> var_of(ngen); // the two variable slots per gen
    for (int i = 0; i < ngen; ++i) {
        bool even = i < sys.l;
        std::string a = (even ? "X0_" : "X1_") + std::to_string(i + 1);
        std::string b = (even ? "Y1_" : "Y0_") + std::to_string(i + 1);
        var_of[i] = {static_cast<int>(sys.var_names.size()),
                     static_cast<int>(sys.var_names.size()) + 1};
        sys.var_names.push_back(a);
        sys.var_names.push_back(b);
    }
    using P = PolyMV<K>;
    using Mat2 = std::array<std::array<P, 2>, 2>;
    auto zero2 = [&]() {
        Mat2 m;
        for (auto& row : m)
            for (auto& p : row) p.nvars = nv;
        return m;
    };
    auto mat_of_gen = [&](int i) {
        Mat2 m = zero2();
        // columns act on coordinates (v, Theta.v); M = [[k0, K0],[k1, K1]]
        if (i < sys.l) {
            m[0][0] = P::var(nv, var_of[i][0]); // k_i^0 = X0_i
            m[1][1] = P::var(nv, var_of[i][1]); // K_i^1 = Y1_i
        } else {
            m[1][0] = P::var(nv, var_of[i][0]); // k_i^1 = X1_i
            m[0][1] = P::var(nv, var_of[i][1]); // K_i^0 = Y0_i
        }
        return m;
    };
    auto mul2 = [&](const Mat2& a, const Mat2& b) {
        Mat2 m = zero2();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                m[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        return m;
    };
    auto id2 = [&](const K& c) {
        Mat2 m = zero2();
        m[0][0] = P::constant(nv, c);
        m[1][1] = P::constant(nv, c);
        return m;
    };
    auto mat_of_theta_poly = [&](const ThetaPoly<K>& F) {
        Mat2 acc = zero2();
        for (auto& [tm, c] : F) {
            Mat2 prod = id2(K(1));
            for (auto& [g, e] : tm)
                for (int rep = 0; rep < e; ++rep) prod = mul2(prod, mat_of_gen(g));
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) acc[i][j] += prod[i][j] * c;
        }
        return acc;
    };

    const char* entry_names[2][2] = {{"A", "C"}, {"B", "D"}};
    for (auto& rel : table.rels) {
        Mat2 lhs = mul2(mat_of_gen(rel.i), mat_of_gen(rel.j));
        Mat2 rhs = mul2(mat_of_gen(rel.j), mat_of_gen(rel.i));
        K eps = koszul<K>(w.gen(rel.i).parity, w.gen(rel.j).parity);
        Mat2 fm = mat_of_theta_poly(rel.F);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                P p = lhs[a][b] - rhs[a][b] * eps - fm[a][b];
                if (p.is_zero()) continue;
                sys.polys.push_back(std::move(p));
                sys.labels.push_back(std::string(entry_names[a][b]) + "_" +
                                     std::to_string(rel.i + 1) + "," +
                                     std::to_string(rel.j + 1));
            }
    }
    return sys;
}

// exact evaluation of the full system at a point
template <class K>
std::vector<std::pair<std::string, K>> verify_rep(const RepSystem<K>& sys,
                                                  const std::vector<K>& point) {
    std::vector<std::pair<std::string, K>> residuals;
    for (size_t i = 0; i < sys.polys.size(); ++i) {
        K v = sys.polys[i].eval(point);
        if (!v.is_zero()) residuals.emplace_back(sys.labels[i], v);
    }
    return residuals;
}

inline RepSystem<Fp> reduce_system(const RepSystem<Rat>& sys, long p) {
    RepSystem<Fp> out;
    out.twodim = sys.twodim;
    out.l = sys.l;
    out.q = sys.q;
    out.r_odd = sys.r_odd;
    out.var_names = sys.var_names;
    out.labels = sys.labels;
    out.vacuous_pairs = sys.vacuous_pairs;
    for (auto& poly : sys.polys) {
        PolyMV<Fp> q;
        q.nvars = poly.nvars;
        for (auto& [e, c] : poly.terms) q.add_term(e, Fp::from_rat(c, p));
        out.polys.push_back(std::move(q));
    }
    return out;
}

// exhaustive search over F_p^{nvars}; guarded against blowup
inline std::vector<std::vector<Fp>> search_rep_modular(const RepSystem<Rat>& sys, long p,
                                                       int max_free_vars = 6,
                                                       size_t max_solutions = 16) {
    int nv = static_cast<int>(sys.var_names.size());
    if (nv > max_free_vars)
        throw std::runtime_error("search_rep_modular: " + std::to_string(nv) +
                                 " free variables exceed the brute-force limit of " +
                                 std::to_string(max_free_vars));
    RepSystem<Fp> msys = reduce_system(sys, p);
    std::vector<std::vector<Fp>> sols;
    std::vector<Fp> point(nv, Fp(0, p));
    std::function<void(int)> rec = [&](int i) {
        if (sols.size() >= max_solutions) return;
        if (i == nv) {
            for (auto& poly : msys.polys)
                if (!poly.eval(point).is_zero()) return;
            sols.push_back(point);
            return;
        }
        for (long v = 0; v < p; ++v) {
            point[i] = Fp(v, p);
            rec(i + 1);
        }
    };
    rec(0);
    return sols;
}

// try to lift a modular solution to small rationals and verify exactly
inline std::optional<std::vector<Rat>> lift_modular_solution(const RepSystem<Rat>& sys,
                                                             const std::vector<Fp>& sol, long p) {
    static const std::vector<Rat> pool = [] {
        std::vector<Rat> out;
        for (long num = -4; num <= 4; ++num)
            for (long den : {1L, 2L, 3L, 4L}) out.push_back(Rat(num, den));
        return out;
    }();
    int nv = static_cast<int>(sol.size());
    std::vector<std::vector<Rat>> cands(nv);
    for (int i = 0; i < nv; ++i) {
        for (auto& r : pool)
            if (Fp::from_rat(r, p) == sol[i]) cands[i].push_back(r);
        if (cands[i].empty()) return std::nullopt;
    }
    std::vector<Rat> point(nv, Rat(0));
    size_t tried = 0;
    std::function<bool(int)> rec = [&](int i) -> bool {
        if (tried > 300000) return false;
        if (i == nv) {
            ++tried;
            return verify_rep(sys, point).empty();
        }
        for (auto& c : cands[i]) {
            point[i] = c;
            if (rec(i + 1)) return true;
        }
        return false;
    };
    if (rec(0)) return point;
    return std::nullopt;
}

// Certify that the quotient by the one-dimensional system is a free
// polynomial ring by triangular elimination: repeatedly substitute away a
// variable that occurs in some relation exactly once, linearly, with a
// unit coefficient. Returns the number of surviving variables, or nullopt
// when the elimination gets stuck (no Groebner machinery here).
template <class K>
std::optional<int> abelianization_free_rank(RepSystem<K> sys) {
    int nv = static_cast<int>(sys.var_names.size());
    std::vector<bool> alive(nv, true);
    auto nonzero = [&]() {
        std::vector<int> idx;
        for (size_t i = 0; i < sys.polys.size(); ++i)
            if (!sys.polys[i].is_zero()) idx.push_back(static_cast<int>(i));
        return idx;
    };
    for (;;) {
        auto remaining = nonzero();
        if (remaining.empty()) break;
        // find (relation, variable) where the variable occurs in exactly one
        // term, linearly, and nowhere else in that relation
        int rel = -1, var = -1;
        K coeff(0);
        PolyMV<K> rest;
        for (int ri : remaining) {
            auto& p = sys.polys[ri];
            for (int v = 0; v < nv && rel < 0; ++v) {
                if (!alive[v]) continue;
                int occurrences = 0;
                bool clean = true;
                K c(0);
                for (auto& [e, cc] : p.terms) {
                    if (e[v] == 0) continue;
                    ++occurrences;
                    if (e[v] != 1) clean = false;
                    for (int u = 0; u < nv; ++u)
                        if (u != v && e[u]) clean = false;
                    c = cc;
                }
                if (occurrences == 1 && clean) {
                    rel = ri;
                    var = v;
                    coeff = c;
                }
            }
            if (rel >= 0) break;
        }
        if (rel < 0) return std::nullopt; // stuck: not certifiably free
        // var = -rest / coeff; substitute into every polynomial
        rest.nvars = nv;
        for (auto& [e, cc] : sys.polys[rel].terms)
            if (e[var] == 0) rest.add_term(e, cc);
        PolyMV<K> subst = rest * (-(K(1) / coeff));
        for (auto& p : sys.polys) {
            PolyMV<K> next;
            next.nvars = nv;
            for (auto& [e, cc] : p.terms) {
                if (e[var] == 0) {
                    next.add_term(e, cc);
                    continue;
                }
                // replace var^k by subst^k
                PolyMV<K> term;
                term.nvars = nv;
                std::vector<int> base = e;
                int k = base[var];
                base[var] = 0;
                term.add_term(base, cc);
                for (int rep = 0; rep < k; ++rep) term = term * subst;
                next += term;
            }
            p = std::move(next);
        }
        alive[var] = false;
    }
    int count = 0;
    for (bool b : alive) count += b;
    return count;
}

// abelianization data: the even generator count and the F'_ij ideal
template <class K>
struct AbelianizationDims {
    int num_generators = 0;
    int relation_count = 0;
    bool all_relations_zero = true;
};

template <class K>
AbelianizationDims<K> abelianization_dims(WAlgebra<K>& w, const RelationTable<K>& table) {
    AbelianizationDims<K> out;
    out.num_generators = w.ctx().gen_l();
    auto sys = onedim_system(w, table);
    for (auto& p : sys.polys) {
        ++out.relation_count;
        if (!p.is_zero()) out.all_relations_zero = false;
    }
    return out;
}

} // namespace wsuper
