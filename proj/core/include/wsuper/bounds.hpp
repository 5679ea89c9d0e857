#pragma once

#include "wsuper/frame.hpp"
#include "wsuper/modular.hpp"
#include "wsuper/supermat.hpp"

#include <string>
#include <vector>

namespace wsuper {

// explicit decomposition of a module with two-dimensional even commutant
// (the Q x Q outer tensor case) by eigen-splitting a commutant element
template <class K>
std::optional<std::vector<SuperModule<K>>> split_by_commutant(
    const std::vector<Parity>& /*alg_parity*/, const SuperModule<K>& v) {
    int D = v.dim();
    // even commutant elements
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j)
            if (v.coord_parity(i) == v.coord_parity(j)) slots.emplace_back(i, j);
    Matrix<K> sys(static_cast<int>(v.actions.size()) * D * D, static_cast<int>(slots.size()));
    for (size_t s = 0; s < slots.size(); ++s) {
        auto [ti, tj] = slots[s];
        for (size_t a = 0; a < v.actions.size(); ++a) {
            for (int c = 0; c < D; ++c)
                sys(static_cast<int>(a) * D * D + ti * D + c, static_cast<int>(s)) +=
                    v.actions[a](tj, c);
            for (int r = 0; r < D; ++r)
                sys(static_cast<int>(a) * D * D + r * D + tj, static_cast<int>(s)) -=
                    v.actions[a](r, ti);
        }
    }
    auto null_vecs = sys.nullspace();
    // pick a non-scalar element
    for (auto& coeffs : null_vecs) {
        Matrix<K> S(D, D);
        for (size_t s = 0; s < slots.size(); ++s) S(slots[s].first, slots[s].second) = coeffs[s];
        bool scalar = true;
        K diag = S(0, 0);
        for (int i = 0; i < D && scalar; ++i)
            for (int j = 0; j < D; ++j)
                if ((i == j && S(i, j) != diag) || (i != j && !S(i, j).is_zero())) {
                    scalar = false;
                    break;
                }
        if (scalar) continue;
        // eigen-split by scanning eigenvalue candidates per parity block
        auto split_block = [&](const K& lam, std::vector<Vec<K>>& out_vectors) {
            Matrix<K> shifted = S;
            for (int i = 0; i < D; ++i) shifted(i, i) -= lam;
            for (auto& vvec : shifted.nullspace()) out_vectors.push_back(vvec);
        };
        // candidate eigenvalues: roots of the characteristic polynomial
        std::vector<K> lams;
        if constexpr (std::is_same_v<K, Fp>) {
            long p = K(0).modulus();
            // modulus travels with entries; find it from a nonzero one
            for (int i = 0; i < D && !p; ++i)
                for (int j = 0; j < D && !p; ++j) p = S(i, j).modulus();
            auto cp = S.char_poly();
            for (long c = 0; c < p; ++c)
                if (poly1_eval(cp, Fp(c, p)).is_zero()) lams.push_back(Fp(c, p));
        } else {
            auto cp = S.char_poly();
            Poly1<Rat> cpq;
            for (auto& c : cp) cpq.push_back(rat_of(c));
            std::map<long, int> roots;
            integer_roots(cpq, roots);
            for (auto& [r, mult] : roots) lams.push_back(from_rat_for<K>(Rat(r)));
        }
        std::vector<std::vector<Vec<K>>> spaces;
        int covered = 0;
        for (auto& lam : lams) {
            std::vector<Vec<K>> vecs;
            split_block(lam, vecs);
            if (vecs.empty()) continue;
            covered += static_cast<int>(vecs.size());
            spaces.push_back(std::move(vecs));
        }
        if (covered != D || spaces.size() < 2) continue;
        // build constituents with graded bases and restricted actions
        std::vector<SuperModule<K>> parts;
        bool ok = true;
        for (auto& vecs : spaces) {
            // parity-split basis
            std::vector<Vec<K>> evens, odds;
            for (auto& w : vecs) {
                Vec<K> we(D, K(0)), wo(D, K(0));
                bool he = false, ho = false;
                for (int i = 0; i < D; ++i) {
                    if (w[i].is_zero()) continue;
                    if (v.coord_parity(i) == Parity::Even) {
                        we[i] = w[i];
                        he = true;
                    } else {
                        wo[i] = w[i];
                        ho = true;
                    }
                }
                if (he) evens.push_back(we);
                if (ho) odds.push_back(wo);
            }
            evens = span_basis(evens, D);
            odds = span_basis(odds, D);
            if (static_cast<int>(evens.size() + odds.size()) != static_cast<int>(vecs.size())) {
                ok = false;
                break;
            }
            std::vector<Vec<K>> basis = evens;
            basis.insert(basis.end(), odds.begin(), odds.end());
            int sd = static_cast<int>(basis.size());
            Matrix<K> bm(D, sd);
            for (int j = 0; j < sd; ++j)
                for (int i = 0; i < D; ++i) bm(i, j) = basis[j][i];
            SuperModule<K> part;
            part.dim0 = static_cast<int>(evens.size());
            part.dim1 = static_cast<int>(odds.size());
            for (auto& act : v.actions) {
                Matrix<K> restricted(sd, sd);
                for (int j = 0; j < sd; ++j) {
                    Vec<K> img = act.apply(basis[j]);
                    auto sol = bm.solve(img);
                    if (!sol) {
                        ok = false;
                        break;
                    }
                    for (int i = 0; i < sd; ++i) restricted(i, j) = (*sol)[i];
                }
                if (!ok) break;
                part.actions.push_back(std::move(restricted));
            }
            if (!ok) break;
            parts.push_back(std::move(part));
        }
        if (ok) return parts;
    }
    return std::nullopt;
}

// The (signed) commutant of an action set only needs the constraints from
// an algebra-generating family; for V (x) W the family {a (x) 1, 1 (x) b}
// over the factor bases suffices and is far smaller than the full basis.
template <class K>
SuperModule<K> tensor_generating_actions(const AssocSuper<K>& A, const SuperModule<K>& V,
                                         const AssocSuper<K>& B, const SuperModule<K>& W,
                                         std::vector<Parity>& parities) {
    SuperModule<K> full = outer_tensor(A, V, B, W);
    SuperModule<K> gen;
    gen.dim0 = full.dim0;
    gen.dim1 = full.dim1;
    parities.clear();
    int db = B.dim();
    for (int a = 0; a < A.dim(); ++a) {
        Matrix<K> act(full.dim(), full.dim());
        for (int b = 0; b < db; ++b)
            if (!B.unit[b].is_zero()) act = act + full.actions[a * db + b] * B.unit[b];
        gen.actions.push_back(std::move(act));
        parities.push_back(A.parity[a]);
    }
    for (int b = 0; b < db; ++b) {
        Matrix<K> act(full.dim(), full.dim());
        for (int a = 0; a < A.dim(); ++a)
            if (!A.unit[a].is_zero()) act = act + full.actions[a * db + b] * A.unit[a];
        gen.actions.push_back(std::move(act));
        parities.push_back(B.parity[b]);
    }
    return gen;
}

// full Schur type-table verdict for a pair of typed irreducibles
template <class K>
OuterTensorVerdict outer_tensor_verdict(const AssocSuper<K>& A, const SuperModule<K>& V,
                                        const AssocSuper<K>& B, const SuperModule<K>& W) {
    OuterTensorVerdict out;
    out.predicted = predict_type(V.type, W.type);
    out.splits_in_two = (V.type == SimpleKind::TypeQ && W.type == SimpleKind::TypeQ);
    std::vector<Parity> tp;
    auto T = tensor_generating_actions(A, V, B, W, tp);
    out.commutant = supercommutant_dims(tp, T);
    if (out.splits_in_two) {
        // M + Pi(M): two even projections and two odd homs between the twins
        out.commutant_matches = (out.commutant == std::make_pair(2, 2));
        auto parts = split_by_commutant(tp, T);
        if (parts && parts->size() == 2) {
            out.constituents_verified = true;
            for (auto& part : *parts) {
                out.constituent_dims.push_back(part.dim());
                auto cd = supercommutant_dims(tp, part);
                if (cd != std::make_pair(1, 0)) out.constituents_verified = false;
            }
            if ((*parts)[0].dim() != (*parts)[1].dim()) out.constituents_verified = false;
        }
    } else if (out.predicted == SimpleKind::TypeM) {
        out.commutant_matches = (out.commutant == std::make_pair(1, 0));
        out.constituent_dims.push_back(T.dim());
        out.constituents_verified = out.commutant_matches;
    } else {
        out.commutant_matches = (out.commutant == std::make_pair(1, 1));
        out.constituent_dims.push_back(T.dim());
        out.constituents_verified = out.commutant_matches;
    }
    return out;
}

// ---------------------------------------------------------------------------
// dimension bound calculators

struct DirectSumBound {
    int d0 = 0, d1 = 0, l = 0;
    mpz_class bound;
};

// p^{d0'/2} 2^{(d1'+l)/2} for a direct sum with nilpotent characters
inline DirectSumBound direct_sum_bound(const std::vector<std::pair<int, int>>& summands, long p) {
    DirectSumBound out;
    for (auto& [a, b] : summands) {
        out.d0 += a;
        out.d1 += b;
        if (b % 2) out.l++;
    }
    if (out.d0 % 2 != 0 || (out.d1 + out.l) % 2 != 0)
        throw std::invalid_argument("direct_sum_bound: parity violation in the d-counters");
    out.bound = pow_z(p, out.d0 / 2) * pow_z(2, (out.d1 + out.l) / 2);
    return out;
}

// analysis of an arbitrary even character x = s + n through the Levi split
template <class K>
struct CharacterAnalysis {
    Vec<K> semisimple, nilpotent;
    int d0_direct = 0, d1_direct = 0; // from the centralizer of x in g
    std::vector<std::pair<int, int>> summand_d; // (d0_i, d1_i) per Levi summand
    int u0 = 0, u1 = 0;                         // nilradical dimensions
    int levi_dim0 = 0, levi_dim1 = 0;
    int d0_levi = 0, d1_levi = 0; // via the parabolic dimension count
    bool paths_agree = false;
};

template <class K>
CharacterAnalysis<K> analyze_character(const LieSuperalgebra<K>& g, const Vec<K>& x) {
    CharacterAnalysis<K> out;
    auto jp = jordan_decompose(g, x);
    out.semisimple = jp.semisimple;
    out.nilpotent = jp.nilpotent;

    // direct path: d-counters from the centralizer of x
    auto gx = centralizer(g, x);
    int gx0 = 0, gx1 = 0;
    for (auto& v : gx) {
        Parity pp;
        g.is_homogeneous(v, &pp);
        (pp == Parity::Even ? gx0 : gx1)++;
    }
    out.d0_direct = g.dim_even() - gx0;
    out.d1_direct = g.dim_odd() - gx1;

    // Levi path
    auto ls = levi_split(g, jp.semisimple);
    int l0 = 0, l1 = 0;
    for (auto& v : ls.all_vectors) {
        Parity pp;
        g.is_homogeneous(v, &pp);
        (pp == Parity::Even ? l0 : l1)++;
    }
    out.levi_dim0 = l0;
    out.levi_dim1 = l1;
    out.u0 = (g.dim_even() - l0) / 2;
    out.u1 = (g.dim_odd() - l1) / 2;

    // project n onto the summands (the toral component must vanish)
    std::vector<Vec<K>> stack;
    std::vector<std::pair<int, int>> owner; // (summand index or -1 toral, pos)
    for (size_t si = 0; si < ls.summand_vectors.size(); ++si)
        for (auto& v : ls.summand_vectors[si]) {
            stack.push_back(v);
            owner.emplace_back(static_cast<int>(si), 0);
        }
    for (auto& v : ls.toral_vectors) {
        stack.push_back(v);
        owner.emplace_back(-1, 0);
    }
    Matrix<K> sm(g.dim(), static_cast<int>(stack.size()));
    for (size_t j = 0; j < stack.size(); ++j)
        for (int i = 0; i < g.dim(); ++i) sm(i, static_cast<int>(j)) = stack[j][i];
    auto sol = sm.solve(jp.nilpotent);
    if (!sol) throw std::logic_error("analyze_character: n outside the Levi");
    std::vector<Vec<K>> n_parts(ls.summand_vectors.size(), g.zero());
    for (size_t j = 0; j < stack.size(); ++j) {
        if ((*sol)[j].is_zero()) continue;
        if (owner[j].first < 0)
            throw std::logic_error("analyze_character: nilpotent part has a toral component");
        for (int i = 0; i < g.dim(); ++i)
            n_parts[owner[j].first][i] += (*sol)[j] * stack[j][i];
    }
    for (size_t si = 0; si < ls.summands.size(); ++si) {
        const auto& sub = ls.summands[si];
        // express n_i inside the summand
        Matrix<K> bm(g.dim(), sub.dim());
        for (int j = 0; j < sub.dim(); ++j)
            for (int i = 0; i < g.dim(); ++i) bm(i, j) = ls.summand_vectors[si][j][i];
        auto nin = bm.solve(n_parts[si]);
        if (!nin) throw std::logic_error("analyze_character: projection failed");
        auto cz = centralizer(sub, *nin);
        int c0 = 0, c1 = 0;
        for (auto& v : cz) {
            Parity pp;
            sub.is_homogeneous(v, &pp);
            (pp == Parity::Even ? c0 : c1)++;
        }
        out.summand_d.emplace_back(sub.dim_even() - c0, sub.dim_odd() - c1);
    }
    int sd0 = 0, sd1 = 0;
    for (auto& [a, b] : out.summand_d) {
        sd0 += a;
        sd1 += b;
    }
    out.d0_levi = 2 * out.u0 + sd0;
    out.d1_levi = 2 * out.u1 + sd1;
    out.paths_agree = (out.d0_levi == out.d0_direct) && (out.d1_levi == out.d1_direct);
    return out;
}

struct ArbitraryCharBound {
    mpz_class bound;
    int d0 = 0, d1 = 0, l = 0;
    bool at_most_one_odd = true; // at most one summand carries an odd d1
    bool compose_identity = true; // attainability composition arithmetic
};

// p^{d0/2} 2^{floor(d1/2)} with the d-counters through the Levi data
template <class K>
ArbitraryCharBound arbitrary_char_bound(const CharacterAnalysis<K>& an, long p) {
    ArbitraryCharBound out;
    out.d0 = an.d0_levi;
    out.d1 = an.d1_levi;
    for (auto& [a, b] : an.summand_d)
        if (b % 2) out.l++;
    out.at_most_one_odd = out.l <= 1;
    if (out.d0 % 2 != 0) throw std::invalid_argument("arbitrary_char_bound: odd d0");
    out.bound = pow_z(p, out.d0 / 2) * pow_z(2, out.d1 / 2);
    // attainability: (sum bound) * p^{dim u_0} 2^{dim u_1} = p^{d0/2} 2^{(d1+l)/2}
    int sd0 = out.d0 - 2 * an.u0, sd1 = out.d1 - 2 * an.u1;
    if ((sd1 + out.l) % 2 == 0 && sd0 % 2 == 0) {
        mpz_class lhs = pow_z(p, sd0 / 2) * pow_z(2, (sd1 + out.l) / 2) * pow_z(p, an.u0) *
                        pow_z(2, an.u1);
        mpz_class rhs = pow_z(p, out.d0 / 2) * pow_z(2, (out.d1 + out.l) / 2);
        out.compose_identity = (lhs == rhs);
    } else {
        out.compose_identity = false;
    }
    return out;
}

} // namespace wsuper
