#pragma once

#include "wsuper/algebra.hpp"
#include "wsuper/poly_util.hpp"

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsuper {

// coefficient conversions used by eigenvalue scans (char-0 fields only)
inline Rat rat_of(const Rat& x) { return x; }
inline Rat rat_of(const QuadExt& x) {
    if (!x.is_rational()) throw std::runtime_error("expected rational coefficient");
    return x.rational_part();
}
inline Rat rat_of(const Fp&) {
    throw std::logic_error("frames are built over characteristic zero and reduced mod p");
}

template <class K>
K from_rat_for(const Rat& r);
template <>
inline Rat from_rat_for<Rat>(const Rat& r) { return r; }
template <>
inline QuadExt from_rat_for<QuadExt>(const Rat& r) { return QuadExt(r); }

template <class K>
struct SL2Triple {
    Vec<K> e, h, f;
    bool degenerate = false; // e == 0
};

template <class K>
bool is_ad_nilpotent(const LieSuperalgebra<K>& g, const Vec<K>& x) {
    Matrix<K> a = g.ad(x), p = a;
    for (int k = 1; k <= g.dim() + 1; ++k) {
        if (p.is_zero()) return true;
        p = p * a;
    }
    return false;
}

// Complete an even ad-nilpotent e to an sl2-triple by two exact linear
// solves: first (h, z) with [h,e] = 2e, h = [e,z], then f from
// [e,f] = h, [h,f] = -2f.
template <class K>
SL2Triple<K> complete_sl2(const LieSuperalgebra<K>& g, const Vec<K>& e) {
    Parity pe;
    if (!g.is_homogeneous(e, &pe) || pe == Parity::Odd)
        throw std::invalid_argument("complete_sl2: e must be even");
    SL2Triple<K> t;
    t.e = e;
    bool zero = true;
    for (auto& c : e) zero = zero && c.is_zero();
    if (zero) {
        t.h = g.zero();
        t.f = g.zero();
        t.degenerate = true;
        return t;
    }
    if (!is_ad_nilpotent(g, e)) throw std::invalid_argument("complete_sl2: ad e not nilpotent");

    int d = g.dim();
    std::vector<int> evens;
    for (int i = 0; i < d; ++i)
        if (g.parity[i] == Parity::Even) evens.push_back(i);
    int ne = static_cast<int>(evens.size());
    Matrix<K> ade = g.ad(e);

    // unknowns (h, z), rows: [h,e] = 2e and h - [e,z] = 0
    Matrix<K> sys(2 * d, 2 * ne);
    Vec<K> rhs(2 * d, K(0));
    for (int col = 0; col < ne; ++col) {
        Vec<K> img = g.bracket(g.basis_vec(evens[col]), e); // [h_col, e]
        for (int i = 0; i < d; ++i) sys(i, col) = img[i];
        for (int i = 0; i < d; ++i) sys(d + i, col) = (i == evens[col]) ? K(1) : K(0);
        for (int i = 0; i < d; ++i) sys(d + i, ne + col) = -ade(i, evens[col]);
    }
    for (int i = 0; i < d; ++i) rhs[i] = K(2) * e[i];
    auto sol = sys.solve(rhs);
    if (!sol) throw std::runtime_error("complete_sl2: no rational neutral element h");
    Vec<K> h = g.zero();
    for (int col = 0; col < ne; ++col) h[evens[col]] = (*sol)[col];

    // f from [e,f] = h, [h,f] = -2f
    Matrix<K> adh = g.ad(h);
    Matrix<K> sysf(2 * d, ne);
    Vec<K> rhsf(2 * d, K(0));
    for (int col = 0; col < ne; ++col) {
        for (int i = 0; i < d; ++i) sysf(i, col) = ade(i, evens[col]);
        for (int i = 0; i < d; ++i)
            sysf(d + i, col) = adh(i, evens[col]) + ((i == evens[col]) ? K(2) : K(0));
    }
    for (int i = 0; i < d; ++i) rhsf[i] = h[i];
    auto solf = sysf.solve(rhsf);
    if (!solf) throw std::runtime_error("complete_sl2: no rational f completing the triple");
    Vec<K> f = g.zero();
    for (int col = 0; col < ne; ++col) f[evens[col]] = (*solf)[col];
    t.h = h;
    t.f = f;
    return t;
}

template <class K>
struct DynkinGrading {
    // weight -> echelonized homogeneous basis, split by parity
    std::map<int, std::vector<Vec<K>>> even, odd;

    std::vector<Vec<K>> component(int w) const {
        std::vector<Vec<K>> out;
        auto it = even.find(w);
        if (it != even.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        it = odd.find(w);
        if (it != odd.end()) out.insert(out.end(), it->second.begin(), it->second.end());
        return out;
    }
    int dim_at(int w, Parity p) const {
        const auto& m = (p == Parity::Even) ? even : odd;
        auto it = m.find(w);
        return it == m.end() ? 0 : static_cast<int>(it->second.size());
    }
    int min_weight() const {
        int w = 0;
        if (!even.empty()) w = std::min(w, even.begin()->first);
        if (!odd.empty()) w = std::min(w, odd.begin()->first);
        return w;
    }
    int max_weight() const {
        int w = 0;
        if (!even.empty()) w = std::max(w, even.rbegin()->first);
        if (!odd.empty()) w = std::max(w, odd.rbegin()->first);
        return w;
    }
};

// Eigenspace decomposition of ad h with integer eigenvalues, split by parity.
template <class K>
DynkinGrading<K> dynkin_grading(const LieSuperalgebra<K>& g, const Vec<K>& h) {
    DynkinGrading<K> out;
    int d = g.dim();
    for (int par = 0; par <= 1; ++par) {
        std::vector<int> idx;
        for (int i = 0; i < d; ++i)
            if (pval(g.parity[i]) == par) idx.push_back(i);
        int n = static_cast<int>(idx.size());
        if (n == 0) continue;
        Matrix<K> adh(n, n);
        for (int j = 0; j < n; ++j) {
            Vec<K> img = g.bracket(h, g.basis_vec(idx[j]));
            for (int i = 0; i < d; ++i)
                if (!img[i].is_zero()) {
                    // must stay within the parity block
                    bool found = false;
                    for (int r = 0; r < n; ++r)
                        if (idx[r] == i) {
                            adh(r, j) = img[i];
                            found = true;
                            break;
                        }
                    if (!found) throw std::logic_error("dynkin_grading: parity leak");
                }
        }
        auto cp_restricted = adh.char_poly();
        Poly1<Rat> cp;
        for (auto& c : cp_restricted) cp.push_back(rat_of(c));
        std::map<long, int> roots;
        if (!integer_roots(cp, roots))
            throw std::runtime_error("dynkin_grading: ad h has non-integer eigenvalues");
        int total = 0;
        for (auto& [w, mult] : roots) {
            Matrix<K> shifted = adh;
            for (int i = 0; i < n; ++i) shifted(i, i) -= K(static_cast<long>(w));
            auto ns = shifted.nullspace();
            if (static_cast<int>(ns.size()) != mult)
                throw std::runtime_error("dynkin_grading: ad h not diagonalizable");
            std::vector<Vec<K>> lifted;
            for (auto& v : ns) {
                Vec<K> full = g.zero();
                for (int j = 0; j < n; ++j) full[idx[j]] = v[j];
                lifted.push_back(full);
            }
            if (!lifted.empty())
                (par ? out.odd : out.even)[static_cast<int>(w)] = lifted;
            total += mult;
        }
        if (total != n) throw std::runtime_error("dynkin_grading: eigenvalues incomplete");
    }
    return out;
}

// centralizer of x, echelonized and parity split
template <class K>
std::vector<Vec<K>> centralizer(const LieSuperalgebra<K>& g, const Vec<K>& x) {
    auto ns = g.ad(x).nullspace();
    // split mixed-parity kernel vectors into homogeneous parts
    std::vector<Vec<K>> homog;
    for (auto& v : ns) {
        Vec<K> ev = g.zero(), od = g.zero();
        for (int i = 0; i < g.dim(); ++i)
            (g.parity[i] == Parity::Even ? ev[i] : od[i]) = v[i];
        bool e0 = true, o0 = true;
        for (auto& c : ev) e0 = e0 && c.is_zero();
        for (auto& c : od) o0 = o0 && c.is_zero();
        if (!e0) homog.push_back(ev);
        if (!o0) homog.push_back(od);
    }
    return span_basis(homog, g.dim());
}

// The full nilpotent frame built from (g, e): grading, chi, symplectic
// and symmetric frames on g(-1), the subalgebras m, m', the PBW letters of
// p-tilde and all dimension counters.
template <class K>
struct NilpotentFrame {
    LieSuperalgebra<K> g;
    SL2Triple<K> triple;
    DynkinGrading<K> grading;
    bool degenerate = false;

    K form_scale = K(1); // original (e, f); the frame form divides by it
    Vec<K> chi;          // chi(basis_i) with chi(f) = 1

    std::vector<Vec<K>> u_frame; // u_1..u_{2s}; the second half spans g(-1)_0'
    std::vector<Vec<K>> v_frame; // v_1..v_r; tail t'+1..r spans g(-1)_1'
    K c_mid = K(1);              // <v_mid, v_mid> when r is odd

    std::vector<Vec<K>> x_letters; // x_1..x_l g^e even, then completion
    std::vector<int> x_wt;
    std::vector<Vec<K>> y_letters; // y_1..y_q g^e odd, then completion
    std::vector<int> y_wt;

    std::vector<Vec<K>> m_basis;
    std::vector<Parity> m_parity;
    std::vector<int> m_wt;
    std::vector<Vec<K>> mprime_basis;

    int s = 0, r = 0, t = 0, tprime = 0;
    int l = 0, q = 0, d0 = 0, d1 = 0;

    int m_count() const { return static_cast<int>(x_letters.size()); }
    int n_count() const { return static_cast<int>(y_letters.size()); }
    bool r_odd() const { return r % 2 == 1; }

    K chi_of(const Vec<K>& x) const {
        K out(0);
        for (int i = 0; i < g.dim(); ++i)
            if (!x[i].is_zero()) out += x[i] * chi[i];
        return out;
    }
    // the frame-normalized invariant form (e, f) = 1
    K form(const Vec<K>& a, const Vec<K>& b) const { return g.form(a, b) / form_scale; }
    // <x, y> = chi([x, y]) on g(-1)
    K pm1_pairing(const Vec<K>& a, const Vec<K>& b) const { return chi_of(g.bracket(a, b)); }
};

namespace detail {

// symplectic reduction: returns pairs (a_i, b_i) with <a_i,b_i> = 1,
// mutually orthogonal blocks
template <class K, class PairFn>
std::vector<std::pair<Vec<K>, Vec<K>>> symplectic_pairs(std::vector<Vec<K>> work,
                                                        PairFn pair, int dim) {
    std::vector<std::pair<Vec<K>, Vec<K>>> out;
    while (!work.empty()) {
        Vec<K> a = work.front();
        int partner = -1;
        for (size_t j = 1; j < work.size(); ++j)
            if (!pair(a, work[j]).is_zero()) {
                partner = static_cast<int>(j);
                break;
            }
        if (partner < 0) throw std::runtime_error("degenerate symplectic block on g(-1)");
        Vec<K> b = work[partner];
        K c = pair(a, b).inv();
        for (auto& x : b) x *= c;
        std::vector<Vec<K>> rest;
        for (size_t j = 1; j < work.size(); ++j) {
            if (static_cast<int>(j) == partner) continue;
            Vec<K> w = work[j];
            K wb = pair(w, b), wa = pair(w, a);
            for (int i = 0; i < dim; ++i) w[i] = w[i] - wb * a[i] + wa * b[i];
            rest.push_back(std::move(w));
        }
        out.emplace_back(std::move(a), std::move(b));
        work = span_basis(rest, dim);
    }
    return out;
}

template <class K>
bool field_sqrt(const K& x, K& out);

inline bool field_sqrt(const Rat& x, Rat& out) { return x.sqrt_exact(out); }
inline bool field_sqrt(const Fp& x, Fp& out) {
    long p = x.modulus();
    if (p == 0) {
        if (x.value() == 0) { out = Fp(0); return true; }
        if (x.value() == 1) { out = Fp(1); return true; }
        return false;
    }
    for (long r = 0; r < p; ++r)
        if (Fp(r, p) * Fp(r, p) == x) {
            out = Fp(r, p);
            return true;
        }
    return false;
}
inline bool field_sqrt(const QuadExt& x, QuadExt& out) {
    if (!x.is_rational()) return false;
    Rat r;
    if (x.rational_part().sqrt_exact(r)) {
        out = QuadExt(r);
        return true;
    }
    return false;
}

// symmetric reduction into hyperbolic pairs plus at most one anisotropic
// vector (requested only when allow_middle)
template <class K, class PairFn>
void symmetric_pairs(std::vector<Vec<K>> work, PairFn pair, int dim, bool allow_middle,
                     std::vector<std::pair<Vec<K>, Vec<K>>>& pairs, Vec<K>& middle, K& cmid) {
    pairs.clear();
    while (static_cast<int>(work.size()) >= 2) {
        // find an isotropic vector with a nonzero pairing
        int iso = -1;
        Vec<K> isov;
        for (size_t i = 0; i < work.size() && iso < 0; ++i)
            if (pair(work[i], work[i]).is_zero()) {
                iso = static_cast<int>(i);
                isov = work[i];
            }
        if (iso < 0) {
            // try combinations a + t b: q_aa + 2 t q_ab + t^2 q_bb = 0
            for (size_t i = 0; i < work.size() && iso < 0; ++i)
                for (size_t j = i + 1; j < work.size() && iso < 0; ++j) {
                    K qaa = pair(work[i], work[i]);
                    K qab = pair(work[i], work[j]);
                    K qbb = pair(work[j], work[j]);
                    K disc = qab * qab - qaa * qbb, sq;
                    if (!field_sqrt(disc, sq)) continue;
                    K tcoef = (-qab + sq) / qbb;
                    Vec<K> cand = work[i];
                    for (int c = 0; c < dim; ++c) cand[c] += tcoef * work[j][c];
                    iso = static_cast<int>(i);
                    isov = cand;
                }
            if (iso < 0)
                throw std::runtime_error(
                    "symmetric frame on g(-1)_1 is anisotropic over the base field; "
                    "enable the quadratic extension");
        }
        // partner with nonzero pairing
        int pi = -1;
        for (size_t j = 0; j < work.size(); ++j)
            if (!pair(isov, work[j]).is_zero()) {
                pi = static_cast<int>(j);
                break;
            }
        if (pi < 0) throw std::runtime_error("degenerate symmetric block on g(-1)");
        Vec<K> y = work[pi];
        K c = pair(isov, y).inv();
        for (auto& v : y) v *= c;
        K qyy = pair(y, y);
        if (!qyy.is_zero()) {
            // y -= (qyy/2) * isov keeps <isov,y> = 1, makes y isotropic
            K half = qyy / K(2);
            for (int i = 0; i < dim; ++i) y[i] -= half * isov[i];
        }
        std::vector<Vec<K>> rest;
        for (auto& w0 : work) {
            Vec<K> w = w0;
            K wy = pair(w, y), wz = pair(w, isov);
            for (int i = 0; i < dim; ++i) w[i] = w[i] - wy * isov[i] - wz * y[i];
            bool zero = true;
            for (auto& cc : w) zero = zero && cc.is_zero();
            if (!zero) rest.push_back(std::move(w));
        }
        pairs.emplace_back(std::move(isov), std::move(y));
        work = span_basis(rest, dim);
    }
    if (work.size() == 1) {
        if (!allow_middle) throw std::runtime_error("unexpected odd-dimensional block");
        middle = work[0];
        cmid = pair(middle, middle);
        if (cmid.is_zero()) throw std::runtime_error("degenerate symmetric block on g(-1)");
    }
}

} // namespace detail

template <class K>
NilpotentFrame<K> build_frame(const LieSuperalgebra<K>& g, const SL2Triple<K>& triple) {
    NilpotentFrame<K> fr;
    fr.g = g;
    fr.triple = triple;
    fr.degenerate = triple.degenerate;
    int d = g.dim();

    if (fr.degenerate) {
        // e = 0: whole algebra in degree 0, m empty, W = U(g)
        for (int i = 0; i < d; ++i) {
            auto& comp = (g.parity[i] == Parity::Even) ? fr.grading.even[0] : fr.grading.odd[0];
            comp.push_back(g.basis_vec(i));
        }
        fr.chi.assign(d, K(0));
        for (int i = 0; i < d; ++i)
            if (g.parity[i] == Parity::Even) {
                fr.x_letters.push_back(g.basis_vec(i));
                fr.x_wt.push_back(0);
            } else {
                fr.y_letters.push_back(g.basis_vec(i));
                fr.y_wt.push_back(0);
            }
        fr.l = g.dim_even();
        fr.q = g.dim_odd();
        return fr;
    }

    fr.grading = dynkin_grading(g, triple.h);
    fr.form_scale = g.form(triple.e, triple.f);
    if (fr.form_scale.is_zero())
        throw std::runtime_error("build_frame: (e,f) = 0, form cannot be normalized");
    fr.chi.assign(d, K(0));
    for (int i = 0; i < d; ++i) fr.chi[i] = g.form(triple.e, g.basis_vec(i)) / fr.form_scale;
    for (int i = 0; i < d; ++i)
        if (g.parity[i] == Parity::Odd && !fr.chi[i].is_zero())
            throw std::logic_error("build_frame: chi does not vanish on the odd part");

    auto pairing = [&](const Vec<K>& a, const Vec<K>& b) { return fr.pm1_pairing(a, b); };

    // symplectic frame on g(-1)_0: u_i (i <= s) with <u_i, u_{2s+1-i}> = -1
    {
        auto it = fr.grading.even.find(-1);
        std::vector<Vec<K>> w = (it == fr.grading.even.end()) ? std::vector<Vec<K>>{} : it->second;
        auto pairs = detail::symplectic_pairs<K>(w, pairing, d);
        fr.s = static_cast<int>(pairs.size());
        fr.u_frame.assign(2 * fr.s, Vec<K>());
        for (int i = 0; i < fr.s; ++i) {
            Vec<K> neg = pairs[i].first;
            for (auto& c : neg) c = -c;
            fr.u_frame[i] = neg;                    // u_i = -a_i
            fr.u_frame[2 * fr.s - 1 - i] = pairs[i].second; // u_{2s-i} = b_i
        }
    }
    // symmetric frame on g(-1)_1: v_i, v_{r+1-i} hyperbolic, optional middle
    {
        auto it = fr.grading.odd.find(-1);
        std::vector<Vec<K>> w = (it == fr.grading.odd.end()) ? std::vector<Vec<K>>{} : it->second;
        fr.r = static_cast<int>(w.size());
        fr.t = fr.r / 2;
        fr.tprime = (fr.r + 1) / 2;
        std::vector<std::pair<Vec<K>, Vec<K>>> pairs;
        Vec<K> middle;
        detail::symmetric_pairs<K>(w, pairing, d, fr.r % 2 == 1, pairs, middle, fr.c_mid);
        if (static_cast<int>(pairs.size()) != fr.t)
            throw std::runtime_error("build_frame: symmetric reduction rank mismatch");
        fr.v_frame.assign(fr.r, Vec<K>());
        for (int i = 0; i < fr.t; ++i) {
            fr.v_frame[i] = pairs[i].first;
            fr.v_frame[fr.r - 1 - i] = pairs[i].second;
        }
        if (fr.r % 2 == 1) fr.v_frame[fr.tprime - 1] = middle;
    }

    // m = (sum of g(i), i <= -2) + isotropic halves; m' adds the middle v
    for (int i = 0; i < fr.s; ++i) {
        fr.m_basis.push_back(fr.u_frame[fr.s + i]);
        fr.m_parity.push_back(Parity::Even);
        fr.m_wt.push_back(-1);
    }
    for (int i = fr.tprime; i < fr.r; ++i) {
        fr.m_basis.push_back(fr.v_frame[i]);
        fr.m_parity.push_back(Parity::Odd);
        fr.m_wt.push_back(-1);
    }
    for (int w = fr.grading.min_weight(); w <= -2; ++w) {
        for (auto& v : (fr.grading.even.count(w) ? fr.grading.even[w] : std::vector<Vec<K>>{})) {
            fr.m_basis.push_back(v);
            fr.m_parity.push_back(Parity::Even);
            fr.m_wt.push_back(w);
        }
        for (auto& v : (fr.grading.odd.count(w) ? fr.grading.odd[w] : std::vector<Vec<K>>{})) {
            fr.m_basis.push_back(v);
            fr.m_parity.push_back(Parity::Odd);
            fr.m_wt.push_back(w);
        }
    }
    fr.mprime_basis = fr.m_basis;
    if (fr.r % 2 == 1) fr.mprime_basis.push_back(fr.v_frame[fr.tprime - 1]);

    // p-letters: centralizer basis (per weight, echelonized) then [f, g(j)]
    auto graded_centralizer = [&](Parity par) {
        std::vector<std::pair<int, Vec<K>>> out;
        const auto& comps = (par == Parity::Even) ? fr.grading.even : fr.grading.odd;
        for (auto& [w, vecs] : comps) {
            if (w < 0) continue;
            // solve ad e = 0 within the component
            std::vector<Vec<K>> inside;
            Matrix<K> rows(static_cast<int>(vecs.size()), d);
            for (size_t i = 0; i < vecs.size(); ++i) rows.set_row(static_cast<int>(i), vecs[i]);
            Matrix<K> sys(d, static_cast<int>(vecs.size()));
            for (size_t j = 0; j < vecs.size(); ++j) {
                Vec<K> img = g.bracket(triple.e, vecs[j]);
                for (int i = 0; i < d; ++i) sys(i, static_cast<int>(j)) = img[i];
            }
            for (auto& coeff : sys.nullspace()) {
                Vec<K> v = g.zero();
                for (size_t j = 0; j < vecs.size(); ++j)
                    for (int i = 0; i < d; ++i) v[i] += coeff[j] * vecs[j][i];
                inside.push_back(v);
            }
            for (auto& v : span_basis(inside, d)) out.emplace_back(w, v);
        }
        return out;
    };
    auto completion = [&](Parity par) {
        std::vector<std::pair<int, Vec<K>>> out;
        const auto& comps = (par == Parity::Even) ? fr.grading.even : fr.grading.odd;
        for (auto& [w, vecs] : comps) {
            if (w < 2) continue;
            std::vector<Vec<K>> imgs;
            for (auto& v : vecs) imgs.push_back(g.bracket(triple.f, v));
            for (auto& v : span_basis(imgs, d)) out.emplace_back(w - 2, v);
        }
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    };
    for (auto& [w, v] : graded_centralizer(Parity::Even)) {
        fr.x_letters.push_back(v);
        fr.x_wt.push_back(w);
    }
    fr.l = static_cast<int>(fr.x_letters.size());
    for (auto& [w, v] : completion(Parity::Even)) {
        fr.x_letters.push_back(v);
        fr.x_wt.push_back(w);
    }
    for (auto& [w, v] : graded_centralizer(Parity::Odd)) {
        fr.y_letters.push_back(v);
        fr.y_wt.push_back(w);
    }
    fr.q = static_cast<int>(fr.y_letters.size());
    for (auto& [w, v] : completion(Parity::Odd)) {
        fr.y_letters.push_back(v);
        fr.y_wt.push_back(w);
    }

    fr.d0 = g.dim_even() - fr.l;
    fr.d1 = g.dim_odd() - fr.q;

    // structural sanity: grading dimension identity and the parity lemma
    auto ident = [&](Parity par, int dcount) {
        int acc = 0;
        const auto& comps = (par == Parity::Even) ? fr.grading.even : fr.grading.odd;
        for (auto& [w, vecs] : comps) {
            if (w == -1) acc += static_cast<int>(vecs.size());
            else if (w <= -2) acc += 2 * static_cast<int>(vecs.size());
        }
        return acc == dcount;
    };
    if (!ident(Parity::Even, fr.d0) || !ident(Parity::Odd, fr.d1))
        throw std::logic_error("build_frame: grading dimension identity failed");
    if ((fr.d1 % 2) != (fr.r % 2))
        throw std::logic_error("build_frame: d1 and r parity mismatch");
    if (fr.d0 % 2 != 0) throw std::logic_error("build_frame: d0 must be even");
    if (static_cast<int>(fr.x_letters.size() + fr.y_letters.size()) + fr.s + fr.tprime +
            static_cast<int>(fr.m_basis.size()) != d)
        throw std::logic_error("build_frame: p-tilde + m does not fill g");

    return fr;
}

// convenience: frame from a raw nilpotent element
template <class K>
NilpotentFrame<K> build_frame(const LieSuperalgebra<K>& g, const Vec<K>& e) {
    return build_frame(g, complete_sl2(g, e));
}

// Base change of a rational frame into Q(sqrt(c_mid)) with the middle odd
// frame vector rescaled so that <v_mid, v_mid> = 1 (the paper's
// normalization). Requires c_mid > 0 when it is not already a square.
inline NilpotentFrame<QuadExt> extend_frame_sqrt(const NilpotentFrame<Rat>& fr) {
    if (!fr.r_odd()) throw std::invalid_argument("extend_frame_sqrt: r is even, nothing to do");
    auto lift_vec = [](const Vec<Rat>& v) {
        Vec<QuadExt> out(v.size());
        for (size_t i = 0; i < v.size(); ++i) out[i] = QuadExt(v[i]);
        return out;
    };
    NilpotentFrame<QuadExt> out;
    {
        // lift the algebra
        auto& g = fr.g;
        out.g.names = g.names;
        out.g.parity = g.parity;
        out.g.type_tag = g.type_tag;
        out.g.summand_of = g.summand_of;
        int d = g.dim();
        out.g.table.assign(d, std::vector<SparseRow<QuadExt>>(d));
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                for (auto& [k, c] : g.table[i][j]) out.g.table[i][j].emplace_back(k, QuadExt(c));
        out.g.gram = Matrix<QuadExt>(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out.g.gram(i, j) = QuadExt(g.gram(i, j));
    }
    out.triple.e = lift_vec(fr.triple.e);
    out.triple.h = lift_vec(fr.triple.h);
    out.triple.f = lift_vec(fr.triple.f);
    out.triple.degenerate = fr.triple.degenerate;
    out.degenerate = fr.degenerate;
    for (auto& [w, vs] : fr.grading.even)
        for (auto& v : vs) out.grading.even[w].push_back(lift_vec(v));
    for (auto& [w, vs] : fr.grading.odd)
        for (auto& v : vs) out.grading.odd[w].push_back(lift_vec(v));
    out.form_scale = QuadExt(fr.form_scale);
    out.chi.resize(fr.chi.size());
    for (size_t i = 0; i < fr.chi.size(); ++i) out.chi[i] = QuadExt(fr.chi[i]);
    for (auto& v : fr.u_frame) out.u_frame.push_back(lift_vec(v));
    for (auto& v : fr.v_frame) out.v_frame.push_back(lift_vec(v));
    for (auto& v : fr.x_letters) out.x_letters.push_back(lift_vec(v));
    out.x_wt = fr.x_wt;
    for (auto& v : fr.y_letters) out.y_letters.push_back(lift_vec(v));
    out.y_wt = fr.y_wt;
    for (auto& v : fr.m_basis) out.m_basis.push_back(lift_vec(v));
    out.m_parity = fr.m_parity;
    out.m_wt = fr.m_wt;
    for (auto& v : fr.mprime_basis) out.mprime_basis.push_back(lift_vec(v));
    out.s = fr.s;
    out.r = fr.r;
    out.t = fr.t;
    out.tprime = fr.tprime;
    out.l = fr.l;
    out.q = fr.q;
    out.d0 = fr.d0;
    out.d1 = fr.d1;

    // rescale the middle vector: v -> v / sqrt(c)
    QuadExt root;
    Rat rat_root;
    if (fr.c_mid.sqrt_exact(rat_root)) {
        root = QuadExt(rat_root);
    } else if (fr.c_mid.sign() > 0) {
        root = QuadExt::sqrt_of(fr.c_mid);
    } else {
        throw std::runtime_error("extend_frame_sqrt: c_mid is negative; the normalization "
                                 "would leave Q(sqrt(q)) with q > 0");
    }
    QuadExt inv = root.inv();
    int mid = fr.tprime - 1;
    for (auto& c : out.v_frame[mid]) c *= inv;
    out.mprime_basis.back() = out.v_frame[mid];
    out.c_mid = QuadExt(Rat(1));
    return out;
}

// exact check of the frame Gram patterns on g(-1): the symplectic frame
// satisfies <u_i, u_j> = i* delta_{i+j,2s+1} with i* = -1 for i <= s and
// +1 beyond; the symmetric frame pairs hyperbolically to 1 with the odd
// middle vector pairing to c_mid
template <class K>
bool check_frame_pairings(const NilpotentFrame<K>& fr) {
    int s2 = 2 * fr.s;
    for (int i = 0; i < s2; ++i)
        for (int j = 0; j < s2; ++j) {
            K want(0);
            if (i + j == s2 - 1) want = (i < fr.s) ? K(-1) : K(1);
            if (fr.pm1_pairing(fr.u_frame[i], fr.u_frame[j]) != want) return false;
        }
    for (int i = 0; i < fr.r; ++i)
        for (int j = 0; j < fr.r; ++j) {
            K want(0);
            if (i + j == fr.r - 1) {
                bool mid = fr.r_odd() && i == fr.tprime - 1 && j == fr.tprime - 1;
                want = mid ? fr.c_mid : K(1);
            }
            if (fr.pm1_pairing(fr.v_frame[i], fr.v_frame[j]) != want) return false;
        }
    return true;
}

// exact checks of the two frame subspace decompositions
template <class K>
bool check_mperp_decomposition(const NilpotentFrame<K>& fr) {
    const auto& g = fr.g;
    int d = g.dim();
    if (fr.degenerate) return true;
    // m-perp with functionals identified with vectors through the form
    Matrix<K> pairings(static_cast<int>(fr.m_basis.size()), d);
    for (size_t i = 0; i < fr.m_basis.size(); ++i)
        for (int j = 0; j < d; ++j)
            pairings(static_cast<int>(i), j) = g.form(fr.m_basis[i], g.basis_vec(j));
    auto mperp = pairings.nullspace();

    std::vector<Vec<K>> pieces;
    for (auto& x : fr.mprime_basis) pieces.push_back(g.bracket(x, fr.triple.e));
    auto me = span_basis(pieces, d);
    auto gf = centralizer(g, fr.triple.f);
    size_t dim_me = me.size(), dim_gf = gf.size();
    std::vector<Vec<K>> all = me;
    all.insert(all.end(), gf.begin(), gf.end());
    if (span_rank(all, d) != static_cast<int>(dim_me + dim_gf)) return false; // not direct
    if (mperp.size() != dim_me + dim_gf) return false;
    for (auto& v : mperp)
        if (!in_span(all, v)) return false;
    return true;
}

template <class K>
bool check_p_decomposition(const NilpotentFrame<K>& fr) {
    const auto& g = fr.g;
    int d = g.dim();
    if (fr.degenerate) return true;
    std::vector<Vec<K>> pieces;
    for (auto& [w, vecs] : fr.grading.even)
        if (w >= 2)
            for (auto& v : vecs) pieces.push_back(g.bracket(fr.triple.f, v));
    for (auto& [w, vecs] : fr.grading.odd)
        if (w >= 2)
            for (auto& v : vecs) pieces.push_back(g.bracket(fr.triple.f, v));
    auto fg = span_basis(pieces, d);
    auto ge = centralizer(g, fr.triple.e);
    std::vector<Vec<K>> all = fg;
    all.insert(all.end(), ge.begin(), ge.end());
    if (span_rank(all, d) != static_cast<int>(fg.size() + ge.size())) return false;
    // compare against p = sum of nonnegative components
    std::vector<Vec<K>> p;
    for (auto& [w, vecs] : fr.grading.even)
        if (w >= 0) p.insert(p.end(), vecs.begin(), vecs.end());
    for (auto& [w, vecs] : fr.grading.odd)
        if (w >= 0) p.insert(p.end(), vecs.begin(), vecs.end());
    if (fg.size() + ge.size() != p.size()) return false;
    for (auto& v : all)
        if (!in_span(p, v)) return false;
    return true;
}

template <class K>
bool check_grading_properties(const NilpotentFrame<K>& fr) {
    const auto& g = fr.g;
    int lo = fr.grading.min_weight(), hi = fr.grading.max_weight();
    for (int i = lo; i <= hi; ++i)
        for (int j = lo; j <= hi; ++j) {
            auto ci = fr.grading.component(i), cj = fr.grading.component(j);
            auto ck = fr.grading.component(i + j);
            for (auto& a : ci)
                for (auto& b : cj) {
                    Vec<K> br = g.bracket(a, b);
                    bool zero = true;
                    for (auto& c : br) zero = zero && c.is_zero();
                    if (!zero && !in_span(ck, br)) return false;
                    // form orthogonality between non-opposite weights
                    if (i + j != 0 && !g.form(a, b).is_zero()) return false;
                }
        }
    // [e, g(i)] = g(i+2) for i >= -1
    if (!fr.degenerate)
        for (int i = -1; i <= hi; ++i) {
            std::vector<Vec<K>> img;
            for (auto& a : fr.grading.component(i)) img.push_back(g.bracket(fr.triple.e, a));
            auto tgt = fr.grading.component(i + 2);
            auto ib = span_basis(img, g.dim());
            if (ib.size() != tgt.size()) return false;
            for (auto& v : ib)
                if (!in_span(tgt, v)) return false;
        }
    return true;
}

// ---------------------------------------------------------------------------
// restricted roots (Proposition 3.9)

template <class K>
struct RestrictedRoots {
    // weight tuples (one coordinate per toral element) on g and on g^e
    std::vector<std::vector<Rat>> weights_g;
    std::vector<int> mult_g;
    std::vector<std::vector<Rat>> weights_ge;
    std::vector<int> mult_ge;
    bool weight_sets_equal = false;
};

namespace detail {

template <class K>
std::vector<Rat> rational_eigenvalues(const Matrix<K>& m) {
    auto cpk = m.char_poly();
    Poly1<Rat> cp;
    for (auto& c : cpk) cp.push_back(rat_of(c));
    // rational roots: clear denominators, then p | c0, q | cn
    std::map<long, int> iroots;
    // scan numerator/denominator candidates via the integer-root helper on
    // the transformed polynomial q(x) = den^n p(x/den) for small denominators
    std::vector<Rat> out;
    Poly1<Rat> cur = cp;
    poly1_trim(cur);
    for (long den = 1; den <= 12 && cur.size() > 1; ++den) {
        for (long num = -60; num <= 60 && cur.size() > 1; ++num) {
            Rat cand(num, den);
            while (cur.size() > 1 && poly1_eval(cur, cand).is_zero()) {
                out.push_back(cand);
                // divide by (x - cand)
                Poly1<Rat> q(cur.size() - 1, Rat(0));
                Rat carry(0);
                for (size_t i = cur.size(); i-- > 1;) {
                    carry = cur[i] + carry * cand;
                    q[i - 1] = carry;
                }
                cur = q;
            }
        }
    }
    if (cur.size() > 1)
        throw std::runtime_error("toral element not rationally diagonalizable");
    return out;
}

} // namespace detail

// simultaneous ad-eigenspace decomposition of the toral family on a space
template <class K>
void toral_weight_spaces(const LieSuperalgebra<K>& g, const std::vector<Vec<K>>& te,
                         const std::vector<Vec<K>>& space, std::vector<std::vector<Rat>>& weights,
                         std::vector<int>& mults) {
    struct Block {
        std::vector<Vec<K>> vecs;
        std::vector<Rat> wt;
    };
    std::vector<Block> blocks{{space, {}}};
    for (auto& tvec : te) {
        std::vector<Block> next;
        for (auto& blk : blocks) {
            if (blk.vecs.empty()) continue;
            int n = static_cast<int>(blk.vecs.size());
            // restrict ad t to the block
            Matrix<K> rows(n, g.dim());
            for (int i = 0; i < n; ++i) rows.set_row(i, blk.vecs[i]);
            Matrix<K> rt = rows.transpose();
            Matrix<K> adt(n, n);
            for (int j = 0; j < n; ++j) {
                Vec<K> img = g.bracket(tvec, blk.vecs[j]);
                auto sol = rt.solve(img);
                if (!sol) throw std::runtime_error("toral family does not preserve the block");
                for (int i = 0; i < n; ++i) adt(i, j) = (*sol)[i];
            }
            auto evs = detail::rational_eigenvalues(adt);
            std::sort(evs.begin(), evs.end());
            evs.erase(std::unique(evs.begin(), evs.end()), evs.end());
            int covered = 0;
            for (auto& ev : evs) {
                Matrix<K> shifted = adt;
                for (int i = 0; i < n; ++i) shifted(i, i) -= from_rat_for<K>(ev);
                auto ns = shifted.nullspace();
                if (ns.empty()) continue;
                Block nb;
                nb.wt = blk.wt;
                nb.wt.push_back(ev);
                for (auto& coeff : ns) {
                    Vec<K> v(g.dim(), K(0));
                    for (int j = 0; j < n; ++j)
                        for (int i = 0; i < g.dim(); ++i) v[i] += coeff[j] * blk.vecs[j][i];
                    nb.vecs.push_back(v);
                }
                covered += static_cast<int>(ns.size());
                next.push_back(std::move(nb));
            }
            if (covered != n) throw std::runtime_error("toral element not diagonalizable");
        }
        blocks = std::move(next);
    }
    weights.clear();
    mults.clear();
    for (auto& blk : blocks) {
        weights.push_back(blk.wt);
        mults.push_back(static_cast<int>(blk.vecs.size()));
    }
}

template <class K>
RestrictedRoots<K> restricted_roots(const LieSuperalgebra<K>& g, const NilpotentFrame<K>& fr,
                                    const std::vector<Vec<K>>& te_basis) {
    // pairwise commuting check
    for (auto& a : te_basis)
        for (auto& b : te_basis) {
            Vec<K> br = g.bracket(a, b);
            for (auto& c : br)
                if (!c.is_zero()) throw std::invalid_argument("restricted_roots: t^e not abelian");
        }
    RestrictedRoots<K> out;
    std::vector<Vec<K>> whole;
    for (int i = 0; i < g.dim(); ++i) whole.push_back(g.basis_vec(i));
    toral_weight_spaces(g, te_basis, whole, out.weights_g, out.mult_g);
    auto ge = centralizer(g, fr.degenerate ? g.zero() : fr.triple.e);
    toral_weight_spaces(g, te_basis, ge, out.weights_ge, out.mult_ge);
    auto keyset = [](const std::vector<std::vector<Rat>>& w) {
        auto s = w;
        std::sort(s.begin(), s.end());
        return s;
    };
    out.weight_sets_equal = keyset(out.weights_g) == keyset(out.weights_ge);
    return out;
}

// ---------------------------------------------------------------------------
// Jordan decomposition in the matrix realization (square-free Newton)

template <class K>
struct JordanParts {
    Vec<K> semisimple, nilpotent;
    bool splits_in_degree_two = true; // radical factors into deg <= 2 pieces over K
};

template <class K>
JordanParts<K> jordan_decompose(const LieSuperalgebra<K>& g, const Vec<K>& x) {
    if (!g.has_matrices) throw std::invalid_argument("jordan_decompose: needs matrix realization");
    Parity p;
    if (!g.is_homogeneous(x, &p) || p == Parity::Odd)
        throw std::invalid_argument("jordan_decompose: x must be even");
    Matrix<K> X = g.realize(x);
    auto cp = X.char_poly();
    Poly1<K> rad = poly1_squarefree(cp);
    Matrix<K> S = X;
    auto eval_mat = [&](const Poly1<K>& pl, const Matrix<K>& M) {
        Matrix<K> acc(M.rows(), M.cols());
        for (size_t i = pl.size(); i-- > 0;) {
            acc = acc * M;
            for (int r = 0; r < M.rows(); ++r) acc(r, r) += pl[i];
        }
        return acc;
    };
    for (int iter = 0; iter < 64; ++iter) {
        Matrix<K> val = eval_mat(rad, S);
        if (val.is_zero()) break;
        Matrix<K> der = eval_mat(poly1_derivative(rad), S);
        auto dinv = der.inverse();
        if (!dinv) throw std::runtime_error("jordan_decompose: Newton step not invertible");
        S = S - (*dinv) * val;
        if (iter == 63) throw std::runtime_error("jordan_decompose: Newton did not converge");
    }
    // express S back in algebra coordinates
    int N = g.block_m + g.block_n, d = g.dim();
    Matrix<K> span(N * N, d);
    for (int b = 0; b < d; ++b)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) span(i * N + j, b) = g.matrices[b](i, j);
    Vec<K> flat(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) flat[i * N + j] = S(i, j);
    auto sol = span.solve(flat);
    if (!sol) throw std::runtime_error("jordan_decompose: semisimple part leaves the algebra");
    JordanParts<K> out;
    out.semisimple = *sol;
    out.nilpotent = g.zero();
    for (int i = 0; i < d; ++i) out.nilpotent[i] = x[i] - out.semisimple[i];
    // classification of the radical: strip rational roots, look at leftovers
    Poly1<Rat> radq;
    bool rational_ok = true;
    for (auto& c : rad) {
        try {
            radq.push_back(rat_of(c));
        } catch (...) {
            rational_ok = false;
            break;
        }
    }
    if (rational_ok) {
        std::map<long, int> roots;
        integer_roots(radq, roots);
        Poly1<Rat> cur = radq;
        for (auto& [rt, mult] : roots)
            for (int i = 0; i < mult; ++i)
                cur = poly1_divmod(cur, Poly1<Rat>{Rat(-rt), Rat(1)}).first;
        out.splits_in_degree_two = cur.size() <= 3; // residual degree <= 2
    }
    // sanity: [s, n] = 0 and n nilpotent
    Vec<K> br = g.bracket(out.semisimple, out.nilpotent);
    for (auto& c : br)
        if (!c.is_zero()) throw std::logic_error("jordan_decompose: parts do not commute");
    if (!is_ad_nilpotent(g, out.nilpotent))
        throw std::logic_error("jordan_decompose: nilpotent part is not nilpotent");
    return out;
}

// ---------------------------------------------------------------------------
// Levi-type splitting of the centralizer of a semisimple element

template <class K>
struct LeviSplit {
    std::vector<std::vector<Vec<K>>> summand_vectors; // ideal components of g^s
    std::vector<LieSuperalgebra<K>> summands;
    std::vector<Vec<K>> toral_vectors;                // central part
    std::vector<Vec<K>> all_vectors;                  // full basis of g^s
};

template <class K>
LeviSplit<K> levi_split(const LieSuperalgebra<K>& g, const Vec<K>& s) {
    LeviSplit<K> out;
    auto gs = centralizer(g, s);
    out.all_vectors = gs;
    int n = static_cast<int>(gs.size());
    // center of the subalgebra: elements commuting with all of g^s
    Matrix<K> rows(n, g.dim());
    for (int i = 0; i < n; ++i) rows.set_row(i, gs[i]);
    Matrix<K> rt = rows.transpose();

    // adjacency on basis vectors: nonzero bracket
    std::vector<std::vector<int>> adj(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            Vec<K> br = g.bracket(gs[i], gs[j]);
            bool zero = true;
            for (auto& c : br) zero = zero && c.is_zero();
            if (!zero) adj[i].push_back(j);
        }
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    for (int i = 0; i < n; ++i) {
        if (comp[i] >= 0) continue;
        std::vector<int> stack{i};
        comp[i] = ncomp;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int w : adj[v])
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    stack.push_back(w);
                }
        }
        ++ncomp;
    }
    // merge components whose spans leak into each other under bracketing
    std::vector<int> parent(ncomp);
    for (int i = 0; i < ncomp; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec<K> br = g.bracket(gs[i], gs[j]);
            auto sol = rt.solve(br);
            if (!sol) throw std::logic_error("levi_split: centralizer not closed");
            for (int k = 0; k < n; ++k)
                if (!(*sol)[k].is_zero()) {
                    int a = find(comp[i]), b = find(comp[k]);
                    if (a != b) parent[a] = b;
                }
        }
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < n; ++i) groups[find(comp[i])].push_back(i);

    for (auto& [root, members] : groups) {
        bool central = true;
        for (int i : members)
            if (!adj[i].empty()) central = false;
        if (central) {
            for (int i : members) out.toral_vectors.push_back(gs[i]);
        } else {
            std::vector<Vec<K>> vecs;
            for (int i : members) vecs.push_back(gs[i]);
            out.summand_vectors.push_back(vecs);
        }
    }
    for (size_t i = 0; i < out.summand_vectors.size(); ++i)
        out.summands.push_back(subalgebra(g, out.summand_vectors[i],
                                          "levi_summand" + std::to_string(i + 1)));
    return out;
}

} // namespace wsuper
