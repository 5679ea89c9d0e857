#pragma once

#include "wsuper/frame.hpp"

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace wsuper {

// PBW monomial over a fixed ordered alphabet: sorted (letter, exponent)
// pairs. Vector comparison gives a canonical ordering for map keys.
using Mono = std::vector<std::pair<int, int>>;

template <class K>
using SuperPoly = std::map<Mono, K>;

inline Mono mono_of_letter(int letter) { return Mono{{letter, 1}}; }

// Exact arithmetic in U(g) on the PBW basis determined by a nilpotent
// frame, plus the Q_chi model U(p-tilde).1_chi obtained by reduction
// modulo the left ideal I_chi. Letter order: x-block, y-block, u_1..u_s,
// v_1..v_t', then the m-letters.
template <class K>
class PBWContext {
public:
    struct Letter {
        std::string name;
        Parity parity = Parity::Even;
        int weight = 0;
        int kdeg = 0; // weight + 2
        bool in_m = false;
        K chi = K(0);
        Vec<K> vec; // coordinates in the algebra basis
    };

    static PBWContext build(const NilpotentFrame<K>& fr) {
        PBWContext ctx;
        ctx.gdim_ = fr.g.dim();
        auto add = [&](const std::string& name, Parity p, int w, bool in_m, const Vec<K>& v) {
            Letter L;
            L.name = name;
            L.parity = p;
            L.weight = w;
            L.kdeg = w + 2;
            L.in_m = in_m;
            L.chi = fr.chi_of(v);
            L.vec = v;
            ctx.letters_.push_back(std::move(L));
        };
        for (int i = 0; i < fr.m_count(); ++i)
            add("x" + std::to_string(i + 1), Parity::Even, fr.x_wt[i], false, fr.x_letters[i]);
        ctx.nx_ = fr.m_count();
        for (int i = 0; i < fr.n_count(); ++i)
            add("y" + std::to_string(i + 1), Parity::Odd, fr.y_wt[i], false, fr.y_letters[i]);
        ctx.ny_ = fr.n_count();
        for (int i = 0; i < fr.s; ++i)
            add("u" + std::to_string(i + 1), Parity::Even, -1, false, fr.u_frame[i]);
        ctx.nu_ = fr.s;
        for (int i = 0; i < fr.tprime; ++i)
            add("v" + std::to_string(i + 1), Parity::Odd, -1, false, fr.v_frame[i]);
        ctx.nv_ = fr.tprime;
        for (size_t i = 0; i < fr.m_basis.size(); ++i)
            add("z" + std::to_string(i + 1), fr.m_parity[i], fr.m_wt[i], true, fr.m_basis[i]);

        ctx.nl_ = static_cast<int>(ctx.letters_.size());
        if (ctx.nl_ != ctx.gdim_)
            throw std::logic_error("PBWContext: alphabet does not span the algebra");
        ctx.l_ = fr.l;
        ctx.q_ = fr.q;
        ctx.r_odd_ = fr.r_odd();
        ctx.c_mid_ = fr.c_mid;

        // change of basis letters <-> algebra basis
        Matrix<K> tomat(ctx.gdim_, ctx.nl_);
        for (int j = 0; j < ctx.nl_; ++j)
            for (int i = 0; i < ctx.gdim_; ++i) tomat(i, j) = ctx.letters_[j].vec[i];
        auto inv = tomat.inverse();
        if (!inv) throw std::logic_error("PBWContext: letters are not a basis");
        ctx.to_basis_ = tomat;
        ctx.to_letters_ = *inv;

        // cached letter brackets in letter coordinates
        ctx.lbr_.assign(ctx.nl_, std::vector<SparseRow<K>>(ctx.nl_));
        for (int i = 0; i < ctx.nl_; ++i)
            for (int j = 0; j < ctx.nl_; ++j) {
                Vec<K> br = fr.g.bracket(ctx.letters_[i].vec, ctx.letters_[j].vec);
                Vec<K> lc = ctx.to_letters_.apply(br);
                for (int k = 0; k < ctx.nl_; ++k)
                    if (!lc[k].is_zero()) ctx.lbr_[i][j].emplace_back(k, lc[k]);
            }
        return ctx;
    }

    int letter_count() const { return nl_; }
    int ptilde_count() const { return nx_ + ny_ + nu_ + nv_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nu() const { return nu_; }
    int nv() const { return nv_; }
    int gen_l() const { return l_; }
    int gen_q() const { return q_; }
    bool r_odd() const { return r_odd_; }
    const K& c_mid() const { return c_mid_; }
    const Letter& letter(int i) const { return letters_[i]; }
    // index of the middle odd frame vector v_{(r+1)/2}
    int v_mid_index() const { return nx_ + ny_ + nu_ + nv_ - 1; }

    Vec<K> to_letter_coords(const Vec<K>& basis_coords) const {
        return to_letters_.apply(basis_coords);
    }

    const SparseRow<K>& letter_bracket_row(int i, int j) const { return lbr_[i][j]; }

    // [x, letter] in letter coordinates, x given in letter coordinates
    Vec<K> ad_on_letter(const Vec<K>& letter_coords, int L) const {
        Vec<K> out(nl_, K(0));
        for (int k = 0; k < nl_; ++k) {
            if (letter_coords[k].is_zero()) continue;
            for (auto& [t, c] : lbr_[k][L]) out[t] += letter_coords[k] * c;
        }
        return out;
    }

    // ---- degrees ------------------------------------------------------
    int mono_kdeg(const Mono& m) const {
        int d = 0;
        for (auto& [L, e] : m) d += e * letters_[L].kdeg;
        return d;
    }
    int mono_weight(const Mono& m) const {
        int d = 0;
        for (auto& [L, e] : m) d += e * letters_[L].weight;
        return d;
    }
    int mono_stddeg(const Mono& m) const {
        int d = 0;
        for (auto& [L, e] : m) d += e;
        return d;
    }
    Parity mono_parity(const Mono& m) const {
        int p = 0;
        for (auto& [L, e] : m) p += e * pval(letters_[L].parity);
        return static_cast<Parity>(p & 1);
    }
    int poly_kdeg(const SuperPoly<K>& p) const {
        int d = 0;
        bool first = true;
        for (auto& [m, c] : p) {
            int k = mono_kdeg(m);
            if (first || k > d) d = k;
            first = false;
        }
        return first ? 0 : d;
    }

    // ---- straightening -------------------------------------------------
    static void poly_add(SuperPoly<K>& a, const Mono& m, const K& c) {
        if (c.is_zero()) return;
        auto it = a.find(m);
        if (it == a.end()) {
            a.emplace(m, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) a.erase(it);
        }
    }
    static void poly_add(SuperPoly<K>& a, const SuperPoly<K>& b, const K& scale = K(1)) {
        for (auto& [m, c] : b) poly_add(a, m, scale * c);
    }

    // left multiplication by a single letter, result in normal form
    const SuperPoly<K>& mul_front(int L, const Mono& M) {
        auto key = std::make_pair(L, M);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        SuperPoly<K> out;
        if (M.empty()) {
            out.emplace(mono_of_letter(L), K(1));
            return cache_.emplace(key, std::move(out)).first->second;
        }
        auto [l1, e1] = M.front();
        if (L < l1) {
            Mono m2;
            m2.emplace_back(L, 1);
            m2.insert(m2.end(), M.begin(), M.end());
            out.emplace(std::move(m2), K(1));
        } else if (L == l1 && letters_[L].parity == Parity::Even) {
            Mono m2 = M;
            m2.front().second++;
            out.emplace(std::move(m2), K(1));
        } else if (L == l1) {
            // odd square: L.L.rest = (1/2)[L,L].rest
            Mono rest = strip_front(M);
            for (auto& [k, c] : lbr_[L][L]) {
                const SuperPoly<K>& t = mul_front(k, rest);
                poly_add(out, t, c / K(2));
            }
        } else {
            // L > l1: L.l1.rest = sign l1.(L.rest) + [L,l1].rest
            Mono rest = strip_front(M);
            K sgn = koszul<K>(letters_[L].parity, letters_[l1].parity);
            SuperPoly<K> inner = mul_front(L, rest); // copy: recursion may grow cache
            for (auto& [m, c] : inner) {
                const SuperPoly<K>& t = mul_front(l1, m);
                poly_add(out, t, sgn * c);
            }
            for (auto& [k, c] : lbr_[L][l1]) {
                const SuperPoly<K>& t = mul_front(k, rest);
                poly_add(out, t, c);
            }
        }
        return cache_.emplace(key, std::move(out)).first->second;
    }

    SuperPoly<K> mul_front_poly(int L, const SuperPoly<K>& p) {
        SuperPoly<K> out;
        for (auto& [m, c] : p) poly_add(out, mul_front(L, m), c);
        return out;
    }

    SuperPoly<K> mono_mul(const Mono& a, const SuperPoly<K>& b) {
        SuperPoly<K> cur = b;
        // fold letters of a from the right
        for (auto it = a.rbegin(); it != a.rend(); ++it)
            for (int rep = 0; rep < it->second; ++rep) cur = mul_front_poly(it->first, cur);
        return cur;
    }

    SuperPoly<K> mul(const SuperPoly<K>& a, const SuperPoly<K>& b) {
        SuperPoly<K> out;
        for (auto& [m, c] : a) {
            SuperPoly<K> t = mono_mul(m, b);
            poly_add(out, t, c);
        }
        return out;
    }

    // normal form of a scaled word of letters
    SuperPoly<K> normal_form_word(const std::vector<int>& word, const K& coeff = K(1)) {
        SuperPoly<K> cur;
        cur.emplace(Mono{}, coeff);
        for (auto it = word.rbegin(); it != word.rend(); ++it) cur = mul_front_poly(*it, cur);
        return cur;
    }

    // ---- Q_chi model ----------------------------------------------------
    // rewrite modulo I_chi: trailing m-letters evaluate through chi
    SuperPoly<K> reduce(const SuperPoly<K>& p) const {
        SuperPoly<K> out;
        int np = ptilde_count();
        for (auto& [m, c] : p) {
            K factor = c;
            Mono head;
            for (auto& [L, e] : m) {
                if (L < np) {
                    head.emplace_back(L, e);
                    continue;
                }
                // m-letter: chi value (zero for odd letters) to the power e
                for (int i = 0; i < e && !factor.is_zero(); ++i) factor *= letters_[L].chi;
            }
            poly_add(out, head, factor);
        }
        return out;
    }

    bool is_reduced(const SuperPoly<K>& p) const {
        int np = ptilde_count();
        for (auto& [m, c] : p)
            for (auto& [L, e] : m)
                if (L >= np) return false;
        return true;
    }

    // left action of an algebra element (letter coordinates) on Q_chi
    SuperPoly<K> act(const Vec<K>& letter_coords, const SuperPoly<K>& q) {
        SuperPoly<K> out;
        for (int L = 0; L < nl_; ++L) {
            if (letter_coords[L].is_zero()) continue;
            poly_add(out, reduce(mul_front_poly(L, q)), letter_coords[L]);
        }
        return out;
    }

    // adjoint action x.q - (-1)^{|x||q|} q.x followed by reduction;
    // x given as a single letter index
    SuperPoly<K> ad_letter(int L, const SuperPoly<K>& q) {
        SuperPoly<K> out;
        Parity px = letters_[L].parity;
        // left part
        poly_add(out, reduce(mul_front_poly(L, q)));
        // right part, sign depends on each monomial's parity
        for (auto& [m, c] : q) {
            K sgn = -koszul<K>(px, mono_parity(m));
            SuperPoly<K> t = mono_mul(m, nf_letter(L));
            poly_add(out, reduce(t), sgn * c);
        }
        return out;
    }

    // sigma: termwise sign by the parity of the Kazhdan degree
    SuperPoly<K> apply_sigma(const SuperPoly<K>& p) const {
        SuperPoly<K> out;
        for (auto& [m, c] : p)
            out.emplace(m, (mono_kdeg(m) % 2 != 0) ? -c : c);
        return out;
    }

    // ---- serialization ---------------------------------------------------
    std::string mono_str(const Mono& m) const {
        if (m.empty()) return "1";
        std::ostringstream os;
        bool first = true;
        for (auto& [L, e] : m) {
            if (!first) os << " ";
            first = false;
            os << letters_[L].name;
            if (e > 1) os << "^" << e;
        }
        return os.str();
    }
    std::string poly_str(const SuperPoly<K>& p) const {
        if (p.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [m, c] : p) {
            if (!first) os << " + ";
            first = false;
            os << to_string(c) << "*" << mono_str(m);
        }
        return os.str();
    }

private:
    SuperPoly<K> nf_letter(int L) {
        SuperPoly<K> p;
        p.emplace(mono_of_letter(L), K(1));
        return p;
    }
    static Mono strip_front(const Mono& m) {
        Mono out = m;
        if (out.front().second > 1)
            out.front().second--;
        else
            out.erase(out.begin());
        return out;
    }

    int gdim_ = 0, nl_ = 0;
    int nx_ = 0, ny_ = 0, nu_ = 0, nv_ = 0;
    int l_ = 0, q_ = 0;
    bool r_odd_ = false;
    K c_mid_ = K(1);
    std::vector<Letter> letters_;
    Matrix<K> to_basis_, to_letters_;
    std::vector<std::vector<SparseRow<K>>> lbr_;
    std::map<std::pair<int, Mono>, SuperPoly<K>> cache_;
};

// All Q_chi monomials (p-tilde letters only) of Kazhdan degree <= cap,
// in the canonical map order.
template <class K>
std::vector<Mono> qchi_monomials(const PBWContext<K>& ctx, int cap, long p_cap_even = 0) {
    std::vector<Mono> out;
    Mono cur;
    int np = ctx.ptilde_count();
    std::function<void(int, int)> rec = [&](int letter, int remaining) {
        if (letter == np) {
            out.push_back(cur);
            return;
        }
        rec(letter + 1, remaining);
        const auto& L = ctx.letter(letter);
        int maxe = L.parity == Parity::Odd ? 1 : (L.kdeg > 0 ? remaining / L.kdeg : remaining);
        if (p_cap_even && L.parity == Parity::Even)
            maxe = std::min<long>(maxe, p_cap_even - 1);
        for (int e = 1; e <= maxe && e * L.kdeg <= remaining; ++e) {
            cur.emplace_back(letter, e);
            rec(letter + 1, remaining - e * L.kdeg);
            cur.pop_back();
        }
    };
    rec(0, cap);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace wsuper
