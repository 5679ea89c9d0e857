#pragma once

#include "wsuper/fields.hpp"
#include "wsuper/rational.hpp"

#include <map>
#include <vector>

namespace wsuper {

// dense univariate polynomials, coefficient vector c[0..deg]
template <class K>
using Poly1 = std::vector<K>;

template <class K>
void poly1_trim(Poly1<K>& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

template <class K>
K poly1_eval(const Poly1<K>& p, const K& x) {
    K acc(0);
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

template <class K>
Poly1<K> poly1_derivative(const Poly1<K>& p) {
    Poly1<K> d;
    for (size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * K(static_cast<long>(i)));
    poly1_trim(d);
    return d;
}

// division with remainder; divisor must be nonzero
template <class K>
std::pair<Poly1<K>, Poly1<K>> poly1_divmod(Poly1<K> a, const Poly1<K>& b) {
    poly1_trim(a);
    Poly1<K> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, K(0));
    K lead = b.back();
    while (a.size() >= b.size() && !a.empty()) {
        K c = a.back() / lead;
        size_t shift = a.size() - b.size();
        q[shift] += c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        poly1_trim(a);
    }
    poly1_trim(q);
    return {q, a};
}

template <class K>
Poly1<K> poly1_gcd(Poly1<K> a, Poly1<K> b) {
    poly1_trim(a);
    poly1_trim(b);
    while (!b.empty()) {
        auto [q, r] = poly1_divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        K inv = a.back().inv();
        for (auto& c : a) c *= inv;
    }
    return a;
}

// squarefree part p / gcd(p, p')
template <class K>
Poly1<K> poly1_squarefree(const Poly1<K>& p) {
    Poly1<K> g = poly1_gcd(p, poly1_derivative(p));
    if (g.size() <= 1) {
        Poly1<K> out = p;
        poly1_trim(out);
        return out;
    }
    return poly1_divmod(p, g).first;
}

// All integer roots with multiplicities of a polynomial over Q; returns
// false if the polynomial does not split into integer linear factors
// (times a constant).
inline bool integer_roots(const Poly1<Rat>& p, std::map<long, int>& roots) {
    roots.clear();
    Poly1<Rat> cur = p;
    poly1_trim(cur);
    if (cur.empty()) return false; // zero polynomial: roots undefined
    // Cauchy bound on integer roots: 1 + max |c_i| / |lead|
    Rat lead = cur.back();
    Rat maxc(0);
    for (auto& c : cur) {
        Rat a = c.sign() < 0 ? -c : c;
        if (maxc < a) maxc = a;
    }
    Rat bound_r = Rat(1) + maxc / (lead.sign() < 0 ? -lead : lead);
    mpz_class bound_z = bound_r.num() / bound_r.den() + 2;
    if (!bound_z.fits_slong_p())
        throw std::overflow_error("integer_roots: root bound does not fit a machine word");
    long bound = bound_z.get_si();
    for (long r = -bound; r <= bound; ++r) {
        while (cur.size() > 1 && poly1_eval(cur, Rat(r)).is_zero()) {
            // synthetic division by (x - r)
            Poly1<Rat> q(cur.size() - 1, Rat(0));
            Rat carry(0);
            for (size_t i = cur.size(); i-- > 1;) {
                carry = cur[i] + carry * Rat(r);
                q[i - 1] = carry;
            }
            cur = q;
            roots[r]++;
        }
    }
    return cur.size() <= 1;
}

} // namespace wsuper
