#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace wsuper {

// small commutative multivariate polynomial with dense exponent keys
template <class K>
struct PolyMV {
    int nvars = 0;
    std::map<std::vector<int>, K> terms;

    static PolyMV constant(int nvars, const K& c) {
        PolyMV p;
        p.nvars = nvars;
        if (!c.is_zero()) p.terms.emplace(std::vector<int>(nvars, 0), c);
        return p;
    }
    static PolyMV var(int nvars, int i, const K& c = K(1)) {
        PolyMV p;
        p.nvars = nvars;
        std::vector<int> e(nvars, 0);
        e[i] = 1;
        if (!c.is_zero()) p.terms.emplace(std::move(e), c);
        return p;
    }

    bool is_zero() const { return terms.empty(); }
    bool is_constant() const {
        return terms.empty() ||
               (terms.size() == 1 && terms.begin()->first == std::vector<int>(nvars, 0));
    }
    K constant_term() const {
        auto it = terms.find(std::vector<int>(nvars, 0));
        return it == terms.end() ? K(0) : it->second;
    }

    void add_term(const std::vector<int>& e, const K& c) {
        if (c.is_zero()) return;
        auto it = terms.find(e);
        if (it == terms.end()) {
            terms.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms.erase(it);
        }
    }

    PolyMV& operator+=(const PolyMV& o) {
        for (auto& [e, c] : o.terms) add_term(e, c);
        return *this;
    }
    PolyMV& operator-=(const PolyMV& o) {
        for (auto& [e, c] : o.terms) add_term(e, -c);
        return *this;
    }
    friend PolyMV operator+(PolyMV a, const PolyMV& b) { return a += b; }
    friend PolyMV operator-(PolyMV a, const PolyMV& b) { return a -= b; }
    friend PolyMV operator*(const PolyMV& a, const PolyMV& b) {
        PolyMV out;
        out.nvars = a.nvars;
        for (auto& [e1, c1] : a.terms)
            for (auto& [e2, c2] : b.terms) {
                std::vector<int> e = e1;
                for (int i = 0; i < out.nvars; ++i) e[i] += e2[i];
                out.add_term(e, c1 * c2);
            }
        return out;
    }
    PolyMV operator*(const K& s) const {
        PolyMV out;
        out.nvars = nvars;
        for (auto& [e, c] : terms) out.add_term(e, c * s);
        return out;
    }

    K eval(const std::vector<K>& point) const {
        K acc(0);
        for (auto& [e, c] : terms) {
            K t = c;
            for (int i = 0; i < nvars; ++i)
                for (int k = 0; k < e[i]; ++k) t *= point[i];
            acc += t;
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& names) const {
        if (terms.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms) {
            if (!first) os << " + ";
            first = false;
            os << to_string(c);
            for (int i = 0; i < nvars; ++i) {
                if (!e[i]) continue;
                os << "*" << names[i];
                if (e[i] > 1) os << "^" << e[i];
            }
        }
        return os.str();
    }
};

} // namespace wsuper
