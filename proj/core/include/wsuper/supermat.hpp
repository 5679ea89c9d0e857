#pragma once

#include "wsuper/algebra.hpp"

#include <optional>
#include <string>
#include <vector>

namespace wsuper {

// finite-dimensional associative superalgebra as a structure-constant table
template <class K>
struct AssocSuper {
    std::vector<Parity> parity;
    std::vector<std::vector<SparseRow<K>>> table;
    Vec<K> unit;
    std::string tag;

    int dim() const { return static_cast<int>(parity.size()); }
    int dim_even() const {
        int c = 0;
        for (auto p : parity) c += (p == Parity::Even);
        return c;
    }
    int dim_odd() const { return dim() - dim_even(); }
    Vec<K> zero() const { return Vec<K>(dim(), K(0)); }
    Vec<K> basis_vec(int i) const {
        Vec<K> v = zero();
        v[i] = K(1);
        return v;
    }
    Vec<K> mul(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> out = zero();
        for (int i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j) {
                if (y[j].is_zero()) continue;
                K c = x[i] * y[j];
                for (auto& [k, v] : table[i][j]) out[k] += c * v;
            }
        }
        return out;
    }
};

// M_{m,n}: all endomorphisms of a (m|n)-dimensional superspace
template <class K>
AssocSuper<K> build_M(int m, int n) {
    AssocSuper<K> a;
    a.tag = "M(" + std::to_string(m) + "," + std::to_string(n) + ")";
    int N = m + n;
    a.parity.resize(N * N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) a.parity[i * N + j] = gl_entry_parity(i, j, m);
    a.table.assign(N * N, std::vector<SparseRow<K>>(N * N));
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                    if (j == k) a.table[i * N + j][k * N + l].emplace_back(i * N + l, K(1));
    a.unit = a.zero();
    for (int i = 0; i < N; ++i) a.unit[i * N + i] = K(1);
    return a;
}

// Q_n in the standard block form (A, B; -B, A): even basis a_ij, odd b_ij
template <class K>
AssocSuper<K> build_Q(int n) {
    AssocSuper<K> a;
    a.tag = "Q(" + std::to_string(n) + ")";
    // 2n^2 basis elements; realize as 2n x 2n matrices and multiply
    int N = 2 * n;
    std::vector<Matrix<K>> mats;
    auto block = [&](int i, int j, bool odd) {
        Matrix<K> x(N, N);
        if (!odd) {
            x(i, j) = K(1);
            x(n + i, n + j) = K(1);
        } else {
            x(i, n + j) = K(1);
            x(n + i, j) = K(-1);
        }
        return x;
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mats.push_back(block(i, j, false));
            a.parity.push_back(Parity::Even);
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            mats.push_back(block(i, j, true));
            a.parity.push_back(Parity::Odd);
        }
    int d = static_cast<int>(mats.size());
    Matrix<K> span(N * N, d);
    for (int b = 0; b < d; ++b)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) span(i * N + j, b) = mats[b](i, j);
    a.table.assign(d, std::vector<SparseRow<K>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix<K> prod = mats[i] * mats[j];
            Vec<K> flat(N * N);
            for (int r = 0; r < N; ++r)
                for (int c = 0; c < N; ++c) flat[r * N + c] = prod(r, c);
            auto sol = span.solve(flat);
            if (!sol) throw std::logic_error("build_Q: not closed");
            for (int k = 0; k < d; ++k)
                if (!(*sol)[k].is_zero()) a.table[i][j].emplace_back(k, (*sol)[k]);
        }
    a.unit = a.zero();
    for (int i = 0; i < n; ++i) a.unit[i * n + i] = K(1);
    return a;
}

template <class K>
bool check_associative(const AssocSuper<K>& a) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            for (int k = 0; k < a.dim(); ++k) {
                Vec<K> lhs = a.mul(a.mul(a.basis_vec(i), a.basis_vec(j)), a.basis_vec(k));
                Vec<K> rhs = a.mul(a.basis_vec(i), a.mul(a.basis_vec(j), a.basis_vec(k)));
                if (!(lhs == rhs)) return false;
            }
    return true;
}

// superalgebra tensor product with Koszul signs:
// (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd
template <class K>
AssocSuper<K> graded_tensor(const AssocSuper<K>& A, const AssocSuper<K>& B) {
    AssocSuper<K> t;
    t.tag = A.tag + "(x)" + B.tag;
    int da = A.dim(), db = B.dim();
    t.parity.resize(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) t.parity[i * db + j] = padd(A.parity[i], B.parity[j]);
    t.table.assign(da * db, std::vector<SparseRow<K>>(da * db));
    for (int a1 = 0; a1 < da; ++a1)
        for (int b1 = 0; b1 < db; ++b1)
            for (int a2 = 0; a2 < da; ++a2)
                for (int b2 = 0; b2 < db; ++b2) {
                    K sgn = koszul<K>(B.parity[b1], A.parity[a2]);
                    for (auto& [ka, ca] : A.table[a1][a2])
                        for (auto& [kb, cb] : B.table[b1][b2])
                            t.table[a1 * db + b1][a2 * db + b2].emplace_back(ka * db + kb,
                                                                             sgn * ca * cb);
                }
    t.unit = t.zero();
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            K c = A.unit[i] * B.unit[j];
            if (!c.is_zero()) t.unit[i * db + j] = c;
        }
    return t;
}

// center of the superalgebra (elements commuting with everything in the
// plain sense), reported as a graded dimension pair. This distinguishes
// M (purely even, dim 1) from Q (dim (1,1), spanned by 1 and J).
// Commuting with an algebra-generating family is equivalent; passing one
// keeps the solve small for tensor products.
template <class K>
std::pair<int, int> supercenter_dims(const AssocSuper<K>& a,
                                     const std::vector<Vec<K>>& generators = {}) {
    int d = a.dim();
    std::vector<Vec<K>> gens = generators;
    if (gens.empty())
        for (int i = 0; i < d; ++i) gens.push_back(a.basis_vec(i));
    std::pair<int, int> out{0, 0};
    for (int zp = 0; zp <= 1; ++zp) {
        std::vector<int> idx;
        for (int i = 0; i < d; ++i)
            if (pval(a.parity[i]) == zp) idx.push_back(i);
        if (idx.empty()) continue;
        // z x = x z for all generators x
        Matrix<K> sys(static_cast<int>(gens.size()) * d, static_cast<int>(idx.size()));
        for (size_t c = 0; c < idx.size(); ++c) {
            for (size_t x = 0; x < gens.size(); ++x) {
                Vec<K> zx = a.mul(a.basis_vec(idx[c]), gens[x]);
                Vec<K> xz = a.mul(gens[x], a.basis_vec(idx[c]));
                for (int t = 0; t < d; ++t)
                    sys(static_cast<int>(x) * d + t, static_cast<int>(c)) = zx[t] - xz[t];
            }
        }
        int null_dim = static_cast<int>(sys.nullspace().size());
        (zp ? out.second : out.first) = null_dim;
    }
    return out;
}

// generating family {a_i (x) 1, 1 (x) b_j} of a tensor product, in the
// coordinates of graded_tensor(A, B)
template <class K>
std::vector<Vec<K>> tensor_generating_elements(const AssocSuper<K>& A, const AssocSuper<K>& B) {
    std::vector<Vec<K>> out;
    int da = A.dim(), db = B.dim();
    for (int i = 0; i < da; ++i) {
        Vec<K> v(da * db, K(0));
        for (int j = 0; j < db; ++j) v[i * db + j] = B.unit[j];
        out.push_back(std::move(v));
    }
    for (int j = 0; j < db; ++j) {
        Vec<K> v(da * db, K(0));
        for (int i = 0; i < da; ++i) v[i * db + j] = A.unit[i];
        out.push_back(std::move(v));
    }
    return out;
}

// reduction mod p of tables and modules with rational entries
inline AssocSuper<Fp> reduce_assoc(const AssocSuper<Rat>& a, long p) {
    AssocSuper<Fp> out;
    out.tag = a.tag;
    out.parity = a.parity;
    int d = a.dim();
    out.table.assign(d, std::vector<SparseRow<Fp>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (auto& [k, c] : a.table[i][j])
                out.table[i][j].emplace_back(k, Fp::from_rat(c, p));
    out.unit.assign(d, Fp(0, p));
    for (int i = 0; i < d; ++i) out.unit[i] = Fp::from_rat(a.unit[i], p);
    return out;
}


struct SimpleKind {
    enum Kind { TypeM, TypeQ, Unknown } kind = Unknown;
    int m = 0, n = 0; // M_{m,n} parameters (m >= n), or n for Q_n
    std::string str() const {
        if (kind == TypeM) return "M(" + std::to_string(m) + "," + std::to_string(n) + ")";
        if (kind == TypeQ) return "Q(" + std::to_string(n) + ")";
        return "unknown";
    }
};

// type and size from invariants: the supercenter and the dimension pair
template <class K>
SimpleKind classify_simple(const AssocSuper<K>& a, const std::vector<Vec<K>>& generators = {}) {
    SimpleKind out;
    auto [c0, c1] = supercenter_dims(a, generators);
    long d = a.dim(), de = a.dim_even();
    if (c0 == 1 && c1 == 0) {
        // M_{m,n}: dim = (m+n)^2, dim_even = m^2 + n^2
        long s = 0;
        while (s * s < d) ++s;
        if (s * s != d) return out;
        long disc = 2 * de - s * s; // (m-n)^2
        long r = 0;
        while (r * r < disc) ++r;
        if (disc < 0 || r * r != disc || (s + r) % 2 != 0) return out;
        out.kind = SimpleKind::TypeM;
        out.m = static_cast<int>((s + r) / 2);
        out.n = static_cast<int>((s - r) / 2);
        return out;
    }
    if (c0 == 1 && c1 == 1) {
        // Q_n: dim = 2n^2
        if (d % 2 != 0 || de * 2 != d) return out;
        long n = 0;
        while (n * n < d / 2) ++n;
        if (n * n != d / 2) return out;
        out.kind = SimpleKind::TypeQ;
        out.n = static_cast<int>(n);
        return out;
    }
    return out;
}

// ---------------------------------------------------------------------------
// graded modules and the outer tensor product

template <class K>
struct SuperModule {
    int dim0 = 0, dim1 = 0; // even coordinates first
    std::vector<Matrix<K>> actions; // one per algebra basis element
    SimpleKind::Kind type = SimpleKind::Unknown;

    int dim() const { return dim0 + dim1; }
    Parity coord_parity(int i) const { return i < dim0 ? Parity::Even : Parity::Odd; }
};

// natural module of M_{m,n}
template <class K>
SuperModule<K> natural_module_M(int m, int n) {
    SuperModule<K> v;
    v.dim0 = m;
    v.dim1 = n;
    int N = m + n;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            Matrix<K> u(N, N);
            u(i, j) = K(1);
            v.actions.push_back(u);
        }
    v.type = SimpleKind::TypeM;
    return v;
}

// natural module of Q_n in the (A, B; -B, A) realization
template <class K>
SuperModule<K> natural_module_Q(int n) {
    SuperModule<K> v;
    v.dim0 = n;
    v.dim1 = n;
    int N = 2 * n;
    for (int pass = 0; pass < 2; ++pass)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Matrix<K> x(N, N);
                if (pass == 0) {
                    x(i, j) = K(1);
                    x(n + i, n + j) = K(1);
                } else {
                    x(i, n + j) = K(1);
                    x(n + i, j) = K(-1);
                }
                v.actions.push_back(x);
            }
    v.type = SimpleKind::TypeQ;
    return v;
}

inline SuperModule<Fp> reduce_module(const SuperModule<Rat>& v, long p) {
    SuperModule<Fp> out;
    out.dim0 = v.dim0;
    out.dim1 = v.dim1;
    out.type = v.type;
    for (auto& m : v.actions) {
        Matrix<Fp> mm(m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) mm(i, j) = Fp::from_rat(m(i, j), p);
        out.actions.push_back(std::move(mm));
    }
    return out;
}

// does the module action respect the algebra table?
template <class K>
bool check_module(const AssocSuper<K>& a, const SuperModule<K>& v) {
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
            Matrix<K> prod = v.actions[i] * v.actions[j];
            Matrix<K> expect(v.dim(), v.dim());
            for (auto& [k, c] : a.table[i][j]) expect = expect + v.actions[k] * c;
            if (!(prod == expect)) return false;
        }
    return true;
}

// outer tensor product V (x) W over A (x) B with Koszul action
template <class K>
SuperModule<K> outer_tensor(const AssocSuper<K>& A, const SuperModule<K>& V,
                            const AssocSuper<K>& B, const SuperModule<K>& W) {
    SuperModule<K> t;
    int dv = V.dim(), dw = W.dim();
    // coordinate order: even pairs first, then odd pairs
    std::vector<std::pair<int, int>> coords;
    for (int i = 0; i < dv; ++i)
        for (int j = 0; j < dw; ++j)
            if (padd(V.coord_parity(i), W.coord_parity(j)) == Parity::Even)
                coords.emplace_back(i, j);
    t.dim0 = static_cast<int>(coords.size());
    for (int i = 0; i < dv; ++i)
        for (int j = 0; j < dw; ++j)
            if (padd(V.coord_parity(i), W.coord_parity(j)) == Parity::Odd)
                coords.emplace_back(i, j);
    t.dim1 = static_cast<int>(coords.size()) - t.dim0;
    int D = static_cast<int>(coords.size());
    for (int a = 0; a < A.dim(); ++a)
        for (int b = 0; b < B.dim(); ++b) {
            Matrix<K> act(D, D);
            for (int col = 0; col < D; ++col) {
                auto [vi, wj] = coords[col];
                K sgn = koszul<K>(B.parity[b], V.coord_parity(vi));
                for (int row = 0; row < D; ++row) {
                    auto [vr, wr] = coords[row];
                    K c = V.actions[a](vr, vi) * W.actions[b](wr, wj);
                    act(row, col) += sgn * c;
                }
            }
            t.actions.push_back(std::move(act));
        }
    return t;
}

// parity change functor: flips the grading, twists odd actions by -1
template <class K>
SuperModule<K> parity_change(const SuperModule<K>& v, const std::vector<Parity>& alg_parity) {
    SuperModule<K> out;
    out.dim0 = v.dim1;
    out.dim1 = v.dim0;
    out.type = v.type;
    int D = v.dim();
    // permutation moving the old odd block to the front
    std::vector<int> perm(D);
    for (int i = 0; i < v.dim1; ++i) perm[i] = v.dim0 + i;
    for (int i = 0; i < v.dim0; ++i) perm[v.dim1 + i] = i;
    for (size_t a = 0; a < v.actions.size(); ++a) {
        Matrix<K> m(D, D);
        K sgn = (alg_parity[a] == Parity::Odd) ? K(-1) : K(1);
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j) m(i, j) = sgn * v.actions[a](perm[i], perm[j]);
        out.actions.push_back(std::move(m));
    }
    return out;
}

// supercommutant dimensions of a module: T rho(a) = (-1)^{|T||a|} rho(a) T
template <class K>
std::pair<int, int> supercommutant_dims(const std::vector<Parity>& alg_parity,
                                        const SuperModule<K>& v) {
    int D = v.dim();
    std::pair<int, int> out{0, 0};
    for (int tp = 0; tp <= 1; ++tp) {
        // T with fixed parity: coordinates (i,j) with parity(i)+parity(j) = tp
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < D; ++i)
            for (int j = 0; j < D; ++j)
                if (pval(padd(v.coord_parity(i), v.coord_parity(j))) == tp)
                    slots.emplace_back(i, j);
        if (slots.empty()) continue;
        Matrix<K> sys(static_cast<int>(v.actions.size()) * D * D,
                      static_cast<int>(slots.size()));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [ti, tj] = slots[s];
            for (size_t a = 0; a < v.actions.size(); ++a) {
                K sgn = koszul<K>(static_cast<Parity>(tp), alg_parity[a]);
                // (T rho - sgn rho T)(r, c)
                for (int c = 0; c < D; ++c) {
                    // T rho: row ti gets rho(tj, c)
                    sys(static_cast<int>(a) * D * D + ti * D + c, static_cast<int>(s)) +=
                        v.actions[a](tj, c);
                }
                for (int r = 0; r < D; ++r) {
                    sys(static_cast<int>(a) * D * D + r * D + tj, static_cast<int>(s)) -=
                        sgn * v.actions[a](r, ti);
                }
            }
        }
        int nd = static_cast<int>(sys.nullspace().size());
        (tp ? out.second : out.first) = nd;
    }
    return out;
}

// Schur type-table verdicts for the outer tensor product of typed irreducibles
struct OuterTensorVerdict {
    SimpleKind::Kind predicted = SimpleKind::Unknown;
    bool splits_in_two = false; // Q x Q case
    std::pair<int, int> commutant{0, 0};
    bool commutant_matches = false;
    // explicit decomposition (small dims over F_p): constituent dims
    std::vector<int> constituent_dims;
    bool constituents_verified = false;
};

inline SimpleKind::Kind predict_type(SimpleKind::Kind a, SimpleKind::Kind b) {
    using SK = SimpleKind;
    if (a == SK::TypeM && b == SK::TypeM) return SK::TypeM;
    if (a == SK::TypeQ && b == SK::TypeQ) return SK::TypeM; // two constituents
    return SK::TypeQ;
}

} // namespace wsuper
