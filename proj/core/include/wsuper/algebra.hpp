#pragma once

#include "wsuper/matrix.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wsuper {

enum class Parity : int { Even = 0, Odd = 1 };

inline int pval(Parity p) { return static_cast<int>(p); }
inline Parity padd(Parity a, Parity b) {
    return static_cast<Parity>((pval(a) + pval(b)) & 1);
}

// Sign (-1)^{|x||y|}.
template <class K>
K koszul(Parity a, Parity b) {
    return (pval(a) && pval(b)) ? K(-1) : K(1);
}

template <class K>
using SparseRow = std::vector<std::pair<int, K>>; // (basis index, coefficient)

// Finite-dimensional Lie superalgebra given by an ordered basis, exact
// structure constants and an invariant bilinear form. Immutable once built.
template <class K>
struct LieSuperalgebra {
    std::vector<std::string> names;
    std::vector<Parity> parity;
    // table[i][j] = [b_i, b_j] as a sparse combination of basis elements
    std::vector<std::vector<SparseRow<K>>> table;
    Matrix<K> gram;
    std::string type_tag;
    std::vector<int> summand_of; // direct-sum membership per basis element

    // optional matrix realization (block sizes even x odd)
    bool has_matrices = false;
    int block_m = 0, block_n = 0;
    std::vector<Matrix<K>> matrices;

    int dim() const { return static_cast<int>(names.size()); }
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

    bool is_homogeneous(const Vec<K>& x, Parity* out = nullptr) const {
        bool has_even = false, has_odd = false;
        for (int i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            (parity[i] == Parity::Even ? has_even : has_odd) = true;
        }
        if (has_even && has_odd) return false;
        if (out) *out = has_odd ? Parity::Odd : Parity::Even;
        return true;
    }

    Vec<K> bracket(const Vec<K>& x, const Vec<K>& y) const {
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

    K form(const Vec<K>& x, const Vec<K>& y) const {
        K out(0);
        for (int i = 0; i < dim(); ++i) {
            if (x[i].is_zero()) continue;
            for (int j = 0; j < dim(); ++j)
                if (!y[j].is_zero()) out += x[i] * gram(i, j) * y[j];
        }
        return out;
    }

    // adjoint matrix of x acting on the algebra (columns = images of basis)
    Matrix<K> ad(const Vec<K>& x) const {
        Matrix<K> m(dim(), dim());
        for (int j = 0; j < dim(); ++j) {
            Vec<K> img = bracket(x, basis_vec(j));
            for (int i = 0; i < dim(); ++i) m(i, j) = img[i];
        }
        return m;
    }

    Matrix<K> realize(const Vec<K>& x) const {
        if (!has_matrices) throw std::logic_error("algebra has no matrix realization");
        Matrix<K> m(block_m + block_n, block_m + block_n);
        for (int i = 0; i < dim(); ++i)
            if (!x[i].is_zero()) m = m + matrices[i] * x[i];
        return m;
    }
};

// ---------------------------------------------------------------------------
// validators

template <class K>
bool check_super_antisymmetry(const LieSuperalgebra<K>& g) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            Vec<K> lhs = g.bracket(g.basis_vec(i), g.basis_vec(j));
            Vec<K> rhs = g.bracket(g.basis_vec(j), g.basis_vec(i));
            K s = koszul<K>(g.parity[i], g.parity[j]);
            for (int k = 0; k < g.dim(); ++k)
                if (lhs[k] + s * rhs[k] != K(0)) return false;
        }
    return true;
}

template <class K>
bool check_parity_compat(const LieSuperalgebra<K>& g) {
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            for (auto& [k, c] : g.table[i][j])
                if (!c.is_zero() && g.parity[k] != padd(g.parity[i], g.parity[j]))
                    return false;
    return true;
}

template <class K>
bool check_super_jacobi(const LieSuperalgebra<K>& g) {
    int d = g.dim();
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) {
                // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|}[y,[x,z]]
                Vec<K> lhs = g.bracket(g.basis_vec(x), g.bracket(g.basis_vec(y), g.basis_vec(z)));
                Vec<K> r1 = g.bracket(g.bracket(g.basis_vec(x), g.basis_vec(y)), g.basis_vec(z));
                Vec<K> r2 = g.bracket(g.basis_vec(y), g.bracket(g.basis_vec(x), g.basis_vec(z)));
                K s = koszul<K>(g.parity[x], g.parity[y]);
                for (int k = 0; k < d; ++k)
                    if (lhs[k] != r1[k] + s * r2[k]) return false;
            }
    return true;
}

// bracket via structure constants vs bracket via the matrix realization
template <class K>
bool check_matrix_consistency(const LieSuperalgebra<K>& g) {
    if (!g.has_matrices) return true;
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j) {
            Matrix<K> lhs = g.realize(g.bracket(g.basis_vec(i), g.basis_vec(j)));
            Matrix<K> rhs = g.matrices[i] * g.matrices[j] -
                            (g.matrices[j] * g.matrices[i]) * koszul<K>(g.parity[i], g.parity[j]);
            if (!(lhs == rhs)) return false;
        }
    return true;
}

struct FormReport {
    bool even = false;
    bool supersymmetric = false;
    bool invariant = false;
    bool nondegenerate = false;
    bool all() const { return even && supersymmetric && invariant && nondegenerate; }
};

template <class K>
FormReport verify_form(const LieSuperalgebra<K>& g) {
    FormReport rep;
    int d = g.dim();
    rep.even = true;
    for (int i = 0; i < d && rep.even; ++i)
        for (int j = 0; j < d; ++j)
            if (g.parity[i] != g.parity[j] && !g.gram(i, j).is_zero()) {
                rep.even = false;
                break;
            }
    rep.supersymmetric = true;
    for (int i = 0; i < d && rep.supersymmetric; ++i)
        for (int j = 0; j < d; ++j)
            if (g.gram(i, j) != koszul<K>(g.parity[i], g.parity[j]) * g.gram(j, i)) {
                rep.supersymmetric = false;
                break;
            }
    rep.invariant = true;
    for (int i = 0; i < d && rep.invariant; ++i)
        for (int j = 0; j < d && rep.invariant; ++j)
            for (int k = 0; k < d; ++k) {
                K lhs = g.form(g.bracket(g.basis_vec(i), g.basis_vec(j)), g.basis_vec(k));
                K rhs = g.form(g.basis_vec(i), g.bracket(g.basis_vec(j), g.basis_vec(k)));
                if (lhs != rhs) {
                    rep.invariant = false;
                    break;
                }
            }
    rep.nondegenerate = !g.gram.det().is_zero();
    return rep;
}

template <class K>
bool validate(const LieSuperalgebra<K>& g) {
    return check_super_antisymmetry(g) && check_parity_compat(g) &&
           check_super_jacobi(g) && check_matrix_consistency(g);
}

// ---------------------------------------------------------------------------
// helpers for matrix-realized constructions

inline Parity gl_entry_parity(int i, int j, int m) {
    return ((i < m) != (j < m)) ? Parity::Odd : Parity::Even;
}

template <class K>
K supertrace(const Matrix<K>& x, int m) {
    K t(0);
    for (int i = 0; i < x.rows(); ++i) t += (i < m) ? x(i, i) : -x(i, i);
    return t;
}

// Build a Lie superalgebra from parity-homogeneous matrices spanning a
// subalgebra of gl(m|n); the form is the supertrace form.
template <class K>
LieSuperalgebra<K> algebra_from_matrices(std::vector<Matrix<K>> mats,
                                         std::vector<Parity> parities,
                                         std::vector<std::string> names, int m, int n,
                                         const std::string& tag) {
    LieSuperalgebra<K> g;
    g.type_tag = tag;
    g.block_m = m;
    g.block_n = n;
    g.has_matrices = true;
    g.matrices = std::move(mats);
    g.parity = std::move(parities);
    g.names = std::move(names);
    int d = g.dim();
    g.summand_of.assign(d, 0);
    int N = m + n;

    // coefficients of a matrix in the chosen basis, by exact solve
    Matrix<K> span(N * N, d);
    for (int b = 0; b < d; ++b)
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) span(i * N + j, b) = g.matrices[b](i, j);
    auto decompose = [&](const Matrix<K>& x) -> SparseRow<K> {
        Vec<K> flat(N * N);
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) flat[i * N + j] = x(i, j);
        auto sol = span.solve(flat);
        if (!sol) throw std::logic_error("matrix span not closed under bracket");
        SparseRow<K> row;
        for (int k = 0; k < d; ++k)
            if (!(*sol)[k].is_zero()) row.emplace_back(k, (*sol)[k]);
        return row;
    };

    g.table.assign(d, std::vector<SparseRow<K>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Matrix<K> br = g.matrices[i] * g.matrices[j] -
                           (g.matrices[j] * g.matrices[i]) * koszul<K>(g.parity[i], g.parity[j]);
            g.table[i][j] = decompose(br);
        }

    g.gram = Matrix<K>(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            g.gram(i, j) = supertrace<K>(g.matrices[i] * g.matrices[j], m);
    return g;
}

// ---------------------------------------------------------------------------
// builders

// gl(m|n) on matrix units with the supertrace form; traceless = sl(m|n).
template <class K>
LieSuperalgebra<K> build_gl(int m, int n, bool traceless = false) {
    if (m < 0 || n < 0 || m + n < 1) throw std::invalid_argument("build_gl: bad sizes");
    int N = m + n;
    std::vector<Matrix<K>> mats;
    std::vector<Parity> ps;
    std::vector<std::string> names;
    auto unit = [&](int i, int j) {
        Matrix<K> u(N, N);
        u(i, j) = K(1);
        return u;
    };
    if (!traceless) {
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                mats.push_back(unit(i, j));
                ps.push_back(gl_entry_parity(i, j, m));
                names.push_back("E" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            }
        return algebra_from_matrices(std::move(mats), std::move(ps), std::move(names), m, n,
                                     "gl(" + std::to_string(m) + "|" + std::to_string(n) + ")");
    }
    // supertraceless: off-diagonal units plus str-zero diagonal differences
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            if (i != j) {
                mats.push_back(unit(i, j));
                ps.push_back(gl_entry_parity(i, j, m));
                names.push_back("E" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
            }
    for (int i = 0; i + 1 < N; ++i) {
        // str(E_ii) = +1 for i < m, -1 beyond; pick str-zero combinations
        Matrix<K> h(N, N);
        h(i, i) = K(1);
        h(i + 1, i + 1) = (i + 1 < m || i >= m) ? K(-1) : K(1);
        mats.push_back(h);
        ps.push_back(Parity::Even);
        names.push_back("H" + std::to_string(i + 1));
    }
    return algebra_from_matrices(std::move(mats), std::move(ps), std::move(names), m, n,
                                 "sl(" + std::to_string(m) + "|" + std::to_string(n) + ")");
}

// osp(1|2n) as the subalgebra of gl(1|2n) preserving the standard even
// supersymmetric form (symmetric 1 on the even line, symplectic on the rest).
template <class K>
LieSuperalgebra<K> build_osp12n(int n) {
    if (n < 1) throw std::invalid_argument("build_osp12n: n >= 1 required");
    int N = 1 + 2 * n;
    Matrix<K> B(N, N);
    B(0, 0) = K(1);
    for (int i = 0; i < n; ++i) {
        B(1 + i, 1 + n + i) = K(1);
        B(1 + n + i, 1 + i) = K(-1);
    }
    auto vparity = [&](int i) { return i == 0 ? Parity::Even : Parity::Odd; };

    // X in gl(1|2n) of parity pi with B(Xu,v) + (-1)^{pi|u|} B(u,Xv) = 0.
    std::vector<Matrix<K>> basis_mats;
    std::vector<Parity> ps;
    for (int pi = 0; pi <= 1; ++pi) {
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j)
                if (pval(gl_entry_parity(i, j, 1)) == pi) slots.emplace_back(i, j);
        Matrix<K> cond(N * N, static_cast<int>(slots.size()));
        for (size_t s = 0; s < slots.size(); ++s) {
            auto [a, b] = slots[s];
            // with X = E_ab: B(X e_u, e_v) contributes at u = b; the second
            // summand B(e_u, X e_v) (Koszul-signed) at v = b
            for (int v = 0; v < N; ++v)
                cond(b * N + v, static_cast<int>(s)) += B(a, v);
            for (int u = 0; u < N; ++u) {
                K sgn = (pi && pval(vparity(u))) ? K(-1) : K(1);
                cond(u * N + b, static_cast<int>(s)) += sgn * B(u, a);
            }
        }
        auto null_basis = cond.nullspace();
        for (auto& coeffs : null_basis) {
            Matrix<K> X(N, N);
            for (size_t s = 0; s < slots.size(); ++s)
                X(slots[s].first, slots[s].second) = coeffs[s];
            basis_mats.push_back(X);
            ps.push_back(pi ? Parity::Odd : Parity::Even);
        }
    }
    std::vector<std::string> names;
    for (size_t i = 0; i < basis_mats.size(); ++i)
        names.push_back((ps[i] == Parity::Even ? "b" : "c") + std::to_string(i + 1));
    return algebra_from_matrices(std::move(basis_mats), std::move(ps), std::move(names), 1, 2 * n,
                                 "osp(1|" + std::to_string(2 * n) + ")");
}

// abelian toral algebra of dimension d with the identity Gram matrix
template <class K>
LieSuperalgebra<K> build_toral(int d) {
    LieSuperalgebra<K> g;
    g.type_tag = "toral(" + std::to_string(d) + ")";
    for (int i = 0; i < d; ++i) {
        g.names.push_back("t" + std::to_string(i + 1));
        g.parity.push_back(Parity::Even);
    }
    g.summand_of.assign(d, 0);
    g.table.assign(d, std::vector<SparseRow<K>>(d));
    g.gram = Matrix<K>::identity(d);
    return g;
}

// D(2,1;a), a != 0,-1: the 17-dimensional exceptional family on the
// Chevalley-type basis {H_i, e_i, f_i} plus composite root vectors. The
// brackets beyond the generator relations are deduced by super-Jacobi
// closure from the defining formulas; the form is extended by invariance.
template <class K>
LieSuperalgebra<K> build_d21a(const K& a) {
    if (a == K(0) || a == K(-1))
        throw std::invalid_argument("build_d21a: parameter must avoid {0,-1}");
    // basis layout
    enum {
        H1, H2, H3, E1, E2, E3, F1, F2, F3,
        E12, E13, E123, E1123, F21, F31, F321, F3211, DIM
    };
    const char* nm[DIM] = {"H1", "H2", "H3", "e1", "e2", "e3", "f1", "f2", "f3",
                           "e12", "e13", "e123", "e1123", "f21", "f31", "f321", "f3211"};
    std::vector<Parity> par(DIM, Parity::Even);
    for (int i : {E1, F1, E12, E13, E123, F21, F31, F321}) par[i] = Parity::Odd;

    // root weights in the alpha-lattice
    int wt[DIM][3] = {
        {0, 0, 0}, {0, 0, 0}, {0, 0, 0},
        {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
        {-1, 0, 0}, {0, -1, 0}, {0, 0, -1},
        {1, 1, 0}, {1, 0, 1}, {1, 1, 1}, {2, 1, 1},
        {-1, -1, 0}, {-1, 0, -1}, {-1, -1, -1}, {-2, -1, -1}};

    K cartan[3][3] = {{K(0), K(1), a}, {K(-1), K(2), K(0)}, {K(-1), K(0), K(2)}};

    auto vec = [&](int i) {
        Vec<K> v(DIM, K(0));
        v[i] = K(1);
        return v;
    };
    Vec<K> zero(DIM, K(0));
    // h1,h2,h3 of the generator relations expressed in the H-basis:
    // H2 = (2h1 - h2 - a h3)/(1+a), so h2 = 2H1 - (1+a)H2 - aH3
    Vec<K> hgen[3];
    hgen[0] = vec(H1);
    hgen[1] = zero;
    hgen[1][H1] = K(2);
    hgen[1][H2] = -(K(1) + a);
    hgen[1][H3] = -a;
    hgen[2] = vec(H3);

    std::vector<std::vector<std::optional<Vec<K>>>> br(DIM,
        std::vector<std::optional<Vec<K>>>(DIM));

    auto set_br = [&](int i, int j, const Vec<K>& v) {
        br[i][j] = v;
        Vec<K> w(DIM, K(0));
        K s = -koszul<K>(par[i], par[j]);
        for (int k = 0; k < DIM; ++k) w[k] = s * v[k];
        if (!(i == j)) br[j][i] = w;
    };

    // [H-combination, root vector]: evaluate pairing of weights against h's
    auto wt_pair = [&](const Vec<K>& hcomb, int root_elt) {
        // eigenvalue of ad(hcomb) on root_elt: coefficients in hgen basis...
        // hcomb is in the H-basis; convert: H1=h1, H3=h3, H2=(2h1-h2-ah3)/(1+a)
        // so hcomb = x0*H1+x1*H2+x2*H3 = (x0 + 2x1/(1+a)) h1 - x1/(1+a) h2 +
        //            (x2 - a x1/(1+a)) h3
        K c1 = hcomb[H1] + K(2) * hcomb[H2] / (K(1) + a);
        K c2 = -hcomb[H2] / (K(1) + a);
        K c3 = hcomb[H3] - a * hcomb[H2] / (K(1) + a);
        K val(0);
        K cs[3] = {c1, c2, c3};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                val += cs[i] * cartan[i][j] * K(wt[root_elt][j]);
        return val;
    };

    // seed: Cartan action rows
    for (int hidx : {H1, H2, H3}) {
        for (int x = 0; x < DIM; ++x) {
            if (x == H1 || x == H2 || x == H3) {
                set_br(hidx, x, zero);
                continue;
            }
            Vec<K> v = zero;
            v[x] = wt_pair(vec(hidx), x);
            set_br(hidx, x, v);
        }
    }
    // generator seeds
    auto scaled = [&](const Vec<K>& v, const K& c) {
        Vec<K> w = v;
        for (auto& t : w) t *= c;
        return w;
    };
    int egen[3] = {E1, E2, E3}, fgen[3] = {F1, F2, F3};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            set_br(egen[i], fgen[j], i == j ? hgen[i] : zero);
    set_br(E1, E1, zero);
    set_br(F1, F1, zero);
    set_br(E2, E3, zero);
    set_br(F2, F3, zero);
    // defining formulas
    set_br(E1, E2, vec(E12));
    set_br(E1, E3, vec(E13));
    set_br(E12, E3, vec(E123));
    set_br(E1, E123, scaled(vec(E1123), K(1) + a));
    set_br(F2, F1, vec(F21));
    set_br(F3, F1, vec(F31));
    set_br(F3, F21, vec(F321));
    set_br(F321, F1, scaled(vec(F3211), -(K(1) + a)));

    // weight shortcut: bracket vanishes when the weight sum hits no root
    auto weight_target = [&](int i, int j) -> std::optional<int> {
        int w[3];
        bool zerow = true;
        for (int k = 0; k < 3; ++k) {
            w[k] = wt[i][k] + wt[j][k];
            if (w[k]) zerow = false;
        }
        if (zerow) return -1; // Cartan target
        for (int t = E1; t < DIM; ++t)
            if (wt[t][0] == w[0] && wt[t][1] == w[1] && wt[t][2] == w[2]) return t;
        return std::nullopt; // no target: bracket is zero
    };
    for (int i = 0; i < DIM; ++i)
        for (int j = 0; j < DIM; ++j)
            if (!br[i][j] && !weight_target(i, j)) set_br(i, j, zero);

    // composite definitions elt = coeff*[u,v]
    struct Def { int u, v; K c; };
    std::map<int, Def> defs;
    defs[E12] = {E1, E2, K(1)};
    defs[E13] = {E1, E3, K(1)};
    defs[E123] = {E12, E3, K(1)};
    defs[E1123] = {E1, E123, (K(1) / (K(1) + a))};
    defs[F21] = {F2, F1, K(1)};
    defs[F31] = {F3, F1, K(1)};
    defs[F321] = {F3, F21, K(1)};
    defs[F3211] = {F321, F1, (-K(1) / (K(1) + a))};

    // closure: [x,[u,v]] = [[x,u],v] + (-1)^{|x||u|}[u,[x,v]]
    auto elt_bracket_basis = [&](const Vec<K>& x, int j) -> std::optional<Vec<K>> {
        Vec<K> out = zero;
        for (int k = 0; k < DIM; ++k) {
            if (x[k].is_zero()) continue;
            if (!br[k][j]) return std::nullopt;
            for (int t = 0; t < DIM; ++t) out[t] += x[k] * (*br[k][j])[t];
        }
        return out;
    };
    auto basis_bracket_elt = [&](int i, const Vec<K>& y) -> std::optional<Vec<K>> {
        Vec<K> out = zero;
        for (int k = 0; k < DIM; ++k) {
            if (y[k].is_zero()) continue;
            if (!br[i][k]) return std::nullopt;
            for (int t = 0; t < DIM; ++t) out[t] += y[k] * (*br[i][k])[t];
        }
        return out;
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < DIM; ++i)
            for (int j = 0; j < DIM; ++j) {
                if (br[i][j]) continue;
                if (br[j][i]) {
                    set_br(j, i, *br[j][i]);
                    progress = true;
                    continue;
                }
                auto it = defs.find(j);
                if (it == defs.end()) continue;
                int u = it->second.u, v = it->second.v;
                if (!br[i][u] || !br[i][v]) continue;
                auto t1 = elt_bracket_basis(*br[i][u], v);
                auto t2 = basis_bracket_elt(u, *br[i][v]);
                if (!t1 || !t2) continue;
                Vec<K> out = zero;
                K s = koszul<K>(par[i], par[u]);
                for (int t = 0; t < DIM; ++t)
                    out[t] = it->second.c * ((*t1)[t] + s * (*t2)[t]);
                set_br(i, j, out);
                progress = true;
            }
    }
    for (int i = 0; i < DIM; ++i)
        for (int j = 0; j < DIM; ++j)
            if (!br[i][j]) throw std::logic_error("build_d21a: bracket closure stalled");

    LieSuperalgebra<K> g;
    g.type_tag = "D(2,1;a)";
    for (int i = 0; i < DIM; ++i) g.names.push_back(nm[i]);
    g.parity = par;
    g.summand_of.assign(DIM, 0);
    g.table.assign(DIM, std::vector<SparseRow<K>>(DIM));
    for (int i = 0; i < DIM; ++i)
        for (int j = 0; j < DIM; ++j)
            for (int k = 0; k < DIM; ++k)
                if (!(*br[i][j])[k].is_zero()) g.table[i][j].emplace_back(k, (*br[i][j])[k]);

    // form: seeds on generators, extended by invariance (x,[u,v]) = ([x,u],v)
    std::vector<std::vector<std::optional<K>>> form(DIM, std::vector<std::optional<K>>(DIM));
    auto gen_form = [&](int i, int j) -> K {
        // values on {h_a} x {h_b}, e_i x f_j; everything else zero
        auto hcoef = [&](int x, K out[3]) {
            // coordinates of basis Cartans in the h-generator basis
            out[0] = out[1] = out[2] = K(0);
            if (x == H1) out[0] = K(1);
            else if (x == H3) out[2] = K(1);
            else if (x == H2) {
                out[0] = K(2) / (K(1) + a);
                out[1] = -K(1) / (K(1) + a);
                out[2] = -a / (K(1) + a);
            }
        };
        bool icart = (i == H1 || i == H2 || i == H3), jcart = (j == H1 || j == H2 || j == H3);
        if (icart && jcart) {
            K hh[3][3] = {{K(0), K(-1), K(-1)},
                          {K(-1), K(-2), K(0)},
                          {K(-1), K(0), K(-2) / a}};
            K ci[3], cj[3], out(0);
            hcoef(i, ci);
            hcoef(j, cj);
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y) out += ci[x] * hh[x][y] * cj[y];
            return out;
        }
        if (icart || jcart) return K(0);
        K ef[3] = {K(1), K(-1), -K(1) / a};
        for (int t = 0; t < 3; ++t) {
            if (i == egen[t] && j == fgen[t]) return ef[t];
            if (i == fgen[t] && j == egen[t])
                return koszul<K>(par[i], par[j]) * ef[t];
        }
        return K(0);
    };
    for (int i = H1; i <= F3; ++i)
        for (int j = H1; j <= F3; ++j) form[i][j] = gen_form(i, j);
    // pairs with non-cancelling weights vanish (Cartan-invariance of the form)
    for (int i = 0; i < DIM; ++i)
        for (int j = 0; j < DIM; ++j)
            if (wt[i][0] + wt[j][0] || wt[i][1] + wt[j][1] || wt[i][2] + wt[j][2])
                form[i][j] = K(0);

    // recursive extension by invariance, ordered by definition height
    std::vector<int> order = {E12, E13, F21, F31, E123, F321, E1123, F3211};
    for (int stage = 0; stage < (int)order.size(); ++stage) {
        int j = order[stage];
        auto& dj = defs[j];
        for (int i = 0; i < DIM; ++i) {
            if (form[i][j]) continue;
            // (b_i, [u,v]) = ([b_i,u],v)
            Vec<K> biu = *br[i][dj.u];
            K val(0);
            for (int k = 0; k < DIM; ++k) {
                if (biu[k].is_zero()) continue;
                if (!form[k][dj.v]) throw std::logic_error("build_d21a: form recursion order");
                val += biu[k] * *form[k][dj.v];
            }
            form[i][j] = dj.c * val;
            form[j][i] = koszul<K>(par[i], par[j]) * *form[i][j];
        }
    }
    g.gram = Matrix<K>(DIM, DIM);
    for (int i = 0; i < DIM; ++i)
        for (int j = 0; j < DIM; ++j) g.gram(i, j) = *form[i][j];
    return g;
}

// block-diagonal direct sum; summand index is retained per basis element
template <class K>
LieSuperalgebra<K> direct_sum(const std::vector<LieSuperalgebra<K>>& parts) {
    if (parts.empty()) throw std::invalid_argument("direct_sum: empty list");
    LieSuperalgebra<K> g;
    g.type_tag = "direct_sum";
    int total = 0;
    for (auto& p : parts) total += p.dim();
    g.table.assign(total, std::vector<SparseRow<K>>(total));
    g.gram = Matrix<K>(total, total);
    int off = 0;
    for (size_t s = 0; s < parts.size(); ++s) {
        const auto& p = parts[s];
        for (int i = 0; i < p.dim(); ++i) {
            g.names.push_back("s" + std::to_string(s + 1) + "." + p.names[i]);
            g.parity.push_back(p.parity[i]);
            g.summand_of.push_back(static_cast<int>(s));
        }
        for (int i = 0; i < p.dim(); ++i)
            for (int j = 0; j < p.dim(); ++j) {
                for (auto& [k, c] : p.table[i][j])
                    g.table[off + i][off + j].emplace_back(off + k, c);
                g.gram(off + i, off + j) = p.gram(i, j);
            }
        off += p.dim();
    }
    return g;
}

// Subalgebra on a parity-homogeneous spanning set (closed under bracket),
// with the induced structure constants and restricted form.
template <class K>
LieSuperalgebra<K> subalgebra(const LieSuperalgebra<K>& g, const std::vector<Vec<K>>& span_vecs,
                              const std::string& tag) {
    LieSuperalgebra<K> s;
    s.type_tag = tag;
    int d = static_cast<int>(span_vecs.size());
    Matrix<K> span(g.dim(), d);
    for (int j = 0; j < d; ++j) {
        Parity p;
        if (!g.is_homogeneous(span_vecs[j], &p))
            throw std::invalid_argument("subalgebra: basis vector not parity homogeneous");
        s.parity.push_back(p);
        s.names.push_back("w" + std::to_string(j + 1));
        for (int i = 0; i < g.dim(); ++i) span(i, j) = span_vecs[j][i];
    }
    s.summand_of.assign(d, 0);
    s.table.assign(d, std::vector<SparseRow<K>>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            Vec<K> br = g.bracket(span_vecs[i], span_vecs[j]);
            auto sol = span.solve(br);
            if (!sol) throw std::invalid_argument("subalgebra: span not closed under bracket");
            for (int k = 0; k < d; ++k)
                if (!(*sol)[k].is_zero()) s.table[i][j].emplace_back(k, (*sol)[k]);
        }
    s.gram = Matrix<K>(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s.gram(i, j) = g.form(span_vecs[i], span_vecs[j]);
    return s;
}

} // namespace wsuper
