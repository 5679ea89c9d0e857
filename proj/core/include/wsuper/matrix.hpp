#pragma once

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

namespace wsuper {

template <class K>
using Vec = std::vector<K>;

template <class K>
class Matrix {
public:
    Matrix() : r_(0), c_(0) {}
    Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, K(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = K(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    K& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const K& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Vec<K> row(int i) const {
        Vec<K> out(c_);
        for (int j = 0; j < c_; ++j) out[j] = (*this)(i, j);
        return out;
    }
    void set_row(int i, const Vec<K>& v) {
        assert((int)v.size() == c_);
        for (int j = 0; j < c_; ++j) (*this)(i, j) = v[j];
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        assert(x.c_ == y.r_);
        Matrix z(x.r_, y.c_);
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                if (x(i, k).is_zero()) continue;
                for (int j = 0; j < y.c_; ++j) {
                    if (y(k, j).is_zero()) continue;
                    z(i, j) += x(i, k) * y(k, j);
                }
            }
        return z;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        assert(x.r_ == y.r_ && x.c_ == y.c_);
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        assert(x.r_ == y.r_ && x.c_ == y.c_);
        for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    Matrix operator*(const K& s) const {
        Matrix z = *this;
        for (auto& v : z.a_) v *= s;
        return z;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) {
        return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_;
    }

    bool is_zero() const {
        for (auto& v : a_) if (!v.is_zero()) return false;
        return true;
    }

    Vec<K> apply(const Vec<K>& v) const {
        assert((int)v.size() == c_);
        Vec<K> out(r_, K(0));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (!(*this)(i, j).is_zero() && !v[j].is_zero())
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // In-place reduced row echelon form; returns pivot column per pivot row.
    std::vector<int> rref() {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int sel = -1;
            for (int i = row; i < r_; ++i)
                if (!(*this)(i, col).is_zero()) { sel = i; break; }
            if (sel < 0) continue;
            if (sel != row)
                for (int j = 0; j < c_; ++j) std::swap((*this)(sel, j), (*this)(row, j));
            K inv = (*this)(row, col).inv();
            for (int j = col; j < c_; ++j) (*this)(row, j) *= inv;
            for (int i = 0; i < r_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) continue;
                K f = (*this)(i, col);
                for (int j = col; j < c_; ++j) (*this)(i, j) -= f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const {
        Matrix m = *this;
        return static_cast<int>(m.rref().size());
    }

    // Basis of the right nullspace {v : Av = 0}, echelonized.
    std::vector<Vec<K>> nullspace() const {
        Matrix m = *this;
        std::vector<int> piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (int p : piv) is_piv[p] = true;
        std::vector<Vec<K>> basis;
        for (int freec = 0; freec < c_; ++freec) {
            if (is_piv[freec]) continue;
            Vec<K> v(c_, K(0));
            v[freec] = K(1);
            for (size_t pr = 0; pr < piv.size(); ++pr)
                v[piv[pr]] = -m(static_cast<int>(pr), freec);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // One solution of Ax = b, if any.
    std::optional<Vec<K>> solve(const Vec<K>& b) const {
        assert((int)b.size() == r_);
        Matrix aug(r_, c_ + 1);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_) = b[i];
        }
        std::vector<int> piv = aug.rref();
        for (int p : piv)
            if (p == c_) return std::nullopt;
        Vec<K> x(c_, K(0));
        for (size_t pr = 0; pr < piv.size(); ++pr)
            x[piv[pr]] = aug(static_cast<int>(pr), c_);
        return x;
    }

    K det() const {
        assert(r_ == c_);
        Matrix m = *this;
        K d(1);
        for (int col = 0; col < c_; ++col) {
            int sel = -1;
            for (int i = col; i < r_; ++i)
                if (!m(i, col).is_zero()) { sel = i; break; }
            if (sel < 0) return K(0);
            if (sel != col) {
                for (int j = 0; j < c_; ++j) std::swap(m(sel, j), m(col, j));
                d = -d;
            }
            d *= m(col, col);
            K inv = m(col, col).inv();
            for (int i = col + 1; i < r_; ++i) {
                if (m(i, col).is_zero()) continue;
                K f = m(i, col) * inv;
                for (int j = col; j < c_; ++j) m(i, j) -= f * m(col, j);
            }
        }
        return d;
    }

    std::optional<Matrix> inverse() const {
        assert(r_ == c_);
        Matrix aug(r_, 2 * c_);
        for (int i = 0; i < r_; ++i) {
            for (int j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_ + i) = K(1);
        }
        auto piv = aug.rref();
        if ((int)piv.size() != r_) return std::nullopt;
        Matrix inv(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
        return inv;
    }

    // Monic characteristic polynomial coefficients c[0..n], c[n] = 1,
    // via Faddeev-LeVerrier (needs division by small integers in K).
    Vec<K> char_poly() const {
        assert(r_ == c_);
        int n = r_;
        Vec<K> c(n + 1, K(0));
        c[n] = K(1);
        Matrix M(n, n);
        for (int k = 1; k <= n; ++k) {
            // M_k = A*M_{k-1} + c_{n-k+1} I
            Matrix AM = (*this) * M;
            for (int i = 0; i < n; ++i) AM(i, i) += c[n - k + 1];
            M = AM;
            Matrix AMk = (*this) * M;
            K tr(0);
            for (int i = 0; i < n; ++i) tr += AMk(i, i);
            c[n - k] = tr.is_zero() ? K(0) : -(tr / K(k));
        }
        return c;
    }

private:
    int r_, c_;
    std::vector<K> a_;
};

// Row span utilities on coefficient vectors.
template <class K>
Matrix<K> rows_to_matrix(const std::vector<Vec<K>>& rows, int ncols) {
    Matrix<K> m(static_cast<int>(rows.size()), ncols);
    for (size_t i = 0; i < rows.size(); ++i) m.set_row(static_cast<int>(i), rows[i]);
    return m;
}

template <class K>
int span_rank(const std::vector<Vec<K>>& rows, int ncols) {
    if (rows.empty()) return 0;
    return rows_to_matrix(rows, ncols).rank();
}

// Echelonized basis of the row span.
template <class K>
std::vector<Vec<K>> span_basis(const std::vector<Vec<K>>& rows, int ncols) {
    if (rows.empty()) return {};
    Matrix<K> m = rows_to_matrix(rows, ncols);
    auto piv = m.rref();
    std::vector<Vec<K>> out;
    for (size_t i = 0; i < piv.size(); ++i) out.push_back(m.row(static_cast<int>(i)));
    return out;
}

// Does v lie in the row span of rows?
template <class K>
bool in_span(const std::vector<Vec<K>>& rows, const Vec<K>& v) {
    int n = static_cast<int>(v.size());
    int r0 = span_rank(rows, n);
    auto rows2 = rows;
    rows2.push_back(v);
    return span_rank(rows2, n) == r0;
}

} // namespace wsuper
