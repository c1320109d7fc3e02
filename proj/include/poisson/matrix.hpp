#pragma once

#include "poisson/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace poisson {

// Dense row-major matrix over a field S.
template <class S>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols, S(0)) {}
    Matrix(std::initializer_list<std::initializer_list<S>> rows)
    {
        r_ = static_cast<int>(rows.size());
        c_ = r_ ? static_cast<int>(rows.begin()->size()) : 0;
        for (auto& row : rows) {
            if (static_cast<int>(row.size()) != c_)
                throw DimensionMismatch("ragged matrix literal");
            a_.insert(a_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(int n)
    {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i)
            m(i, i) = S(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    S& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const S& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    std::vector<S> column(int j) const
    {
        std::vector<S> v;
        v.reserve(static_cast<size_t>(r_));
        for (int i = 0; i < r_; ++i)
            v.push_back((*this)(i, j));
        return v;
    }
    std::vector<S> row(int i) const
    {
        return std::vector<S>(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
    }

    Matrix transpose() const
    {
        Matrix t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.c_ != b.r_)
            throw DimensionMismatch("matrix product shape mismatch");
        Matrix m(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                const S& x = a(i, k);
                if (x.is_zero())
                    continue;
                for (int j = 0; j < b.c_; ++j)
                    if (!b(k, j).is_zero())
                        m(i, j) = m(i, j) + x * b(k, j);
            }
        return m;
    }
    friend std::vector<S> operator*(const Matrix& a, const std::vector<S>& v)
    {
        if (static_cast<int>(v.size()) != a.c_)
            throw DimensionMismatch("matrix-vector shape mismatch");
        std::vector<S> out(static_cast<size_t>(a.r_), S(0));
        for (int i = 0; i < a.r_; ++i)
            for (int j = 0; j < a.c_; ++j)
                if (!a(i, j).is_zero() && !v[static_cast<size_t>(j)].is_zero())
                    out[static_cast<size_t>(i)] = out[static_cast<size_t>(i)] + a(i, j) * v[static_cast<size_t>(j)];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
    }

    template <class F>
    auto map(F f) const -> Matrix<decltype(f(std::declval<S>()))>
    {
        Matrix<decltype(f(std::declval<S>()))> m(r_, c_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                m(i, j) = f((*this)(i, j));
        return m;
    }

    S det() const
    {
        if (r_ != c_)
            throw DimensionMismatch("determinant of non-square matrix");
        Matrix w = *this;
        S d(1);
        for (int col = 0; col < c_; ++col) {
            int piv = -1;
            for (int i = col; i < r_; ++i)
                if (!w(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                return S(0);
            if (piv != col) {
                w.swap_rows(piv, col);
                d = -d;
            }
            d = d * w(col, col);
            S inv = S(1) / w(col, col);
            for (int i = col + 1; i < r_; ++i) {
                if (w(i, col).is_zero())
                    continue;
                S f = w(i, col) * inv;
                for (int j = col; j < c_; ++j)
                    w(i, j) = w(i, j) - f * w(col, j);
            }
        }
        return d;
    }

    Matrix inverse() const
    {
        if (r_ != c_)
            throw DimensionMismatch("inverse of non-square matrix");
        int n = r_;
        Matrix w = *this, inv = identity(n);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int i = col; i < n; ++i)
                if (!w(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                throw SingularMatrix("matrix is singular");
            w.swap_rows(piv, col);
            inv.swap_rows(piv, col);
            S p = S(1) / w(col, col);
            for (int j = 0; j < n; ++j) {
                w(col, j) = w(col, j) * p;
                inv(col, j) = inv(col, j) * p;
            }
            for (int i = 0; i < n; ++i) {
                if (i == col || w(i, col).is_zero())
                    continue;
                S f = w(i, col);
                for (int j = 0; j < n; ++j) {
                    w(i, j) = w(i, j) - f * w(col, j);
                    inv(i, j) = inv(i, j) - f * inv(col, j);
                }
            }
        }
        return inv;
    }

    // In-place reduced row echelon form; leftmost pivots, pivots scaled to 1.
    // Returns the pivot columns.
    std::vector<int> rref_inplace()
    {
        std::vector<int> pivots;
        int row = 0;
        for (int col = 0; col < c_ && row < r_; ++col) {
            int piv = -1;
            for (int i = row; i < r_; ++i)
                if (!(*this)(i, col).is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0)
                continue;
            swap_rows(piv, row);
            S p = S(1) / (*this)(row, col);
            for (int j = col; j < c_; ++j)
                (*this)(row, j) = (*this)(row, j) * p;
            for (int i = 0; i < r_; ++i) {
                if (i == row || (*this)(i, col).is_zero())
                    continue;
                S f = (*this)(i, col);
                for (int j = col; j < c_; ++j)
                    if (!(*this)(row, j).is_zero())
                        (*this)(i, j) = (*this)(i, j) - f * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    int rank() const
    {
        Matrix w = *this;
        return static_cast<int>(w.rref_inplace().size());
    }

    void swap_rows(int a, int b)
    {
        if (a == b)
            return;
        for (int j = 0; j < c_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<S> a_;
};

// Canonical basis of span(vs): nonzero rows of the reduced echelon form.
template <class S>
std::vector<std::vector<S>> echelon_basis(const std::vector<std::vector<S>>& vs, int len)
{
    if (vs.empty())
        return {};
    Matrix<S> m(static_cast<int>(vs.size()), len);
    for (size_t i = 0; i < vs.size(); ++i)
        for (int j = 0; j < len; ++j)
            m(static_cast<int>(i), j) = vs[i][static_cast<size_t>(j)];
    auto piv = m.rref_inplace();
    std::vector<std::vector<S>> out;
    for (size_t i = 0; i < piv.size(); ++i)
        out.push_back(m.row(static_cast<int>(i)));
    return out;
}

// Basis of {x : A x = 0}, returned in reduced echelon form (deterministic).
template <class S>
std::vector<std::vector<S>> solve_nullspace(const Matrix<S>& a)
{
    Matrix<S> w = a;
    auto piv = w.rref_inplace();
    int n = a.cols();
    std::vector<char> is_pivot(static_cast<size_t>(n), 0);
    for (int p : piv)
        is_pivot[static_cast<size_t>(p)] = 1;
    std::vector<std::vector<S>> basis;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<size_t>(f)])
            continue;
        std::vector<S> v(static_cast<size_t>(n), S(0));
        v[static_cast<size_t>(f)] = S(1);
        for (size_t r = 0; r < piv.size(); ++r)
            v[static_cast<size_t>(piv[r])] = -w(static_cast<int>(r), f);
        basis.push_back(std::move(v));
    }
    return echelon_basis(basis, n);
}

template <class S>
std::string matrix_str(const Matrix<S>& m)
{
    std::string s = "[";
    for (int i = 0; i < m.rows(); ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < m.cols(); ++j) {
            if (j)
                s += ",";
            s += scalar_str(m(i, j));
        }
        s += "]";
    }
    return s + "]";
}

}  // namespace poisson
