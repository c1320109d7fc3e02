#pragma once

#include "poisson/errors.hpp"
#include "poisson/matrix.hpp"
#include "poisson/polynomial.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace poisson {

enum class Symmetry { symmetric, antisymmetric };

// Constants c_{ij}^k of one bilinear product, 1-based, canonical keys only
// (i <= j symmetric, i < j antisymmetric), no stored zeros.
template <class S>
class StructureConstants {
public:
    using Key = std::array<int, 3>;

    StructureConstants() = default;
    StructureConstants(int dim, Symmetry sym) : n_(dim), sym_(sym)
    {
        if (dim < 1)
            throw BadDimension("dimension must be positive");
    }

    int dim() const { return n_; }
    Symmetry symmetry() const { return sym_; }
    const std::map<Key, S>& entries() const { return e_; }
    bool is_zero() const { return e_.empty(); }

    S get(int i, int j, int k) const
    {
        check(i, j, k);
        if (sym_ == Symmetry::antisymmetric && i == j)
            return S(0);
        bool swap = i > j;
        auto it = e_.find(swap ? Key{j, i, k} : Key{i, j, k});
        if (it == e_.end())
            return S(0);
        return (swap && sym_ == Symmetry::antisymmetric) ? -it->second : it->second;
    }

    // Accepts either index order; the partner value follows by symmetry.
    void set(int i, int j, int k, const S& v)
    {
        check(i, j, k);
        if (sym_ == Symmetry::antisymmetric && i == j) {
            if (!v.is_zero())
                throw InputError("antisymmetric product with nonzero diagonal entry");
            return;
        }
        S val = (i > j && sym_ == Symmetry::antisymmetric) ? -v : v;
        Key key = i > j ? Key{j, i, k} : Key{i, j, k};
        if (val.is_zero())
            e_.erase(key);
        else
            e_[key] = val;
    }

    // Product of basis vectors e_i, e_j (1-based) as a coordinate vector.
    std::vector<S> basis_product(int i, int j) const
    {
        std::vector<S> out(static_cast<size_t>(n_), S(0));
        for (int k = 1; k <= n_; ++k)
            out[static_cast<size_t>(k - 1)] = get(i, j, k);
        return out;
    }

    friend bool operator==(const StructureConstants& a, const StructureConstants& b)
    {
        return a.n_ == b.n_ && a.sym_ == b.sym_ && a.e_ == b.e_;
    }

    template <class T, class F>
    StructureConstants<T> map(F f) const
    {
        StructureConstants<T> r(n_, sym_);
        for (auto& [key, v] : e_)
            r.set(key[0], key[1], key[2], f(v));
        return r;
    }

private:
    void check(int i, int j, int k) const
    {
        if (i < 1 || j < 1 || k < 1 || i > n_ || j > n_ || k > n_)
            throw DimensionMismatch("structure constant index out of range");
    }

    int n_ = 0;
    Symmetry sym_ = Symmetry::symmetric;
    std::map<Key, S> e_;
};

// evaluate(m, x, y) = sum x_i y_j c_{ij}^k e_k.
template <class S>
std::vector<S> evaluate(const StructureConstants<S>& m, const std::vector<S>& x, const std::vector<S>& y)
{
    int n = m.dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw DimensionMismatch("vector length does not match algebra dimension");
    std::vector<S> out(static_cast<size_t>(n), S(0));
    bool anti = m.symmetry() == Symmetry::antisymmetric;
    for (auto& [key, c] : m.entries()) {
        size_t i = static_cast<size_t>(key[0] - 1), j = static_cast<size_t>(key[1] - 1);
        size_t k = static_cast<size_t>(key[2] - 1);
        S coef = x[i] * y[j];
        if (i != j)
            coef = anti ? coef - x[j] * y[i] : coef + x[j] * y[i];
        if (!coef.is_zero())
            out[k] = out[k] + coef * c;
    }
    return out;
}

template <class S>
struct BilinearPair {
    StructureConstants<S> dot;
    StructureConstants<S> bracket;

    BilinearPair() = default;
    explicit BilinearPair(int n) : dot(n, Symmetry::symmetric), bracket(n, Symmetry::antisymmetric) {}
    BilinearPair(StructureConstants<S> d, StructureConstants<S> b) : dot(std::move(d)), bracket(std::move(b))
    {
        if (dot.dim() != bracket.dim())
            throw DimensionMismatch("dot and bracket dimensions differ");
        if (dot.symmetry() != Symmetry::symmetric || bracket.symmetry() != Symmetry::antisymmetric)
            throw InputError("pair needs a symmetric dot and an antisymmetric bracket");
    }

    int dim() const { return dot.dim(); }

    friend bool operator==(const BilinearPair& a, const BilinearPair& b)
    {
        return a.dot == b.dot && a.bracket == b.bracket;
    }

    template <class T, class F>
    BilinearPair<T> map(F f) const
    {
        return BilinearPair<T>(dot.template map<T>(f), bracket.template map<T>(f));
    }
};

enum class Identity { commutative, anticommutative, associative, jacobi, leibniz, malcev };

std::string identity_name(Identity id);
Identity identity_from_name(const std::string& s);
inline constexpr Identity kAllIdentities[] = {Identity::commutative, Identity::anticommutative,
                                             Identity::associative, Identity::jacobi,
                                             Identity::leibniz, Identity::malcev};

struct IdentityReport {
    bool holds = true;
    std::vector<int> witness;  // first failing basis index tuple, 1-based
};

namespace detail {

// Dense table of basis products: prod[(i*n + j)] = e_i * e_j (0-based).
template <class S>
struct ProductTable {
    int n;
    std::vector<std::vector<S>> prod;

    explicit ProductTable(const StructureConstants<S>& m) : n(m.dim())
    {
        prod.assign(static_cast<size_t>(n * n), std::vector<S>(static_cast<size_t>(n), S(0)));
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                prod[static_cast<size_t>((i - 1) * n + j - 1)] = m.basis_product(i, j);
    }
    const std::vector<S>& basis(int i, int j) const { return prod[static_cast<size_t>(i * n + j)]; }

    std::vector<S> mul(const std::vector<S>& x, const std::vector<S>& y) const
    {
        std::vector<S> out(static_cast<size_t>(n), S(0));
        for (int i = 0; i < n; ++i) {
            if (x[static_cast<size_t>(i)].is_zero())
                continue;
            for (int j = 0; j < n; ++j) {
                if (y[static_cast<size_t>(j)].is_zero())
                    continue;
                S c = x[static_cast<size_t>(i)] * y[static_cast<size_t>(j)];
                const auto& b = basis(i, j);
                for (int k = 0; k < n; ++k)
                    if (!b[static_cast<size_t>(k)].is_zero())
                        out[static_cast<size_t>(k)] = out[static_cast<size_t>(k)] + c * b[static_cast<size_t>(k)];
            }
        }
        return out;
    }
    std::vector<S> mul_basis(int i, const std::vector<S>& y) const
    {
        std::vector<S> e(static_cast<size_t>(n), S(0));
        e[static_cast<size_t>(i)] = S(1);
        return mul(e, y);
    }
};

template <class S>
std::vector<S> add(std::vector<S> a, const std::vector<S>& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = a[i] + b[i];
    return a;
}
template <class S>
std::vector<S> sub(std::vector<S> a, const std::vector<S>& b)
{
    for (size_t i = 0; i < a.size(); ++i)
        a[i] = a[i] - b[i];
    return a;
}
template <class S>
bool is_zero_vec(const std::vector<S>& v)
{
    for (auto& x : v)
        if (!x.is_zero())
            return false;
    return true;
}
template <class S>
std::vector<S> unit(int n, int i)
{
    std::vector<S> e(static_cast<size_t>(n), S(0));
    e[static_cast<size_t>(i)] = S(1);
    return e;
}

}  // namespace detail

template <class S>
IdentityReport check_identity(const BilinearPair<S>& p, Identity id)
{
    using detail::ProductTable;
    int n = p.dim();
    ProductTable<S> D(p.dot), B(p.bracket);
    auto e = [n](int i) { return detail::unit<S>(n, i); };
    IdentityReport rep;
    auto fail = [&rep](std::vector<int> w) {
        rep.holds = false;
        for (auto& x : w)
            x += 1;
        rep.witness = std::move(w);
    };
    switch (id) {
    case Identity::commutative:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(D.basis(i, j) == D.basis(j, i))) {
                    fail({i, j});
                    return rep;
                }
        break;
    case Identity::anticommutative:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!detail::is_zero_vec(detail::add(B.basis(i, j), B.basis(j, i)))) {
                    fail({i, j});
                    return rep;
                }
        break;
    case Identity::associative:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    auto l = D.mul(D.basis(i, j), e(k));
                    auto r = D.mul(e(i), D.basis(j, k));
                    if (!(l == r)) {
                        fail({i, j, k});
                        return rep;
                    }
                }
        break;
    case Identity::jacobi:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    auto s = detail::add(B.mul(B.basis(i, j), e(k)), B.mul(B.basis(j, k), e(i)));
                    s = detail::add(s, B.mul(B.basis(k, i), e(j)));
                    if (!detail::is_zero_vec(s)) {
                        fail({i, j, k});
                        return rep;
                    }
                }
        break;
    case Identity::leibniz:
        // {x.y, z} = {x,z}.y + x.{y,z}
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    auto l = B.mul(D.basis(i, j), e(k));
                    auto r = detail::add(D.mul(B.basis(i, k), e(j)), D.mul(e(i), B.basis(j, k)));
                    if (!(l == r)) {
                        fail({i, j, k});
                        return rep;
                    }
                }
        break;
    case Identity::malcev: {
        // {{x,y},{x,z}} = {{{x,y},z},x} + {{{y,z},x},x} + {{{z,x},x},y}, polarized in x:
        // f(a,b,y,z) + f(b,a,y,z) = 0 with the first x replaced by a, the second by b.
        auto f = [&](int a, int b, int y, int z) {
            auto lhs = B.mul(B.basis(a, y), B.basis(b, z));
            auto t1 = B.mul(B.mul(B.basis(a, y), e(z)), e(b));
            auto t2 = B.mul(B.mul(B.basis(y, z), e(a)), e(b));
            auto t3 = B.mul(B.mul(B.basis(z, a), e(b)), e(y));
            return detail::sub(detail::sub(detail::sub(lhs, t1), t2), t3);
        };
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int y = 0; y < n; ++y)
                    for (int z = 0; z < n; ++z)
                        if (!detail::is_zero_vec(detail::add(f(a, b, y, z), f(b, a, y, z)))) {
                            fail({a, b, y, z});
                            return rep;
                        }
        break;
    }
    }
    return rep;
}

template <class S>
bool is_poisson(const BilinearPair<S>& p)
{
    for (Identity id : {Identity::commutative, Identity::associative, Identity::anticommutative,
                        Identity::jacobi, Identity::leibniz})
        if (!check_identity(p, id).holds)
            return false;
    return true;
}

// Constants of g*mu, (g*mu)(x,y) = g mu(g^-1 x, g^-1 y), given g and h = g^-1.
template <class S>
StructureConstants<S> act(const Matrix<S>& g, const Matrix<S>& h, const StructureConstants<S>& m)
{
    int n = m.dim();
    if (g.rows() != n || g.cols() != n)
        throw DimensionMismatch("basis change has wrong size");
    StructureConstants<S> out(n, m.symmetry());
    if (m.is_zero())
        return out;
    bool anti = m.symmetry() == Symmetry::antisymmetric;
    std::vector<std::vector<S>> hc;
    for (int j = 0; j < n; ++j)
        hc.push_back(h.column(j));
    for (int i = 1; i <= n; ++i)
        for (int j = anti ? i + 1 : i; j <= n; ++j) {
            auto w = evaluate(m, hc[static_cast<size_t>(i - 1)], hc[static_cast<size_t>(j - 1)]);
            if (detail::is_zero_vec(w))
                continue;
            auto v = g * w;
            for (int k = 1; k <= n; ++k)
                if (!v[static_cast<size_t>(k - 1)].is_zero())
                    out.set(i, j, k, v[static_cast<size_t>(k - 1)]);
        }
    return out;
}

template <class S>
BilinearPair<S> apply_basis_change(const Matrix<S>& g, const BilinearPair<S>& p)
{
    Matrix<S> h = g.inverse();
    return BilinearPair<S>(act(g, h, p.dot), act(g, h, p.bracket));
}

template <class S>
bool verify_isomorphism(const BilinearPair<S>& p, const BilinearPair<S>& q, const Matrix<S>& g)
{
    if (p.dim() != q.dim())
        throw DimensionMismatch("isomorphism between algebras of different dimension");
    return apply_basis_change(g, p) == q;
}

// Multiplication table as text, e.g. "e1.e1=e2, {e1,e3}=e3".
template <class S>
std::string table_str(const BilinearPair<S>& p)
{
    auto vec = [](const std::map<int, S>& terms) {
        std::string s;
        for (auto& [k, c] : terms) {
            std::string e = "e" + std::to_string(k);
            std::string t;
            if (c == S(1))
                t = e;
            else if (c == S(-1))
                t = "-" + e;
            else if (scalar_atomic(c))
                t = scalar_str(c) + e;
            else
                t = "(" + scalar_str(c) + ")" + e;
            append_term(s, t);
        }
        return s;
    };
    auto side = [&](const StructureConstants<S>& m, bool dot) {
        std::map<std::pair<int, int>, std::map<int, S>> rows;
        for (auto& [key, c] : m.entries())
            rows[{key[0], key[1]}][key[2]] = c;
        std::string s;
        for (auto& [ij, terms] : rows) {
            if (!s.empty())
                s += ", ";
            std::string a = "e" + std::to_string(ij.first), b = "e" + std::to_string(ij.second);
            s += (dot ? a + "." + b : "{" + a + "," + b + "}") + "=" + vec(terms);
        }
        return s;
    };
    std::string d = side(p.dot, true), b = side(p.bracket, false);
    if (d.empty() && b.empty())
        return "trivial";
    if (d.empty())
        return b;
    if (b.empty())
        return d;
    return d + ", " + b;
}

}  // namespace poisson
