#pragma once

#include "poisson/errors.hpp"
#include "poisson/rational.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace poisson {

inline std::string scalar_str(const Rational& q) { return q.str(); }
inline bool scalar_atomic(const Rational&) { return true; }

// One term c*var^e of a printed sum.
template <class K>
std::string format_term(const K& c, int e, std::string_view var)
{
    if (e == 0)
        return scalar_str(c);
    std::string s;
    if (c == K(1)) {
    } else if (c == K(-1)) {
        s = "-";
    } else if (scalar_atomic(c)) {
        s = scalar_str(c) + "*";
    } else {
        s = "(" + scalar_str(c) + ")*";
    }
    s += var;
    if (e != 1)
        s += "^" + std::to_string(e);
    return s;
}

inline void append_term(std::string& out, const std::string& term)
{
    if (out.empty())
        out = term;
    else if (term.front() == '-')
        out += term;
    else
        out += "+" + term;
}

// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
template <class K>
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const K& c)
    {
        if (!c.is_zero())
            c_.push_back(c);
    }
    explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Polynomial monomial(const K& c, int e)
    {
        if (c.is_zero())
            return {};
        std::vector<K> v(static_cast<size_t>(e) + 1, K(0));
        v[static_cast<size_t>(e)] = c;
        return Polynomial(std::move(v));
    }
    static Polynomial x() { return monomial(K(1), 1); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<K>& coeffs() const { return c_; }
    K coeff(int e) const { return (e >= 0 && e <= degree()) ? c_[static_cast<size_t>(e)] : K(0); }
    const K& lead() const { return c_.back(); }

    // Lowest exponent with nonzero coefficient; zero polynomial is not allowed.
    int valuation() const
    {
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero())
                return static_cast<int>(i);
        throw MathError("valuation of zero polynomial");
    }

    bool is_monomial() const
    {
        if (is_zero())
            return false;
        int nz = 0;
        for (auto& a : c_)
            nz += a.is_zero() ? 0 : 1;
        return nz == 1;
    }

    Polynomial shift_down(int k) const
    {
        if (k == 0 || is_zero())
            return *this;
        return Polynomial(std::vector<K>(c_.begin() + k, c_.end()));
    }
    Polynomial shift_up(int k) const
    {
        if (k == 0 || is_zero())
            return *this;
        std::vector<K> v(static_cast<size_t>(k), K(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Polynomial(std::move(v));
    }

    K eval(const K& x) const
    {
        K r(0);
        for (size_t i = c_.size(); i-- > 0;)
            r = r * x + c_[i];
        return r;
    }

    Polynomial operator-() const
    {
        Polynomial r = *this;
        for (auto& a : r.c_)
            a = -a;
        return r;
    }
    friend Polynomial operator+(const Polynomial& a, const Polynomial& b)
    {
        std::vector<K> v(std::max(a.c_.size(), b.c_.size()), K(0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            v[i] = a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i)
            v[i] = v[i] + b.c_[i];
        return Polynomial(std::move(v));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero())
                continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                if (!b.c_[j].is_zero())
                    v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
        }
        return Polynomial(std::move(v));
    }
    Polynomial scaled(const K& s) const
    {
        if (s.is_zero())
            return {};
        Polynomial r = *this;
        for (auto& a : r.c_)
            a = a * s;
        r.trim();
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    // Euclidean division by a nonzero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const
    {
        if (d.is_zero())
            throw DivisionByZero("polynomial division by zero");
        Polynomial r = *this;
        if (r.degree() < d.degree())
            return {Polynomial(), r};
        std::vector<K> q(static_cast<size_t>(r.degree() - d.degree()) + 1, K(0));
        K inv_lead = K(1) / d.lead();
        while (!r.is_zero() && r.degree() >= d.degree()) {
            int shift = r.degree() - d.degree();
            K f = r.lead() * inv_lead;
            q[static_cast<size_t>(shift)] = f;
            std::vector<K> v = r.c_;
            for (size_t j = 0; j < d.c_.size(); ++j)
                v[j + static_cast<size_t>(shift)] = v[j + static_cast<size_t>(shift)] - f * d.c_[j];
            v.pop_back();
            r = Polynomial(std::move(v));
        }
        return {Polynomial(std::move(q)), r};
    }

    Polynomial monic() const
    {
        if (is_zero())
            return {};
        return scaled(K(1) / lead());
    }

    std::string str(std::string_view var = "t") const
    {
        std::string out;
        for (size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero())
                append_term(out, format_term(c_[i], static_cast<int>(i), var));
        return out.empty() ? "0" : out;
    }

private:
    void trim()
    {
        while (!c_.empty() && c_.back().is_zero())
            c_.pop_back();
    }

    std::vector<K> c_;
};

template <class K>
Polynomial<K> poly_gcd(Polynomial<K> a, Polynomial<K> b)
{
    while (!b.is_zero()) {
        auto r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

// Extended Euclid: returns (g, s) with s*a = g (mod b), g monic.
template <class K>
std::pair<Polynomial<K>, Polynomial<K>> poly_xgcd_left(const Polynomial<K>& a, const Polynomial<K>& b)
{
    Polynomial<K> r0 = a, r1 = b, s0(K(1)), s1;
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        Polynomial<K> s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    K inv = K(1) / r0.lead();
    return {r0.scaled(inv), s0.scaled(inv)};
}

}  // namespace poisson
