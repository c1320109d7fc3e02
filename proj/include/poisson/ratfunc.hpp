#pragma once

#include "poisson/laurent.hpp"
#include "poisson/polynomial.hpp"

#include <algorithm>
#include <string>

namespace poisson {

// num/den in K(t), normalized: lowest terms, monic denominator.
template <class K>
class RatFunc {
public:
    RatFunc() : den_(K(1)) {}
    RatFunc(const K& c) : num_(c), den_(K(1)) {}
    RatFunc(int c) : RatFunc(K(c)) {}
    RatFunc(const LaurentPoly<K>& p) : den_(K(1))
    {
        if (p.is_zero())
            return;
        int v = p.valuation();
        std::vector<K> c(static_cast<size_t>(p.max_exponent() - std::min(v, 0)) + 1, K(0));
        for (auto& [e, a] : p.terms())
            c[static_cast<size_t>(e - std::min(v, 0))] = a;
        num_ = Polynomial<K>(std::move(c));
        if (v < 0)
            den_ = Polynomial<K>::monomial(K(1), -v);
        normalize();
    }
    RatFunc(Polynomial<K> num, Polynomial<K> den) : num_(std::move(num)), den_(std::move(den))
    {
        if (den_.is_zero())
            throw DivisionByZero("rational function with zero denominator");
        normalize();
    }

    static RatFunc t() { return RatFunc(Polynomial<K>::x(), Polynomial<K>(K(1))); }

    const Polynomial<K>& num() const { return num_; }
    const Polynomial<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
    K constant_value() const { return num_.coeff(0); }

    int valuation() const
    {
        if (num_.is_zero())
            return kInfiniteValuation;
        return num_.valuation() - den_.valuation();
    }

    // Value at t = 0; a negative valuation is a pole.
    K limit_at_zero() const
    {
        int v = valuation();
        if (v == kInfiniteValuation || v > 0)
            return K(0);
        if (v < 0)
            throw PoleAtZero("pole of order " + std::to_string(-v) + " at t=0 in " + str());
        return num_.coeff(num_.valuation()) / den_.coeff(den_.valuation());
    }

    K eval(const K& t0) const
    {
        K d = den_.eval(t0);
        if (d.is_zero())
            throw DivisionByZero("rational function evaluated at a pole");
        return num_.eval(t0) / d;
    }

    // First `terms` coefficients of the Laurent expansion at 0, printed.
    std::string expansion(int terms) const
    {
        if (num_.is_zero())
            return "0";
        int vn = num_.valuation(), vd = den_.valuation();
        Polynomial<K> a = num_.shift_down(vn), b = den_.shift_down(vd);
        K b0inv = K(1) / b.coeff(0);
        std::vector<K> q;
        std::vector<K> rem(static_cast<size_t>(terms), K(0));
        for (int i = 0; i < terms; ++i)
            rem[static_cast<size_t>(i)] = a.coeff(i);
        std::string out;
        for (int i = 0; i < terms; ++i) {
            K qi = rem[static_cast<size_t>(i)] * b0inv;
            for (int j = i; j < terms; ++j)
                rem[static_cast<size_t>(j)] = rem[static_cast<size_t>(j)] - qi * b.coeff(j - i);
            if (!qi.is_zero())
                append_term(out, format_term(qi, vn - vd + i, "t"));
        }
        return (out.empty() ? std::string("0") : out) + "+O(t^" + std::to_string(vn - vd + terms) + ")";
    }

    RatFunc operator-() const
    {
        RatFunc r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend RatFunc operator+(const RatFunc& a, const RatFunc& b)
    {
        if (a.den_ == b.den_)
            return RatFunc(a.num_ + b.num_, a.den_);
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b)
    {
        if (a.is_zero() || b.is_zero())
            return RatFunc();
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b)
    {
        if (b.is_zero())
            throw DivisionByZero("rational function division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b)
    {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

    RatFunc pow(int e) const
    {
        RatFunc base = e < 0 ? RatFunc(K(1)) / *this : *this;
        unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
        RatFunc r(K(1));
        while (k) {
            if (k & 1)
                r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    // Laurent form when the denominator is a power of t, else (num)/(den).
    std::string str() const
    {
        if (den_.is_monomial()) {
            int k = den_.degree();
            std::string out;
            const auto& c = num_.coeffs();
            for (size_t i = 0; i < c.size(); ++i)
                if (!c[i].is_zero())
                    append_term(out, format_term(c[i], static_cast<int>(i) - k, "t"));
            return out.empty() ? "0" : out;
        }
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize()
    {
        if (num_.is_zero()) {
            den_ = Polynomial<K>(K(1));
            return;
        }
        int v = std::min(num_.valuation(), den_.valuation());
        if (v > 0) {
            num_ = num_.shift_down(v);
            den_ = den_.shift_down(v);
        }
        if (num_.degree() > 0 && den_.degree() > 0 && !den_.is_monomial() && !num_.is_monomial()) {
            Polynomial<K> g = poly_gcd(num_, den_);
            if (g.degree() > 0) {
                num_ = num_.divmod(g).first;
                den_ = den_.divmod(g).first;
            }
        }
        if (!(den_.lead() == K(1))) {
            K inv = K(1) / den_.lead();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
    }

    Polynomial<K> num_;
    Polynomial<K> den_;
};

template <class K>
std::string scalar_str(const RatFunc<K>& f)
{
    return f.str();
}
template <class K>
bool scalar_atomic(const RatFunc<K>& f)
{
    return f.is_constant() && scalar_atomic(f.constant_value());
}

}  // namespace poisson
