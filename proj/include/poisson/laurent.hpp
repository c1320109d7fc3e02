#pragma once

#include "poisson/polynomial.hpp"

#include <climits>
#include <map>
#include <string>

namespace poisson {

inline constexpr int kInfiniteValuation = INT_MAX;

// Finite sum of c_e t^e with e in Z; zero is the empty map.
template <class K>
class LaurentPoly {
public:
    LaurentPoly() = default;
    LaurentPoly(const K& c)
    {
        if (!c.is_zero())
            m_.emplace(0, c);
    }
    LaurentPoly(int c) : LaurentPoly(K(c)) {}

    static LaurentPoly monomial(const K& c, int e)
    {
        LaurentPoly r;
        if (!c.is_zero())
            r.m_.emplace(e, c);
        return r;
    }
    static LaurentPoly t() { return monomial(K(1), 1); }

    const std::map<int, K>& terms() const { return m_; }
    bool is_zero() const { return m_.empty(); }
    int valuation() const { return m_.empty() ? kInfiniteValuation : m_.begin()->first; }
    int max_exponent() const { return m_.empty() ? INT_MIN : m_.rbegin()->first; }
    K coeff(int e) const
    {
        auto it = m_.find(e);
        return it == m_.end() ? K(0) : it->second;
    }

    LaurentPoly operator-() const
    {
        LaurentPoly r = *this;
        for (auto& [e, c] : r.m_)
            c = -c;
        return r;
    }
    LaurentPoly& operator+=(const LaurentPoly& o)
    {
        for (auto& [e, c] : o.m_)
            add_term(e, c);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b)
    {
        LaurentPoly r;
        for (auto& [e1, c1] : a.m_)
            for (auto& [e2, c2] : b.m_)
                r.add_term(e1 + e2, c1 * c2);
        return r;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.m_ == b.m_; }

    LaurentPoly pow(int k) const
    {
        if (k < 0) {
            if (m_.size() != 1)
                throw MathError("negative power of a non-monomial Laurent polynomial");
            auto& [e, c] = *m_.begin();
            return monomial(K(1) / c.pow(-k), e * k);
        }
        LaurentPoly r(K(1)), b = *this;
        while (k) {
            if (k & 1)
                r = r * b;
            b = b * b;
            k >>= 1;
        }
        return r;
    }

    // Valid for t0 != 0 whenever negative exponents occur.
    K eval(const K& t0) const
    {
        K r(0);
        for (auto& [e, c] : m_) {
            if (e < 0 && t0.is_zero())
                throw DivisionByZero("Laurent polynomial evaluated at 0");
            r = r + c * t0.pow(e);
        }
        return r;
    }

    std::string str() const
    {
        std::string out;
        for (auto& [e, c] : m_)
            append_term(out, format_term(c, e, "t"));
        return out.empty() ? "0" : out;
    }

private:
    void add_term(int e, const K& c)
    {
        if (c.is_zero())
            return;
        auto it = m_.find(e);
        if (it == m_.end()) {
            m_.emplace(e, c);
            return;
        }
        it->second = it->second + c;
        if (it->second.is_zero())
            m_.erase(it);
    }

    std::map<int, K> m_;
};

}  // namespace poisson
