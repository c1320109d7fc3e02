#include "poisson/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace poisson {

const Polynomial<Rational>& cyclotomic_polynomial(int m)
{
    if (m < 1)
        throw BadDimension("cyclotomic order must be positive");
    static std::mutex mu;
    static std::map<int, Polynomial<Rational>> cache;
    std::lock_guard<std::mutex> lock(mu);
    // Phi_d = (x^d - 1) / prod of Phi_e over proper divisors e of d.
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0 || cache.count(d))
            continue;
        std::vector<Rational> v(static_cast<size_t>(d) + 1, Rational(0));
        v[0] = Rational(-1);
        v[static_cast<size_t>(d)] = Rational(1);
        Polynomial<Rational> p(v);
        for (int e = 1; e < d; ++e)
            if (d % e == 0)
                p = p.divmod(cache.at(e)).first;
        cache.emplace(d, p);
    }
    return cache.at(m);
}

Cyclotomic::Cyclotomic(const Rational& q)
{
    if (!q.is_zero())
        c_.push_back(q);
}

Cyclotomic Cyclotomic::in_field(int order, const Rational& q)
{
    Cyclotomic r(q);
    r.m_ = order;
    return r;
}

Cyclotomic Cyclotomic::generator(int order)
{
    return from_poly(order, Polynomial<Rational>::x());
}

Rational Cyclotomic::to_rational() const
{
    if (!is_rational())
        throw MathError("cyclotomic element is not rational: " + str());
    return rational_part();
}

int Cyclotomic::join(const Cyclotomic& a, const Cyclotomic& b)
{
    if (a.m_ == 0 || a.m_ == b.m_)
        return b.m_;
    if (b.m_ == 0)
        return a.m_;
    throw MathError("mixing cyclotomic fields of orders " + std::to_string(a.m_) + " and " +
                    std::to_string(b.m_));
}

Cyclotomic Cyclotomic::from_poly(int order, const Polynomial<Rational>& p)
{
    Cyclotomic r;
    r.m_ = order;
    Polynomial<Rational> red = p;
    if (order > 0 && red.degree() >= cyclotomic_polynomial(order).degree())
        red = red.divmod(cyclotomic_polynomial(order)).second;
    r.c_ = red.coeffs();
    return r;
}

Cyclotomic Cyclotomic::operator-() const
{
    Cyclotomic r = *this;
    for (auto& a : r.c_)
        a = -a;
    return r;
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b)
{
    int m = Cyclotomic::join(a, b);
    Cyclotomic r;
    r.m_ = m;
    r.c_ = (a.poly() + b.poly()).coeffs();
    return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b)
{
    return a + (-b);
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b)
{
    int m = Cyclotomic::join(a, b);
    if (a.is_rational() && b.is_rational()) {
        Cyclotomic r(a.rational_part() * b.rational_part());
        r.m_ = m;
        return r;
    }
    return Cyclotomic::from_poly(m, a.poly() * b.poly());
}

Cyclotomic Cyclotomic::inverse() const
{
    if (is_zero())
        throw DivisionByZero("inverse of zero");
    if (is_rational())
        return in_field(m_, rational_part().inverse());
    auto [g, s] = poly_xgcd_left(poly(), cyclotomic_polynomial(m_));
    if (g.degree() != 0)
        throw MathError("element not invertible in cyclotomic ring");
    return from_poly(m_, s);
}

Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b)
{
    Cyclotomic::join(a, b);
    return a * b.inverse();
}

Cyclotomic Cyclotomic::pow(int e) const
{
    Cyclotomic base = e < 0 ? inverse() : *this;
    unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
    Cyclotomic r = in_field(m_, Rational(1));
    while (k) {
        if (k & 1)
            r = r * base;
        base = base * base;
        k >>= 1;
    }
    return r;
}

std::string Cyclotomic::str() const
{
    return Polynomial<Rational>(c_).str("z");
}

std::string scalar_str(const Cyclotomic& c)
{
    return c.str();
}

bool scalar_atomic(const Cyclotomic& c)
{
    int nz = 0;
    for (auto& a : c.coeffs())
        nz += a.is_zero() ? 0 : 1;
    return nz <= 1;
}

}  // namespace poisson
