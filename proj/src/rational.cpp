#include "poisson/rational.hpp"

#include "poisson/errors.hpp"

#include <cctype>
#include <ostream>

namespace poisson {

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

}  // namespace

Rational::Rational(long num, long den)
{
    if (den == 0)
        throw DivisionByZero("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view s)
{
    std::string_view body = s;
    bool neg = false;
    if (!body.empty() && body.front() == '-') {
        neg = true;
        body.remove_prefix(1);
    }
    auto slash = body.find('/');
    std::string_view a = body.substr(0, slash);
    std::string_view b = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
    if (!all_digits(a) || (slash != std::string_view::npos && !all_digits(b)))
        throw ParseError("not a rational: '" + std::string(s) + "'");
    mpz_class n(std::string(a), 10);
    mpz_class d = slash == std::string_view::npos ? mpz_class(1) : mpz_class(std::string(b), 10);
    if (d == 0)
        throw ParseError("zero denominator in '" + std::string(s) + "'");
    if (neg)
        n = -n;
    mpq_class q(n, d);
    q.canonicalize();
    return Rational(q);
}

std::string Rational::str() const
{
    return q_.get_str(10);
}

Rational& Rational::operator/=(const Rational& o)
{
    if (o.is_zero())
        throw DivisionByZero("rational division by zero");
    q_ /= o.q_;
    return *this;
}

Rational Rational::inverse() const
{
    if (is_zero())
        throw DivisionByZero("inverse of zero");
    mpq_class r = 1 / q_;
    return Rational(r);
}

Rational Rational::pow(int e) const
{
    Rational base = e < 0 ? inverse() : *this;
    unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
    Rational r(1);
    while (k) {
        if (k & 1)
            r *= base;
        base *= base;
        k >>= 1;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& q)
{
    return os << q.str();
}

}  // namespace poisson
