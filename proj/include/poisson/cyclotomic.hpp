#pragma once

#include "poisson/polynomial.hpp"
#include "poisson/rational.hpp"

#include <string>
#include <vector>

namespace poisson {

// Element of Q(z), z a primitive m-th root of unity, stored reduced modulo the
// m-th cyclotomic polynomial. Order 0 marks a plain rational that combines with
// any field; mixing two different nonzero orders throws.
class Cyclotomic {
public:
    Cyclotomic() = default;
    Cyclotomic(int v) : Cyclotomic(Rational(v)) {}
    Cyclotomic(const Rational& q);

    static Cyclotomic generator(int order);
    static Cyclotomic in_field(int order, const Rational& q);

    int order() const { return m_; }
    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_part() const { return c_.empty() ? Rational(0) : c_[0]; }
    // Only valid when is_rational().
    Rational to_rational() const;
    const std::vector<Rational>& coeffs() const { return c_; }

    Cyclotomic operator-() const;
    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.c_ == b.c_; }

    Cyclotomic inverse() const;
    Cyclotomic pow(int e) const;

    std::string str() const;

private:
    static int join(const Cyclotomic& a, const Cyclotomic& b);
    static Cyclotomic from_poly(int order, const Polynomial<Rational>& p);
    Polynomial<Rational> poly() const { return Polynomial<Rational>(c_); }

    int m_ = 0;
    std::vector<Rational> c_;
};

// The m-th cyclotomic polynomial over Q (cached).
const Polynomial<Rational>& cyclotomic_polynomial(int m);

std::string scalar_str(const Cyclotomic& c);
bool scalar_atomic(const Cyclotomic& c);

}  // namespace poisson
