#pragma once

// Exact arithmetic foundation: arbitrary-precision rationals (GMP),
// integer polynomials, cyclotomic polynomials, number-field residue
// arithmetic and values on the torus R/Z.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "bohrgap/errors.hpp"

namespace bohrgap {

using Int = mpz_class;
using Rational = mpq_class;  // gmp keeps these canonical: den > 0, gcd = 1

/// Polynomial with arbitrary-precision integer coefficients, constant
/// term first. The zero polynomial has an empty coefficient vector.
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs);
    IntPoly(std::initializer_list<long> coeffs);

    /// Parses "a0 a1 ... an" (space separated, constant term first).
    static IntPoly from_string(const std::string& text);
    static IntPoly x_power(int n);        // x^n
    /// k-th cyclotomic polynomial, k >= 1.
    static IntPoly cyclotomic(int k);

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for 0
    const Int& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Int>& coeffs() const { return c_; }
    const Int& leading() const { return c_.back(); }

    Int content() const;  // gcd of |coefficients|, 0 for the zero poly

    IntPoly operator+(const IntPoly& o) const;
    IntPoly operator-(const IntPoly& o) const;
    IntPoly operator*(const IntPoly& o) const;
    IntPoly operator-() const;
    bool operator==(const IntPoly& o) const { return c_ == o.c_; }
    bool operator!=(const IntPoly& o) const { return c_ != o.c_; }

    Int eval(const Int& x) const;
    Rational eval(const Rational& x) const;

    /// x^d p(1/x): coefficients reversed.
    IntPoly reversed() const;

    std::string to_string() const;

private:
    std::vector<Int> c_;
    void trim();
};

/// Polynomial over Q, constant term first; used for residue arithmetic.
using QPoly = std::vector<Rational>;

QPoly qpoly_from(const IntPoly& p);
void qpoly_trim(QPoly& p);
int qpoly_degree(const QPoly& p);  // -1 for zero
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_sub(const QPoly& a, const QPoly& b);
/// Division with remainder; divisor must be nonzero.
void qpoly_divrem(const QPoly& num, const QPoly& den, QPoly& quot, QPoly& rem);
/// Extended gcd: returns monic g and u,v with u*a + v*b = g.
QPoly qpoly_gcd_ext(const QPoly& a, const QPoly& b, QPoly& u, QPoly& v);

/// Primitive associate with positive leading coefficient; 0 -> 0.
IntPoly poly_normalize(const IntPoly& p);

/// True iff `d` divides `p` exactly in Q[x] (d nonzero).
bool poly_divides(const IntPoly& d, const IntPoly& p);

/// Irreducibility over Q via rational-root test, factor-degree patterns
/// modulo small primes, and a bounded Kronecker factor search.
/// Requires 1 <= degree <= cap.
bool poly_is_irreducible(const IntPoly& p, int degree_cap = 24);

/// Least k with phi(k) <= d and Phi_k | p; the search range k <= 2d^2
/// covers all such k since phi(k) >= sqrt(k/2).
std::optional<int> cyclotomic_factor(const IntPoly& p, int d);

int euler_phi(int k);

/// Element of Q[x]/(m) for an irreducible normalized modulus m.
class NumberFieldElem {
public:
    NumberFieldElem(IntPoly modulus, QPoly residue);  // reduces mod m
    static NumberFieldElem from_poly(const IntPoly& modulus, const IntPoly& p);
    static NumberFieldElem zero(const IntPoly& modulus);
    static NumberFieldElem one(const IntPoly& modulus);
    static NumberFieldElem generator(const IntPoly& modulus);  // class of x

    const IntPoly& modulus() const { return mod_; }
    const QPoly& residue() const { return res_; }
    bool is_zero() const { return res_.empty(); }

    NumberFieldElem operator+(const NumberFieldElem& o) const;
    NumberFieldElem operator-(const NumberFieldElem& o) const;
    NumberFieldElem operator*(const NumberFieldElem& o) const;
    NumberFieldElem operator*(const Rational& q) const;
    NumberFieldElem pow(long n) const;  // n may be negative
    bool operator==(const NumberFieldElem& o) const;

    std::string to_string() const;

private:
    IntPoly mod_;
    QPoly res_;
    void check_compatible(const NumberFieldElem& o) const;
};

/// Multiplicative inverse via extended polynomial gcd.
NumberFieldElem nf_inverse(const NumberFieldElem& a);

/// A value in T = R/Z, exact rational or float. Float values within
/// 1e-12 of 1 snap to 0.
class TorusValue {
public:
    static TorusValue exact(const Rational& q);
    static TorusValue approx(double x);

    bool is_exact() const { return exact_; }
    const Rational& rational() const;
    double as_double() const;

    TorusValue operator+(const TorusValue& o) const;
    TorusValue operator-() const;
    bool operator==(const TorusValue& o) const;

private:
    TorusValue() = default;
    bool exact_ = false;
    Rational q_;
    double f_ = 0.0;
};

/// Reduces q into [0,1).
Rational mod1(const Rational& q);

/// Exact square root of a nonnegative rational, if it is one.
std::optional<Rational> rational_sqrt(const Rational& q);

}  // namespace bohrgap
