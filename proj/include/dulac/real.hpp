// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_REAL_HPP
#define DULAC_REAL_HPP

#include <stdexcept>
#include <string>

#include <mpfr.h>

#include "dulac/rational.hpp"

namespace dulac {

class RangeError : public std::range_error
{
public:
    using std::range_error::range_error;
};

// Owning MPFR value with an explicit precision in bits. Binary operations
// produce a result at the larger of the operand precisions.
class Real
{
public:
    explicit Real(mpfr_prec_t bits = 256);
    Real(const Rational &q, mpfr_prec_t bits);
    Real(long v, mpfr_prec_t bits);
    static Real from_string(const std::string &decimal, mpfr_prec_t bits);

    Real(const Real &other);
    Real(Real &&other) noexcept;
    Real &operator=(const Real &other);
    Real &operator=(Real &&other) noexcept;
    ~Real();

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    // Base-2 exponent of the value (0 for zero).
    long exponent2() const;
    // Natural log of |x| as a double, valid far outside the double range.
    double log_abs() const;
    // Scientific notation with the given number of significant digits.
    std::string to_string(int digits = 30) const;

    Real &operator+=(const Real &o);
    Real &operator-=(const Real &o);
    Real &operator*=(const Real &o);
    Real &operator/=(const Real &o);

    friend Real operator+(Real a, const Real &b) { return a += b; }
    friend Real operator-(Real a, const Real &b) { return a -= b; }
    friend Real operator*(Real a, const Real &b) { return a *= b; }
    friend Real operator/(Real a, const Real &b) { return a /= b; }
    Real operator-() const;

    friend bool operator<(const Real &a, const Real &b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const Real &a, const Real &b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator<=(const Real &a, const Real &b) { return mpfr_lessequal_p(a.value_, b.value_) != 0; }
    friend bool operator>=(const Real &a, const Real &b) { return mpfr_greaterequal_p(a.value_, b.value_) != 0; }
    friend bool operator==(const Real &a, const Real &b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

Real exp(const Real &x);
Real expm1(const Real &x);
Real log(const Real &x);   // throws std::domain_error for x <= 0
Real log1p(const Real &x); // throws std::domain_error for x <= -1
Real abs(const Real &x);
Real pow(const Real &x, const Rational &e); // x > 0
Real sqrt(const Real &x);
Real with_precision(const Real &x, mpfr_prec_t bits);
Real log_of_prime(unsigned long p, mpfr_prec_t bits);

// Throws RangeError if x is not a finite number.
const Real &require_finite(const Real &x, const char *what);

} // namespace dulac

#endif
