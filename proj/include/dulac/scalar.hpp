// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_SCALAR_HPP
#define DULAC_SCALAR_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dulac/rational.hpp"
#include "dulac/real.hpp"

namespace dulac {

// An exact real of the form  c + sum_p r_p * ln(p)  (p prime). Used for the
// shift of affine maps, which arise from -ln(alpha) of flow-box maps.
class LogLinear
{
public:
    LogLinear() = default;
    LogLinear(Rational constant); // NOLINT(google-explicit-constructor)
    static LogLinear log_of(const Rational &positive);

    const Rational &constant() const { return constant_; }
    const std::map<unsigned long, Rational> &logs() const { return logs_; }
    bool is_zero() const { return constant_ == 0 && logs_.empty(); }
    bool is_rational() const { return logs_.empty(); }

    LogLinear operator+(const LogLinear &o) const;
    LogLinear operator-(const LogLinear &o) const;
    LogLinear operator-() const;
    LogLinear scaled(const Rational &k) const;

    Real value(mpfr_prec_t bits) const;

    friend bool operator==(const LogLinear &a, const LogLinear &b)
    {
        return a.constant_ == b.constant_ && a.logs_ == b.logs_;
    }
    friend bool operator!=(const LogLinear &a, const LogLinear &b) { return !(a == b); }

private:
    Rational constant_;
    std::map<unsigned long, Rational> logs_; // nonzero coefficients only
};

enum class FactorKind : unsigned char { Radical = 0, Euler = 1, LogPrime = 2 };

// One multiplicative factor of a monomial: p^r with r in (0,1), e^r with
// r != 0, or ln(p)^n with n a positive integer.
struct Factor
{
    FactorKind kind;
    unsigned long base; // prime for Radical/LogPrime, 0 for Euler
    Rational power;

    friend bool operator==(const Factor &a, const Factor &b)
    {
        return a.kind == b.kind && a.base == b.base && a.power == b.power;
    }
};

using Monomial = std::vector<Factor>; // sorted by (kind, base), unique keys

bool monomial_less(const Monomial &a, const Monomial &b);

// Exact coefficient ring: rational combinations of monomials in prime
// radicals, rational powers of e and powers of logarithms of primes.
// Zero testing is syntactic on the canonical form.
class Scalar
{
public:
    Scalar() = default;
    Scalar(Rational r); // NOLINT(google-explicit-constructor)
    Scalar(long v) : Scalar(Rational(v)) {} // NOLINT(google-explicit-constructor)

    // e^{mu * beta}
    static Scalar exp_of(const Rational &mu, const LogLinear &beta);
    static Scalar from_log_linear(const LogLinear &beta);
    static Scalar from_terms(std::vector<std::pair<Monomial, Rational>> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    // Requires is_rational().
    Rational rational() const;
    // c + sum r_p ln p, if the scalar has that shape.
    std::optional<LogLinear> as_log_linear() const;
    const std::vector<std::pair<Monomial, Rational>> &terms() const { return terms_; }

    Scalar operator+(const Scalar &o) const;
    Scalar operator-(const Scalar &o) const;
    Scalar operator*(const Scalar &o) const;
    Scalar operator-() const;
    Scalar &operator+=(const Scalar &o) { return *this = *this + o; }
    Scalar &operator-=(const Scalar &o) { return *this = *this - o; }
    Scalar &operator*=(const Scalar &o) { return *this = *this * o; }
    Scalar scaled(const Rational &k) const;

    Real value(mpfr_prec_t bits) const;
    // Sign decided exactly for rationals, otherwise numerically with
    // escalating precision. Throws std::runtime_error if undecidable.
    int sign() const;

    friend bool operator==(const Scalar &a, const Scalar &b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

private:
    std::vector<std::pair<Monomial, Rational>> terms_; // sorted, nonzero
};

} // namespace dulac

#endif
