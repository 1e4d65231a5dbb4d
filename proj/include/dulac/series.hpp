// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_SERIES_HPP
#define DULAC_SERIES_HPP

#include <optional>
#include <vector>

#include "dulac/rational.hpp"
#include "dulac/scalar.hpp"

namespace dulac {

struct ExpTerm
{
    Rational mu;
    Scalar coeff;

    friend bool operator==(const ExpTerm &a, const ExpTerm &b) { return a.mu == b.mu && a.coeff == b.coeff; }
};

// Truncated generalized exponential series  sum b * e^{mu zeta}.
//
// Terms are kept with strictly decreasing mu and nonzero coefficients. The
// floor (if any) bounds every omitted term: omitted exponents are < floor,
// and no stored exponent lies below it. A missing floor means the series is
// exact. The threshold is the half-plane parameter a on which the series is
// claimed to be accurate; it is metadata for numeric evaluation only.
class GenExpSeries
{
public:
    GenExpSeries() = default;
    GenExpSeries(std::vector<ExpTerm> terms, std::optional<Rational> floor = std::nullopt, Rational threshold = 0);

    static GenExpSeries zero(std::optional<Rational> floor = std::nullopt);
    static GenExpSeries monomial(const Rational &mu, const Scalar &coeff, std::optional<Rational> floor = std::nullopt);
    static GenExpSeries constant(const Scalar &c);

    const std::vector<ExpTerm> &terms() const { return terms_; }
    const std::optional<Rational> &floor() const { return floor_; }
    const Rational &threshold() const { return threshold_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_exact() const { return !floor_.has_value(); }

    // All exponents negative: the exponentially small class.
    bool is_fc0() const;
    // Finitely many non-negative exponents; true for every finite series.
    bool is_k10() const { return true; }

    // Coefficient of e^{mu zeta} (zero if absent).
    Scalar coefficient(const Rational &mu) const;

    // Largest exponent a term of this series (known or omitted) can have.
    // nullopt for the exact zero series.
    std::optional<Rational> upper_exponent() const;

    // Drops terms below the new floor and raises the floor to it.
    GenExpSeries truncated(const Rational &floor) const;
    GenExpSeries with_threshold(const Rational &a) const;

    friend bool operator==(const GenExpSeries &a, const GenExpSeries &b)
    {
        return a.terms_ == b.terms_ && a.floor_ == b.floor_ && a.threshold_ == b.threshold_;
    }
    friend bool operator!=(const GenExpSeries &a, const GenExpSeries &b) { return !(a == b); }

private:
    void normalize();

    std::vector<ExpTerm> terms_;
    std::optional<Rational> floor_;
    Rational threshold_{0};
};

GenExpSeries ring_add(const GenExpSeries &s, const GenExpSeries &t);
GenExpSeries ring_sub(const GenExpSeries &s, const GenExpSeries &t);
GenExpSeries ring_neg(const GenExpSeries &s);
GenExpSeries ring_mul(const GenExpSeries &s, const GenExpSeries &t);
GenExpSeries scalar_mul(const Scalar &c, const GenExpSeries &s);
GenExpSeries ring_pow(const GenExpSeries &s, unsigned n);

inline GenExpSeries operator+(const GenExpSeries &s, const GenExpSeries &t) { return ring_add(s, t); }
inline GenExpSeries operator-(const GenExpSeries &s, const GenExpSeries &t) { return ring_sub(s, t); }
inline GenExpSeries operator-(const GenExpSeries &s) { return ring_neg(s); }
inline GenExpSeries operator*(const GenExpSeries &s, const GenExpSeries &t) { return ring_mul(s, t); }

// d/dzeta, termwise: (mu, b) -> (mu, mu b).
GenExpSeries derivative(const GenExpSeries &s);

// s(alpha zeta + beta): (mu, b) -> (alpha mu, b e^{mu beta}); floor scales by alpha.
GenExpSeries scale_argument(const GenExpSeries &s, const Rational &alpha, const LogLinear &beta = {});

// Term with the largest exponent; nullopt for the zero series.
std::optional<ExpTerm> leading_term(const GenExpSeries &s);

// f(zeta + g(zeta)) by Taylor expansion in g, truncated at `floor`. The
// stopping index is computed from leading exponents. Requires g to be
// exponentially small (upper exponent < 0). When f and g are both exact and
// nonzero, `floor` must be given.
GenExpSeries compose_series(const GenExpSeries &f, const GenExpSeries &g, std::optional<Rational> floor);

// exp(s) - 1 for exponentially small s, truncated at `floor`.
GenExpSeries exp_minus_one(const GenExpSeries &s, const Rational &floor);
// ln(1 + s) for exponentially small s, truncated at `floor`.
GenExpSeries log_one_plus(const GenExpSeries &s, const Rational &floor);
// 1 / (1 + s) for exponentially small s, truncated at `floor`.
GenExpSeries inverse_one_plus(const GenExpSeries &s, const Rational &floor);

// Exact agreement on all terms at or above the larger of the two floors.
bool agree_to_floor(const GenExpSeries &a, const GenExpSeries &b);

Real evaluate(const GenExpSeries &s, const Real &zeta);

} // namespace dulac

#endif
