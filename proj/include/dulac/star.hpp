// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_STAR_HPP
#define DULAC_STAR_HPP

#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dulac/series.hpp"

namespace dulac {

// Raised when an input is well formed but outside what the engine handles.
class UnsupportedError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct Principal
{
    Rational scale; // absolute: the entry is nu * e^{scale * zeta}
    Rational nu;

    friend bool operator==(const Principal &a, const Principal &b) { return a.scale == b.scale && a.nu == b.nu; }
};

// Generalized exponent  sum nu_a e^{a zeta} + tail(zeta).
class TransExponent
{
public:
    TransExponent() = default;
    explicit TransExponent(std::vector<Principal> principal, GenExpSeries tail = {});
    static TransExponent single(const Rational &scale, const Rational &nu);

    const std::vector<Principal> &principal() const { return principal_; }
    const GenExpSeries &tail() const { return tail_; }

    // nu at the given scale; zero if there is no entry.
    Rational nu_at(const Rational &scale) const;
    std::optional<Rational> dominant_scale() const;
    bool is_zero() const { return principal_.empty() && tail_.is_zero(); }

    // Same exponent written as one series (principal entries become terms).
    GenExpSeries as_series() const;

    friend bool operator==(const TransExponent &a, const TransExponent &b)
    {
        return a.principal_ == b.principal_ && a.tail_ == b.tail_;
    }
    friend bool operator!=(const TransExponent &a, const TransExponent &b) { return !(a == b); }

private:
    std::vector<Principal> principal_; // scales strictly decreasing, nu != 0
    GenExpSeries tail_;
};

TransExponent operator+(const TransExponent &a, const TransExponent &b);
TransExponent operator-(const TransExponent &a, const TransExponent &b);
TransExponent operator-(const TransExponent &a);
TransExponent scaled(const TransExponent &e, const Rational &k);

// Lexicographic comparison of principal data, largest scale first; absent
// entries count as zero. Returns -1, 0 or 1.
int compare_principal(const TransExponent &a, const TransExponent &b);

// d/dzeta as a multiplier series: sum a nu_a e^{a zeta} + tail'.
GenExpSeries exponent_derivative(const TransExponent &e);

// e(alpha zeta + beta). Throws UnsupportedError if a principal coefficient
// would become irrational.
TransExponent exponent_scale_argument(const TransExponent &e, const Rational &alpha, const LogLinear &beta = {});

Real evaluate(const TransExponent &e, const Real &zeta);

struct StarSeries;

// Coefficient class K_{1,p}: a K_{1,0} part plus whole lower-scale series.
class K1Coefficient
{
public:
    K1Coefficient() = default;
    K1Coefficient(GenExpSeries base); // NOLINT(google-explicit-constructor)
    K1Coefficient(GenExpSeries base, std::vector<std::shared_ptr<const StarSeries>> uppers);

    const GenExpSeries &base() const { return base_; }
    const std::vector<std::shared_ptr<const StarSeries>> &uppers() const { return uppers_; }

    int level() const;
    bool is_zero() const;

    friend bool operator==(const K1Coefficient &a, const K1Coefficient &b);
    friend bool operator!=(const K1Coefficient &a, const K1Coefficient &b) { return !(a == b); }

private:
    GenExpSeries base_;
    std::vector<std::shared_ptr<const StarSeries>> uppers_; // distinct scales, decreasing
};

K1Coefficient operator+(const K1Coefficient &a, const K1Coefficient &b);
K1Coefficient operator-(const K1Coefficient &a);
K1Coefficient operator*(const K1Coefficient &a, const K1Coefficient &b);
K1Coefficient multiply(const GenExpSeries &c, const K1Coefficient &k);
K1Coefficient derivative(const K1Coefficient &k);
K1Coefficient scale_argument(const K1Coefficient &k, const Rational &alpha, const LogLinear &beta = {});
Real evaluate(const K1Coefficient &k, const Real &zeta);

struct Level1Term
{
    K1Coefficient coeff;
    TransExponent exponent;

    friend bool operator==(const Level1Term &a, const Level1Term &b)
    {
        return a.coeff == b.coeff && a.exponent == b.exponent;
    }
};

// Symbolic tail of an infinite family: exponents base + q*step, q = 0, 1, ...
struct Progression
{
    TransExponent base;
    TransExponent step;

    friend bool operator==(const Progression &a, const Progression &b)
    {
        return a.base == b.base && a.step == b.step;
    }
};

// Finite sum of k e^{E} at ambient scale sigma. Terms whose nu at sigma lies
// below `accuracy` are omitted; infinite families that are not captured by
// the accuracy floor are described by `progressions`.
struct StarSeries
{
    std::vector<Level1Term> terms;
    Rational scale{1};
    std::optional<Rational> accuracy;
    std::vector<Progression> progressions;

    int level() const;
    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const StarSeries &a, const StarSeries &b)
    {
        return a.scale == b.scale && a.accuracy == b.accuracy && a.terms == b.terms &&
               a.progressions == b.progressions;
    }
    friend bool operator!=(const StarSeries &a, const StarSeries &b) { return !(a == b); }
};

// Canonical form: equal exponents merged, zero coefficients and terms below
// the accuracy dropped, stable sort by decreasing principal data,
// duplicate progressions removed.
StarSeries canonical(StarSeries s);

StarSeries star_add(const StarSeries &s, const StarSeries &t);
StarSeries star_neg(const StarSeries &s);
StarSeries star_sub(const StarSeries &s, const StarSeries &t);
StarSeries star_scalar(const Scalar &c, const StarSeries &s);
// Multiplies every coefficient by a K_{1,0} series.
StarSeries star_coeff_mul(const GenExpSeries &c, const StarSeries &s);
// Termwise product flattened at the larger scale: exponents add. Families
// of the lower-scale factor become progressions of the product.
StarSeries star_mul(const StarSeries &s, const StarSeries &t);
StarSeries star_derivative(const StarSeries &s);
// s(alpha zeta + beta); the ambient scale becomes alpha * sigma.
StarSeries star_scale_argument(const StarSeries &s, const Rational &alpha, const LogLinear &beta = {});
// Lower-scale series absorbed into the coefficients of a higher-scale one:
// the product lives at `high`'s scale with coefficients k_q * low.
StarSeries absorb_product(const StarSeries &high, const StarSeries &low);

Real evaluate(const Level1Term &t, const Real &zeta);
Real evaluate(const StarSeries &s, const Real &zeta);

} // namespace dulac

#endif
