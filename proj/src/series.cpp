// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace dulac {

GenExpSeries::GenExpSeries(std::vector<ExpTerm> terms, std::optional<Rational> floor, Rational threshold)
    : terms_(std::move(terms)), floor_(std::move(floor)), threshold_(std::move(threshold))
{
    if (threshold_ < 0) {
        throw std::invalid_argument("series threshold must be non-negative");
    }
    normalize();
}

void GenExpSeries::normalize()
{
    for (auto &t : terms_) {
        t.mu.canonicalize();
    }
    if (floor_) {
        floor_->canonicalize();
    }
    threshold_.canonicalize();
    std::stable_sort(terms_.begin(), terms_.end(), [](const ExpTerm &a, const ExpTerm &b) { return a.mu > b.mu; });
    std::vector<ExpTerm> merged;
    merged.reserve(terms_.size());
    for (auto &t : terms_) {
        if (!merged.empty() && merged.back().mu == t.mu) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [this](const ExpTerm &t) { return t.coeff.is_zero() || (floor_ && t.mu < *floor_); });
    terms_ = std::move(merged);
}

GenExpSeries GenExpSeries::zero(std::optional<Rational> floor)
{
    return GenExpSeries({}, std::move(floor));
}

GenExpSeries GenExpSeries::monomial(const Rational &mu, const Scalar &coeff, std::optional<Rational> floor)
{
    return GenExpSeries({ExpTerm{mu, coeff}}, std::move(floor));
}

GenExpSeries GenExpSeries::constant(const Scalar &c)
{
    return monomial(Rational(0), c);
}

bool GenExpSeries::is_fc0() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const ExpTerm &t) { return t.mu < 0; });
}

Scalar GenExpSeries::coefficient(const Rational &mu) const
{
    for (const auto &t : terms_) {
        if (t.mu == mu) {
            return t.coeff;
        }
    }
    return Scalar{};
}

std::optional<Rational> GenExpSeries::upper_exponent() const
{
    if (!terms_.empty()) {
        return terms_.front().mu;
    }
    return floor_;
}

GenExpSeries GenExpSeries::truncated(const Rational &floor) const
{
    GenExpSeries out = *this;
    out.floor_ = max_floor(floor_, floor);
    out.normalize();
    return out;
}

GenExpSeries GenExpSeries::with_threshold(const Rational &a) const
{
    GenExpSeries out = *this;
    out.threshold_ = a;
    return out;
}

// ---------------------------------------------------------------------------

GenExpSeries ring_add(const GenExpSeries &s, const GenExpSeries &t)
{
    std::vector<ExpTerm> all = s.terms();
    all.insert(all.end(), t.terms().begin(), t.terms().end());
    return GenExpSeries(std::move(all), max_floor(s.floor(), t.floor()), max_of(s.threshold(), t.threshold()));
}

GenExpSeries ring_neg(const GenExpSeries &s)
{
    return scalar_mul(Scalar(Rational(-1)), s);
}

GenExpSeries ring_sub(const GenExpSeries &s, const GenExpSeries &t)
{
    return ring_add(s, ring_neg(t));
}

GenExpSeries scalar_mul(const Scalar &c, const GenExpSeries &s)
{
    if (c.is_zero()) {
        return GenExpSeries({}, s.floor(), s.threshold());
    }
    std::vector<ExpTerm> terms = s.terms();
    for (auto &t : terms) {
        t.coeff = c * t.coeff;
    }
    return GenExpSeries(std::move(terms), s.floor(), s.threshold());
}

GenExpSeries ring_mul(const GenExpSeries &s, const GenExpSeries &t)
{
    Rational threshold = max_of(s.threshold(), t.threshold());
    auto su = s.upper_exponent();
    auto tu = t.upper_exponent();
    if ((s.is_zero() && s.is_exact()) || (t.is_zero() && t.is_exact())) {
        return GenExpSeries({}, std::nullopt, threshold);
    }
    std::optional<Rational> floor;
    if (s.floor()) {
        floor = max_floor(floor, Rational(*s.floor() + *tu));
    }
    if (t.floor()) {
        floor = max_floor(floor, Rational(*t.floor() + *su));
    }
    std::map<Rational, Scalar, std::greater<>> acc;
    for (const auto &a : s.terms()) {
        for (const auto &b : t.terms()) {
            Rational mu = a.mu + b.mu;
            if (floor && mu < *floor) {
                continue;
            }
            acc[mu] += a.coeff * b.coeff;
        }
    }
    std::vector<ExpTerm> terms;
    terms.reserve(acc.size());
    for (auto &[mu, c] : acc) {
        terms.push_back(ExpTerm{mu, std::move(c)});
    }
    return GenExpSeries(std::move(terms), floor, threshold);
}

GenExpSeries ring_pow(const GenExpSeries &s, unsigned n)
{
    GenExpSeries out = GenExpSeries::constant(Scalar(Rational(1))).with_threshold(s.threshold());
    for (unsigned i = 0; i < n; ++i) {
        out = ring_mul(out, s);
    }
    return out;
}

GenExpSeries derivative(const GenExpSeries &s)
{
    std::vector<ExpTerm> terms = s.terms();
    for (auto &t : terms) {
        t.coeff = t.coeff.scaled(t.mu);
    }
    return GenExpSeries(std::move(terms), s.floor(), s.threshold());
}

GenExpSeries scale_argument(const GenExpSeries &s, const Rational &alpha, const LogLinear &beta)
{
    if (alpha <= 0) {
        throw std::invalid_argument("scale_argument: alpha must be positive");
    }
    std::vector<ExpTerm> terms;
    terms.reserve(s.terms().size());
    for (const auto &t : s.terms()) {
        terms.push_back(ExpTerm{alpha * t.mu, t.coeff * Scalar::exp_of(t.mu, beta)});
    }
    std::optional<Rational> floor;
    if (s.floor()) {
        floor = alpha * *s.floor();
    }
    // The argument alpha*zeta + beta must stay at or above the old threshold.
    Rational threshold = s.threshold() / alpha;
    if (!beta.is_zero()) {
        double b = beta.value(64).to_double();
        double shifted = (s.threshold().get_d() - b) / alpha.get_d();
        threshold = Rational(static_cast<long>(std::ceil(std::max(0.0, shifted))));
    }
    return GenExpSeries(std::move(terms), floor, threshold);
}

std::optional<ExpTerm> leading_term(const GenExpSeries &s)
{
    if (s.is_zero()) {
        return std::nullopt;
    }
    return s.terms().front();
}

namespace {

Rational factorial(unsigned n)
{
    mpz_class f = 1;
    for (unsigned i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

// Sum over n >= 1 of coeff(n) * s^n, stopping when n * upper(s) < floor.
GenExpSeries power_sum(const GenExpSeries &s, const Rational &floor, const std::function<Rational(unsigned)> &coeff)
{
    if (s.is_zero() && s.is_exact()) {
        return GenExpSeries({}, std::nullopt, s.threshold());
    }
    Rational su = *s.upper_exponent();
    if (su >= 0) {
        throw std::domain_error("power series in a series that is not exponentially small");
    }
    GenExpSeries base = s.truncated(floor);
    GenExpSeries power = base;
    GenExpSeries out = GenExpSeries({}, floor, s.threshold());
    for (unsigned n = 1; Rational(su * n) >= floor; ++n) {
        if (n > 1) {
            power = ring_mul(power, base).truncated(floor);
        }
        out = ring_add(out, scalar_mul(Scalar(coeff(n)), power));
    }
    return out.truncated(floor);
}

} // namespace

GenExpSeries exp_minus_one(const GenExpSeries &s, const Rational &floor)
{
    return power_sum(s, floor, [](unsigned n) -> Rational { return Rational(1) / factorial(n); });
}

GenExpSeries log_one_plus(const GenExpSeries &s, const Rational &floor)
{
    return power_sum(s, floor, [](unsigned n) -> Rational { return Rational((n % 2 == 1) ? 1 : -1, n); });
}

GenExpSeries inverse_one_plus(const GenExpSeries &s, const Rational &floor)
{
    GenExpSeries tail = power_sum(s, floor, [](unsigned n) -> Rational { return Rational((n % 2 == 1) ? -1 : 1); });
    return ring_add(GenExpSeries::constant(Scalar(Rational(1))), tail);
}

GenExpSeries compose_series(const GenExpSeries &f, const GenExpSeries &g, std::optional<Rational> floor)
{
    Rational threshold = max_of(f.threshold(), g.threshold());
    if (g.is_zero() && g.is_exact()) {
        return floor ? f.truncated(*floor) : f;
    }
    if (f.is_zero() && f.is_exact()) {
        return GenExpSeries({}, std::nullopt, threshold);
    }
    Rational gu = *g.upper_exponent();
    if (gu >= 0) {
        throw std::domain_error("composition with a map that is not near the identity");
    }
    Rational fu = *f.upper_exponent();
    if (!floor) {
        if (f.floor()) {
            floor = f.floor();
        }
        if (g.floor()) {
            floor = max_floor(floor, Rational(*g.floor() + fu));
        }
        if (!floor) {
            throw std::invalid_argument("composition of exact series needs an explicit floor");
        }
    }
    GenExpSeries out = f.truncated(*floor);
    GenExpSeries deriv = f;
    GenExpSeries g_trunc = g.truncated(Rational(*floor - fu));
    GenExpSeries g_power = GenExpSeries::constant(Scalar(Rational(1)));
    for (unsigned n = 1; Rational(fu + gu * n) >= *floor; ++n) {
        deriv = derivative(deriv);
        g_power = ring_mul(g_power, g_trunc).truncated(Rational(*floor - fu));
        GenExpSeries term = ring_mul(deriv, g_power);
        out = ring_add(out, scalar_mul(Scalar(Rational(1) / factorial(n)), term));
    }
    out = out.truncated(*floor);
    return out.with_threshold(threshold);
}

bool agree_to_floor(const GenExpSeries &a, const GenExpSeries &b)
{
    auto f = max_floor(a.floor(), b.floor());
    if (!f) {
        return a.terms() == b.terms();
    }
    return a.truncated(*f).terms() == b.truncated(*f).terms();
}

Real evaluate(const GenExpSeries &s, const Real &zeta)
{
    mpfr_prec_t bits = zeta.precision();
    Real sum(bits);
    for (const auto &t : s.terms()) {
        Real e = exp(Real(t.mu, bits) * zeta);
        sum += t.coeff.value(bits) * require_finite(e, "series evaluation");
    }
    return require_finite(sum, "series evaluation");
}

} // namespace dulac
