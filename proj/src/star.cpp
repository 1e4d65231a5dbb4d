// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/star.hpp"

#include <algorithm>

namespace dulac {

// ---------------------------------------------------------------------------
// TransExponent

TransExponent::TransExponent(std::vector<Principal> principal, GenExpSeries tail) : tail_(std::move(tail))
{
    std::sort(principal.begin(), principal.end(),
              [](const Principal &a, const Principal &b) { return a.scale > b.scale; });
    for (auto &p : principal) {
        if (p.scale <= 0) {
            throw std::invalid_argument("principal scale must be positive");
        }
        p.scale.canonicalize();
        p.nu.canonicalize();
        if (!principal_.empty() && principal_.back().scale == p.scale) {
            principal_.back().nu += p.nu;
        } else {
            principal_.push_back(std::move(p));
        }
    }
    std::erase_if(principal_, [](const Principal &p) { return p.nu == 0; });
}

TransExponent TransExponent::single(const Rational &scale, const Rational &nu)
{
    return TransExponent({Principal{scale, nu}});
}

Rational TransExponent::nu_at(const Rational &scale) const
{
    for (const auto &p : principal_) {
        if (p.scale == scale) {
            return p.nu;
        }
    }
    return Rational(0);
}

std::optional<Rational> TransExponent::dominant_scale() const
{
    if (principal_.empty()) {
        return std::nullopt;
    }
    return principal_.front().scale;
}

GenExpSeries TransExponent::as_series() const
{
    std::vector<ExpTerm> terms;
    for (const auto &p : principal_) {
        terms.push_back(ExpTerm{p.scale, Scalar(p.nu)});
    }
    return ring_add(GenExpSeries(std::move(terms)), tail_);
}

TransExponent operator+(const TransExponent &a, const TransExponent &b)
{
    std::vector<Principal> all = a.principal();
    all.insert(all.end(), b.principal().begin(), b.principal().end());
    return TransExponent(std::move(all), ring_add(a.tail(), b.tail()));
}

TransExponent scaled(const TransExponent &e, const Rational &k)
{
    std::vector<Principal> all = e.principal();
    for (auto &p : all) {
        p.nu *= k;
    }
    return TransExponent(std::move(all), scalar_mul(Scalar(k), e.tail()));
}

TransExponent operator-(const TransExponent &a)
{
    return scaled(a, Rational(-1));
}

TransExponent operator-(const TransExponent &a, const TransExponent &b)
{
    return a + (-b);
}

int compare_principal(const TransExponent &a, const TransExponent &b)
{
    const auto &pa = a.principal();
    const auto &pb = b.principal();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < pa.size() || j < pb.size()) {
        Rational na(0);
        Rational nb(0);
        if (j == pb.size() || (i < pa.size() && pa[i].scale > pb[j].scale)) {
            na = pa[i++].nu;
        } else if (i == pa.size() || pb[j].scale > pa[i].scale) {
            nb = pb[j++].nu;
        } else {
            na = pa[i++].nu;
            nb = pb[j++].nu;
        }
        if (na != nb) {
            return na > nb ? 1 : -1;
        }
    }
    return 0;
}

GenExpSeries exponent_derivative(const TransExponent &e)
{
    std::vector<ExpTerm> terms;
    for (const auto &p : e.principal()) {
        terms.push_back(ExpTerm{p.scale, Scalar(Rational(p.scale * p.nu))});
    }
    return ring_add(GenExpSeries(std::move(terms)), derivative(e.tail()));
}

TransExponent exponent_scale_argument(const TransExponent &e, const Rational &alpha, const LogLinear &beta)
{
    std::vector<Principal> out;
    for (const auto &p : e.principal()) {
        Scalar factor = Scalar::exp_of(p.scale, beta);
        if (!factor.is_rational()) {
            throw UnsupportedError("shift makes a principal exponent irrational");
        }
        out.push_back(Principal{alpha * p.scale, p.nu * factor.rational()});
    }
    return TransExponent(std::move(out), scale_argument(e.tail(), alpha, beta));
}

Real evaluate(const TransExponent &e, const Real &zeta)
{
    mpfr_prec_t bits = zeta.precision();
    Real sum = evaluate(e.tail(), zeta);
    for (const auto &p : e.principal()) {
        sum += Real(p.nu, bits) * exp(Real(p.scale, bits) * zeta);
    }
    return require_finite(sum, "exponent evaluation");
}

// ---------------------------------------------------------------------------
// K1Coefficient

K1Coefficient::K1Coefficient(GenExpSeries base) : base_(std::move(base)) {}

K1Coefficient::K1Coefficient(GenExpSeries base, std::vector<std::shared_ptr<const StarSeries>> uppers)
    : base_(std::move(base))
{
    std::erase_if(uppers, [](const auto &u) { return !u || u->is_zero(); });
    std::stable_sort(uppers.begin(), uppers.end(), [](const auto &a, const auto &b) { return a->scale > b->scale; });
    for (auto &u : uppers) {
        if (!uppers_.empty() && uppers_.back()->scale == u->scale) {
            uppers_.back() = std::make_shared<const StarSeries>(star_add(*uppers_.back(), *u));
        } else {
            uppers_.push_back(std::move(u));
        }
    }
    std::erase_if(uppers_, [](const auto &u) { return u->is_zero(); });
}

int K1Coefficient::level() const
{
    int p = 0;
    for (const auto &u : uppers_) {
        p = std::max(p, 1 + u->level());
    }
    return p;
}

bool K1Coefficient::is_zero() const
{
    return base_.is_zero() && uppers_.empty();
}

bool operator==(const K1Coefficient &a, const K1Coefficient &b)
{
    if (a.base_ != b.base_ || a.uppers_.size() != b.uppers_.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.uppers_.size(); ++i) {
        if (*a.uppers_[i] != *b.uppers_[i]) {
            return false;
        }
    }
    return true;
}

K1Coefficient operator+(const K1Coefficient &a, const K1Coefficient &b)
{
    auto uppers = a.uppers();
    uppers.insert(uppers.end(), b.uppers().begin(), b.uppers().end());
    return K1Coefficient(ring_add(a.base(), b.base()), std::move(uppers));
}

K1Coefficient operator-(const K1Coefficient &a)
{
    return multiply(GenExpSeries::constant(Scalar(-1)), a);
}

K1Coefficient multiply(const GenExpSeries &c, const K1Coefficient &k)
{
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    for (const auto &u : k.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_coeff_mul(c, *u)));
    }
    return K1Coefficient(ring_mul(c, k.base()), std::move(uppers));
}

K1Coefficient operator*(const K1Coefficient &a, const K1Coefficient &b)
{
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    for (const auto &u : b.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_coeff_mul(a.base(), *u)));
    }
    for (const auto &u : a.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_coeff_mul(b.base(), *u)));
        for (const auto &v : b.uppers()) {
            uppers.push_back(std::make_shared<const StarSeries>(star_mul(*u, *v)));
        }
    }
    return K1Coefficient(ring_mul(a.base(), b.base()), std::move(uppers));
}

K1Coefficient derivative(const K1Coefficient &k)
{
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    for (const auto &u : k.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_derivative(*u)));
    }
    return K1Coefficient(derivative(k.base()), std::move(uppers));
}

K1Coefficient scale_argument(const K1Coefficient &k, const Rational &alpha, const LogLinear &beta)
{
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    for (const auto &u : k.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_scale_argument(*u, alpha, beta)));
    }
    return K1Coefficient(scale_argument(k.base(), alpha, beta), std::move(uppers));
}

Real evaluate(const K1Coefficient &k, const Real &zeta)
{
    Real sum = evaluate(k.base(), zeta);
    for (const auto &u : k.uppers()) {
        sum += evaluate(*u, zeta);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// StarSeries

int StarSeries::level() const
{
    int p = 0;
    for (const auto &t : terms) {
        p = std::max(p, t.coeff.level());
    }
    return p;
}

namespace {

// True when every exponent of `inner` also occurs in `outer`.
bool progression_covers(const Progression &outer, const Progression &inner)
{
    if (outer.step != inner.step || outer.base.tail() != inner.base.tail() || outer.step.principal().empty()) {
        return false;
    }
    TransExponent diff = inner.base - outer.base;
    if (!diff.tail().is_zero()) {
        return false;
    }
    const Principal &lead = outer.step.principal().front();
    Rational k = diff.nu_at(lead.scale) / lead.nu;
    return is_integer(k) && k >= 0 && diff == scaled(outer.step, k) && outer.step.tail().is_zero();
}

} // namespace

StarSeries canonical(StarSeries s)
{
    std::vector<Level1Term> merged;
    for (auto &t : s.terms) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const Level1Term &m) { return m.exponent == t.exponent; });
        if (it != merged.end()) {
            it->coeff = it->coeff + t.coeff;
        } else {
            merged.push_back(std::move(t));
        }
    }
    std::erase_if(merged, [&](const Level1Term &t) {
        return t.coeff.is_zero() || (s.accuracy && t.exponent.nu_at(s.scale) < *s.accuracy);
    });
    std::stable_sort(merged.begin(), merged.end(), [](const Level1Term &a, const Level1Term &b) {
        return compare_principal(a.exponent, b.exponent) > 0;
    });
    s.terms = std::move(merged);

    std::vector<Progression> progs;
    for (auto &p : s.progressions) {
        if (std::find(progs.begin(), progs.end(), p) == progs.end()) {
            progs.push_back(std::move(p));
        }
    }
    std::vector<Progression> kept;
    for (std::size_t i = 0; i < progs.size(); ++i) {
        bool covered = false;
        for (std::size_t j = 0; j < progs.size() && !covered; ++j) {
            covered = j != i && progression_covers(progs[j], progs[i]);
        }
        if (!covered) {
            kept.push_back(progs[i]);
        }
    }
    s.progressions = std::move(kept);
    return s;
}

namespace {

bool is_exact_zero(const StarSeries &s)
{
    return s.terms.empty() && !s.accuracy && s.progressions.empty();
}

// Largest nu at `scale` that a term of s (known or omitted) can have.
Rational upper_nu(const StarSeries &s, const Rational &scale)
{
    if (!s.terms.empty()) {
        Rational best = s.terms.front().exponent.nu_at(scale);
        for (const auto &t : s.terms) {
            best = max_of(best, t.exponent.nu_at(scale));
        }
        return best;
    }
    if (s.accuracy && s.scale == scale) {
        return *s.accuracy;
    }
    return Rational(0);
}

} // namespace

StarSeries star_add(const StarSeries &s, const StarSeries &t)
{
    if (is_exact_zero(s)) {
        return t;
    }
    if (is_exact_zero(t)) {
        return s;
    }
    if (s.scale != t.scale) {
        throw std::invalid_argument("adding series of different scales");
    }
    StarSeries out;
    out.scale = s.scale;
    out.terms = s.terms;
    out.terms.insert(out.terms.end(), t.terms.begin(), t.terms.end());
    out.accuracy = max_floor(s.accuracy, t.accuracy);
    out.progressions = s.progressions;
    out.progressions.insert(out.progressions.end(), t.progressions.begin(), t.progressions.end());
    return canonical(std::move(out));
}

StarSeries star_scalar(const Scalar &c, const StarSeries &s)
{
    return star_coeff_mul(GenExpSeries::constant(c), s);
}

StarSeries star_neg(const StarSeries &s)
{
    return star_scalar(Scalar(-1), s);
}

StarSeries star_sub(const StarSeries &s, const StarSeries &t)
{
    return star_add(s, star_neg(t));
}

StarSeries star_coeff_mul(const GenExpSeries &c, const StarSeries &s)
{
    StarSeries out;
    out.scale = s.scale;
    if (c.is_zero() && c.is_exact()) {
        return out;
    }
    out.accuracy = s.accuracy;
    out.progressions = s.progressions;
    for (const auto &t : s.terms) {
        out.terms.push_back(Level1Term{multiply(c, t.coeff), t.exponent});
    }
    return canonical(std::move(out));
}

StarSeries star_mul(const StarSeries &s, const StarSeries &t)
{
    StarSeries out;
    out.scale = max_of(s.scale, t.scale);
    if (is_exact_zero(s) || is_exact_zero(t)) {
        return out;
    }
    const Rational &sigma = out.scale;
    if (s.accuracy && s.scale == sigma) {
        out.accuracy = max_floor(out.accuracy, Rational(*s.accuracy + upper_nu(t, sigma)));
    }
    if (t.accuracy && t.scale == sigma) {
        out.accuracy = max_floor(out.accuracy, Rational(*t.accuracy + upper_nu(s, sigma)));
    }
    for (const auto &a : s.terms) {
        for (const auto &b : t.terms) {
            if (out.accuracy && Rational(a.exponent.nu_at(sigma) + b.exponent.nu_at(sigma)) < *out.accuracy) {
                continue;
            }
            out.terms.push_back(Level1Term{a.coeff * b.coeff, a.exponent + b.exponent});
        }
    }
    // A family of one factor times the leading term of the other. Only the
    // leading term is recorded: it carries the largest principal data.
    auto cross = [&out](const StarSeries &with_family, const StarSeries &other) {
        if (other.terms.empty()) {
            return;
        }
        for (const auto &p : with_family.progressions) {
            out.progressions.push_back(Progression{p.base + other.terms.front().exponent, p.step});
        }
    };
    cross(s, t);
    cross(t, s);
    return canonical(std::move(out));
}

StarSeries star_derivative(const StarSeries &s)
{
    StarSeries out = s;
    out.terms.clear();
    for (const auto &t : s.terms) {
        K1Coefficient k = derivative(t.coeff) + multiply(exponent_derivative(t.exponent), t.coeff);
        out.terms.push_back(Level1Term{std::move(k), t.exponent});
    }
    return canonical(std::move(out));
}

StarSeries star_scale_argument(const StarSeries &s, const Rational &alpha, const LogLinear &beta)
{
    if (alpha <= 0) {
        throw std::invalid_argument("scale factor must be positive");
    }
    StarSeries out;
    out.scale = alpha * s.scale;
    if (s.accuracy) {
        Scalar factor = Scalar::exp_of(s.scale, beta);
        if (!factor.is_rational()) {
            throw UnsupportedError("shift makes the accuracy floor irrational");
        }
        out.accuracy = *s.accuracy * factor.rational();
    }
    for (const auto &t : s.terms) {
        out.terms.push_back(
            Level1Term{scale_argument(t.coeff, alpha, beta), exponent_scale_argument(t.exponent, alpha, beta)});
    }
    for (const auto &p : s.progressions) {
        out.progressions.push_back(
            Progression{exponent_scale_argument(p.base, alpha, beta), exponent_scale_argument(p.step, alpha, beta)});
    }
    return canonical(std::move(out));
}

StarSeries absorb_product(const StarSeries &high, const StarSeries &low)
{
    StarSeries out;
    out.scale = high.scale;
    if (is_exact_zero(high) || is_exact_zero(low)) {
        return out;
    }
    out.accuracy = high.accuracy;
    out.progressions = high.progressions;
    K1Coefficient wrapped(GenExpSeries{}, {std::make_shared<const StarSeries>(low)});
    for (const auto &t : high.terms) {
        out.terms.push_back(Level1Term{t.coeff * wrapped, t.exponent});
    }
    return canonical(std::move(out));
}

Real evaluate(const Level1Term &t, const Real &zeta)
{
    Real e = exp(evaluate(t.exponent, zeta));
    return require_finite(evaluate(t.coeff, zeta) * e, "term evaluation");
}

Real evaluate(const StarSeries &s, const Real &zeta)
{
    Real sum(zeta.precision());
    for (const auto &t : s.terms) {
        sum += evaluate(t, zeta);
    }
    return sum;
}

} // namespace dulac
