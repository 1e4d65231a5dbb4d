// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/level1.hpp"

#include <algorithm>
#include <sstream>

#include "dulac/text.hpp"

namespace dulac {

// ---------------------------------------------------------------------------
// Normal form

SplitExponent split_exponent(const TransExponent &e, const Rational &floor)
{
    const GenExpSeries &tail = e.tail();
    if (tail.floor() && *tail.floor() >= 0) {
        throw UnsupportedError("normal form: exponent tail has unknown non-negative terms");
    }
    std::vector<Principal> principal = e.principal();
    std::vector<ExpTerm> large;
    std::vector<ExpTerm> small;
    Scalar constant;
    for (const auto &t : tail.terms()) {
        if (t.mu > 0) {
            if (t.coeff.is_rational()) {
                principal.push_back({t.mu, t.coeff.rational()});
            } else {
                large.push_back(t);
            }
        } else if (t.mu == 0) {
            constant = t.coeff;
        } else {
            small.push_back(t);
        }
    }

    Scalar c0(1);
    if (!constant.is_zero()) {
        auto beta = constant.as_log_linear();
        if (!beta) {
            throw UnsupportedError("normal form: constant exponent term is not of the form c + sum r ln p");
        }
        c0 = Scalar::exp_of(1, *beta);
    }
    GenExpSeries negative(small, tail.floor());
    GenExpSeries factor = GenExpSeries::constant(c0);
    if (!(negative.is_zero() && negative.is_exact())) {
        factor = scalar_mul(c0, GenExpSeries::constant(Scalar(1)) + exp_minus_one(negative, floor));
    }
    return {TransExponent(std::move(principal), GenExpSeries(std::move(large))), std::move(factor)};
}

bool is_large_form(const TransExponent &e)
{
    const GenExpSeries &tail = e.tail();
    return tail.is_exact() &&
           std::all_of(tail.terms().begin(), tail.terms().end(), [](const ExpTerm &t) { return t.mu > 0; });
}

StarSeries normal_form(const StarSeries &s, const Rational &coeff_floor)
{
    StarSeries out = s;
    out.terms.clear();
    for (const auto &t : s.terms) {
        SplitExponent sp = split_exponent(t.exponent, coeff_floor);
        out.terms.push_back({multiply(sp.factor, t.coeff), sp.large});
    }
    out.progressions.clear();
    for (const auto &p : s.progressions) {
        out.progressions.push_back(
            {split_exponent(p.base, coeff_floor).large, split_exponent(p.step, coeff_floor).large});
    }
    return canonical(std::move(out));
}

TermOrder compare_terms(const Level1Term &a, const Level1Term &b)
{
    if (!is_large_form(a.exponent) || !is_large_form(b.exponent)) {
        throw std::invalid_argument("compare_terms: exponents must be in Large normal form");
    }
    int c = compare_principal(a.exponent, b.exponent);
    if (c > 0) {
        return TermOrder::Greater;
    }
    return c < 0 ? TermOrder::Less : TermOrder::EqualPrincipal;
}

// ---------------------------------------------------------------------------
// Validity

ValidityReport validity_check(const std::vector<Level1Term> &terms, const std::vector<Progression> &families,
                              const Rational &scale)
{
    (void)terms; // finitely many explicit terms never affect the limit
    ValidityReport r;
    r.scale = scale;
    for (const auto &f : families) {
        Rational step = f.step.nu_at(scale);
        if (step < 0) {
            continue;
        }
        r.valid = false;
        if (step == 0) {
            r.witness = f.base.nu_at(scale);
            r.reason = "principal exponent at scale " + to_string(scale) + " stays at " + to_string(*r.witness) +
                       " (magnitude " + to_string(abs_of(*r.witness)) + ") along the family " + print(f.base) +
                       " + q*" + print(f.step);
        } else {
            r.reason = "principal exponent at scale " + to_string(scale) + " grows along the family " + print(f.base) +
                       " + q*" + print(f.step);
        }
        return r;
    }
    r.reason = "principal exponent at scale " + to_string(scale) + " tends to -infinity along every family";
    return r;
}

ValidityReport validity_check(const StarSeries &s)
{
    return validity_check(s.terms, s.progressions, s.scale);
}

ValidityReport deep_validity_check(const StarSeries &s)
{
    ValidityReport r = validity_check(s);
    if (!r.valid) {
        return r;
    }
    for (const auto &t : s.terms) {
        for (const auto &u : t.coeff.uppers()) {
            ValidityReport inner = deep_validity_check(*u);
            if (!inner.valid) {
                return inner;
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Derivatives

DerivativeReport term_derivative(const Level1Term &t, const Rational &scale)
{
    DerivativeReport r;
    K1Coefficient k = derivative(t.coeff) + multiply(exponent_derivative(t.exponent), t.coeff);
    r.level_in = t.coeff.level();
    r.level_out = k.level();
    r.within_k10 = r.level_out == 0;
    r.derivative.scale = scale;
    r.derivative.terms.push_back({std::move(k), t.exponent});
    r.derivative = canonical(std::move(r.derivative));
    return r;
}

// ---------------------------------------------------------------------------
// Ordering and lower bounds

namespace {

std::vector<Level1Term> normalized_terms(const std::vector<Level1Term> &terms, const Rational &floor)
{
    std::vector<Level1Term> out;
    for (const auto &t : terms) {
        SplitExponent sp = split_exponent(t.exponent, floor);
        Level1Term n{multiply(sp.factor, t.coeff), sp.large};
        if (!n.coeff.is_zero()) {
            out.push_back(std::move(n));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const Level1Term &a, const Level1Term &b) {
        return compare_terms(a, b) == TermOrder::Greater;
    });
    return out;
}

std::optional<ValidityReport> coefficient_gap(const K1Coefficient &k)
{
    for (const auto &u : k.uppers()) {
        ValidityReport r = deep_validity_check(*u);
        if (!r.valid) {
            return r;
        }
    }
    return std::nullopt;
}

std::string print_term(const Level1Term &t)
{
    return "(" + print(t.coeff) + ")*" + print(t.exponent);
}

} // namespace

LowerBoundReport ordering_lower_bound(const std::vector<Level1Term> &input, const Rational &scale,
                                      const BoundOptions &opt)
{
    LowerBoundReport rep;
    rep.scale = scale;
    rep.validity.scale = scale;
    std::vector<Level1Term> terms = normalized_terms(input, opt.coeff_floor);
    if (terms.empty()) {
        rep.detail = "zero series has no lower bound";
        return rep;
    }
    rep.lambda = -terms.front().exponent.nu_at(scale) + opt.delta;

    std::vector<Level1Term> current = terms;
    for (int depth = 0;; ++depth) {
        for (const auto &t : current) {
            if (auto gap = coefficient_gap(t.coeff)) {
                rep.status = BoundStatus::GapDetected;
                rep.witness = t;
                rep.validity = *gap;
                rep.level = t.coeff.level();
                rep.detail = "coefficient at step " + std::to_string(depth) + " is not a valid K-coefficient: " +
                             gap->reason;
                return rep;
            }
        }
        if (current.size() <= 1) {
            break;
        }
        const Level1Term &lead = current.front();
        K1Coefficient lead_d = derivative(lead.coeff);
        GenExpSeries lead_e = exponent_derivative(lead.exponent);
        std::vector<Level1Term> next;
        for (std::size_t q = 1; q < current.size(); ++q) {
            const Level1Term &t = current[q];
            // k_q' k_1 - k_1' k_q + k_q k_1 (e_q' - e_1')
            K1Coefficient n = derivative(t.coeff) * lead.coeff + -(lead_d * t.coeff) +
                              multiply(exponent_derivative(t.exponent) - lead_e, t.coeff * lead.coeff);
            next.push_back({std::move(n), t.exponent - lead.exponent});
        }
        rep.steps.push_back("step " + std::to_string(depth) + ": divide by " + print_term(lead) + ", differentiate " +
                            std::to_string(next.size()) + " remaining terms");
        current = normalized_terms(next, opt.coeff_floor);
    }

    for (const auto &z : opt.grid) {
        Real zeta(z, opt.bits);
        Real value(opt.bits);
        for (const auto &t : terms) {
            value += evaluate(t, zeta);
        }
        Real bound = exp(-(Real(rep.lambda, opt.bits) * exp(Real(scale, opt.bits) * zeta)));
        if (abs(value) < bound) {
            rep.status = BoundStatus::Inconclusive;
            rep.detail = "numeric check failed at zeta = " + to_string(z);
            return rep;
        }
    }
    rep.status = BoundStatus::Certified;
    rep.detail = "no coefficient left K_{1,p}; bound verified numerically on the grid";
    return rep;
}

LowerBoundReport ordering_lower_bound(const StarSeries &s, const BoundOptions &opt)
{
    ValidityReport v = validity_check(normal_form(s, opt.coeff_floor));
    if (!v.valid) {
        LowerBoundReport rep;
        rep.status = BoundStatus::GapDetected;
        rep.scale = s.scale;
        rep.validity = v;
        rep.level = s.level();
        rep.detail = "series is not valid: " + v.reason;
        return rep;
    }
    return ordering_lower_bound(s.terms, s.scale, opt);
}

// ---------------------------------------------------------------------------
// Leading term at scale 1

namespace {

// Sign of a coefficient: its K_{1,0} part dominates any upper series.
int coefficient_sign(const K1Coefficient &k)
{
    if (auto lead = leading_term(k.base())) {
        return lead->coeff.sign();
    }
    for (const auto &u : k.uppers()) {
        if (!u->terms.empty()) {
            return coefficient_sign(u->terms.front().coeff);
        }
    }
    return 0;
}

} // namespace

LeadingTermReport scale1_leading_term(const Decomposition &d)
{
    if (d.affine.alpha != 1) {
        throw std::invalid_argument("outside the scale-1 regime: affine linear part " + to_string(d.affine.alpha));
    }
    for (const auto &b : d.level1) {
        if (b.scale != 1) {
            throw std::invalid_argument("outside the scale-1 regime: level-1 scale " + to_string(b.scale));
        }
    }
    LeadingTermReport r;
    if (!d.affine.beta.is_zero()) {
        r.kind = LeadingKind::AffineShift;
        r.sign = Scalar::from_log_linear(d.affine.beta).sign();
        r.description = "affine shift " + print(d.affine.beta);
        return r;
    }
    if (auto lead = leading_term(d.level0)) {
        r.kind = LeadingKind::Level0;
        r.sign = lead->coeff.sign();
        r.description = "level 0 term " + print(lead->coeff) + "*E(" + to_string(lead->mu) + ")";
        return r;
    }
    for (const auto &b : d.level1) {
        StarSeries n = normal_form(b.body, d.order.coeff_floor);
        if (n.terms.empty()) {
            continue;
        }
        r.kind = LeadingKind::Level1;
        r.term = n.terms.front();
        r.sign = coefficient_sign(r.term->coeff);
        r.description = "level 1 term at scale 1: " + print_term(*r.term);
        return r;
    }
    r.description = "identity to truncation order";
    return r;
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(const ValidityReport &r)
{
    std::ostringstream out;
    out << (r.valid ? "Valid" : "Invalid") << " at scale " << to_string(r.scale);
    if (r.witness) {
        out << ", witness nu = " << to_string(*r.witness) << " (|nu| = " << to_string(abs_of(*r.witness)) << ")";
    }
    out << ": " << r.reason;
    return out.str();
}

std::string to_string(const LowerBoundReport &r)
{
    std::ostringstream out;
    switch (r.status) {
    case BoundStatus::Certified:
        out << "Certified: |s| >= exp(-" << to_string(r.lambda) << " * exp(" << to_string(r.scale) << " * zeta))";
        break;
    case BoundStatus::GapDetected:
        out << "GapDetected at level " << r.level;
        break;
    case BoundStatus::Inconclusive:
        out << "Inconclusive";
        break;
    }
    out << "\n  " << r.detail;
    for (const auto &s : r.steps) {
        out << "\n  " << s;
    }
    if (r.witness) {
        out << "\n  witness: " << print_term(*r.witness);
    }
    if (r.status == BoundStatus::GapDetected) {
        out << "\n  validity: " << to_string(r.validity);
    }
    return out.str();
}

std::string to_string(const LeadingTermReport &r)
{
    std::string sign = r.sign > 0 ? "+" : r.sign < 0 ? "-" : "0";
    return r.description + " (sign " + sign + ")";
}

} // namespace dulac
