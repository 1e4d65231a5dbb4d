// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/scalar.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace dulac {

// ---------------------------------------------------------------------------
// LogLinear

LogLinear::LogLinear(Rational constant) : constant_(std::move(constant))
{
    constant_.canonicalize();
}

LogLinear LogLinear::log_of(const Rational &positive)
{
    LogLinear out;
    for (const auto &[p, e] : factor_rational(positive)) {
        out.logs_[p] = Rational(e);
    }
    return out;
}

LogLinear LogLinear::operator+(const LogLinear &o) const
{
    LogLinear out = *this;
    out.constant_ += o.constant_;
    for (const auto &[p, r] : o.logs_) {
        Rational &slot = out.logs_[p];
        slot += r;
        if (slot == 0) {
            out.logs_.erase(p);
        }
    }
    return out;
}

LogLinear LogLinear::operator-() const
{
    return scaled(Rational(-1));
}

LogLinear LogLinear::operator-(const LogLinear &o) const
{
    return *this + (-o);
}

LogLinear LogLinear::scaled(const Rational &k) const
{
    if (k == 0) {
        return LogLinear{};
    }
    LogLinear out;
    out.constant_ = constant_ * k;
    for (const auto &[p, r] : logs_) {
        out.logs_[p] = r * k;
    }
    return out;
}

Real LogLinear::value(mpfr_prec_t bits) const
{
    Real v(constant_, bits);
    for (const auto &[p, r] : logs_) {
        v += Real(r, bits) * log_of_prime(p, bits);
    }
    return v;
}

// ---------------------------------------------------------------------------
// Monomials

namespace {

auto factor_key(const Factor &f)
{
    return std::make_tuple(static_cast<int>(f.kind), f.base);
}

// Product of two canonical monomials; integer parts of radical powers are
// returned in the rational factor.
std::pair<Rational, Monomial> multiply(const Monomial &a, const Monomial &b)
{
    Rational carry(1);
    Monomial out;
    std::size_t i = 0;
    std::size_t j = 0;
    auto push = [&](Factor f) {
        if (f.kind == FactorKind::Radical) {
            mpz_class whole = floor_of(f.power);
            f.power -= Rational(whole);
            if (whole != 0) {
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), mpz_class(f.base).get_mpz_t(), mpz_class(abs(whole)).get_ui());
                carry *= whole > 0 ? Rational(pw) : Rational(mpz_class(1), pw);
            }
        }
        if (f.power != 0) {
            out.push_back(std::move(f));
        }
    };
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && factor_key(a[i]) < factor_key(b[j]))) {
            push(a[i++]);
        } else if (i == a.size() || factor_key(b[j]) < factor_key(a[i])) {
            push(b[j++]);
        } else {
            Factor f = a[i++];
            f.power += b[j++].power;
            push(std::move(f));
        }
    }
    carry.canonicalize();
    return {carry, out};
}

Real monomial_value(const Monomial &m, mpfr_prec_t bits)
{
    Real v(1L, bits);
    for (const auto &f : m) {
        switch (f.kind) {
        case FactorKind::Radical:
            v *= pow(Real(static_cast<long>(f.base), bits), f.power);
            break;
        case FactorKind::Euler:
            v *= exp(Real(f.power, bits));
            break;
        case FactorKind::LogPrime: {
            Real l = log_of_prime(f.base, bits);
            for (mpz_class n = f.power.get_num(); n > 0; --n) {
                v *= l;
            }
            break;
        }
        }
    }
    return v;
}

} // namespace

bool monomial_less(const Monomial &a, const Monomial &b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](const Factor &x, const Factor &y) {
        if (factor_key(x) != factor_key(y)) {
            return factor_key(x) < factor_key(y);
        }
        return x.power < y.power;
    });
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(Rational r)
{
    r.canonicalize();
    if (r != 0) {
        terms_.emplace_back(Monomial{}, std::move(r));
    }
}

Scalar Scalar::from_terms(std::vector<std::pair<Monomial, Rational>> terms)
{
    std::sort(terms.begin(), terms.end(), [](const auto &x, const auto &y) { return monomial_less(x.first, y.first); });
    Scalar out;
    for (auto &t : terms) {
        if (!out.terms_.empty() && out.terms_.back().first == t.first) {
            out.terms_.back().second += t.second;
        } else {
            out.terms_.push_back(std::move(t));
        }
    }
    std::erase_if(out.terms_, [](const auto &t) { return t.second == 0; });
    for (auto &t : out.terms_) {
        t.second.canonicalize();
    }
    return out;
}

Scalar Scalar::exp_of(const Rational &mu, const LogLinear &beta)
{
    if (mu == 0 || beta.is_zero()) {
        return Scalar(Rational(1));
    }
    Monomial m;
    Rational e = mu * beta.constant();
    if (e != 0) {
        m.push_back(Factor{FactorKind::Euler, 0, e});
    }
    Monomial radicals;
    for (const auto &[p, r] : beta.logs()) {
        radicals.push_back(Factor{FactorKind::Radical, p, mu * r});
    }
    // Multiplying by the empty monomial normalizes the radical powers.
    auto [carry, norm] = multiply(radicals, Monomial{});
    auto [carry2, full] = multiply(norm, m);
    return from_terms({{full, carry * carry2}});
}

Scalar Scalar::from_log_linear(const LogLinear &beta)
{
    std::vector<std::pair<Monomial, Rational>> terms;
    if (beta.constant() != 0) {
        terms.emplace_back(Monomial{}, beta.constant());
    }
    for (const auto &[p, r] : beta.logs()) {
        terms.emplace_back(Monomial{Factor{FactorKind::LogPrime, p, Rational(1)}}, r);
    }
    return from_terms(std::move(terms));
}

bool Scalar::is_rational() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.front().first.empty());
}

Rational Scalar::rational() const
{
    if (!is_rational()) {
        throw std::logic_error("scalar is not rational");
    }
    return terms_.empty() ? Rational(0) : terms_.front().second;
}

std::optional<LogLinear> Scalar::as_log_linear() const
{
    LogLinear out;
    for (const auto &[m, c] : terms_) {
        if (m.empty()) {
            out = out + LogLinear(c);
        } else if (m.size() == 1 && m.front().kind == FactorKind::LogPrime && m.front().power == 1) {
            out = out + LogLinear::log_of(Rational(m.front().base)).scaled(c);
        } else {
            return std::nullopt;
        }
    }
    return out;
}

Scalar Scalar::operator+(const Scalar &o) const
{
    if (o.is_zero()) {
        return *this;
    }
    if (is_zero()) {
        return o;
    }
    auto all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return from_terms(std::move(all));
}

Scalar Scalar::operator-() const
{
    return scaled(Rational(-1));
}

Scalar Scalar::operator-(const Scalar &o) const
{
    return *this + (-o);
}

Scalar Scalar::scaled(const Rational &k) const
{
    if (k == 0) {
        return Scalar{};
    }
    Scalar out = *this;
    for (auto &t : out.terms_) {
        t.second *= k;
    }
    return out;
}

Scalar Scalar::operator*(const Scalar &o) const
{
    if (is_zero() || o.is_zero()) {
        return Scalar{};
    }
    if (o.is_rational()) {
        return scaled(o.terms_.front().second);
    }
    if (is_rational()) {
        return o.scaled(terms_.front().second);
    }
    std::vector<std::pair<Monomial, Rational>> all;
    all.reserve(terms_.size() * o.terms_.size());
    for (const auto &[ma, ca] : terms_) {
        for (const auto &[mb, cb] : o.terms_) {
            auto [carry, m] = multiply(ma, mb);
            all.emplace_back(std::move(m), ca * cb * carry);
        }
    }
    return from_terms(std::move(all));
}

Real Scalar::value(mpfr_prec_t bits) const
{
    Real v(bits);
    for (const auto &[m, c] : terms_) {
        v += Real(c, bits) * monomial_value(m, bits);
    }
    return v;
}

int Scalar::sign() const
{
    if (is_rational()) {
        return sgn(rational());
    }
    // Distinct canonical forms are distinct reals, so a nonzero scalar is
    // separated from zero at some finite precision.
    for (mpfr_prec_t bits = 128; bits <= 8192; bits *= 2) {
        Real v = value(bits);
        Real scale(bits);
        for (const auto &[m, c] : terms_) {
            scale += abs(Real(c, bits) * monomial_value(m, bits));
        }
        if (v.log_abs() > scale.log_abs() - 0.5 * static_cast<double>(bits) * 0.6931471805599453) {
            return v.sign();
        }
    }
    throw std::runtime_error("scalar sign undecidable at 8192 bits");
}

} // namespace dulac
