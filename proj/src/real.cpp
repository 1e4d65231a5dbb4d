// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/real.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dulac {

namespace {

// Double exponentials at moderate zeta need far more exponent range than
// MPFR's default. The range is per thread.
void widen_exponent_range()
{
    thread_local const bool done = [] {
        mpfr_set_emin(mpfr_get_emin_min());
        mpfr_set_emax(mpfr_get_emax_max());
        return true;
    }();
    (void)done;
}

} // namespace

Real::Real(mpfr_prec_t bits)
{
    widen_exponent_range();
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

Real::Real(const Rational &q, mpfr_prec_t bits)
{
    widen_exponent_range();
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

Real::Real(long v, mpfr_prec_t bits)
{
    widen_exponent_range();
    mpfr_init2(value_, bits);
    mpfr_set_si(value_, v, MPFR_RNDN);
}

Real Real::from_string(const std::string &decimal, mpfr_prec_t bits)
{
    Real r(bits);
    if (mpfr_set_str(r.value_, decimal.c_str(), 10, MPFR_RNDN) != 0) {
        throw std::invalid_argument("not a decimal number: '" + decimal + "'");
    }
    return r;
}

Real::Real(const Real &other)
{
    mpfr_init2(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real &&other) noexcept
{
    mpfr_init2(value_, other.precision());
    mpfr_swap(value_, other.value_);
}

Real &Real::operator=(const Real &other)
{
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real &Real::operator=(Real &&other) noexcept
{
    if (this != &other) {
        mpfr_swap(value_, other.value_);
    }
    return *this;
}

Real::~Real()
{
    mpfr_clear(value_);
}

long Real::exponent2() const
{
    if (!mpfr_regular_p(value_)) {
        return 0;
    }
    return mpfr_get_exp(value_);
}

double Real::log_abs() const
{
    if (is_zero()) {
        return -HUGE_VAL;
    }
    long e = 0;
    double m = mpfr_get_d_2exp(&e, value_, MPFR_RNDN);
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

std::string Real::to_string(int digits) const
{
    if (is_zero()) {
        return "0";
    }
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, value_);
    return std::string(buf.data());
}

namespace {

void widen(mpfr_t v, mpfr_prec_t bits)
{
    if (mpfr_get_prec(v) < bits) {
        mpfr_prec_round(v, bits, MPFR_RNDN);
    }
}

} // namespace

Real &Real::operator+=(const Real &o)
{
    widen(value_, o.precision());
    mpfr_add(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real &Real::operator-=(const Real &o)
{
    widen(value_, o.precision());
    mpfr_sub(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real &Real::operator*=(const Real &o)
{
    widen(value_, o.precision());
    mpfr_mul(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real &Real::operator/=(const Real &o)
{
    widen(value_, o.precision());
    mpfr_div(value_, value_, o.value_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

Real exp(const Real &x)
{
    Real r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real expm1(const Real &x)
{
    Real r(x.precision());
    mpfr_expm1(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real &x)
{
    if (x.sign() <= 0) {
        throw std::domain_error("logarithm of a non-positive value");
    }
    Real r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log1p(const Real &x)
{
    if (mpfr_cmp_si(x.get(), -1) <= 0) {
        throw std::domain_error("log1p of a value <= -1");
    }
    Real r(x.precision());
    mpfr_log1p(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real abs(const Real &x)
{
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real &x, const Rational &e)
{
    Real ex(e, x.precision());
    Real r(x.precision());
    mpfr_pow(r.get(), x.get(), ex.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real &x)
{
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real with_precision(const Real &x, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_set(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log_of_prime(unsigned long p, mpfr_prec_t bits)
{
    Real r(bits);
    mpfr_set_ui(r.get(), p, MPFR_RNDN);
    mpfr_log(r.get(), r.get(), MPFR_RNDN);
    return r;
}

const Real &require_finite(const Real &x, const char *what)
{
    if (!x.is_finite()) {
        throw RangeError(std::string("value out of representable range in ") + what);
    }
    return x;
}

} // namespace dulac
