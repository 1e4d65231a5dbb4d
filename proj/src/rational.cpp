// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace dulac {

std::string to_string(const Rational &r)
{
    Rational c = r;
    c.canonicalize();
    if (c.get_den() == 1) {
        return c.get_num().get_str();
    }
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s)
{
    if (s.empty()) {
        return false;
    }
    for (char ch : s) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) {
            return false;
        }
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    auto slash = s.find('/');
    std::string_view num = s.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
        throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
    }
    mpz_class n(std::string(num), 10);
    mpz_class d(std::string(den), 10);
    if (d == 0) {
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(n, d);
    r.canonicalize();
    if (negative) {
        r = -r;
    }
    return r;
}

Rational make_rational(long num, long den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

bool is_integer(const Rational &r)
{
    return r.get_den() == 1;
}

mpz_class floor_of(const Rational &r)
{
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac_of(const Rational &r)
{
    Rational f = r - Rational(floor_of(r));
    f.canonicalize();
    return f;
}

Rational abs_of(const Rational &r)
{
    return r < 0 ? Rational(-r) : r;
}

bool is_prime(unsigned long n)
{
    if (n < 2) {
        return false;
    }
    for (unsigned long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

namespace {

constexpr unsigned long kTrialBound = 2000000UL;

void factor_into(const mpz_class &value, long sign, std::map<unsigned long, long> &out)
{
    mpz_class n = value;
    for (unsigned long p = 2; p <= kTrialBound && n > 1; ++p) {
        if (mpz_class(p) * p > n) {
            break;
        }
        while (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) {
            n /= p;
            out[p] += sign;
        }
    }
    if (n > 1) {
        if (!n.fits_ulong_p() || mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) {
            throw std::out_of_range("cannot factor " + value.get_str() + " into small primes");
        }
        out[n.get_ui()] += sign;
    }
}

} // namespace

std::map<unsigned long, long> factor_rational(const Rational &r)
{
    if (r <= 0) {
        throw std::domain_error("factor_rational: argument must be positive");
    }
    std::map<unsigned long, long> out;
    factor_into(r.get_num(), 1, out);
    factor_into(r.get_den(), -1, out);
    for (auto it = out.begin(); it != out.end();) {
        it = it->second == 0 ? out.erase(it) : std::next(it);
    }
    return out;
}

std::optional<Rational> max_floor(const std::optional<Rational> &a, const std::optional<Rational> &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return max_of(*a, *b);
}

} // namespace dulac
