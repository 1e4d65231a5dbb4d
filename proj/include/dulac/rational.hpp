// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_RATIONAL_HPP
#define DULAC_RATIONAL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dulac {

using Rational = mpq_class;

// Canonical text: "p" or "p/q" with q > 1.
std::string to_string(const Rational &r);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

Rational make_rational(long num, long den = 1);

bool is_integer(const Rational &r);
mpz_class floor_of(const Rational &r);
Rational frac_of(const Rational &r); // r - floor(r), in [0, 1)
Rational abs_of(const Rational &r);

// Factorization of a positive rational into prime powers (negative powers
// for the denominator). Throws std::domain_error when r <= 0 and
// std::out_of_range when a factor exceeds the trial-division bound.
std::map<unsigned long, long> factor_rational(const Rational &r);

bool is_prime(unsigned long n);

inline const Rational &max_of(const Rational &a, const Rational &b) { return a < b ? b : a; }
inline const Rational &min_of(const Rational &a, const Rational &b) { return a < b ? a : b; }

// Max over optional floors where nullopt means "exact" (minus infinity).
std::optional<Rational> max_floor(const std::optional<Rational> &a, const std::optional<Rational> &b);

} // namespace dulac

#endif
