// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_TEXT_HPP
#define DULAC_TEXT_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "dulac/group.hpp"
#include "dulac/logchart.hpp"
#include "dulac/star.hpp"

namespace dulac {

class SyntaxError : public std::invalid_argument
{
public:
    SyntaxError(const std::string &message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

std::string print(const Scalar &s);
std::string print(const LogLinear &b);
std::string print(const GenExpSeries &s);
std::string print(const TransExponent &e);
std::string print(const K1Coefficient &k);
std::string print(const StarSeries &s);
std::string print(const AffineMap &a);
std::string print(const Generator &g);
std::string print(const CompositionWord &w);
std::string print(const PolycycleSpec &p);
// Multi-line report: affine line, level-0 series, one line per level-1 body.
std::string print(const Decomposition &d);

Scalar parse_scalar(std::string_view text);
LogLinear parse_log_linear(std::string_view text);
GenExpSeries parse_series(std::string_view text);
TransExponent parse_exponent(std::string_view text);
StarSeries parse_star(std::string_view text);
CompositionWord parse_word(std::string_view text);
PolycycleSpec parse_polycycle(std::string_view text);

enum class ValueKind { Series, Star, Word, Polycycle };

// Guesses the value kind from the leading token.
ValueKind classify(std::string_view text);

} // namespace dulac

#endif
