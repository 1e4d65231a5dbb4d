// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_LEVEL1_HPP
#define DULAC_LEVEL1_HPP

#include <optional>
#include <string>
#include <vector>

#include "dulac/group.hpp"
#include "dulac/star.hpp"

namespace dulac {

// Large normal form of one exponent: tail terms with mu <= 0 are removed and
// returned as the factor e^{small}, expanded to `floor`. Positive tail terms
// with rational coefficients become principal entries.
struct SplitExponent
{
    TransExponent large;
    GenExpSeries factor; // e^{small}
};
SplitExponent split_exponent(const TransExponent &e, const Rational &floor);

bool is_large_form(const TransExponent &e);

// Every term in Large normal form; like exponents merged.
StarSeries normal_form(const StarSeries &s, const Rational &coeff_floor = -12);

enum class TermOrder { Less, Greater, EqualPrincipal };

// Dominance by principal data only. Throws std::invalid_argument unless
// both exponents are in Large normal form.
TermOrder compare_terms(const Level1Term &a, const Level1Term &b);

struct ValidityReport
{
    bool valid = true;
    Rational scale;
    // Principal value at `scale` that the family does not leave (Invalid
    // with a constant principal value).
    std::optional<Rational> witness;
    std::string reason;
};

// A series is valid when nu at `scale` tends to -infinity along every
// infinite family it contains.
ValidityReport validity_check(const std::vector<Level1Term> &terms, const std::vector<Progression> &families,
                              const Rational &scale);
ValidityReport validity_check(const StarSeries &s);
// Checks s and, recursively, the series inside its coefficients.
ValidityReport deep_validity_check(const StarSeries &s);

struct DerivativeReport
{
    StarSeries derivative; // (k' + k e') e^{e}
    int level_in = 0;
    int level_out = 0;
    bool within_k10 = true; // derivative coefficient still in K_{1,0}
};

DerivativeReport term_derivative(const Level1Term &t, const Rational &scale);

enum class BoundStatus { Certified, GapDetected, Inconclusive };

struct LowerBoundReport
{
    BoundStatus status = BoundStatus::Inconclusive;
    Rational scale;
    Rational lambda; // |s| >= e^{-lambda e^{scale zeta}} when certified
    std::optional<Level1Term> witness;
    ValidityReport validity;
    int level = 0; // coefficient level at which the witness left K_{1,p}
    std::vector<std::string> steps;
    std::string detail;
};

struct BoundOptions
{
    Rational delta{1, 10};
    std::vector<Rational> grid{4, 5, 6, 7, 8};
    mpfr_prec_t bits = 512;
    Rational coeff_floor{-12};
};

// Divide-and-differentiate on an explicit list of terms at ambient scale
// `scale`. Terms are not merged, so several coefficients may share an
// exponent.
LowerBoundReport ordering_lower_bound(const std::vector<Level1Term> &terms, const Rational &scale,
                                      const BoundOptions &opt = {});
LowerBoundReport ordering_lower_bound(const StarSeries &s, const BoundOptions &opt = {});

enum class LeadingKind { Identity, AffineShift, Level0, Level1 };

struct LeadingTermReport
{
    LeadingKind kind = LeadingKind::Identity;
    int sign = 0;
    std::string description;
    std::optional<Level1Term> term;
};

// Dominant part of Delta - id. Throws std::invalid_argument unless the
// affine part has linear coefficient 1 and every level-1 scale is 1.
LeadingTermReport scale1_leading_term(const Decomposition &d);

std::string to_string(const ValidityReport &r);
std::string to_string(const LowerBoundReport &r);
std::string to_string(const LeadingTermReport &r);

} // namespace dulac

#endif
