// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_GROUP_HPP
#define DULAC_GROUP_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dulac/logchart.hpp"
#include "dulac/star.hpp"

namespace dulac {

// zeta -> zeta + deviation(zeta), deviation exponentially small.
struct LogMap
{
    GenExpSeries deviation;

    LogMap() = default;
    explicit LogMap(GenExpSeries dev);
    static LogMap identity() { return LogMap{}; }

    friend bool operator==(const LogMap &a, const LogMap &b) { return a.deviation == b.deviation; }
};

// f o g. When both deviations are exact and nonzero, `floor` is required.
LogMap compose_h(const LogMap &f, const LogMap &g, std::optional<Rational> floor = std::nullopt);
// Inverse by fixed-point iteration g <- -f.dev o (id + g). Exact f needs `floor`.
LogMap invert_h(const LogMap &f, std::optional<Rational> floor = std::nullopt);
// a o f o a^{-1}
LogMap conj_affine(const AffineMap &a, const LogMap &f);

// Deviation of ln o f o exp at scale 1; terms with principal exponent below
// -c_max (or below the deviation's floor) are omitted and described by a
// progression.
StarSeries a_conjugate(const LogMap &f, const Rational &c_max);

// a^{-1} o (id + s) o a for a(zeta) = alpha zeta + beta: s(a(zeta)) / alpha.
StarSeries conj_scale_level1(const Rational &alpha, const StarSeries &s, const LogLinear &beta = {});

struct DecomposeOrder
{
    Rational c_max{3};         // keep level-1 terms with principal exponent >= -c_max
    Rational coeff_floor{-12}; // floor for level-1 coefficients
    Rational level0_floor{-12};
};

struct Level1Body
{
    Rational scale;
    StarSeries body;
    int grading = 0;
};

// Delta(zeta) = affine(zeta) + level0(zeta) + sum body(zeta)
struct Decomposition
{
    AffineMap affine;
    GenExpSeries level0;
    std::vector<Level1Body> level1; // decreasing scale
    DecomposeOrder order;
    std::vector<std::string> events; // grading escalations, in order of occurrence
};

Decomposition additive_decompose(const CompositionWord &w, const DecomposeOrder &order = {});

Real evaluate(const Decomposition &d, const Real &zeta);

// Level-1 series composed with a level-0 shift: s(zeta + phi(zeta)).
StarSeries star_shift(const StarSeries &s, const GenExpSeries &phi, const Rational &coeff_floor);

} // namespace dulac

#endif
