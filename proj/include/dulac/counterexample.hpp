// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_COUNTEREXAMPLE_HPP
#define DULAC_COUNTEREXAMPLE_HPP

#include "dulac/group.hpp"
#include "dulac/level1.hpp"
#include "dulac/numeric.hpp"

namespace dulac {

// Four equilibria: exp-type k=2, log-type k=2, exp-type k=1, log-type k=1,
// with f(z) = z + z^2 arriving at both log-type saddles.
PolycycleSpec counterexample_polycycle();
// Four equilibria, all k=1, f(z) = z + z^2 arriving at both log-type saddles.
PolycycleSpec positive_polycycle();

struct CounterexampleOptions
{
    Rational order{-6};   // flow-box expansion order
    Rational c_max{3};    // level-1 truncation for the conjugated deviation
    int family_terms = 12; // explicit terms of the geometric family
};

struct Counterexample
{
    StarSeries psi;      // deviation of ln o f^log o exp at scale 1
    K1Coefficient k1;    // psi(zeta/2), a level-1 coefficient at scale 1/2
    K1Coefficient k2;    // psi(zeta/3), a level-1 coefficient at scale 1/3
    CompositionWord word;
};

Counterexample build_counterexample(const CounterexampleOptions &opt = {});

struct TheoreticalPair
{
    StarSeries k1;      // sum_{q>=1} e^{-q e^{zeta/3}} at scale 1/3
    StarSeries k2;      // e^{-e^{zeta/2}} at scale 1/2
    StarSeries product; // k1 k2 flattened at scale 1/2
};

TheoreticalPair theoretical_pair(const CounterexampleOptions &opt = {});

// k2' k1 - k1' k2
K1Coefficient wronskian(const K1Coefficient &k1, const K1Coefficient &k2);

// The lower-scale series of a level-1 coefficient written at the largest
// upper scale, in Large normal form.
StarSeries flatten_uppers(const K1Coefficient &k, const Rational &coeff_floor = -12);

struct PipelineReport
{
    std::string text;
    // Counterexample: the gap was reproduced. Positive case: a bound was
    // certified and the leading-term sign matched the numeric sign.
    bool outcome = false;
};

// Build, decompose, theoretical and practical validity checks, Wronskian
// ordering attempt and flatness fit.
PipelineReport run_counterexample(const CounterexampleOptions &opt, const EvalConfig &flatness);

// Decomposition of a scale-1 word, its lower bound and leading term, and
// the numeric sign of Delta(zeta) - zeta at `zeta`.
PipelineReport run_positive(const CompositionWord &w, const DecomposeOrder &order, const Rational &zeta,
                            mpfr_prec_t bits);

} // namespace dulac

#endif
