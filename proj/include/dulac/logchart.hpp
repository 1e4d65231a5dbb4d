// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_LOGCHART_HPP
#define DULAC_LOGCHART_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "dulac/series.hpp"

namespace dulac {

// Input rejected because it violates a documented invariant; the message
// names the invariant.
class SemanticError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// f(z) = alpha z + sum_q tail[q] z^{q+2}.
struct FlowBoxMap
{
    Rational alpha{1};
    std::vector<Rational> tail;
    Rational radius{1};

    friend bool operator==(const FlowBoxMap &a, const FlowBoxMap &b)
    {
        return a.alpha == b.alpha && a.tail == b.tail && a.radius == b.radius;
    }
};

// zeta -> alpha zeta + beta
struct AffineMap
{
    Rational alpha{1};
    LogLinear beta;

    bool is_identity() const { return alpha == 1 && beta.is_zero(); }
    AffineMap inverse() const;
    // (*this) o other
    AffineMap after(const AffineMap &other) const;

    friend bool operator==(const AffineMap &a, const AffineMap &b) { return a.alpha == b.alpha && a.beta == b.beta; }
};

enum class GenKind { Affine, HMap, Exp, Ln };

struct Generator
{
    GenKind kind = GenKind::Exp;
    AffineMap affine;         // Affine
    GenExpSeries deviation;   // HMap: zeta -> zeta + deviation(zeta)
    std::optional<FlowBoxMap> source; // HMap built from a flow-box map
    Rational order{0};        // HMap with source: truncation order used

    static Generator aff(const AffineMap &a);
    static Generator hmap(GenExpSeries deviation);
    static Generator flow(const FlowBoxMap &f, const Rational &order);
    static Generator exp();
    static Generator ln();

    friend bool operator==(const Generator &a, const Generator &b);
};

// Generators in application order: gens[0] is applied first.
struct CompositionWord
{
    std::vector<Generator> gens;

    friend bool operator==(const CompositionWord &a, const CompositionWord &b) { return a.gens == b.gens; }
};

// Throws SemanticError unless every prefix has non-negative Exp/Ln depth,
// the total depth is zero and HMap deviations are exponentially small.
void check_balance(const CompositionWord &w);
int max_depth(const CompositionWord &w);

// Fuses adjacent affine maps and drops identity affines.
CompositionWord fuse_affines(const CompositionWord &w);
// fuse_affines, plus removal of zero HMaps and cancelling Exp/Ln pairs.
CompositionWord simplify(const CompositionWord &w);

struct FlowBoxLog
{
    AffineMap affine;       // (1, -ln alpha)
    GenExpSeries deviation; // f^log = affine o (id + deviation)
};

FlowBoxLog flowbox_to_log(const FlowBoxMap &f, const Rational &order);

enum class TransitKind { ExpType, LogType };

std::vector<Generator> transit_generators(int k, TransitKind kind);

struct Saddle
{
    int k = 1;
    TransitKind kind = TransitKind::ExpType;

    friend bool operator==(const Saddle &a, const Saddle &b) { return a.k == b.k && a.kind == b.kind; }
};

// connectors[i] is the flow-box map arriving at saddles[i].
struct PolycycleSpec
{
    std::vector<Saddle> saddles;
    std::vector<FlowBoxMap> connectors;
    int base = 0;

    friend bool operator==(const PolycycleSpec &a, const PolycycleSpec &b)
    {
        return a.saddles == b.saddles && a.connectors == b.connectors && a.base == b.base;
    }
};

void check_polycycle(const PolycycleSpec &spec);
CompositionWord compile_polycycle(const PolycycleSpec &spec, const Rational &order);

} // namespace dulac

#endif
