// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/logchart.hpp"

#include <algorithm>

namespace dulac {

AffineMap AffineMap::inverse() const
{
    Rational inv = Rational(1) / alpha;
    return AffineMap{inv, beta.scaled(Rational(-inv))};
}

AffineMap AffineMap::after(const AffineMap &other) const
{
    return AffineMap{alpha * other.alpha, other.beta.scaled(alpha) + beta};
}

Generator Generator::aff(const AffineMap &a)
{
    if (a.alpha <= 0) {
        throw SemanticError("affine map: alpha must be positive");
    }
    Generator g;
    g.kind = GenKind::Affine;
    g.affine = a;
    return g;
}

Generator Generator::hmap(GenExpSeries deviation)
{
    if (!deviation.is_fc0()) {
        throw SemanticError("h-map deviation must have only negative exponents");
    }
    Generator g;
    g.kind = GenKind::HMap;
    g.deviation = std::move(deviation);
    return g;
}

Generator Generator::flow(const FlowBoxMap &f, const Rational &order)
{
    Generator g = hmap(flowbox_to_log(f, order).deviation);
    g.source = f;
    g.order = order;
    return g;
}

Generator Generator::exp()
{
    Generator g;
    g.kind = GenKind::Exp;
    return g;
}

Generator Generator::ln()
{
    Generator g;
    g.kind = GenKind::Ln;
    return g;
}

bool operator==(const Generator &a, const Generator &b)
{
    if (a.kind != b.kind) {
        return false;
    }
    switch (a.kind) {
    case GenKind::Affine:
        return a.affine == b.affine;
    case GenKind::HMap:
        return a.deviation == b.deviation && a.source == b.source && (!a.source || a.order == b.order);
    default:
        return true;
    }
}

int max_depth(const CompositionWord &w)
{
    int depth = 0;
    int best = 0;
    for (const auto &g : w.gens) {
        if (g.kind == GenKind::Exp) {
            best = std::max(best, ++depth);
        } else if (g.kind == GenKind::Ln) {
            --depth;
        }
    }
    return best;
}

void check_balance(const CompositionWord &w)
{
    int depth = 0;
    for (const auto &g : w.gens) {
        if (g.kind == GenKind::Exp) {
            ++depth;
        } else if (g.kind == GenKind::Ln) {
            if (--depth < 0) {
                throw SemanticError("word balance: ln without a preceding exp");
            }
        } else if (g.kind == GenKind::HMap && !g.deviation.is_fc0()) {
            throw SemanticError("h-map deviation must have only negative exponents");
        }
    }
    if (depth != 0) {
        throw SemanticError("word balance: exp and ln counts differ");
    }
}

CompositionWord fuse_affines(const CompositionWord &w)
{
    CompositionWord out;
    for (const auto &g : w.gens) {
        if (g.kind == GenKind::Affine && !out.gens.empty() && out.gens.back().kind == GenKind::Affine) {
            out.gens.back().affine = g.affine.after(out.gens.back().affine);
        } else {
            out.gens.push_back(g);
        }
        if (out.gens.back().kind == GenKind::Affine && out.gens.back().affine.is_identity()) {
            out.gens.pop_back();
        }
    }
    return out;
}

CompositionWord simplify(const CompositionWord &w)
{
    CompositionWord cur = fuse_affines(w);
    for (bool changed = true; changed;) {
        changed = false;
        CompositionWord next;
        for (const auto &g : cur.gens) {
            if (g.kind == GenKind::HMap && g.deviation.is_zero() && g.deviation.is_exact()) {
                changed = true;
                continue;
            }
            if (!next.gens.empty()) {
                GenKind prev = next.gens.back().kind;
                if ((prev == GenKind::Exp && g.kind == GenKind::Ln) || (prev == GenKind::Ln && g.kind == GenKind::Exp)) {
                    next.gens.pop_back();
                    changed = true;
                    continue;
                }
            }
            next.gens.push_back(g);
        }
        cur = fuse_affines(next);
    }
    return cur;
}

FlowBoxLog flowbox_to_log(const FlowBoxMap &f, const Rational &order)
{
    if (f.alpha <= 0) {
        throw SemanticError("flow-box map: alpha must be positive");
    }
    if (order >= 0) {
        throw std::invalid_argument("flow-box expansion order must be negative");
    }
    std::vector<ExpTerm> u;
    for (std::size_t q = 0; q < f.tail.size(); ++q) {
        u.push_back(ExpTerm{Rational(-static_cast<long>(q + 1)), Scalar(Rational(f.tail[q] / f.alpha))});
    }
    FlowBoxLog out;
    out.affine = AffineMap{Rational(1), -LogLinear::log_of(f.alpha)};
    out.deviation = ring_neg(log_one_plus(GenExpSeries(std::move(u)), order));
    return out;
}

std::vector<Generator> transit_generators(int k, TransitKind kind)
{
    if (k < 1) {
        throw SemanticError("saddle order k must be at least 1");
    }
    std::vector<Generator> out;
    if (kind == TransitKind::ExpType) {
        if (k != 1) {
            out.push_back(Generator::aff(AffineMap{Rational(k), {}}));
        }
        out.push_back(Generator::exp());
    } else {
        out.push_back(Generator::ln());
        if (k != 1) {
            out.push_back(Generator::aff(AffineMap{Rational(1, k), {}}));
        }
    }
    return out;
}

void check_polycycle(const PolycycleSpec &spec)
{
    std::size_t n = spec.saddles.size();
    if (n < 2 || n % 2 != 0) {
        throw SemanticError("not simple alternant: the number of equilibria must be even and positive");
    }
    if (spec.connectors.size() != n) {
        throw SemanticError("polycycle: one connector is required before each saddle");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (spec.saddles[i].k < 1) {
            throw SemanticError("saddle order k must be at least 1");
        }
        if (spec.saddles[i].kind == spec.saddles[(i + 1) % n].kind) {
            throw SemanticError("not simple alternant: equilibrium kinds must alternate");
        }
        if (spec.connectors[i].alpha <= 0) {
            throw SemanticError("flow-box map: alpha must be positive");
        }
    }
    if (spec.base < 0 || static_cast<std::size_t>(spec.base) >= n) {
        throw SemanticError("polycycle: base index out of range");
    }
    if (spec.saddles[static_cast<std::size_t>(spec.base)].kind != TransitKind::ExpType) {
        throw SemanticError("polycycle: the first transit after the base section must be of exp type");
    }
}

CompositionWord compile_polycycle(const PolycycleSpec &spec, const Rational &order)
{
    check_polycycle(spec);
    std::size_t n = spec.saddles.size();
    CompositionWord w;
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t i = (static_cast<std::size_t>(spec.base) + j) % n;
        const FlowBoxMap &f = spec.connectors[i];
        bool identity = f.alpha == 1 && std::all_of(f.tail.begin(), f.tail.end(), [](const Rational &a) { return a == 0; });
        if (!identity) {
            w.gens.push_back(Generator::flow(f, order));
            w.gens.push_back(Generator::aff(flowbox_to_log(f, order).affine));
        }
        auto t = transit_generators(spec.saddles[i].k, spec.saddles[i].kind);
        w.gens.insert(w.gens.end(), t.begin(), t.end());
    }
    w = fuse_affines(w);
    check_balance(w);
    return w;
}

} // namespace dulac
