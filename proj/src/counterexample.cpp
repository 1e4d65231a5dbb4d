// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/counterexample.hpp"

#include <sstream>

#include "dulac/text.hpp"

namespace dulac {

namespace {

FlowBoxMap z_plus_z2()
{
    return FlowBoxMap{Rational(1), {Rational(1)}, Rational(1)};
}

K1Coefficient upper_only(StarSeries s)
{
    return K1Coefficient(GenExpSeries{}, {std::make_shared<const StarSeries>(std::move(s))});
}

} // namespace

PolycycleSpec counterexample_polycycle()
{
    PolycycleSpec p;
    p.saddles = {{2, TransitKind::ExpType}, {2, TransitKind::LogType}, {1, TransitKind::ExpType}, {1, TransitKind::LogType}};
    p.connectors = {FlowBoxMap{}, z_plus_z2(), FlowBoxMap{}, z_plus_z2()};
    return p;
}

PolycycleSpec positive_polycycle()
{
    PolycycleSpec p;
    p.saddles = {{1, TransitKind::ExpType}, {1, TransitKind::LogType}, {1, TransitKind::ExpType}, {1, TransitKind::LogType}};
    p.connectors = {FlowBoxMap{}, z_plus_z2(), FlowBoxMap{}, z_plus_z2()};
    return p;
}

Counterexample build_counterexample(const CounterexampleOptions &opt)
{
    Counterexample c;
    LogMap f(flowbox_to_log(z_plus_z2(), opt.order).deviation);
    c.psi = a_conjugate(f, opt.c_max);
    c.k1 = upper_only(star_scale_argument(c.psi, Rational(1, 2)));
    c.k2 = upper_only(star_scale_argument(c.psi, Rational(1, 3)));
    c.word = compile_polycycle(counterexample_polycycle(), opt.order);
    return c;
}

TheoreticalPair theoretical_pair(const CounterexampleOptions &opt)
{
    TheoreticalPair t;
    Rational third(1, 3);
    t.k1.scale = third;
    t.k1.accuracy = Rational(-opt.family_terms);
    for (int q = 1; q <= opt.family_terms; ++q) {
        t.k1.terms.push_back({GenExpSeries::constant(Scalar(1)), TransExponent::single(third, -q)});
    }
    t.k1.progressions.push_back(
        {TransExponent::single(third, -(opt.family_terms + 1)), TransExponent::single(third, -1)});
    t.k1 = canonical(std::move(t.k1));

    t.k2.scale = Rational(1, 2);
    t.k2.terms.push_back({GenExpSeries::constant(Scalar(1)), TransExponent::single(Rational(1, 2), -1)});

    t.product = star_mul(t.k1, t.k2);
    return t;
}

K1Coefficient wronskian(const K1Coefficient &k1, const K1Coefficient &k2)
{
    return derivative(k2) * k1 + -(derivative(k1) * k2);
}

StarSeries flatten_uppers(const K1Coefficient &k, const Rational &coeff_floor)
{
    StarSeries out;
    if (k.uppers().empty()) {
        return out;
    }
    out.scale = k.uppers().front()->scale;
    for (const auto &u : k.uppers()) {
        StarSeries lifted = *u;
        if (lifted.scale != out.scale) {
            // A lower-scale series is one family member at the larger scale.
            lifted.scale = out.scale;
            lifted.accuracy.reset();
        }
        out = star_add(out, lifted);
    }
    return normal_form(out, coeff_floor);
}

PipelineReport run_counterexample(const CounterexampleOptions &opt, const EvalConfig &flatness)
{
    std::ostringstream out;
    Counterexample c = build_counterexample(opt);
    out << "polycycle:\n" << print(counterexample_polycycle());
    out << "word: " << print(c.word) << "\n";

    Decomposition d = additive_decompose(c.word);
    int grading = 0;
    for (const auto &b : d.level1) {
        out << "decomposition: scale " << to_string(b.scale) << " grading p=" << b.grading << "\n";
        grading = std::max(grading, b.grading);
    }
    for (const auto &e : d.events) {
        out << "decomposition: " << e << "\n";
    }

    TheoreticalPair t = theoretical_pair(opt);
    ValidityReport theo = validity_check(star_scale_argument(t.product, 2));
    out << "theoretical product k1*k2 (scaled by 2): " << to_string(theo) << "\n";

    K1Coefficient w = wronskian(c.k1, c.k2);
    ValidityReport prac = validity_check(flatten_uppers(w));
    out << "Wronskian k2'k1 - k1'k2: " << to_string(prac) << "\n";

    std::vector<Level1Term> pair{{c.k1, TransExponent::single(1, -1)}, {c.k2, TransExponent::single(1, -1)}};
    LowerBoundReport bound = ordering_lower_bound(pair, 1);
    out << "ordering of k1 e^E + k2 e^E: " << to_string(bound) << "\n";

    FlatnessFit fit = fit_flatness(c.word, flatness);
    out << "flatness: sigma = " << fit.sigma << ", lambda = " << fit.lambda << " (double precision fit)\n";

    bool gap = !theo.valid && !prac.valid && bound.status == BoundStatus::GapDetected;
    out << "result: " << (gap ? "GapDetected" : "no gap found") << "\n";
    return {out.str(), gap};
}

PipelineReport run_positive(const CompositionWord &w, const DecomposeOrder &order, const Rational &zeta,
                            mpfr_prec_t bits)
{
    std::ostringstream out;
    Decomposition d = additive_decompose(w, order);
    out << print(d);
    LeadingTermReport lead = scale1_leading_term(d);
    out << "leading term: " << to_string(lead) << "\n";

    bool certified = true;
    for (const auto &b : d.level1) {
        LowerBoundReport r = ordering_lower_bound(b.body);
        out << "lower bound at scale " << to_string(b.scale) << ": " << to_string(r) << "\n";
        certified = certified && r.status == BoundStatus::Certified;
    }

    EvalConfig cfg;
    cfg.bits = bits;
    WordValue v = eval_exact(w, zeta, cfg);
    Real diff = v.affine.is_identity() ? v.deviation : v.value - Real(zeta, v.bits);
    int numeric_sign = diff.sign();
    out << "numeric Delta(" << to_string(zeta) << ") - " << to_string(zeta) << " = " << format_real(diff) << " ("
        << v.bits << " bits)\n";
    bool match = numeric_sign == lead.sign;
    out << "sign check: " << (match ? "match" : "mismatch") << "\n";
    return {out.str(), certified && match && lead.sign != 0};
}

} // namespace dulac
