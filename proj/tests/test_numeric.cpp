// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"

#include "dulac/counterexample.hpp"
#include "dulac/numeric.hpp"
#include "dulac/text.hpp"

using namespace dulac;

namespace {

// One exp-type / log-type saddle pair with connector z + z^2, evaluated in
// the x chart: zeta -> ln(-ln(f(exp(-exp(zeta))))).
Real half_turn(const Real &zeta)
{
    Real x = exp(-exp(zeta));
    Real fx = x + x * x;
    return log(-log(fx));
}

CompositionWord unit_word()
{
    return compile_polycycle(positive_polycycle(), Rational(-6));
}

} // namespace

TEST_CASE("eval_word agrees with direct evaluation in the x chart")
{
    CompositionWord w = unit_word();
    for (long z : {2L, 3L}) {
        WordValue v = eval_word(w, Real(Rational(z), 256));
        CHECK(v.affine.is_identity());
        Real zeta(Rational(z), 2048);
        Real direct = half_turn(half_turn(zeta)) - zeta;
        Real rel = abs(v.deviation - direct) / abs(direct);
        CHECK(rel.to_double() < 1e-60);
        CHECK(v.deviation.sign() < 0);
    }
}

TEST_CASE("eval_word keeps full relative precision of tiny deviations")
{
    CompositionWord w = unit_word();
    WordValue lo = eval_word(w, Real(Rational(6), 256));
    WordValue hi = eval_word(w, Real(Rational(6), 1024));
    // The deviation is near e^{-e^6}, far below the resolution of zeta itself.
    CHECK(lo.deviation.log_abs() < -400);
    CHECK((abs(lo.deviation - hi.deviation) / abs(hi.deviation)).to_double() < 1e-70);
}

TEST_CASE("eval_exact and precision escalation")
{
    CompositionWord w = unit_word();
    WordValue v = eval_exact(w, Rational(3));
    CHECK(v.bits == 512);

    EvalConfig tight;
    tight.bits = 256;
    tight.max_bits = 256;
    CHECK_THROWS_AS(eval_exact(w, Rational(3), tight), PrecisionError);
}

TEST_CASE("eval_word rejects values outside the domain of ln")
{
    CompositionWord w = parse_word("exp ; h(-5*E(-1/2)) ; ln");
    CHECK_THROWS_AS(eval_word(w, Real(Rational(0), 128)), std::domain_error);
}

TEST_CASE("certify_asymptotics accepts the true expansion and rejects a wrong one")
{
    CompositionWord w = parse_word("flow(alpha=1, tail=[1], radius=1, order=-20)");
    GenExpSeries good = flowbox_to_log(FlowBoxMap{Rational(1), {Rational(1)}, Rational(1)}, Rational(-8)).deviation;
    EvalConfig cfg;
    cfg.grid = {Rational(3), Rational(7), Rational(11)};
    CertReport r = certify_asymptotics(w, good, Rational(8), cfg);
    CHECK(r.pass);
    CHECK(r.min_margin > 0);
    CHECK(r.points.size() == 3);

    GenExpSeries bad = good.truncated(Rational(-7));
    CertReport b = certify_asymptotics(w, bad, Rational(8), cfg);
    CHECK_FALSE(b.pass);
    CHECK(to_string(b).find("FAIL") != std::string::npos);
}

TEST_CASE("decomposition matches exact evaluation")
{
    CompositionWord w = unit_word();
    Decomposition d = additive_decompose(w);
    for (long k : {4L, 5L, 6L}) {
        Rational z = make_rational(k, 2);
        WordValue v = eval_exact(w, z);
        Real diff = abs(eval_deviation(d, z, v.bits) - v.deviation);
        // Level-1 terms are kept down to e^{-3 e^zeta}.
        double ln_bound = -3.5 * std::exp(z.get_d());
        CHECK(diff.log_abs() <= ln_bound);
    }
}

TEST_CASE("fit_flatness on the two-scale word")
{
    Counterexample c = build_counterexample();
    EvalConfig cfg;
    for (long k = 4; k <= 10; ++k) {
        cfg.grid.push_back(make_rational(k, 2));
    }
    FlatnessFit fit = fit_flatness(c.word, cfg);
    CHECK(fit.sigma == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.lambda > 0);
    CHECK(fit.samples.size() == 7);

    EvalConfig uneven;
    uneven.grid = {Rational(2), Rational(3), Rational(5), Rational(6)};
    CHECK_THROWS_AS(fit_flatness(c.word, uneven), std::invalid_argument);
    EvalConfig short_grid;
    short_grid.grid = {Rational(2), Rational(3)};
    CHECK_THROWS_AS(fit_flatness(c.word, short_grid), std::invalid_argument);
}

TEST_CASE("fit_flatness rejects the identity")
{
    EvalConfig cfg;
    cfg.grid = {Rational(2), Rational(3), Rational(4), Rational(5)};
    CHECK_THROWS_AS(fit_flatness(parse_word("exp ; ln"), cfg), PrecisionError);
}

TEST_CASE("E-conjugation identity")
{
    for (long k : {1L, 2L, 3L}) {
        auto [lhs, rhs] = e_conjugation_sides(make_rational(k, 10), 256);
        CHECK((abs(lhs - rhs) / abs(rhs)).to_double() < 1e-30);
    }
}

TEST_CASE("report formats carry precision annotations")
{
    EvalConfig cfg;
    cfg.grid = {Rational(3)};
    CertReport r = certify_asymptotics(parse_word("exp ; ln"), GenExpSeries(), Rational(8), cfg);
    std::string text = to_string(r);
    CHECK(text.find("20 significant digits") != std::string::npos);
    CHECK(text.find("Pass, minimum margin inf") != std::string::npos);
}
