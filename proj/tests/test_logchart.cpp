// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "doctest.h"

#include "dulac/counterexample.hpp"
#include "dulac/logchart.hpp"
#include "dulac/text.hpp"
#include "test_util.hpp"

using namespace dulac;

namespace {

// Taylor coefficients of log(P(x)) for a polynomial P with P(0) = 1, from
// n L_n = n P_n - sum_{k<n} k L_k P_{n-k}.
std::vector<Rational> log_taylor(const std::vector<Rational> &p, int n)
{
    auto coeff = [&](int i) { return i < static_cast<int>(p.size()) ? p[i] : Rational(0); };
    std::vector<Rational> l(n + 1, Rational(0));
    for (int m = 1; m <= n; ++m) {
        Rational acc = Rational(m) * coeff(m);
        for (int k = 1; k < m; ++k) {
            acc -= Rational(k) * l[k] * coeff(m - k);
        }
        l[m] = acc / m;
    }
    return l;
}

// Deviation of the flow-box map alpha z + tail, from the Taylor oracle.
GenExpSeries oracle_deviation(const FlowBoxMap &f, int order)
{
    // A linear map has the exact zero deviation.
    if (std::all_of(f.tail.begin(), f.tail.end(), [](const Rational &a) { return a == 0; })) {
        return GenExpSeries();
    }
    std::vector<Rational> p{Rational(1)};
    for (const auto &a : f.tail) {
        p.push_back(Rational(a / f.alpha));
    }
    std::vector<Rational> l = log_taylor(p, order);
    std::vector<ExpTerm> terms;
    for (int q = 1; q <= order; ++q) {
        if (l[q] != 0) {
            terms.push_back({Rational(-q), Scalar(Rational(-l[q]))});
        }
    }
    return GenExpSeries(terms, Rational(-order));
}

} // namespace

TEST_CASE("flowbox_to_log of z + z^2 gives (-1)^q / q")
{
    FlowBoxMap f{Rational(1), {Rational(1)}, Rational(1)};
    FlowBoxLog log = flowbox_to_log(f, Rational(-10));
    CHECK(log.affine.is_identity());
    for (int q = 1; q <= 10; ++q) {
        Rational expected = make_rational(q % 2 == 0 ? 1 : -1, q);
        CHECK(log.deviation.coefficient(Rational(-q)) == Scalar(expected));
    }
    CHECK(log.deviation == oracle_deviation(f, 10));
}

TEST_CASE("flowbox_to_log of 2z + z^3")
{
    FlowBoxMap f{Rational(2), {Rational(0), Rational(1)}, Rational(1)};
    FlowBoxLog log = flowbox_to_log(f, Rational(-8));
    CHECK(log.affine.alpha == 1);
    CHECK(log.affine.beta == -LogLinear::log_of(Rational(2)));
    // -log(1 + x^2 / 2) = -x^2/2 + x^4/8 - x^6/24 + x^8/64
    CHECK(print(log.deviation) == "-1/2*E(-2) + 1/8*E(-4) + -1/24*E(-6) + 1/64*E(-8) | floor=-8");
}

TEST_CASE("flowbox_to_log matches the Taylor oracle on random maps")
{
    test::Rng rng(11);
    for (int i = 0; i < 60; ++i) {
        FlowBoxMap f = test::random_flowbox(rng);
        int order = static_cast<int>(test::uniform(rng, 1, 9));
        INFO(print(flowbox_to_log(f, Rational(-order)).deviation), " vs ", print(oracle_deviation(f, order)));
        CHECK(flowbox_to_log(f, Rational(-order)).deviation == oracle_deviation(f, order));
    }
}

TEST_CASE("flowbox_to_log rejects bad input")
{
    CHECK_THROWS_AS(flowbox_to_log(FlowBoxMap{Rational(0), {}, Rational(1)}, Rational(-3)), SemanticError);
    CHECK_THROWS_AS(flowbox_to_log(FlowBoxMap{Rational(1), {}, Rational(1)}, Rational(0)), std::invalid_argument);
}

TEST_CASE("transit generators")
{
    auto exp2 = transit_generators(2, TransitKind::ExpType);
    REQUIRE(exp2.size() == 2);
    CHECK(exp2[0] == Generator::aff(AffineMap{Rational(2), {}}));
    CHECK(exp2[1] == Generator::exp());

    auto log3 = transit_generators(3, TransitKind::LogType);
    REQUIRE(log3.size() == 2);
    CHECK(log3[0] == Generator::ln());
    CHECK(log3[1] == Generator::aff(AffineMap{make_rational(1, 3), {}}));

    CHECK(transit_generators(1, TransitKind::ExpType).size() == 1);
    CHECK(transit_generators(1, TransitKind::LogType).size() == 1);
    CHECK_THROWS_AS(transit_generators(0, TransitKind::ExpType), SemanticError);

    // An exp-type transit followed by the log-type transit of the same order cancels.
    for (int k = 1; k <= 4; ++k) {
        CompositionWord w;
        for (const auto &g : transit_generators(k, TransitKind::ExpType)) {
            w.gens.push_back(g);
        }
        for (const auto &g : transit_generators(k, TransitKind::LogType)) {
            w.gens.push_back(g);
        }
        CHECK(simplify(w).gens.empty());
    }
}

TEST_CASE("compile_polycycle of the two-scale polycycle")
{
    CompositionWord w = compile_polycycle(counterexample_polycycle(), Rational(-6));
    std::string text = print(w);
    CHECK(text.rfind("aff(2, 0) ; exp ; flow(alpha=1, tail=[1]", 0) == 0);
    CHECK(text.find(" ; ln ; aff(1/2, 0) ; exp ; flow(") != std::string::npos);
    CHECK(max_depth(w) == 1);
    int flows = 0;
    for (const auto &g : w.gens) {
        flows += g.source.has_value() ? 1 : 0;
    }
    CHECK(flows == 2);
}

TEST_CASE("compile_polycycle rejects non-alternant input")
{
    PolycycleSpec p = positive_polycycle();
    p.saddles[1].kind = TransitKind::ExpType;
    CHECK_THROWS_WITH_AS(compile_polycycle(p, Rational(-6)), doctest::Contains("alternate"), SemanticError);

    PolycycleSpec odd = positive_polycycle();
    odd.saddles.pop_back();
    odd.connectors.pop_back();
    CHECK_THROWS_AS(compile_polycycle(odd, Rational(-6)), SemanticError);

    PolycycleSpec based = positive_polycycle();
    based.base = 1;
    CHECK_THROWS_WITH_AS(compile_polycycle(based, Rational(-6)), doctest::Contains("exp type"), SemanticError);

    PolycycleSpec flat = positive_polycycle();
    flat.connectors[0].alpha = Rational(0);
    CHECK_THROWS_AS(compile_polycycle(flat, Rational(-6)), SemanticError);
}

TEST_CASE("check_balance and simplify")
{
    CHECK_NOTHROW(check_balance(parse_word("exp ; aff(2, 0) ; ln")));
    CompositionWord bad;
    bad.gens = {Generator::ln(), Generator::exp()};
    CHECK_THROWS_AS(check_balance(bad), SemanticError);
    CHECK(simplify(parse_word("aff(2, 0) ; aff(1/2, 0) ; exp ; ln")).gens.empty());
    CHECK(fuse_affines(parse_word("aff(2, 1) ; aff(3, 0)")) == parse_word("aff(6, 3)"));
}
