// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "dulac/group.hpp"
#include "dulac/text.hpp"
#include "test_util.hpp"

using namespace dulac;

namespace {

LogMap random_map(test::Rng &rng)
{
    long floor = -test::uniform(rng, 2, 10);
    return LogMap(test::random_series(rng, 8, floor));
}

// Equal up to the threshold, which records a conservative half-plane only.
bool same_germ(const LogMap &f, const LogMap &g)
{
    return f.deviation.with_threshold(0) == g.deviation.with_threshold(0);
}

// Level-1 series at scale 1/2 with exact coefficients and exponents.
StarSeries exact_star(test::Rng &rng)
{
    StarSeries s;
    s.scale = make_rational(1, 2);
    int n = static_cast<int>(test::uniform(rng, 1, 3));
    for (int i = 0; i < n; ++i) {
        GenExpSeries c = test::random_series(rng, 2, -3, true);
        if (c.is_zero()) {
            c = GenExpSeries::constant(Scalar(1));
        }
        std::vector<Principal> principal{{make_rational(1, 2), -test::random_positive(rng)}};
        if (test::uniform(rng, 0, 1) == 0) {
            principal.push_back({make_rational(1, 3), test::random_nonzero(rng)});
        }
        s.terms.push_back({K1Coefficient(c), TransExponent(principal, test::random_series(rng, 1, -2, true))});
    }
    return canonical(s);
}

Real rel_diff(const Real &a, const Real &b)
{
    Real scale = abs(b);
    if (scale.is_zero()) {
        return abs(a);
    }
    return abs(a - b) / scale;
}

} // namespace

TEST_CASE("compose_h with the inverse is the identity to the floor")
{
    test::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        LogMap f = random_map(rng);
        LogMap g = invert_h(f);
        INFO(print(f.deviation));
        CHECK(compose_h(f, g).deviation.is_zero());
        CHECK(compose_h(g, f).deviation.is_zero());
        CHECK(compose_h(f, g).deviation.floor() == f.deviation.floor());
    }
}

TEST_CASE("compose_h is associative to the floor")
{
    test::Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        LogMap f = random_map(rng);
        LogMap g = random_map(rng);
        LogMap h = random_map(rng);
        CHECK(compose_h(compose_h(f, g), h) == compose_h(f, compose_h(g, h)));
    }
}

TEST_CASE("compose_h identity and exact inputs")
{
    LogMap f(parse_series("1*E(-1) + 2*E(-3/2) | floor=-5"));
    CHECK(compose_h(f, LogMap::identity()) == f);
    CHECK(compose_h(LogMap::identity(), f) == f);
    LogMap exact(parse_series("1*E(-1)"));
    CHECK_THROWS_AS(compose_h(exact, exact), std::invalid_argument);
    CHECK(compose_h(exact, exact, Rational(-4)).deviation.floor() == Rational(-4));
}

TEST_CASE("compose_h against pointwise composition")
{
    test::Rng rng(5);
    for (int i = 0; i < 20; ++i) {
        LogMap f = random_map(rng);
        LogMap g = random_map(rng);
        LogMap fg = compose_h(f, g);
        Rational floor = *fg.deviation.floor();
        for (long z : {12L, 16L}) {
            Real zeta(Rational(z), 256);
            Real y = zeta + evaluate(g.deviation, zeta);
            Real direct = evaluate(g.deviation, zeta) + evaluate(f.deviation, y);
            Real diff = abs(direct - evaluate(fg.deviation, zeta));
            // Omitted terms are below e^{floor zeta}, with a generous constant.
            double bound = 1e6 + floor.get_d() * static_cast<double>(z);
            CHECK(diff.log_abs() <= bound);
        }
    }
}

TEST_CASE("conj_affine agrees with pointwise conjugation")
{
    test::Rng rng(6);
    for (int i = 0; i < 50; ++i) {
        LogMap f = random_map(rng);
        AffineMap a{test::random_positive(rng), test::random_log_linear(rng)};
        LogMap c = conj_affine(a, f);
        for (long z : {10L, 15L, 20L}) {
            Real zeta(Rational(z), 256);
            // a o f o a^{-1} - id at zeta is alpha * dev((zeta - beta) / alpha).
            Real inner = (zeta - a.beta.value(256)) / Real(a.alpha, 256);
            Real expected = Real(a.alpha, 256) * evaluate(f.deviation, inner);
            CHECK(rel_diff(evaluate(c.deviation, zeta), expected).to_double() < 1e-25);
        }
    }
}

TEST_CASE("conj_affine composes as a group action")
{
    test::Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        LogMap f = random_map(rng);
        AffineMap a{test::random_positive(rng), test::random_log_linear(rng)};
        AffineMap b{test::random_positive(rng), test::random_log_linear(rng)};
        INFO(print(f.deviation), " | a=", print(a), " b=", print(b));
        CHECK(same_germ(conj_affine(a, conj_affine(b, f)), conj_affine(a.after(b), f)));
        CHECK(same_germ(conj_affine(a.inverse(), conj_affine(a, f)), f));
    }
}

TEST_CASE("a_conjugate matches ln o f o exp numerically")
{
    LogMap f(parse_series("-1*E(-1) + 1/2*E(-2) + -1/3*E(-3)"));
    const Rational c_max(3);
    StarSeries s = a_conjugate(f, c_max);
    CHECK(s.scale == 1);
    for (long k : {3L, 4L, 5L, 6L}) {
        Rational z = make_rational(k, 2);
        Real zeta(z, 512);
        Real x = exp(zeta);
        Real expected = log1p(evaluate(f.deviation, x) / x);
        Real diff = abs(evaluate(s, zeta) - expected);
        // e^{-(c + 1/2) e^zeta}
        double ln_bound = -(c_max.get_d() + 0.5) * x.to_double();
        CHECK(diff.log_abs() <= ln_bound);
    }
}

TEST_CASE("a_conjugate of the identity is zero")
{
    CHECK(a_conjugate(LogMap::identity(), Rational(3)).is_zero());
}

TEST_CASE("star arithmetic on single terms")
{
    StarSeries a = parse_star("star(scale=1): (2*E(-1))*EE{-1@1}");
    StarSeries b = parse_star("star(scale=1): (3*E(-2))*EE{-2@1}");
    CHECK(print(star_mul(a, b)) == "star(scale=1): (6*E(-3))*EE{-3@1}");
    CHECK(star_add(a, b) == star_add(b, a));
    CHECK(star_sub(a, a).is_zero());
    CHECK(star_add(a, star_neg(a)).is_zero());
}

TEST_CASE("star_mul agrees with pointwise products")
{
    test::Rng rng(8);
    for (int i = 0; i < 30; ++i) {
        StarSeries a = exact_star(rng);
        StarSeries b = exact_star(rng);
        StarSeries p = star_mul(a, b);
        for (long k : {3L, 4L}) {
            Real zeta(make_rational(k, 2), 256);
            Real expected = evaluate(a, zeta) * evaluate(b, zeta);
            CHECK(rel_diff(evaluate(p, zeta), expected).to_double() < 1e-60);
        }
    }
}

TEST_CASE("canonical drops progressions covered by another")
{
    StarSeries s = parse_star("star(scale=1): 0 ; prog{base=EE{-4@1}, step=EE{-1@1}} ; prog{base=EE{-6@1}, step=EE{-1@1}}");
    REQUIRE(s.progressions.size() == 1);
    CHECK(s.progressions[0].base == TransExponent::single(Rational(1), Rational(-4)));
}

TEST_CASE("additive decomposition of the identity word")
{
    Decomposition d = additive_decompose(parse_word("exp ; ln"));
    CHECK(d.affine.is_identity());
    CHECK(d.level0.is_zero());
    CHECK(d.level1.empty());
    CHECK(d.events.empty());
}

TEST_CASE("additive decomposition of an affine-and-h word")
{
    Decomposition d = additive_decompose(parse_word("h(1*E(-1) | floor=-6) ; aff(2, 0)"));
    CHECK(d.affine == AffineMap{Rational(2), {}});
    CHECK(d.level1.empty());
    // 2 zeta + 2 e^{-zeta} = aff o (id + e^{-zeta}), written as Delta = affine + level0 with level0 = 2 e^{-zeta}
    CHECK(d.level0.coefficient(Rational(-1)) == Scalar(Rational(2)));
}
