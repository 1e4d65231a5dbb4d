// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dulac/text.hpp"
#include "ebnf.hpp"
#include "test_util.hpp"

using namespace dulac;

namespace {

const ebnf::Grammar &grammar()
{
    static const ebnf::Grammar g = [] {
        std::ifstream in(DULAC_SOURCE_DIR "/docs/grammar.ebnf");
        std::stringstream ss;
        ss << in.rdbuf();
        return ebnf::Grammar(ss.str());
    }();
    return g;
}

constexpr int kCorpus = 150;

} // namespace

TEST_CASE("series print format")
{
    GenExpSeries s({{-1, Scalar(1)}, {-2, Scalar(make_rational(-1, 2))}}, Rational(-3), Rational(2));
    CHECK(print(s) == "1*E(-1) + -1/2*E(-2) | floor=-3, a=2");
    CHECK(print(GenExpSeries()) == "0");
    CHECK(parse_series("1*E(-1) + -1/2*E(-2) | floor=-3") ==
          GenExpSeries({{-1, Scalar(1)}, {-2, Scalar(make_rational(-1, 2))}}, Rational(-3)));
    CHECK(parse_series("  0 | floor=-2 ") == GenExpSeries::zero(Rational(-2)));
}

TEST_CASE("scalar and log-linear text")
{
    Scalar c = parse_scalar("(1/2*2^(1/3)*e^(1/2)*ln(2)^2 + 3)");
    Scalar expect = Scalar(make_rational(1, 2)) * Scalar::exp_of(make_rational(1, 3), LogLinear::log_of(2)) *
                        Scalar::exp_of(make_rational(1, 2), LogLinear(Rational(1))) *
                        Scalar::from_log_linear(LogLinear::log_of(2)) * Scalar::from_log_linear(LogLinear::log_of(2)) +
                    Scalar(3);
    CHECK(c == expect);
    CHECK(parse_log_linear("1/3 + 2*ln(3)") == LogLinear(make_rational(1, 3)) + LogLinear::log_of(3).scaled(2));
    CHECK(parse_log_linear("-ln(2)") == -LogLinear::log_of(2));
    CHECK(print(-LogLinear::log_of(2)) == "-ln(2)");
}

TEST_CASE("syntax errors carry positions")
{
    try {
        parse_series("1*E(-1) + 2*F(-2)");
        FAIL("accepted");
    } catch (const SyntaxError &e) {
        CHECK(e.position() == 12);
    }
    CHECK_THROWS_AS(parse_series("1*E(-1) +"), SyntaxError);
    CHECK_THROWS_AS(parse_word("exp ; ln ;"), SyntaxError);
    CHECK_THROWS_AS(parse_star("star(scale=1): (1*E(-1))*EE{-1@1"), SyntaxError);
    CHECK_THROWS_AS(parse_polycycle("polycycle 2\nsaddle k=1 kind=sideways\n"), SyntaxError);
}

TEST_CASE("semantic errors name the invariant")
{
    CHECK_THROWS_WITH_AS(parse_word("aff(0, 1)"), doctest::Contains("alpha must be positive"), SemanticError);
    CHECK_THROWS_WITH_AS(parse_series("1*E((2^(1/2)))"), doctest::Contains("exponents must be rational"),
                         SemanticError);
    CHECK_THROWS_WITH_AS(parse_word("exp ; exp ; ln"), doctest::Contains("balance"), SemanticError);
    CHECK_THROWS_WITH_AS(parse_polycycle("polycycle 2\nsaddle k=1 kind=exp\nsaddle k=1 kind=exp\nbase=0\n"),
                         doctest::Contains("alternate"), SemanticError);
}

TEST_CASE("word text")
{
    CompositionWord w = parse_word("aff(2, 0) ; exp ; flow(alpha=1, tail=[1], radius=1, order=-4) ; ln");
    REQUIRE(w.gens.size() == 4);
    CHECK(w.gens[2].source.has_value());
    CHECK(print(w) == "aff(2, 0) ; exp ; flow(alpha=1, tail=[1], radius=1, order=-4) ; ln");
    CHECK(parse_word("id").gens.empty());
}

TEST_CASE("classify")
{
    CHECK(classify("1*E(-1)") == ValueKind::Series);
    CHECK(classify(" star(scale=1): 0") == ValueKind::Star);
    CHECK(classify("exp ; ln") == ValueKind::Word);
    CHECK(classify("polycycle 2") == ValueKind::Polycycle);
}

TEST_CASE("round trip: scalars and series")
{
    test::Rng rng(11);
    for (int i = 0; i < kCorpus; ++i) {
        Scalar c = test::random_scalar(rng);
        CHECK(parse_scalar(print(c)) == c);
        LogLinear b = test::random_log_linear(rng);
        CHECK(parse_log_linear(print(b)) == b);
        GenExpSeries s = test::random_rich_series(rng, 4, -5);
        CHECK(parse_series(print(s)) == s);
    }
}

TEST_CASE("round trip: exponents and star series")
{
    test::Rng rng(12);
    for (int i = 0; i < kCorpus; ++i) {
        TransExponent e = test::random_exponent(rng, 1);
        CHECK(parse_exponent(print(e)) == e);
        StarSeries s = test::random_star(rng);
        std::string t = print(s);
        CHECK_MESSAGE(parse_star(t) == s, t);
    }
}

TEST_CASE("round trip: words and polycycles")
{
    test::Rng rng(13);
    for (int i = 0; i < kCorpus; ++i) {
        CompositionWord w = test::random_word(rng, 8);
        std::string t = print(w);
        CHECK_MESSAGE(parse_word(t) == w, t);
        PolycycleSpec p = test::random_polycycle(rng);
        CHECK(parse_polycycle(print(p)) == p);
    }
}

TEST_CASE("grammar is closed")
{
    CHECK(grammar().undefined().empty());
    auto reach = grammar().reachable({"series", "star", "word", "polycycle", "scalar", "loglinear"});
    for (const auto &[name, body] : grammar().rules()) {
        CHECK_MESSAGE(reach.count(name) == 1, name);
    }
}

TEST_CASE("grammar accepts printed values")
{
    test::Rng rng(14);
    for (int i = 0; i < 40; ++i) {
        std::string s = print(test::random_rich_series(rng, 4, -5));
        CHECK_MESSAGE(grammar().accepts("series", s), s);
        std::string st = print(test::random_star(rng));
        CHECK_MESSAGE(grammar().accepts("star", st), st);
        std::string w = print(test::random_word(rng, 6));
        CHECK_MESSAGE(grammar().accepts("word", w), w);
        std::string p = print(test::random_polycycle(rng));
        CHECK_MESSAGE(grammar().accepts("polycycle", p), p);
    }
}

TEST_CASE("grammar and parser agree on rejections")
{
    const std::vector<std::pair<std::string, std::string>> bad{
        {"series", "1*E(-1) +"},       {"series", "E(-1)"},     {"series", "1*E(-1) | floor"},
        {"word", "exp ;"},             {"word", "aff(1)"},      {"star", "star(scale=1) 0"},
        {"star", "star(scale=1): (1*E(-1))*EE{-1@1"},          {"scalar", "(1 + )"},
    };
    for (const auto &[start, text] : bad) {
        CHECK_MESSAGE(!grammar().accepts(start, text), text);
        bool parsed = true;
        try {
            if (start == "series") {
                parse_series(text);
            } else if (start == "word") {
                parse_word(text);
            } else if (start == "star") {
                parse_star(text);
            } else {
                parse_scalar(text);
            }
        } catch (const SyntaxError &) {
            parsed = false;
        }
        CHECK_MESSAGE(!parsed, text);
    }
}
