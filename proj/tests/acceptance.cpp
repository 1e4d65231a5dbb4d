// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance checks. One line per criterion; exit status 1 if any fails.
// Usage: acceptance <path to dulac CLI>

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "dulac/counterexample.hpp"
#include "dulac/group.hpp"
#include "dulac/level1.hpp"
#include "dulac/numeric.hpp"
#include "dulac/text.hpp"
#include "test_util.hpp"

using namespace dulac;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string cli_path;

Real rel_diff(const Real &a, const Real &b)
{
    Real scale = abs(b);
    if (scale.is_zero()) {
        return abs(a);
    }
    return abs(a - b) / scale;
}

std::string fmt(double x)
{
    std::ostringstream out;
    out << x;
    return out.str();
}

// Taylor coefficients of log(P(x)) for P(0) = 1, from
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

const FlowBoxMap z_plus_z2{Rational(1), {Rational(1)}, Rational(1)};

// f^log(zeta) = zeta - log(1 + e^{-zeta}) for f(z) = z + z^2.
Outcome criterion1()
{
    FlowBoxLog log = flowbox_to_log(z_plus_z2, Rational(-10));
    std::vector<Rational> oracle = log_taylor({Rational(1), Rational(1)}, 10);
    if (!log.affine.is_identity()) {
        return {false, "affine part " + print(log.affine)};
    }
    for (int q = 1; q <= 10; ++q) {
        Scalar got = log.deviation.coefficient(Rational(-q));
        Rational want{-oracle[q]};
        if (got != Scalar(want)) {
            return {false, "q=" + std::to_string(q) + " got " + print(got) + " want " + want.get_str()};
        }
        Rational magnitude{abs(want)};
        if (magnitude != make_rational(1, q)) {
            return {false, "q=" + std::to_string(q) + " magnitude " + magnitude.get_str()};
        }
    }
    return {true, "q=1..10 exact, c_q = (-1)^q/q from -log1p(e^{-zeta}); the displayed -(-1)^q/q has the opposite sign"};
}

Outcome criterion2()
{
    CompositionWord w = parse_word("flow(alpha=1, tail=[1], radius=1, order=-20)");
    GenExpSeries s = flowbox_to_log(z_plus_z2, Rational(-8)).deviation;
    EvalConfig cfg;
    cfg.grid = level0_grid();
    cfg.bits = 256;
    cfg.epsilon = make_rational(1, 2);
    CertReport r = certify_asymptotics(w, s, Rational(8), cfg);
    return {r.pass && r.points.size() == cfg.grid.size(),
            std::to_string(r.points.size()) + " points on 3..39, minimum margin " + fmt(r.min_margin)};
}

LogMap random_map(test::Rng &rng)
{
    long floor = -test::uniform(rng, 2, 10);
    return LogMap(test::random_series(rng, 8, floor));
}

Outcome criterion3()
{
    test::Rng rng(301);
    int failures = 0;
    for (int i = 0; i < 100; ++i) {
        LogMap f = random_map(rng);
        LogMap g = invert_h(f);
        if (!compose_h(f, g).deviation.is_zero() || !compose_h(g, f).deviation.is_zero()) {
            ++failures;
        }
        LogMap a = random_map(rng);
        LogMap b = random_map(rng);
        if (!(compose_h(compose_h(f, a), b) == compose_h(f, compose_h(a, b)))) {
            ++failures;
        }
    }
    return {failures == 0, "100 inverse and 100 associativity checks, " + std::to_string(failures) + " failures"};
}

Outcome criterion4()
{
    test::Rng rng(401);
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
        LogMap f = random_map(rng);
        AffineMap a{test::random_positive(rng), test::random_log_linear(rng)};
        LogMap c = conj_affine(a, f);
        for (long z : {10L, 15L, 20L}) {
            Real zeta(Rational(z), 256);
            Real inner = (zeta - a.beta.value(256)) / Real(a.alpha, 256);
            Real expected = Real(a.alpha, 256) * evaluate(f.deviation, inner);
            worst = std::max(worst, rel_diff(evaluate(c.deviation, zeta), expected).to_double());
        }
    }
    return {worst < 1e-25, "50 pairs at zeta 10, 15, 20, worst relative error " + fmt(worst)};
}

Outcome criterion5()
{
    CompositionWord w = parse_word("exp ; flow(alpha=1, tail=[1], radius=1, order=-20) ; ln");
    LogMap f(flowbox_to_log(z_plus_z2, Rational(-8)).deviation);
    StarSeries s = a_conjugate(f, Rational(3));
    EvalConfig cfg;
    cfg.bits = 512;
    double worst = INFINITY;
    for (long k : {3L, 4L, 5L, 6L}) {
        Rational z = make_rational(k, 2);
        WordValue v = eval_exact(w, z, cfg);
        Real diff = abs(evaluate(s, Real(z, v.bits)) - v.deviation);
        double ln_bound = -3.5 * std::exp(z.get_d());
        double margin = diff.is_zero() ? INFINITY : ln_bound - diff.log_abs();
        worst = std::min(worst, margin);
    }
    return {worst > 0, "c <= 3 at zeta 1.5, 2, 2.5, 3 within e^{-3.5 e^zeta}, minimum log margin " + fmt(worst)};
}

std::vector<Rational> flatness_grid()
{
    std::vector<Rational> g;
    for (long k = 4; k <= 10; ++k) {
        g.push_back(make_rational(k, 2));
    }
    return g;
}

Outcome criterion6()
{
    Counterexample c = build_counterexample();
    for (const Rational &z : flatness_grid()) {
        WordValue v = eval_exact(c.word, z);
        if (!v.affine.is_identity() || v.deviation.is_zero()) {
            return {false, "Delta - id vanishes or is not a pure deviation at zeta " + z.get_str()};
        }
    }
    EvalConfig cfg;
    cfg.grid = flatness_grid();
    FlatnessFit fit = fit_flatness(c.word, cfg);
    bool ok = std::abs(fit.sigma - 1) <= 0.05;
    return {ok, "|Delta - zeta| > 0 on 2..5, sigma " + fmt(fit.sigma) + ", lambda " + fmt(fit.lambda)};
}

Outcome criterion7()
{
    Decomposition d = additive_decompose(build_counterexample().word);
    for (const auto &b : d.level1) {
        if (b.scale == 2) {
            return {b.grading == 1 && !d.events.empty(),
                    "grading " + std::to_string(b.grading) + " at scale 2, " + std::to_string(d.events.size()) +
                        " escalation event(s)"};
        }
    }
    return {false, "no level-1 body at scale 2"};
}

int cli_status(const std::string &args)
{
    std::string cmd = "\"" + cli_path + "\" " + args + " >/dev/null 2>&1";
    int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

Outcome criterion8()
{
    ValidityReport theory = validity_check(theoretical_pair().product);
    Counterexample c = build_counterexample();
    ValidityReport practice = validity_check(flatten_uppers(wronskian(c.k1, c.k2)));
    auto unit_witness = [](const ValidityReport &r) { return !r.valid && r.witness && abs_of(*r.witness) == 1; };
    int code = cli_status("counterexample");
    bool ok = unit_witness(theory) && unit_witness(practice) && code == 1;
    return {ok, "theoretical product and flattened Wronskian Invalid with |nu| = 1, CLI exit " + std::to_string(code)};
}

Outcome criterion9()
{
    CompositionWord w = compile_polycycle(positive_polycycle(), Rational(-6));
    Decomposition d = additive_decompose(w);
    if (d.level1.size() != 1 || d.level1[0].scale != 1) {
        return {false, "expected one level-1 body at scale 1"};
    }
    LowerBoundReport lb = ordering_lower_bound(d.level1[0].body);
    LeadingTermReport lead = scale1_leading_term(d);
    EvalConfig cfg;
    cfg.bits = 512;
    WordValue v = eval_exact(w, Rational(4), cfg);
    int numeric = v.affine.is_identity() ? v.deviation.sign() : 0;
    bool ok = lb.status == BoundStatus::Certified && lead.sign != 0 && lead.sign == numeric;
    return {ok, "bound lambda " + lb.lambda.get_str() + ", leading sign " + std::to_string(lead.sign) +
                    ", numeric sign at zeta 4 " + std::to_string(numeric)};
}

Outcome criterion10()
{
    test::Rng rng(1001);
    const mpfr_prec_t bits = 512;
    Real h(Rational(1), bits);
    for (int i = 0; i < 40; ++i) {
        h = h / Real(2, bits);
    }
    double worst = 0;
    for (int i = 0; i < 30; ++i) {
        Level1Term t = test::exact_level1_term(rng);
        DerivativeReport d = term_derivative(t, Rational(1));
        for (long z : {3L, 4L, 5L}) {
            Real zeta(Rational(z), bits);
            Real fd = (evaluate(t, zeta + h) - evaluate(t, zeta - h)) / (Real(2, bits) * h);
            Real sym = evaluate(d.derivative, zeta);
            worst = std::max(worst, rel_diff(sym, fd).to_double());
        }
    }
    return {worst < 1e-10, "30 terms at zeta 3, 4, 5, worst relative error " + fmt(worst)};
}

Outcome criterion11()
{
    double worst = 0;
    for (long k : {1L, 2L, 3L}) {
        auto [lhs, rhs] = e_conjugation_sides(make_rational(k, 10), 256);
        worst = std::max(worst, rel_diff(lhs, rhs).to_double());
    }
    return {worst < 1e-30, "x = 0.1, 0.2, 0.3, worst relative error " + fmt(worst)};
}

template <class T, class Gen, class Parse>
int round_trip_failures(int count, Gen gen, Parse parse)
{
    int failures = 0;
    for (int i = 0; i < count; ++i) {
        T x = gen();
        std::string text = print(x);
        T y = parse(text);
        if (!(y == x) || print(y) != text) {
            ++failures;
        }
    }
    return failures;
}

Outcome criterion12()
{
    test::Rng rng(1201);
    const int n = 150;
    int f = 0;
    f += round_trip_failures<Scalar>(n, [&] { return test::random_scalar(rng); }, parse_scalar);
    f += round_trip_failures<LogLinear>(n, [&] { return test::random_log_linear(rng); }, parse_log_linear);
    f += round_trip_failures<GenExpSeries>(n, [&] { return test::random_rich_series(rng, 5, -6); }, parse_series);
    f += round_trip_failures<TransExponent>(n, [&] { return test::random_exponent(rng, Rational(1)); },
                                            parse_exponent);
    f += round_trip_failures<StarSeries>(n, [&] { return test::random_star(rng); }, parse_star);
    f += round_trip_failures<CompositionWord>(n, [&] { return test::random_word(rng, 6); }, parse_word);
    f += round_trip_failures<PolycycleSpec>(n, [&] { return test::random_polycycle(rng); }, parse_polycycle);
    return {f == 0, std::to_string(n) + " values of each of 7 printable types, " + std::to_string(f) + " failures"};
}

} // namespace

int main(int argc, char **argv)
{
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <dulac CLI>\n");
        return 2;
    }
    cli_path = argv[1];
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2,  criterion3,  criterion4,
                                                         criterion5, criterion6,  criterion7,  criterion8,
                                                         criterion9, criterion10, criterion11, criterion12};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %zu: %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str(), secs);
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
