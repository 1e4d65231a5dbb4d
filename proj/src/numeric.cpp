// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/numeric.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace dulac {

std::vector<Rational> level0_grid()
{
    std::vector<Rational> g;
    for (long z = 3; z <= 39; z += 2) {
        g.emplace_back(z);
    }
    return g;
}

std::vector<Rational> level1_grid()
{
    std::vector<Rational> g;
    for (long k = 3; k <= 12; ++k) {
        g.push_back(make_rational(k, 2));
    }
    return g;
}

namespace {

// main = levels.back() o exp o ... o exp o levels[0] (start)
struct Tower
{
    std::vector<AffineMap> levels{AffineMap{}};
    Real start;
    bool collapsed = false;

    Real apply(const AffineMap &a, const Real &x) const
    {
        Real y = Real(a.alpha, x.precision()) * x;
        if (!a.beta.is_zero()) {
            y += a.beta.value(x.precision());
        }
        return y;
    }

    Real value() const
    {
        Real x = start;
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (i != 0) {
                x = exp(x);
            }
            x = apply(levels[i], x);
        }
        return x;
    }
};

Real flow_deviation(const FlowBoxMap &f, const Real &x)
{
    mpfr_prec_t bits = x.precision();
    Real s(bits);
    for (std::size_t q = 0; q < f.tail.size(); ++q) {
        if (f.tail[q] == 0) {
            continue;
        }
        Real term = exp(-(Real(static_cast<long>(q + 1), bits) * x));
        s += Real(Rational(f.tail[q] / f.alpha), bits) * term;
    }
    if (s <= Real(-1, bits)) {
        throw std::domain_error("flow-box map: f(e^{-zeta}) is not positive");
    }
    return -log1p(s);
}

bool agree(const Real &a, const Real &b, long bits)
{
    if (b.is_zero()) {
        return a.is_zero();
    }
    Real diff = abs(a - b);
    if (diff.is_zero()) {
        return true;
    }
    return diff.log_abs() - abs(b).log_abs() <= -static_cast<double>(bits) * std::log(2.0);
}

} // namespace

WordValue eval_word(const CompositionWord &w, const Real &zeta)
{
    mpfr_prec_t bits = zeta.precision();
    Tower main;
    main.start = zeta;
    Real dev(bits);
    for (const auto &g : w.gens) {
        switch (g.kind) {
        case GenKind::Affine:
            main.levels.back() = g.affine.after(main.levels.back());
            dev *= Real(g.affine.alpha, bits);
            break;
        case GenKind::HMap: {
            Real x = main.value() + dev;
            dev += g.source ? flow_deviation(*g.source, x) : evaluate(g.deviation, x);
            break;
        }
        case GenKind::Exp: {
            Real m = main.value();
            dev = exp(m) * expm1(dev);
            main.levels.push_back(AffineMap{});
            break;
        }
        case GenKind::Ln: {
            Real m = main.value();
            if ((m + dev).sign() <= 0) {
                throw std::domain_error("ln applied to a non-positive value");
            }
            dev = log1p(dev / m);
            const AffineMap top = main.levels.back();
            if (main.levels.size() > 1 && top.beta.is_zero()) {
                main.levels.pop_back();
                main.levels.back() = AffineMap{1, LogLinear::log_of(top.alpha)}.after(main.levels.back());
            } else {
                main.start = log(m);
                main.levels = {AffineMap{}};
                main.collapsed = true;
            }
            break;
        }
        }
        if (!dev.is_finite()) {
            throw std::range_error("word evaluation overflowed");
        }
    }
    if (main.levels.size() != 1) {
        throw std::invalid_argument("word is not balanced");
    }
    WordValue out;
    out.bits = bits;
    out.value = main.value() + dev;
    if (main.collapsed) {
        out.deviation = out.value - zeta;
    } else {
        out.affine = main.levels.front();
        out.deviation = dev;
    }
    return out;
}

WordValue eval_exact(const CompositionWord &w, const Rational &zeta, const EvalConfig &cfg)
{
    for (mpfr_prec_t bits = cfg.bits; 2 * bits <= cfg.max_bits; bits *= 2) {
        WordValue lo = eval_word(w, Real(zeta, bits));
        WordValue hi = eval_word(w, Real(zeta, 2 * bits));
        if (agree(lo.deviation, hi.deviation, bits - 8) && agree(lo.value, hi.value, bits - 8)) {
            return hi;
        }
    }
    throw PrecisionError("evaluation at zeta = " + to_string(zeta) + " did not stabilize below " +
                         std::to_string(cfg.max_bits) + " bits");
}

Real eval_series(const GenExpSeries &s, const Rational &zeta, mpfr_prec_t bits)
{
    return evaluate(s, Real(zeta, bits));
}

Real eval_series(const StarSeries &s, const Rational &zeta, mpfr_prec_t bits)
{
    return evaluate(s, Real(zeta, bits));
}

Real eval_deviation(const Decomposition &d, const Rational &zeta, mpfr_prec_t bits)
{
    Real z(zeta, bits);
    Real sum = evaluate(d.level0, z);
    for (const auto &b : d.level1) {
        sum += evaluate(b.body, z);
    }
    return sum;
}

namespace {

// ln_bound(zeta) is the natural log of the bound at zeta.
template <typename Series, typename LnBound>
CertReport certify(const CompositionWord &w, const Series &s, const EvalConfig &cfg, LnBound ln_bound)
{
    CertReport r;
    r.min_margin = std::numeric_limits<double>::infinity();
    for (const auto &z : cfg.grid) {
        WordValue wv = eval_exact(w, z, cfg);
        CertPoint p;
        p.zeta = z;
        p.difference = abs(wv.deviation - eval_series(s, z, wv.bits));
        Real lb = ln_bound(z, wv.bits);
        p.bound = exp(lb);
        if (p.difference.is_zero()) {
            p.margin = std::numeric_limits<double>::infinity();
        } else {
            p.margin = lb.to_double() - p.difference.log_abs();
        }
        p.ok = p.difference <= p.bound;
        r.pass = r.pass && p.ok;
        r.min_margin = std::min(r.min_margin, p.margin);
        r.points.push_back(std::move(p));
    }
    return r;
}

} // namespace

CertReport certify_asymptotics(const CompositionWord &w, const GenExpSeries &s, const Rational &cutoff,
                               const EvalConfig &cfg)
{
    Rational rate = cutoff + cfg.epsilon;
    CertReport r = certify(w, s, cfg, [&](const Rational &z, mpfr_prec_t bits) {
        return -(Real(rate, bits) * Real(z, bits));
    });
    r.bound_text = "exp(-" + to_string(rate) + " * zeta)";
    return r;
}

CertReport certify_asymptotics(const CompositionWord &w, const StarSeries &s, const Rational &cutoff,
                               const EvalConfig &cfg)
{
    Rational rate = cutoff + cfg.epsilon;
    CertReport r = certify(w, s, cfg, [&](const Rational &z, mpfr_prec_t bits) {
        return -(Real(rate, bits) * exp(Real(s.scale, bits) * Real(z, bits)));
    });
    r.bound_text = "exp(-" + to_string(rate) + " * exp(" + to_string(s.scale) + " * zeta))";
    return r;
}

FlatnessFit fit_flatness(const CompositionWord &w, const EvalConfig &cfg)
{
    const auto &grid = cfg.grid;
    if (grid.size() < 4) {
        throw std::invalid_argument("fit_flatness: at least four grid points are required");
    }
    Rational h = grid[1] - grid[0];
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] - grid[i - 1] != h || h <= 0) {
            throw std::invalid_argument("fit_flatness: grid must be uniform and increasing");
        }
    }
    FlatnessFit fit;
    std::vector<double> g;
    for (const auto &z : grid) {
        WordValue wv = eval_exact(w, z, cfg);
        if (wv.deviation.is_zero()) {
            throw PrecisionError("fit_flatness: deviation vanishes at zeta = " + to_string(z));
        }
        g.push_back(-wv.deviation.log_abs());
        fit.samples.emplace_back(z, g.back());
    }

    // Second differences remove the part of -ln|deviation| linear in zeta;
    // what is left behaves like lambda (2 cosh(sigma h) - 2) e^{sigma zeta}.
    std::size_t n = grid.size();
    std::size_t first = std::max<std::size_t>(1, n / 2);
    if (n - 1 - first < 2) {
        first = 1;
    }
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = first; i + 1 < n; ++i) {
        double d = g[i + 1] - 2 * g[i] + g[i - 1];
        if (!(d > 0)) {
            throw std::domain_error("fit_flatness: deviation is not doubly exponentially flat on the grid");
        }
        xs.push_back(grid[i].get_d());
        ys.push_back(std::log(d));
    }
    double mx = 0;
    double my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(xs.size());
    my /= static_cast<double>(xs.size());
    double sxy = 0;
    double sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    fit.sigma = sxy / sxx;
    double hd = h.get_d();
    double shape = 2 * std::cosh(fit.sigma * hd) - 2;
    double lam = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        lam += std::exp(ys[i] - fit.sigma * xs[i]) / shape;
    }
    fit.lambda = lam / static_cast<double>(xs.size());
    return fit;
}

std::pair<Real, Real> e_conjugation_sides(const Rational &x, mpfr_prec_t bits)
{
    Real X(x, bits);
    Real one(1, bits);
    Real e = exp(-(one / X));
    Real lhs = -(one / log(e + e * e));
    Real rhs = X / (one - X * log1p(e));
    return {lhs, rhs};
}

std::string format_real(const Real &x, int digits)
{
    return x.to_string(digits);
}

namespace {

std::string format_margin(double m)
{
    if (std::isinf(m)) {
        return m > 0 ? "inf" : "-inf";
    }
    std::ostringstream out;
    out << std::setprecision(6) << m;
    return out.str();
}

} // namespace

std::string to_string(const CertReport &r)
{
    std::ostringstream out;
    out << "# bound " << r.bound_text << "; values to 20 significant digits; margin = ln(bound) - ln|difference|\n";
    out << "zeta\t|difference|\tbound\tmargin\tstatus\n";
    for (const auto &p : r.points) {
        out << to_string(p.zeta) << "\t" << format_real(p.difference) << "\t" << format_real(p.bound) << "\t"
            << format_margin(p.margin) << "\t" << (p.ok ? "ok" : "FAIL") << "\n";
    }
    out << (r.pass ? "Pass" : "Fail") << ", minimum margin " << format_margin(r.min_margin) << "\n";
    return out.str();
}

std::string to_string(const FlatnessFit &f)
{
    std::ostringstream out;
    out << "# -ln|deviation| per grid point, 12 significant digits\n";
    out << "zeta\t-ln|deviation|\n";
    out << std::setprecision(12);
    for (const auto &[z, g] : f.samples) {
        out << to_string(z) << "\t" << g << "\n";
    }
    out << "sigma = " << f.sigma << ", lambda = " << f.lambda << " (12 significant digits)\n";
    return out.str();
}

} // namespace dulac
