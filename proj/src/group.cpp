// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/group.hpp"

#include <algorithm>
#include <functional>

namespace dulac {

LogMap::LogMap(GenExpSeries dev) : deviation(std::move(dev))
{
    if (!deviation.is_fc0()) {
        throw SemanticError("log map deviation must have only negative exponents");
    }
}

LogMap compose_h(const LogMap &f, const LogMap &g, std::optional<Rational> floor)
{
    GenExpSeries inner = compose_series(f.deviation, g.deviation, floor);
    GenExpSeries dev = ring_add(g.deviation, inner);
    if (floor) {
        dev = dev.truncated(*floor);
    }
    return LogMap(std::move(dev));
}

LogMap invert_h(const LogMap &f, std::optional<Rational> floor)
{
    const GenExpSeries &d = f.deviation;
    if (d.is_zero() && d.is_exact()) {
        return f;
    }
    if (!floor) {
        floor = d.floor();
    }
    if (!floor) {
        throw std::invalid_argument("inverting an exact map needs an explicit floor");
    }
    GenExpSeries g = ring_neg(d).truncated(*floor);
    // Each pass fixes at least one more exponent level, so the number of
    // passes is bounded by the depth of the floor.
    for (int pass = 0; pass < 100000; ++pass) {
        GenExpSeries next = ring_neg(compose_series(d, g, floor)).truncated(*floor);
        if (next == g) {
            return LogMap(std::move(g));
        }
        g = std::move(next);
    }
    throw std::logic_error("invert_h did not reach a fixed point");
}

LogMap conj_affine(const AffineMap &a, const LogMap &f)
{
    Rational inv = Rational(1) / a.alpha;
    GenExpSeries dev = scale_argument(f.deviation, inv, a.beta.scaled(Rational(-inv)));
    return LogMap(scalar_mul(Scalar(a.alpha), dev));
}

StarSeries a_conjugate(const LogMap &f, const Rational &c_max)
{
    StarSeries out;
    out.scale = 1;
    const GenExpSeries &d = f.deviation;
    if (d.is_zero() && d.is_exact()) {
        return out;
    }
    Rational acc = -c_max;
    if (d.floor()) {
        acc = max_of(acc, *d.floor());
    }
    Rational lead = *d.upper_exponent();

    // ln(exp(zeta) + d(exp(zeta))) = zeta + ln(1 + u), u = sum b e^{-zeta} e^{mu e^zeta}
    StarSeries u;
    u.scale = 1;
    u.accuracy = acc;
    for (const auto &t : d.terms()) {
        u.terms.push_back(Level1Term{K1Coefficient(GenExpSeries::monomial(-1, t.coeff)), TransExponent::single(1, t.mu)});
    }
    u = canonical(std::move(u));

    out.accuracy = acc;
    StarSeries power = u;
    for (long r = 1; Rational(lead * r) >= acc; ++r) {
        if (r > 1) {
            power = star_mul(power, u);
        }
        out = star_add(out, star_scalar(Scalar(Rational(r % 2 == 1 ? 1 : -1, r)), power));
    }
    Rational lowest = acc;
    for (const auto &t : out.terms) {
        lowest = min_of(lowest, t.exponent.nu_at(1));
    }
    out.progressions.push_back(Progression{TransExponent::single(1, Rational(lowest + lead)), TransExponent::single(1, lead)});
    return canonical(std::move(out));
}

StarSeries conj_scale_level1(const Rational &alpha, const StarSeries &s, const LogLinear &beta)
{
    return star_scalar(Scalar(Rational(Rational(1) / alpha)), star_scale_argument(s, alpha, beta));
}

// ---------------------------------------------------------------------------
// Additive decomposition

namespace {

K1Coefficient k1_shift(const K1Coefficient &k, const GenExpSeries &phi, const Rational &coeff_floor)
{
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    for (const auto &u : k.uppers()) {
        uppers.push_back(std::make_shared<const StarSeries>(star_shift(*u, phi, coeff_floor)));
    }
    GenExpSeries base = k.base().is_zero() && k.base().is_exact() ? k.base()
                                                                   : compose_series(k.base(), phi, coeff_floor);
    return K1Coefficient(std::move(base), std::move(uppers));
}

// E(zeta + phi) as an exponent: principal unchanged, the rest goes to the tail.
TransExponent exponent_shift(const TransExponent &e, const GenExpSeries &phi, const Rational &coeff_floor)
{
    GenExpSeries tail = e.tail().is_zero() && e.tail().is_exact() ? e.tail()
                                                                 : compose_series(e.tail(), phi, coeff_floor);
    for (const auto &p : e.principal()) {
        // nu e^{a zeta} (e^{a phi} - 1), truncated at coeff_floor overall.
        GenExpSeries grow = exp_minus_one(scalar_mul(Scalar(p.scale), phi), Rational(coeff_floor - p.scale));
        tail = ring_add(tail, ring_mul(GenExpSeries::monomial(p.scale, Scalar(p.nu)), grow));
    }
    return TransExponent(e.principal(), tail);
}

Rational factorial(long n)
{
    mpz_class f = 1;
    for (long i = 2; i <= n; ++i) {
        f *= i;
    }
    return Rational(f);
}

// Level-1 part of a near-identity deviation, one series per scale.
using Bundle = std::map<Rational, StarSeries, std::greater<>>;

struct Context
{
    DecomposeOrder order;
    std::vector<std::string> events;
};

bool bundle_empty(const Bundle &b)
{
    for (const auto &[scale, s] : b) {
        if (!s.terms.empty()) {
            return false;
        }
    }
    return true;
}

void bundle_add_into(Bundle &b, const StarSeries &s)
{
    if (s.terms.empty()) {
        return;
    }
    auto it = b.find(s.scale);
    if (it == b.end()) {
        b.emplace(s.scale, s);
    } else {
        it->second = star_add(it->second, s);
    }
}

StarSeries star_times(const StarSeries &a, const StarSeries &b, Context &ctx)
{
    if (a.scale == b.scale) {
        return star_mul(a, b);
    }
    const StarSeries &high = a.scale > b.scale ? a : b;
    const StarSeries &low = a.scale > b.scale ? b : a;
    StarSeries out = absorb_product(high, low);
    if (!out.terms.empty()) {
        std::string event = "grading escalation at scale " + to_string(high.scale) + ": coefficient absorbs the scale " +
                            to_string(low.scale) + " series (level " + std::to_string(out.level()) + ")";
        if (std::find(ctx.events.begin(), ctx.events.end(), event) == ctx.events.end()) {
            ctx.events.push_back(std::move(event));
        }
    }
    return out;
}

Bundle bundle_mul(const Bundle &x, const Bundle &y, Context &ctx)
{
    Bundle out;
    for (const auto &[sa, a] : x) {
        for (const auto &[sb, b] : y) {
            bundle_add_into(out, star_times(a, b, ctx));
        }
    }
    return out;
}

// sum_{s >= 1} term(s) * Psi^s / s!, stopping once Psi^s has no terms.
void taylor_in_bundle(const Bundle &psi, const std::function<void(long, const Bundle &)> &emit, Context &ctx)
{
    if (bundle_empty(psi)) {
        return;
    }
    Bundle power = psi;
    for (long s = 1; s <= 64 && !bundle_empty(power); ++s) {
        emit(s, power);
        power = bundle_mul(power, psi, ctx);
    }
}

struct NearIdentity
{
    GenExpSeries phi;
    Bundle psi;
};

// X o N for a level-0 deviation X.
void compose_level0(NearIdentity &n, const GenExpSeries &x, Context &ctx)
{
    const Rational &floor = ctx.order.level0_floor;
    Bundle added;
    GenExpSeries deriv = x;
    taylor_in_bundle(
        n.psi,
        [&](long s, const Bundle &power) {
            deriv = derivative(deriv);
            GenExpSeries c = n.phi.is_zero() && n.phi.is_exact() ? deriv
                                                                 : compose_series(deriv, n.phi, ctx.order.coeff_floor);
            c = scalar_mul(Scalar(Rational(Rational(1) / factorial(s))), c);
            for (const auto &[scale, body] : power) {
                bundle_add_into(added, star_coeff_mul(c, body));
            }
        },
        ctx);
    GenExpSeries shifted = n.phi.is_zero() && n.phi.is_exact() ? x : compose_series(x, n.phi, floor);
    n.phi = ring_add(n.phi, shifted).truncated(floor);
    for (const auto &[scale, body] : added) {
        bundle_add_into(n.psi, body);
    }
}

// Y o N for a level-1 deviation Y.
void compose_level1(NearIdentity &n, const StarSeries &y, Context &ctx)
{
    const Rational &cf = ctx.order.coeff_floor;
    auto shift = [&](const StarSeries &s) {
        return n.phi.is_zero() && n.phi.is_exact() ? s : star_shift(s, n.phi, cf);
    };
    Bundle added;
    bundle_add_into(added, shift(y));
    StarSeries deriv = y;
    taylor_in_bundle(
        n.psi,
        [&](long s, const Bundle &power) {
            deriv = star_derivative(deriv);
            StarSeries c = star_scalar(Scalar(Rational(Rational(1) / factorial(s))), shift(deriv));
            for (const auto &[scale, body] : power) {
                bundle_add_into(added, star_times(c, body, ctx));
            }
        },
        ctx);
    for (const auto &[scale, body] : added) {
        bundle_add_into(n.psi, body);
    }
}

enum class ItemKind { Affine, Level0, Level1 };

struct Item
{
    ItemKind kind;
    AffineMap affine;
    GenExpSeries level0;
    StarSeries level1;
};

// ln o (inner) o exp for a depth-0 inner word, as items in application order.
std::vector<Item> block_items(const std::vector<Generator> &inner, const DecomposeOrder &order)
{
    AffineMap a;
    LogMap phi;
    for (const auto &g : inner) {
        if (g.kind == GenKind::Affine) {
            a = g.affine.after(a);
        } else {
            LogMap x = conj_affine(a.inverse(), LogMap(g.deviation));
            phi = compose_h(x, phi, order.level0_floor);
        }
    }
    std::vector<Item> items;
    items.push_back(Item{ItemKind::Level1, {}, {}, a_conjugate(phi, order.c_max)});
    if (!a.beta.is_zero()) {
        Scalar c = Scalar::from_log_linear(a.beta).scaled(Rational(Rational(1) / a.alpha));
        GenExpSeries l = log_one_plus(GenExpSeries::monomial(-1, c), order.level0_floor);
        items.push_back(Item{ItemKind::Level0, {}, l, {}});
    }
    items.push_back(Item{ItemKind::Affine, AffineMap{Rational(1), LogLinear::log_of(a.alpha)}, {}, {}});
    return items;
}

} // namespace

StarSeries star_shift(const StarSeries &s, const GenExpSeries &phi, const Rational &coeff_floor)
{
    StarSeries out = s;
    out.terms.clear();
    for (const auto &t : s.terms) {
        out.terms.push_back(
            Level1Term{k1_shift(t.coeff, phi, coeff_floor), exponent_shift(t.exponent, phi, coeff_floor)});
    }
    return canonical(std::move(out));
}

Decomposition additive_decompose(const CompositionWord &w, const DecomposeOrder &order)
{
    check_balance(w);
    if (max_depth(w) > 1) {
        throw UnsupportedError("additive decomposition handles words of exp/ln depth at most 1");
    }
    std::vector<Item> items;
    for (std::size_t i = 0; i < w.gens.size(); ++i) {
        const Generator &g = w.gens[i];
        if (g.kind == GenKind::Affine) {
            items.push_back(Item{ItemKind::Affine, g.affine, {}, {}});
        } else if (g.kind == GenKind::HMap) {
            items.push_back(Item{ItemKind::Level0, {}, g.deviation, {}});
        } else {
            std::vector<Generator> inner;
            for (++i; w.gens[i].kind != GenKind::Ln; ++i) {
                inner.push_back(w.gens[i]);
            }
            auto block = block_items(inner, order);
            items.insert(items.end(), block.begin(), block.end());
        }
    }

    Context ctx{order, {}};
    AffineMap a;
    NearIdentity n;
    for (const auto &item : items) {
        switch (item.kind) {
        case ItemKind::Affine:
            a = item.affine.after(a);
            break;
        case ItemKind::Level0:
            compose_level0(n, conj_affine(a.inverse(), LogMap(item.level0)).deviation, ctx);
            break;
        case ItemKind::Level1:
            compose_level1(n, conj_scale_level1(a.alpha, item.level1, a.beta), ctx);
            break;
        }
    }

    Decomposition d;
    d.affine = a;
    d.order = order;
    d.level0 = scalar_mul(Scalar(a.alpha), n.phi);
    for (const auto &[scale, body] : n.psi) {
        StarSeries b = star_scalar(Scalar(a.alpha), body);
        d.level1.push_back(Level1Body{scale, b, b.level()});
    }
    d.events = std::move(ctx.events);
    return d;
}

Real evaluate(const Decomposition &d, const Real &zeta)
{
    mpfr_prec_t bits = zeta.precision();
    Real v = Real(d.affine.alpha, bits) * zeta + d.affine.beta.value(bits);
    v += evaluate(d.level0, zeta);
    for (const auto &b : d.level1) {
        v += evaluate(b.body, zeta);
    }
    return v;
}

} // namespace dulac
