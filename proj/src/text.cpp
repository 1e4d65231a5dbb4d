// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/text.hpp"

#include <cctype>
#include <map>
#include <memory>
#include <sstream>

namespace dulac {

SyntaxError::SyntaxError(const std::string &message, std::size_t position)
    : std::invalid_argument("syntax error at position " + std::to_string(position) + ": " + message), position_(position)
{
}

// ---------------------------------------------------------------------------
// Printing

namespace {

std::string join(const std::vector<std::string> &parts, const std::string &sep)
{
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i != 0) {
            out += sep;
        }
        out += parts[i];
    }
    return out;
}

std::string print_factor(const Factor &f)
{
    switch (f.kind) {
    case FactorKind::Radical:
        return std::to_string(f.base) + "^(" + to_string(f.power) + ")";
    case FactorKind::Euler:
        return "e^(" + to_string(f.power) + ")";
    case FactorKind::LogPrime:
        return "ln(" + std::to_string(f.base) + ")" + (f.power == 1 ? "" : "^" + to_string(f.power));
    }
    return {};
}

std::string print_term(const Level1Term &t)
{
    return "(" + print(t.coeff) + ")*" + print(t.exponent);
}

} // namespace

std::string print(const Scalar &s)
{
    if (s.is_rational()) {
        return to_string(s.rational());
    }
    std::vector<std::string> parts;
    for (const auto &[m, c] : s.terms()) {
        std::string t = to_string(c);
        for (const auto &f : m) {
            t += "*" + print_factor(f);
        }
        parts.push_back(t);
    }
    return "(" + join(parts, " + ") + ")";
}

std::string print(const LogLinear &b)
{
    std::vector<std::string> parts;
    if (b.constant() != 0) {
        parts.push_back(to_string(b.constant()));
    }
    for (const auto &[p, r] : b.logs()) {
        std::string ln = "ln(" + std::to_string(p) + ")";
        if (r == 1) {
            parts.push_back(ln);
        } else if (r == -1) {
            parts.push_back("-" + ln);
        } else {
            parts.push_back(to_string(r) + "*" + ln);
        }
    }
    return parts.empty() ? "0" : join(parts, " + ");
}

std::string print(const GenExpSeries &s)
{
    std::vector<std::string> parts;
    for (const auto &t : s.terms()) {
        parts.push_back(print(t.coeff) + "*E(" + to_string(t.mu) + ")");
    }
    std::string out = parts.empty() ? "0" : join(parts, " + ");
    std::vector<std::string> attrs;
    if (s.floor()) {
        attrs.push_back("floor=" + to_string(*s.floor()));
    }
    if (s.threshold() != 0) {
        attrs.push_back("a=" + to_string(s.threshold()));
    }
    if (!attrs.empty()) {
        out += " | " + join(attrs, ", ");
    }
    return out;
}

std::string print(const TransExponent &e)
{
    std::vector<std::string> parts;
    for (const auto &p : e.principal()) {
        parts.push_back(to_string(p.nu) + "@" + to_string(p.scale));
    }
    std::string out = "EE{" + join(parts, ", ");
    const GenExpSeries &tail = e.tail();
    if (!(tail.is_zero() && tail.is_exact() && tail.threshold() == 0)) {
        out += (parts.empty() ? "| " : " | ") + print(tail);
    }
    return out + "}";
}

std::string print(const K1Coefficient &k)
{
    if (k.uppers().empty()) {
        return print(k.base());
    }
    std::vector<std::string> parts{print(k.base())};
    for (const auto &u : k.uppers()) {
        parts.push_back(print(*u));
    }
    return "K{" + join(parts, " ; ") + "}";
}

std::string print(const StarSeries &s)
{
    std::string out = "star(scale=" + to_string(s.scale);
    if (s.accuracy) {
        out += ", acc=" + to_string(*s.accuracy);
    }
    out += "): ";
    if (s.terms.empty()) {
        out += "0";
    } else {
        std::vector<std::string> parts;
        for (const auto &t : s.terms) {
            parts.push_back(print_term(t));
        }
        out += join(parts, " + ");
    }
    for (const auto &p : s.progressions) {
        out += " ; prog{base=" + print(p.base) + ", step=" + print(p.step) + "}";
    }
    return out;
}

std::string print(const AffineMap &a)
{
    return "aff(" + to_string(a.alpha) + ", " + print(a.beta) + ")";
}

std::string print(const Generator &g)
{
    switch (g.kind) {
    case GenKind::Affine:
        return print(g.affine);
    case GenKind::HMap:
        if (g.source) {
            std::vector<std::string> tail;
            for (const auto &a : g.source->tail) {
                tail.push_back(to_string(a));
            }
            return "flow(alpha=" + to_string(g.source->alpha) + ", tail=[" + join(tail, ",") +
                   "], radius=" + to_string(g.source->radius) + ", order=" + to_string(g.order) + ")";
        }
        return "h(" + print(g.deviation) + ")";
    case GenKind::Exp:
        return "exp";
    case GenKind::Ln:
        return "ln";
    }
    return {};
}

std::string print(const CompositionWord &w)
{
    if (w.gens.empty()) {
        return "id";
    }
    std::vector<std::string> parts;
    for (const auto &g : w.gens) {
        parts.push_back(print(g));
    }
    return join(parts, " ; ");
}

std::string print(const PolycycleSpec &p)
{
    std::ostringstream out;
    out << "polycycle " << p.saddles.size() << "\n";
    for (std::size_t i = 0; i < p.saddles.size(); ++i) {
        if (i < p.connectors.size()) {
            const FlowBoxMap &f = p.connectors[i];
            std::vector<std::string> tail;
            for (const auto &a : f.tail) {
                tail.push_back(to_string(a));
            }
            out << "connector alpha=" << to_string(f.alpha) << " tail=" << join(tail, ",");
            if (f.radius != 1) {
                out << " radius=" << to_string(f.radius);
            }
            out << "\n";
        }
        out << "saddle k=" << p.saddles[i].k
            << " kind=" << (p.saddles[i].kind == TransitKind::ExpType ? "exp" : "log") << "\n";
    }
    out << "base=" << p.base << "\n";
    return out.str();
}

std::string print(const Decomposition &d)
{
    std::ostringstream out;
    out << "affine: " << print(d.affine) << "\n";
    out << "level0: " << print(d.level0) << "\n";
    for (const auto &b : d.level1) {
        out << "level1 scale=" << to_string(b.scale) << " p=" << b.grading << ": " << print(b.body) << "\n";
    }
    for (const auto &e : d.events) {
        out << "event: " << e << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser
{
public:
    explicit Parser(std::string_view text) : s_(text) {}

    std::size_t pos() const { return pos_; }
    void reset(std::size_t p) { pos_ = p; }

    [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(msg, pos_); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
    }

    bool at_end()
    {
        skip_ws();
        return pos_ >= s_.size();
    }

    char peek()
    {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    bool accept(std::string_view tok)
    {
        skip_ws();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view tok)
    {
        if (!accept(tok)) {
            fail("expected '" + std::string(tok) + "'");
        }
    }

    void finish()
    {
        if (!at_end()) {
            fail("unexpected trailing input");
        }
    }

    std::string digits()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) != 0) {
            ++pos_;
        }
        if (start == pos_) {
            fail("expected digits");
        }
        return std::string(s_.substr(start, pos_ - start));
    }

    unsigned long natural()
    {
        std::string d = digits();
        if (d.size() > 18) {
            fail("integer too large");
        }
        return std::stoul(d);
    }

    Rational rational()
    {
        skip_ws();
        std::string text;
        if (pos_ < s_.size() && s_[pos_] == '-') {
            text = "-";
            ++pos_;
        }
        text += digits();
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::string den = digits();
            if (mpz_class(den) == 0) {
                fail("zero denominator");
            }
            text += "/" + den;
        }
        return parse_rational(text);
    }

    Scalar scalar();
    LogLinear log_linear();
    GenExpSeries series();
    TransExponent exponent();
    K1Coefficient coefficient();
    StarSeries star();
    Generator generator();
    CompositionWord word();

private:
    Scalar monomial();
    Scalar factor_after_integer(const std::string &sign, const std::string &integer);

    std::string_view s_;
    std::size_t pos_ = 0;
};

Scalar ln_power(unsigned long p, const Rational &n)
{
    if (!is_integer(n) || n <= 0) {
        throw SemanticError("logarithm powers must be positive integers");
    }
    Scalar base = Scalar::from_log_linear(LogLinear::log_of(Rational(p)));
    Scalar out(1);
    for (long i = 0; i < n.get_num().get_si(); ++i) {
        out *= base;
    }
    return out;
}

// An integer has been read; it is either a radical base or a rational.
Scalar Parser::factor_after_integer(const std::string &sign, const std::string &integer)
{
    if (accept("^(")) {
        if (!sign.empty()) {
            fail("radical base must be positive");
        }
        Rational r = rational();
        expect(")");
        Rational base{mpz_class(integer)};
        if (base <= 0) {
            throw SemanticError("radical base must be positive");
        }
        return Scalar::exp_of(r, LogLinear::log_of(base));
    }
    std::string text = sign + integer;
    if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        std::string den = digits();
        if (mpz_class(den) == 0) {
            fail("zero denominator");
        }
        text += "/" + den;
    }
    return Scalar(parse_rational(text));
}

Scalar Parser::monomial()
{
    Scalar out(1);
    bool first = true;
    do {
        if (accept("e^(")) {
            Rational r = rational();
            expect(")");
            out *= Scalar::exp_of(r, LogLinear(Rational(1)));
        } else if (accept("ln(")) {
            unsigned long p = natural();
            expect(")");
            Rational n(1);
            if (accept("^")) {
                n = rational();
            }
            out *= ln_power(p, n);
        } else {
            skip_ws();
            std::string sign;
            if (first && pos_ < s_.size() && s_[pos_] == '-') {
                sign = "-";
                ++pos_;
            }
            out *= factor_after_integer(sign, digits());
        }
        first = false;
    } while (accept("*"));
    return out;
}

Scalar Parser::scalar()
{
    if (accept("(")) {
        Scalar out = monomial();
        while (accept("+")) {
            out += monomial();
        }
        expect(")");
        return out;
    }
    return Scalar(rational());
}

LogLinear Parser::log_linear()
{
    LogLinear out;
    do {
        if (accept("-ln(")) {
            Rational p{natural()};
            expect(")");
            out = out - LogLinear::log_of(p);
        } else if (accept("ln(")) {
            Rational p{natural()};
            expect(")");
            out = out + LogLinear::log_of(p);
        } else {
            Rational c = rational();
            if (accept("*")) {
                expect("ln(");
                Rational p{natural()};
                expect(")");
                out = out + LogLinear::log_of(p).scaled(c);
            } else {
                out = out + LogLinear(c);
            }
        }
    } while (accept("+"));
    return out;
}

GenExpSeries Parser::series()
{
    std::vector<ExpTerm> terms;
    std::size_t start = pos();
    Scalar c = scalar();
    if (!accept("*")) {
        if (!c.is_zero()) {
            reset(start);
            fail("expected '*E(' after coefficient");
        }
    } else {
        while (true) {
            expect("E(");
            std::size_t at = pos();
            Scalar mu = scalar();
            if (!mu.is_rational()) {
                reset(at);
                throw SemanticError("exponents must be rational");
            }
            expect(")");
            terms.push_back({mu.rational(), c});
            if (!accept("+")) {
                break;
            }
            c = scalar();
            expect("*");
        }
    }
    std::optional<Rational> floor;
    Rational threshold(0);
    if (accept("|")) {
        do {
            if (accept("floor=")) {
                floor = rational();
            } else if (accept("a=")) {
                threshold = rational();
            } else {
                fail("expected 'floor=' or 'a='");
            }
        } while (accept(","));
    }
    return GenExpSeries(std::move(terms), floor, threshold);
}

TransExponent Parser::exponent()
{
    expect("EE{");
    std::vector<Principal> principal;
    if (peek() != '|' && peek() != '}') {
        do {
            Rational nu = rational();
            expect("@");
            Rational scale = rational();
            principal.push_back({scale, nu});
        } while (accept(","));
    }
    GenExpSeries tail;
    if (accept("|")) {
        tail = series();
    }
    expect("}");
    return TransExponent(std::move(principal), std::move(tail));
}

K1Coefficient Parser::coefficient()
{
    if (!accept("K{")) {
        return K1Coefficient(series());
    }
    GenExpSeries base = series();
    std::vector<std::shared_ptr<const StarSeries>> uppers;
    while (accept(";")) {
        uppers.push_back(std::make_shared<const StarSeries>(star()));
    }
    expect("}");
    return K1Coefficient(std::move(base), std::move(uppers));
}

StarSeries Parser::star()
{
    StarSeries out;
    expect("star(");
    expect("scale=");
    out.scale = rational();
    if (accept(",")) {
        expect("acc=");
        out.accuracy = rational();
    }
    expect(")");
    expect(":");
    if (!accept("0")) {
        do {
            expect("(");
            K1Coefficient k = coefficient();
            expect(")");
            expect("*");
            out.terms.push_back({std::move(k), exponent()});
        } while (accept("+"));
    }
    while (true) {
        std::size_t save = pos();
        if (!accept(";") || !accept("prog{")) {
            reset(save);
            break;
        }
        expect("base=");
        TransExponent base = exponent();
        expect(",");
        expect("step=");
        TransExponent step = exponent();
        expect("}");
        out.progressions.push_back({std::move(base), std::move(step)});
    }
    if (out.scale <= 0) {
        throw SemanticError("star series scale must be positive");
    }
    return canonical(std::move(out));
}

Generator Parser::generator()
{
    if (accept("aff(")) {
        AffineMap a;
        a.alpha = rational();
        expect(",");
        a.beta = log_linear();
        expect(")");
        return Generator::aff(a);
    }
    if (accept("h(")) {
        GenExpSeries dev = series();
        expect(")");
        return Generator::hmap(std::move(dev));
    }
    if (accept("flow(")) {
        FlowBoxMap f;
        expect("alpha=");
        f.alpha = rational();
        expect(",");
        expect("tail=[");
        if (peek() != ']') {
            do {
                f.tail.push_back(rational());
            } while (accept(","));
        }
        expect("]");
        expect(",");
        expect("radius=");
        f.radius = rational();
        expect(",");
        expect("order=");
        Rational order = rational();
        expect(")");
        return Generator::flow(f, order);
    }
    if (accept("exp")) {
        return Generator::exp();
    }
    if (accept("ln")) {
        return Generator::ln();
    }
    fail("expected a generator");
}

CompositionWord Parser::word()
{
    CompositionWord w;
    if (accept("id")) {
        return w;
    }
    do {
        w.gens.push_back(generator());
    } while (accept(";"));
    return w;
}

template <typename T, typename F>
T parse_all(std::string_view text, F &&f)
{
    Parser p(text);
    T out = f(p);
    p.finish();
    return out;
}

} // namespace

Scalar parse_scalar(std::string_view text)
{
    return parse_all<Scalar>(text, [](Parser &p) { return p.scalar(); });
}

LogLinear parse_log_linear(std::string_view text)
{
    return parse_all<LogLinear>(text, [](Parser &p) { return p.log_linear(); });
}

GenExpSeries parse_series(std::string_view text)
{
    return parse_all<GenExpSeries>(text, [](Parser &p) { return p.series(); });
}

TransExponent parse_exponent(std::string_view text)
{
    return parse_all<TransExponent>(text, [](Parser &p) { return p.exponent(); });
}

StarSeries parse_star(std::string_view text)
{
    return parse_all<StarSeries>(text, [](Parser &p) { return p.star(); });
}

CompositionWord parse_word(std::string_view text)
{
    CompositionWord w = parse_all<CompositionWord>(text, [](Parser &p) { return p.word(); });
    check_balance(w);
    return w;
}

namespace {

// key=value fields of one polycycle line, after the keyword.
std::map<std::string, std::pair<std::string, std::size_t>> line_fields(std::string_view line, std::size_t offset)
{
    std::map<std::string, std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])) != 0) {
            ++i;
        }
        if (i >= line.size()) {
            break;
        }
        std::size_t start = i;
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])) == 0) {
            ++i;
        }
        std::string_view field = line.substr(start, i - start);
        std::size_t eq = field.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw SyntaxError("expected key=value", offset + start);
        }
        std::string key(field.substr(0, eq));
        if (out.count(key) != 0) {
            throw SyntaxError("duplicate field '" + key + "'", offset + start);
        }
        out[key] = {std::string(field.substr(eq + 1)), offset + start + eq + 1};
    }
    return out;
}

Rational field_rational(const std::pair<std::string, std::size_t> &f)
{
    Parser p(f.first);
    try {
        Rational r = p.rational();
        p.finish();
        return r;
    } catch (const SyntaxError &e) {
        throw SyntaxError("malformed number '" + f.first + "'", f.second + e.position());
    }
}

} // namespace

PolycycleSpec parse_polycycle(std::string_view text)
{
    PolycycleSpec spec;
    std::optional<long> declared;
    std::optional<FlowBoxMap> pending;
    std::size_t offset = 0;
    while (offset <= text.size()) {
        std::size_t end = text.find('\n', offset);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        std::string_view line = text.substr(offset, end - offset);
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        std::size_t lead = 0;
        while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead])) != 0) {
            ++lead;
        }
        std::string_view body = line.substr(lead);
        std::size_t at = offset + lead;
        std::size_t kw_end = 0;
        while (kw_end < body.size() && std::isspace(static_cast<unsigned char>(body[kw_end])) == 0 &&
               body[kw_end] != '=') {
            ++kw_end;
        }
        std::string_view keyword = body.substr(0, kw_end);

        if (body.empty()) {
            // blank line
        } else if (!declared) {
            if (keyword != "polycycle") {
                throw SyntaxError("expected 'polycycle N'", at);
            }
            Parser p(body.substr(kw_end));
            try {
                declared = static_cast<long>(p.natural());
                p.finish();
            } catch (const SyntaxError &e) {
                throw SyntaxError("expected saddle count", at + kw_end + e.position());
            }
        } else if (keyword == "connector") {
            if (pending) {
                throw SyntaxError("two connectors without a saddle between them", at);
            }
            auto fields = line_fields(body.substr(kw_end), at + kw_end);
            FlowBoxMap f;
            for (const auto &[key, value] : fields) {
                if (key == "alpha") {
                    f.alpha = field_rational(value);
                } else if (key == "radius") {
                    f.radius = field_rational(value);
                } else if (key == "tail") {
                    std::size_t i = 0;
                    const std::string &v = value.first;
                    while (i <= v.size() && !v.empty()) {
                        std::size_t comma = v.find(',', i);
                        if (comma == std::string::npos) {
                            comma = v.size();
                        }
                        f.tail.push_back(field_rational({v.substr(i, comma - i), value.second + i}));
                        i = comma + 1;
                    }
                } else {
                    throw SyntaxError("unknown connector field '" + key + "'", value.second);
                }
            }
            if (fields.count("alpha") == 0) {
                throw SyntaxError("connector requires alpha", at);
            }
            pending = f;
        } else if (keyword == "saddle") {
            auto fields = line_fields(body.substr(kw_end), at + kw_end);
            Saddle sd;
            for (const auto &[key, value] : fields) {
                if (key == "k") {
                    Rational k = field_rational(value);
                    if (!is_integer(k) || k > 1000 || k < -1000) {
                        throw SyntaxError("k must be an integer", value.second);
                    }
                    sd.k = static_cast<int>(k.get_num().get_si());
                } else if (key == "kind") {
                    if (value.first == "exp") {
                        sd.kind = TransitKind::ExpType;
                    } else if (value.first == "log") {
                        sd.kind = TransitKind::LogType;
                    } else {
                        throw SyntaxError("kind must be exp or log", value.second);
                    }
                } else {
                    throw SyntaxError("unknown saddle field '" + key + "'", value.second);
                }
            }
            spec.connectors.push_back(pending.value_or(FlowBoxMap{}));
            pending.reset();
            spec.saddles.push_back(sd);
        } else if (keyword == "base") {
            auto fields = line_fields(body, at);
            Rational b = field_rational(fields.at("base"));
            if (!is_integer(b) || b < 0 || b > 1000) {
                throw SyntaxError("base must be a saddle index", fields.at("base").second);
            }
            spec.base = static_cast<int>(b.get_num().get_si());
        } else {
            throw SyntaxError("unknown line '" + std::string(keyword) + "'", at);
        }
        offset = end + 1;
    }
    if (!declared) {
        throw SyntaxError("empty polycycle description", 0);
    }
    if (pending) {
        throw SemanticError("connector after the last saddle");
    }
    if (static_cast<long>(spec.saddles.size()) != *declared) {
        throw SemanticError("polycycle declares " + std::to_string(*declared) + " saddles but lists " +
                            std::to_string(spec.saddles.size()));
    }
    check_polycycle(spec);
    return spec;
}

ValueKind classify(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])) != 0) {
        ++i;
    }
    std::string_view t = text.substr(i);
    auto starts = [&](std::string_view p) { return t.substr(0, p.size()) == p; };
    if (starts("polycycle")) {
        return ValueKind::Polycycle;
    }
    if (starts("star(")) {
        return ValueKind::Star;
    }
    if (starts("aff(") || starts("h(") || starts("flow(") || starts("exp") || starts("ln") || starts("id")) {
        return ValueKind::Word;
    }
    return ValueKind::Series;
}

} // namespace dulac
