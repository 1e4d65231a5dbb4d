// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line driver over the C interface.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dulac/dulac.h"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_outcome = 1;
constexpr int exit_input = 2;

struct Exit
{
    int code;
};

template <typename T, void (*Free)(T *)>
struct Deleter
{
    void operator()(T *p) const { Free(p); }
};

using Series = std::unique_ptr<dulac_series, Deleter<dulac_series, dulac_series_free>>;
using Star = std::unique_ptr<dulac_star, Deleter<dulac_star, dulac_star_free>>;
using Word = std::unique_ptr<dulac_word, Deleter<dulac_word, dulac_word_free>>;
using Polycycle = std::unique_ptr<dulac_polycycle, Deleter<dulac_polycycle, dulac_polycycle_free>>;
using Decomposition = std::unique_ptr<dulac_decomposition, Deleter<dulac_decomposition, dulac_decomposition_free>>;

// Owns a string returned by the library.
class Text
{
public:
    Text() = default;
    Text(const Text &) = delete;
    Text &operator=(const Text &) = delete;
    ~Text() { dulac_string_free(p_); }

    char **out() { return &p_; }
    std::string str() const { return p_ == nullptr ? std::string() : std::string(p_); }

private:
    char *p_ = nullptr;
};

bool input_error(dulac_status s)
{
    return s == DULAC_ERR_SYNTAX || s == DULAC_ERR_SEMANTIC || s == DULAC_ERR_INVALID_ARGUMENT ||
           s == DULAC_ERR_UNSUPPORTED;
}

// `source` is the text that was being parsed, if any.
void check(dulac_status s, const std::string &source = {})
{
    if (s == DULAC_OK) {
        return;
    }
    std::cerr << "dulac: " << dulac_status_name(s) << ": " << dulac_last_error() << "\n";
    long pos = dulac_last_error_position();
    if (pos >= 0 && !source.empty() && source.find('\n') == std::string::npos) {
        std::cerr << "  " << source << "\n  " << std::string(static_cast<std::size_t>(pos), ' ') << "^\n";
    }
    throw Exit{input_error(s) ? exit_input : exit_outcome};
}

// A file path if one exists, otherwise inline text.
std::string load(const std::string &arg, bool keep_lines = false)
{
    std::error_code ec;
    if (!std::filesystem::is_regular_file(arg, ec)) {
        return arg;
    }
    std::ifstream in(arg);
    if (!in) {
        std::cerr << "dulac: cannot read " << arg << "\n";
        throw Exit{exit_input};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    if (!keep_lines) {
        std::string joined;
        std::istringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            std::size_t hash = line.find('#');
            if (hash != std::string::npos) {
                line.erase(hash);
            }
            if (line.find_first_not_of(" \t\r") == std::string::npos) {
                continue;
            }
            joined += joined.empty() ? line : " " + line;
        }
        text = joined;
    }
    return text;
}

Series series(const std::string &arg)
{
    std::string text = load(arg);
    dulac_series *p = nullptr;
    check(dulac_series_parse(text.c_str(), &p), text);
    return Series(p);
}

Star star(const std::string &arg)
{
    std::string text = load(arg);
    dulac_star *p = nullptr;
    check(dulac_star_parse(text.c_str(), &p), text);
    return Star(p);
}

Word word(const std::string &arg)
{
    std::string text = load(arg);
    dulac_word *p = nullptr;
    check(dulac_word_parse(text.c_str(), &p), text);
    return Word(p);
}

// Flow-box expansion order: the CLI takes N > 0 and expands to e^{-N zeta}.
std::string expansion_order(int n)
{
    if (n <= 0) {
        std::cerr << "dulac: --order must be a positive integer\n";
        throw Exit{exit_input};
    }
    return std::to_string(-n);
}

Word compiled(const std::string &arg, int order)
{
    std::string text = load(arg, true);
    dulac_polycycle *p = nullptr;
    check(dulac_polycycle_parse(text.c_str(), &p));
    Polycycle poly(p);
    dulac_word *w = nullptr;
    check(dulac_polycycle_compile(poly.get(), expansion_order(order).c_str(), &w));
    return Word(w);
}

const char *opt(const std::string &s)
{
    return s.empty() ? nullptr : s.c_str();
}

void emit(const Text &t)
{
    std::string s = t.str();
    std::cout << s;
    if (s.empty() || s.back() != '\n') {
        std::cout << "\n";
    }
}

struct Options
{
    unsigned precision = 256;
    std::string grid;
    std::string epsilon;
    int order = 8;
    std::string floor;
    std::string f;
    std::string g;
    std::string value;
    std::string word;
    std::string spec;
    std::string series;
    std::string star;
    std::string alpha = "1";
    std::string beta;
    std::string tail = "1";
    std::string cutoff = "8";
    std::string c_max = "3";
    std::string coeff_floor;
    std::string level0_floor;
    std::string zeta = "4";
    bool exp = false;
};

Word target(const Options &o)
{
    if (o.word.empty() == o.spec.empty()) {
        std::cerr << "dulac: exactly one of --word and --spec is required\n";
        throw Exit{exit_input};
    }
    return o.word.empty() ? compiled(o.spec, o.order) : word(o.word);
}

int print_series(dulac_series *p)
{
    Series s(p);
    Text t;
    check(dulac_series_print(s.get(), t.out()));
    emit(t);
    return exit_ok;
}

int run_expand(const Options &o)
{
    dulac_series *dev = nullptr;
    Text affine;
    check(dulac_flowbox_expand(o.alpha.c_str(), o.tail.c_str(), expansion_order(o.order).c_str(), &dev,
                               affine.out()));
    Series s(dev);
    Text t;
    check(dulac_series_print(s.get(), t.out()));
    std::cout << "affine: " << affine.str() << "\ndeviation: " << t.str() << "\n";
    return exit_ok;
}

int run_compose(const Options &o)
{
    Series f = series(o.f);
    Series g = series(o.g);
    dulac_series *out = nullptr;
    check(dulac_logmap_compose(f.get(), g.get(), opt(o.floor), &out));
    return print_series(out);
}

int run_invert(const Options &o)
{
    Series f = series(o.f);
    dulac_series *out = nullptr;
    check(dulac_logmap_invert(f.get(), opt(o.floor), &out));
    return print_series(out);
}

int run_conjugate(const Options &o)
{
    Series f = series(o.f);
    if (o.exp) {
        dulac_star *out = nullptr;
        check(dulac_logmap_exp_conjugate(f.get(), o.c_max.c_str(), &out));
        Star s(out);
        Text t;
        check(dulac_star_print(s.get(), t.out()));
        emit(t);
        return exit_ok;
    }
    dulac_series *out = nullptr;
    check(dulac_logmap_conjugate(o.alpha.c_str(), opt(o.beta), f.get(), &out));
    return print_series(out);
}

int run_decompose(const Options &o)
{
    Word w = target(o);
    dulac_decomposition *d = nullptr;
    check(dulac_decompose(w.get(), opt(o.c_max), opt(o.coeff_floor), opt(o.level0_floor), &d));
    Decomposition dec(d);
    Text t;
    check(dulac_decomposition_print(dec.get(), t.out()));
    emit(t);
    return exit_ok;
}

int run_normal_form(const Options &o)
{
    Star s = star(o.value);
    dulac_star *out = nullptr;
    check(dulac_star_normal_form(s.get(), &out));
    Star n(out);
    Text t;
    check(dulac_star_print(n.get(), t.out()));
    emit(t);
    return exit_ok;
}

int run_check_validity(const Options &o)
{
    Star s = star(o.value);
    int valid = 0;
    Text t;
    check(dulac_star_validity(s.get(), &valid, t.out()));
    emit(t);
    return valid ? exit_ok : exit_outcome;
}

int run_order(const Options &o)
{
    int ok = 0;
    Text t;
    if (!o.value.empty()) {
        Star s = star(o.value);
        int gap = 0;
        check(dulac_star_lower_bound(s.get(), &ok, &gap, t.out()));
    } else {
        Word w = target(o);
        check(dulac_run_positive(w.get(), o.zeta.c_str(), o.precision, &ok, t.out()));
    }
    emit(t);
    return ok ? exit_ok : exit_outcome;
}

int run_counterexample(const Options &o)
{
    int gap = 0;
    Text t;
    check(dulac_run_counterexample(expansion_order(o.order).c_str(), opt(o.grid), o.precision, &gap, t.out()));
    emit(t);
    return gap ? exit_outcome : exit_ok;
}

int run_oracle_check(const Options &o)
{
    Word w = target(o);
    int pass = 0;
    Text t;
    if (!o.star.empty()) {
        Star s = star(o.star);
        check(dulac_certify_star(w.get(), s.get(), o.cutoff.c_str(), opt(o.grid), o.precision, opt(o.epsilon), &pass,
                                 t.out()));
    } else {
        Series s = series(o.series.empty() ? "0" : o.series);
        check(dulac_certify_series(w.get(), s.get(), o.cutoff.c_str(), opt(o.grid), o.precision, opt(o.epsilon),
                                   &pass, t.out()));
    }
    emit(t);
    return pass ? exit_ok : exit_outcome;
}

int run_flatness(const Options &o)
{
    Word w = target(o);
    double sigma = 0;
    double lambda = 0;
    Text t;
    check(dulac_fit_flatness(w.get(), opt(o.grid), o.precision, &sigma, &lambda, t.out()));
    emit(t);
    return exit_ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Dulac return maps of simple alternant polycycles"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string(dulac_version()));
    Options o;
    if (const char *env = std::getenv("DULAC_PRECISION")) {
        char *end = nullptr;
        unsigned long bits = std::strtoul(env, &end, 10);
        if (*env == '\0' || *end != '\0' || bits < 64 || bits > 65536) {
            std::cerr << "dulac: DULAC_PRECISION must be an integer in [64, 65536], got '" << env << "'\n";
            return exit_input;
        }
        o.precision = static_cast<unsigned>(bits);
    }
    app.add_option("--precision", o.precision, "working precision in bits (default from DULAC_PRECISION)")
        ->check(CLI::Range(64u, 65536u))
        ->capture_default_str();

    auto word_inputs = [&](CLI::App *sub) {
        auto *w = sub->add_option("--word", o.word, "composition word, inline or file");
        auto *s = sub->add_option("--spec", o.spec, "polycycle file or text");
        w->excludes(s);
        sub->add_option("--order", o.order, "flow-box expansion order N (terms to e^{-N zeta})")
            ->capture_default_str();
    };

    auto *expand = app.add_subcommand("expand", "log-chart expansion of a flow-box map alpha z + tail");
    expand->add_option("--alpha", o.alpha, "linear coefficient")->capture_default_str();
    expand->add_option("--tail", o.tail, "coefficients of z^2, z^3, ... (comma separated)")->capture_default_str();
    expand->add_option("--order", o.order, "expansion order N")->capture_default_str();

    auto *compose = app.add_subcommand("compose", "f o g for maps zeta + deviation");
    compose->add_option("f", o.f, "deviation of f")->required();
    compose->add_option("g", o.g, "deviation of g")->required();
    compose->add_option("--floor", o.floor, "truncation floor");

    auto *invert = app.add_subcommand("invert", "inverse of zeta + deviation");
    invert->add_option("f", o.f, "deviation")->required();
    invert->add_option("--floor", o.floor, "truncation floor");

    auto *conjugate = app.add_subcommand("conjugate", "conjugation by an affine map or by exp");
    conjugate->add_option("f", o.f, "deviation")->required();
    conjugate->add_option("--alpha", o.alpha, "affine map linear coefficient")->capture_default_str();
    conjugate->add_option("--beta", o.beta, "affine map offset (log-linear)");
    conjugate->add_flag("--exp", o.exp, "ln o f o exp instead of an affine conjugation");
    conjugate->add_option("--cmax", o.c_max, "level-1 truncation")->capture_default_str();

    auto *decompose = app.add_subcommand("decompose", "additive decomposition of a word");
    word_inputs(decompose);
    decompose->add_option("--cmax", o.c_max, "level-1 truncation")->capture_default_str();
    decompose->add_option("--coeff-floor", o.coeff_floor, "floor for level-1 coefficients");
    decompose->add_option("--level0-floor", o.level0_floor, "floor for the level-0 part");

    auto *normal = app.add_subcommand("normal-form", "normal form of a level-1 series");
    normal->add_option("series", o.value, "level-1 series")->required();

    auto *validity = app.add_subcommand("check-validity", "validity check of a level-1 series");
    validity->add_option("series", o.value, "level-1 series")->required();

    auto *order = app.add_subcommand("order", "lower bound of a level-1 series, or the positive pipeline of a word");
    order->add_option("series", o.value, "level-1 series");
    word_inputs(order);
    order->add_option("--zeta", o.zeta, "point of the numeric sign check")->capture_default_str();

    auto *counter = app.add_subcommand("counterexample", "full pipeline on the two-scale counterexample");
    counter->add_option("--order", o.order, "flow-box expansion order N")->capture_default_str();
    counter->add_option("--grid", o.grid, "flatness grid (comma separated)");

    auto *oracle = app.add_subcommand("oracle-check", "certify an expansion against high-precision evaluation");
    word_inputs(oracle);
    auto *ser = oracle->add_option("--series", o.series, "level-0 expansion (default 0)");
    auto *st = oracle->add_option("--star", o.star, "level-1 expansion");
    ser->excludes(st);
    oracle->add_option("--cutoff", o.cutoff, "truncation order c of the expansion")->capture_default_str();
    oracle->add_option("--grid", o.grid, "grid of zeta values (comma separated)");
    oracle->add_option("--epsilon", o.epsilon, "bound slack epsilon");

    auto *flat = app.add_subcommand("flatness", "fit of -ln|Delta - affine| by lambda e^{sigma zeta}");
    word_inputs(flat);
    flat->add_option("--grid", o.grid, "uniform grid (comma separated)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input;
    }

    const std::pair<CLI::App *, int (*)(const Options &)> verbs[] = {
        {expand, run_expand},
        {compose, run_compose},
        {invert, run_invert},
        {conjugate, run_conjugate},
        {decompose, run_decompose},
        {normal, run_normal_form},
        {validity, run_check_validity},
        {order, run_order},
        {counter, run_counterexample},
        {oracle, run_oracle_check},
        {flat, run_flatness},
    };
    try {
        for (const auto &[sub, run] : verbs) {
            if (sub->parsed()) {
                int code = run(o);
                std::cout.flush();
                return code;
            }
        }
    } catch (const Exit &e) {
        std::cout.flush();
        return e.code;
    }
    return exit_input;
}
