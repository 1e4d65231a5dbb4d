// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#include "dulac/dulac.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dulac/counterexample.hpp"
#include "dulac/level1.hpp"
#include "dulac/numeric.hpp"
#include "dulac/text.hpp"

struct dulac_series
{
    dulac::GenExpSeries value;
};
struct dulac_star
{
    dulac::StarSeries value;
};
struct dulac_word
{
    dulac::CompositionWord value;
};
struct dulac_polycycle
{
    dulac::PolycycleSpec value;
};
struct dulac_decomposition
{
    dulac::Decomposition value;
};

namespace {

thread_local std::string last_error;
thread_local long last_position = -1;

dulac_status fail(dulac_status status, const char *message, long position = -1)
{
    last_error = message;
    last_position = position;
    return status;
}

template <typename F>
dulac_status guarded(F &&body)
{
    try {
        body();
        last_error.clear();
        last_position = -1;
        return DULAC_OK;
    } catch (const dulac::SyntaxError &e) {
        return fail(DULAC_ERR_SYNTAX, e.what(), static_cast<long>(e.position()));
    } catch (const dulac::SemanticError &e) {
        return fail(DULAC_ERR_SEMANTIC, e.what());
    } catch (const dulac::PrecisionError &e) {
        return fail(DULAC_ERR_PRECISION, e.what());
    } catch (const dulac::UnsupportedError &e) {
        return fail(DULAC_ERR_UNSUPPORTED, e.what());
    } catch (const std::domain_error &e) {
        return fail(DULAC_ERR_DOMAIN, e.what());
    } catch (const std::range_error &e) {
        return fail(DULAC_ERR_RANGE, e.what());
    } catch (const std::out_of_range &e) {
        return fail(DULAC_ERR_RANGE, e.what());
    } catch (const std::invalid_argument &e) {
        return fail(DULAC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::exception &e) {
        return fail(DULAC_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DULAC_ERR_INTERNAL, "unknown error");
    }
}

template <typename T>
const T &need(const T *p, const char *what)
{
    if (p == nullptr) {
        throw std::invalid_argument(std::string(what) + " must not be null");
    }
    return *p;
}

void need_out(const void *p, const char *what)
{
    if (p == nullptr) {
        throw std::invalid_argument(std::string(what) + " must not be null");
    }
}

std::string_view text_arg(const char *text)
{
    if (text == nullptr) {
        throw std::invalid_argument("text must not be null");
    }
    return text;
}

char *copy_string(const std::string &s)
{
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

dulac::Rational rational_arg(const char *text, const char *what)
{
    need(text, what);
    try {
        return dulac::parse_rational(text);
    } catch (const std::invalid_argument &) {
        throw std::invalid_argument(std::string(what) + ": not a rational: '" + text + "'");
    }
}

std::optional<dulac::Rational> optional_rational(const char *text, const char *what)
{
    if (text == nullptr) {
        return std::nullopt;
    }
    return rational_arg(text, what);
}

std::vector<dulac::Rational> list_arg(const char *text, const char *what)
{
    std::vector<dulac::Rational> out;
    std::string s(text == nullptr ? "" : text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t a = item.find_first_not_of(" \t");
        std::size_t b = item.find_last_not_of(" \t");
        if (a == std::string::npos) {
            throw std::invalid_argument(std::string(what) + ": empty list entry");
        }
        out.push_back(rational_arg(item.substr(a, b - a + 1).c_str(), what));
    }
    return out;
}

dulac::EvalConfig config(const char *grid, unsigned bits, const char *epsilon, std::vector<dulac::Rational> fallback)
{
    dulac::EvalConfig cfg;
    if (bits != 0) {
        if (bits < 64 || bits > 65536) {
            throw std::invalid_argument("precision must lie in [64, 65536] bits");
        }
        cfg.bits = static_cast<mpfr_prec_t>(bits);
        cfg.max_bits = std::max<mpfr_prec_t>(cfg.max_bits, 2 * cfg.bits);
    }
    cfg.grid = grid == nullptr ? std::move(fallback) : list_arg(grid, "grid");
    if (epsilon != nullptr) {
        cfg.epsilon = rational_arg(epsilon, "epsilon");
    }
    return cfg;
}

mpfr_prec_t bits_arg(unsigned bits)
{
    if (bits == 0) {
        return 256;
    }
    if (bits < 64 || bits > 65536) {
        throw std::invalid_argument("precision must lie in [64, 65536] bits");
    }
    return static_cast<mpfr_prec_t>(bits);
}

// zeta in {2, 5/2, ..., 5}
std::vector<dulac::Rational> flatness_grid()
{
    std::vector<dulac::Rational> g;
    for (long k = 4; k <= 10; ++k) {
        g.push_back(dulac::make_rational(k, 2));
    }
    return g;
}

template <typename Handle, typename Value>
void emit(Handle **out, Value v)
{
    *out = new Handle{std::move(v)};
}

} // namespace

extern "C" {

const char *dulac_version(void)
{
    return "1.0.0";
}

const char *dulac_status_name(dulac_status status)
{
    switch (status) {
    case DULAC_OK:
        return "ok";
    case DULAC_ERR_SYNTAX:
        return "syntax error";
    case DULAC_ERR_SEMANTIC:
        return "semantic error";
    case DULAC_ERR_DOMAIN:
        return "domain error";
    case DULAC_ERR_PRECISION:
        return "precision error";
    case DULAC_ERR_RANGE:
        return "range error";
    case DULAC_ERR_UNSUPPORTED:
        return "unsupported";
    case DULAC_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case DULAC_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *dulac_last_error(void)
{
    return last_error.c_str();
}

long dulac_last_error_position(void)
{
    return last_position;
}

void dulac_string_free(char *s)
{
    std::free(s);
}

dulac_status dulac_series_parse(const char *text, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::parse_series(text_arg(text)));
    });
}

dulac_status dulac_series_print(const dulac_series *s, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        *out = copy_string(dulac::print(need(s, "series").value));
    });
}

void dulac_series_free(dulac_series *s)
{
    delete s;
}

dulac_status dulac_series_add(const dulac_series *a, const dulac_series *b, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, need(a, "a").value + need(b, "b").value);
    });
}

dulac_status dulac_series_mul(const dulac_series *a, const dulac_series *b, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, need(a, "a").value * need(b, "b").value);
    });
}

dulac_status dulac_series_eval(const dulac_series *s, const char *zeta, unsigned bits, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::Real v = dulac::eval_series(need(s, "series").value, rational_arg(zeta, "zeta"), bits_arg(bits));
        *out = copy_string(dulac::format_real(v));
    });
}

dulac_status dulac_flowbox_expand(const char *alpha, const char *tail, const char *order, dulac_series **deviation,
                                  char **affine)
{
    return guarded([&] {
        need_out(deviation, "deviation");
        need_out(affine, "affine");
        dulac::FlowBoxMap f;
        f.alpha = rational_arg(alpha, "alpha");
        f.tail = list_arg(tail, "tail");
        if (f.alpha <= 0) {
            throw dulac::SemanticError("alpha must be positive");
        }
        dulac::FlowBoxLog log = dulac::flowbox_to_log(f, rational_arg(order, "order"));
        std::string aff = dulac::print(log.affine);
        emit(deviation, std::move(log.deviation));
        *affine = copy_string(aff);
    });
}

dulac_status dulac_logmap_compose(const dulac_series *f, const dulac_series *g, const char *floor, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::LogMap h = dulac::compose_h(dulac::LogMap(need(f, "f").value), dulac::LogMap(need(g, "g").value),
                                           optional_rational(floor, "floor"));
        emit(out, std::move(h.deviation));
    });
}

dulac_status dulac_logmap_invert(const dulac_series *f, const char *floor, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::LogMap h = dulac::invert_h(dulac::LogMap(need(f, "f").value), optional_rational(floor, "floor"));
        emit(out, std::move(h.deviation));
    });
}

dulac_status dulac_logmap_conjugate(const char *alpha, const char *beta, const dulac_series *f, dulac_series **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::AffineMap a{rational_arg(alpha, "alpha"),
                           beta == nullptr ? dulac::LogLinear{} : dulac::parse_log_linear(beta)};
        if (a.alpha <= 0) {
            throw dulac::SemanticError("alpha must be positive");
        }
        dulac::LogMap h = dulac::conj_affine(a, dulac::LogMap(need(f, "f").value));
        emit(out, std::move(h.deviation));
    });
}

dulac_status dulac_logmap_exp_conjugate(const dulac_series *f, const char *c_max, dulac_star **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::a_conjugate(dulac::LogMap(need(f, "f").value), rational_arg(c_max, "c_max")));
    });
}

dulac_status dulac_star_parse(const char *text, dulac_star **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::parse_star(text_arg(text)));
    });
}

dulac_status dulac_star_print(const dulac_star *s, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        *out = copy_string(dulac::print(need(s, "star").value));
    });
}

void dulac_star_free(dulac_star *s)
{
    delete s;
}

dulac_status dulac_star_normal_form(const dulac_star *s, dulac_star **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::normal_form(need(s, "star").value));
    });
}

dulac_status dulac_star_validity(const dulac_star *s, int *valid, char **report)
{
    return guarded([&] {
        need_out(valid, "valid");
        need_out(report, "report");
        dulac::ValidityReport r = dulac::validity_check(dulac::normal_form(need(s, "star").value));
        *report = copy_string(dulac::to_string(r));
        *valid = r.valid ? 1 : 0;
    });
}

dulac_status dulac_star_lower_bound(const dulac_star *s, int *certified, int *gap, char **report)
{
    return guarded([&] {
        need_out(certified, "certified");
        need_out(gap, "gap");
        need_out(report, "report");
        dulac::LowerBoundReport r = dulac::ordering_lower_bound(need(s, "star").value);
        *report = copy_string(dulac::to_string(r));
        *certified = r.status == dulac::BoundStatus::Certified ? 1 : 0;
        *gap = r.status == dulac::BoundStatus::GapDetected ? 1 : 0;
    });
}

dulac_status dulac_star_eval(const dulac_star *s, const char *zeta, unsigned bits, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::Real v = dulac::eval_series(need(s, "star").value, rational_arg(zeta, "zeta"), bits_arg(bits));
        *out = copy_string(dulac::format_real(v));
    });
}

dulac_status dulac_word_parse(const char *text, dulac_word **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::parse_word(text_arg(text)));
    });
}

dulac_status dulac_word_print(const dulac_word *w, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        *out = copy_string(dulac::print(need(w, "word").value));
    });
}

void dulac_word_free(dulac_word *w)
{
    delete w;
}

dulac_status dulac_polycycle_parse(const char *text, dulac_polycycle **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::parse_polycycle(text_arg(text)));
    });
}

dulac_status dulac_polycycle_print(const dulac_polycycle *p, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        *out = copy_string(dulac::print(need(p, "polycycle").value));
    });
}

void dulac_polycycle_free(dulac_polycycle *p)
{
    delete p;
}

dulac_status dulac_polycycle_compile(const dulac_polycycle *p, const char *order, dulac_word **out)
{
    return guarded([&] {
        need_out(out, "out");
        emit(out, dulac::compile_polycycle(need(p, "polycycle").value, rational_arg(order, "order")));
    });
}

dulac_status dulac_decompose(const dulac_word *w, const char *c_max, const char *coeff_floor,
                             const char *level0_floor, dulac_decomposition **out)
{
    return guarded([&] {
        need_out(out, "out");
        dulac::DecomposeOrder order;
        if (c_max != nullptr) {
            order.c_max = rational_arg(c_max, "c_max");
        }
        if (coeff_floor != nullptr) {
            order.coeff_floor = rational_arg(coeff_floor, "coeff_floor");
        }
        if (level0_floor != nullptr) {
            order.level0_floor = rational_arg(level0_floor, "level0_floor");
        }
        emit(out, dulac::additive_decompose(need(w, "word").value, order));
    });
}

dulac_status dulac_decomposition_print(const dulac_decomposition *d, char **out)
{
    return guarded([&] {
        need_out(out, "out");
        *out = copy_string(dulac::print(need(d, "decomposition").value));
    });
}

void dulac_decomposition_free(dulac_decomposition *d)
{
    delete d;
}

size_t dulac_decomposition_level1_count(const dulac_decomposition *d)
{
    return d == nullptr ? 0 : d->value.level1.size();
}

dulac_status dulac_decomposition_level1(const dulac_decomposition *d, size_t i, char **scale, int *grading)
{
    return guarded([&] {
        need_out(scale, "scale");
        need_out(grading, "grading");
        const auto &bodies = need(d, "decomposition").value.level1;
        if (i >= bodies.size()) {
            throw std::out_of_range("level-1 index out of range");
        }
        *scale = copy_string(dulac::to_string(bodies[i].scale));
        *grading = bodies[i].grading;
    });
}

dulac_status dulac_decomposition_leading_term(const dulac_decomposition *d, int *sign, char **report)
{
    return guarded([&] {
        need_out(sign, "sign");
        need_out(report, "report");
        dulac::LeadingTermReport r = dulac::scale1_leading_term(need(d, "decomposition").value);
        *report = copy_string(dulac::to_string(r));
        *sign = r.sign;
    });
}

dulac_status dulac_word_eval(const dulac_word *w, const char *zeta, unsigned bits, char **value, char **deviation)
{
    return guarded([&] {
        need_out(value, "value");
        need_out(deviation, "deviation");
        dulac::EvalConfig cfg = config(nullptr, bits, nullptr, {});
        dulac::WordValue v = dulac::eval_exact(need(w, "word").value, rational_arg(zeta, "zeta"), cfg);
        std::string dev = dulac::format_real(v.deviation);
        *value = copy_string(dulac::format_real(v.value));
        *deviation = copy_string(dev);
    });
}

dulac_status dulac_certify_series(const dulac_word *w, const dulac_series *s, const char *cutoff, const char *grid,
                                  unsigned bits, const char *epsilon, int *pass, char **report)
{
    return guarded([&] {
        need_out(pass, "pass");
        need_out(report, "report");
        dulac::EvalConfig cfg = config(grid, bits, epsilon, dulac::level0_grid());
        dulac::CertReport r = dulac::certify_asymptotics(need(w, "word").value, need(s, "series").value,
                                                         rational_arg(cutoff, "cutoff"), cfg);
        *report = copy_string(dulac::to_string(r));
        *pass = r.pass ? 1 : 0;
    });
}

dulac_status dulac_certify_star(const dulac_word *w, const dulac_star *s, const char *cutoff, const char *grid,
                                unsigned bits, const char *epsilon, int *pass, char **report)
{
    return guarded([&] {
        need_out(pass, "pass");
        need_out(report, "report");
        dulac::EvalConfig cfg = config(grid, bits, epsilon, dulac::level1_grid());
        dulac::CertReport r = dulac::certify_asymptotics(need(w, "word").value, need(s, "star").value,
                                                         rational_arg(cutoff, "cutoff"), cfg);
        *report = copy_string(dulac::to_string(r));
        *pass = r.pass ? 1 : 0;
    });
}

dulac_status dulac_fit_flatness(const dulac_word *w, const char *grid, unsigned bits, double *sigma, double *lambda,
                                char **report)
{
    return guarded([&] {
        need_out(sigma, "sigma");
        need_out(lambda, "lambda");
        need_out(report, "report");
        dulac::EvalConfig cfg = config(grid, bits, nullptr, flatness_grid());
        dulac::FlatnessFit fit = dulac::fit_flatness(need(w, "word").value, cfg);
        *report = copy_string(dulac::to_string(fit));
        *sigma = fit.sigma;
        *lambda = fit.lambda;
    });
}

dulac_status dulac_run_counterexample(const char *order, const char *grid, unsigned bits, int *outcome, char **report)
{
    return guarded([&] {
        need_out(outcome, "outcome");
        need_out(report, "report");
        dulac::CounterexampleOptions opt;
        if (order != nullptr) {
            opt.order = rational_arg(order, "order");
        }
        dulac::PipelineReport r = dulac::run_counterexample(opt, config(grid, bits, nullptr, flatness_grid()));
        *report = copy_string(r.text);
        *outcome = r.outcome ? 1 : 0;
    });
}

dulac_status dulac_run_positive(const dulac_word *w, const char *zeta, unsigned bits, int *outcome, char **report)
{
    return guarded([&] {
        need_out(outcome, "outcome");
        need_out(report, "report");
        dulac::PipelineReport r =
            dulac::run_positive(need(w, "word").value, {}, rational_arg(zeta, "zeta"), bits_arg(bits));
        *report = copy_string(r.text);
        *outcome = r.outcome ? 1 : 0;
    });
}

} // extern "C"
