// Copyright 2026 The Dulac Engine Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef DULAC_NUMERIC_HPP
#define DULAC_NUMERIC_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dulac/group.hpp"
#include "dulac/logchart.hpp"

namespace dulac {

class PrecisionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct EvalConfig
{
    mpfr_prec_t bits = 256;
    mpfr_prec_t max_bits = 4096;
    std::vector<Rational> grid;
    Rational epsilon{1, 2};
};

// zeta in {3, 5, ..., 39}
std::vector<Rational> level0_grid();
// zeta in {3/2, 2, ..., 6}
std::vector<Rational> level1_grid();

// Delta(zeta) = affine(zeta) + deviation, where affine is the affine map the
// word reduces to when every h-map is dropped. The deviation is tracked
// separately, so it keeps full relative precision however small it is.
struct WordValue
{
    Real value;
    Real deviation;
    AffineMap affine;
    mpfr_prec_t bits = 0;
};

// Single evaluation at the working precision of `zeta`. Flow-box h-maps are
// evaluated through their z-chart closed form. Throws std::domain_error when
// an intermediate value leaves the domain of ln.
WordValue eval_word(const CompositionWord &w, const Real &zeta);

// eval_word at `bits` and 2*bits; the deviations must agree to bits-8 bits.
// On disagreement the precision doubles, up to cfg.max_bits, then
// PrecisionError is thrown.
WordValue eval_exact(const CompositionWord &w, const Rational &zeta, const EvalConfig &cfg = {});

Real eval_series(const GenExpSeries &s, const Rational &zeta, mpfr_prec_t bits);
Real eval_series(const StarSeries &s, const Rational &zeta, mpfr_prec_t bits);
// Delta(zeta) - affine(zeta) for a decomposition.
Real eval_deviation(const Decomposition &d, const Rational &zeta, mpfr_prec_t bits);

struct CertPoint
{
    Rational zeta;
    Real difference; // |word deviation - series|
    Real bound;
    double margin = 0; // ln(bound) - ln(difference); +inf when exact
    bool ok = false;
};

struct CertReport
{
    std::vector<CertPoint> points;
    bool pass = true;
    double min_margin = 0;
    std::string bound_text;
};

// Level 0: |deviation - s| <= e^{-(cutoff + eps) zeta}.
CertReport certify_asymptotics(const CompositionWord &w, const GenExpSeries &s, const Rational &cutoff,
                               const EvalConfig &cfg);
// Level 1 at ambient scale sigma: |deviation - s| <= e^{-(cutoff + eps) e^{sigma zeta}}.
CertReport certify_asymptotics(const CompositionWord &w, const StarSeries &s, const Rational &cutoff,
                               const EvalConfig &cfg);

struct FlatnessFit
{
    double sigma = 0;
    double lambda = 0;
    std::vector<std::pair<Rational, double>> samples; // (zeta, -ln|deviation|)
};

// Fits -ln|deviation| = lambda e^{sigma zeta} + (terms linear in zeta) from
// second differences over the upper half of a uniform grid.
FlatnessFit fit_flatness(const CompositionWord &w, const EvalConfig &cfg);

// E(x) = e^{-1/x}, f(x) = x + x^2: returns (E^{-1}(f(E(x))), x / (1 - x ln(1 + E(x)))).
std::pair<Real, Real> e_conjugation_sides(const Rational &x, mpfr_prec_t bits);

std::string to_string(const CertReport &r);
std::string to_string(const FlatnessFit &f);
std::string format_real(const Real &x, int digits = 20);

} // namespace dulac

#endif
