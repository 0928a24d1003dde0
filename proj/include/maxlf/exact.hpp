#pragma once

#include "maxlf/scalars.hpp"
#include "maxlf/sphere.hpp"

#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace maxlf {

// Exact radial term: coeff * r^alpha * ln(r)^lnpow, coefficients in the mode's
// quadratic field Q(sqrt(ell(ell+1))) + i Q(...).
struct ExactTerm {
  QScalar coeff;
  int alpha = 0;
  int lnpow = 0;
};

using ExactPoly = std::vector<ExactTerm>;

ExactPoly poly_canon(ExactPoly p);
ExactPoly poly_add(const ExactPoly& x, const ExactPoly& y);
ExactPoly poly_scale(const ExactPoly& x, const QScalar& c);
ExactPoly poly_mul(const ExactPoly& x, const ExactPoly& y);
ExactPoly poly_ddr(const ExactPoly& x);
ExactPoly poly_shift(const ExactPoly& x, int dalpha);  // multiply by r^dalpha
bool poly_is_zero(const ExactPoly& x);
bool poly_log_free(const ExactPoly& x);
int poly_max_alpha(const ExactPoly& x);

// Piecewise exact profile on [breaks[0], inf). Piece i lives on
// [breaks[i], breaks[i+1]); the last piece is the tail on [breaks.back(), inf).
struct ExactProfile {
  std::vector<Rational> breaks;
  std::vector<ExactPoly> pieces;

  static ExactProfile zero(const Rational& start) { return {{start}, {{}}}; }
  static ExactProfile global(const Rational& start, ExactPoly p) {
    return {{start}, {poly_canon(std::move(p))}};
  }
  bool is_zero() const;
  bool log_free() const;
  void refine(const std::vector<Rational>& cuts);  // insert breakpoints
};

ExactProfile profile_add(const ExactProfile& x, const ExactProfile& y);
ExactProfile profile_scale(const ExactProfile& x, const QScalar& c);
ExactProfile profile_mul(const ExactProfile& x, const ExactProfile& y);
ExactProfile profile_ddr(const ExactProfile& x);
ExactProfile profile_shift(const ExactProfile& x, int dalpha);

// Merge breakpoint lists (same start required).
std::vector<Rational> merge_breaks(const std::vector<Rational>& a,
                                   const std::vector<Rational>& b);

// ------------------------------------------------------------------- fields

struct ExactKey {
  int ell = 0, m = 1, chan = 0;
  bool operator<(const ExactKey& o) const {
    return std::tie(ell, m, chan) < std::tie(o.ell, o.m, o.chan);
  }
};

struct ExactField {
  int rank = 0;
  Rational start{1, 2};  // inner radius a
  std::map<ExactKey, ExactProfile> parts;

  void set(int ell, int m, int chan, ExactProfile p);
  const ExactProfile* find(int ell, int m, int chan) const;
  void prune();  // drop zero parts
  bool is_zero() const;
  bool log_free() const;
};

ExactField field_add(const ExactField& x, const ExactField& y);
ExactField field_scale(const ExactField& x, const QScalar& c);
ExactField field_sub(const ExactField& x, const ExactField& y);

// Exterior derivative / coderivative via the channel stencils.
ExactField field_rot(const ExactField& x);
ExactField field_div(const ExactField& x);
ExactField field_laplace(const ExactField& x);

// Multiply all channels by a radial piecewise polynomial (e.g. a cut-off).
ExactField field_radial_mul(const ExactField& x, const ExactProfile& eta);

struct ExactPair {
  ExactField E;  // rank q
  ExactField H;  // rank q+1
  bool is_zero() const { return E.is_zero() && H.is_zero(); }
};

ExactPair pair_add(const ExactPair& x, const ExactPair& y);
ExactPair pair_sub(const ExactPair& x, const ExactPair& y);
ExactPair pair_scale(const ExactPair& x, const QScalar& c);
ExactPair apply_M(const ExactPair& x);  // (div H, rot E)

// -------------------------------------------------------------- exact pairing

// Integral of r^p over [x, y] (y may be infinite via y_inf) as a rational
// plus a multiple of ln 2; requires dyadic endpoints when p = -1.
LogValue power_integral(int p, const Rational& x, const Rational& y, bool y_inf);

// L2(0-weight) pairing <u, v> integrated from the profile start outward,
// conjugate-linear in v. Requires log-free profiles and integrable tails.
LogValue exact_inner(const ExactProfile& u, const ExactProfile& v);
LogValue exact_field_inner(const ExactField& u, const ExactField& v);
LogValue exact_pair_inner(const ExactPair& u, const ExactPair& v);

// Numeric evaluation helpers.
template <class R> Cx<R> poly_eval(const ExactPoly& p, const R& r) {
  Cx<R> acc{};
  R lr = log(r);
  for (const auto& t : p) {
    R mag = pow(r, R(t.alpha));
    for (int k = 0; k < t.lnpow; ++k) mag *= lr;
    acc += qscalar_value<R>(t.coeff) * Cx<R>(mag);
  }
  return acc;
}

template <class R> Cx<R> profile_eval(const ExactProfile& p, const R& r) {
  int piece = 0;
  for (size_t i = 1; i < p.breaks.size(); ++i)
    if (r >= ScalarTraits<R>::from_rational(p.breaks[i])) piece = int(i);
  return poly_eval<R>(p.pieces[piece], r);
}

// Numeric value of an exact inner product evaluated in R-precision; allows
// logs (primitive evaluation), still requires integrable tails.
template <class R> Cx<R> inner_value(const ExactProfile& u, const ExactProfile& v);
template <class R> Cx<R> pair_inner_value(const ExactPair& u, const ExactPair& v);

extern template Cx<double> inner_value<double>(const ExactProfile&, const ExactProfile&);
extern template Cx<BigReal> inner_value<BigReal>(const ExactProfile&, const ExactProfile&);
extern template Cx<double> pair_inner_value<double>(const ExactPair&, const ExactPair&);
extern template Cx<BigReal> pair_inner_value<BigReal>(const ExactPair&, const ExactPair&);

}  // namespace maxlf
