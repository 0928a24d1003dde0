#pragma once

#include "maxlf/exact.hpp"
#include "maxlf/scalars.hpp"
#include "maxlf/special.hpp"
#include "maxlf/sphere.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace maxlf {

// Radial atoms with closed-form calculus:
//   Mono:  c * r^alpha * ln(r)^lnpow
//   SphH1: c * r^alpha * h1_l(omega r)   (outgoing)
//   SphJ:  c * r^alpha * j_l(omega r)    (regular at 0)
enum class AtomKind { Mono, SphH1, SphJ };

template <class R> struct Atom {
  AtomKind kind = AtomKind::Mono;
  Cx<R> c{};
  int alpha = 0;
  int lnpow = 0;            // Mono only
  int l = 0;                // spherical order, >= -1
  Cx<R> omega{};

  static Atom mono(Cx<R> coef, int a, int lp = 0) {
    Atom t; t.kind = AtomKind::Mono; t.c = coef; t.alpha = a; t.lnpow = lp; return t;
  }
  static Atom hankel(Cx<R> coef, int order, Cx<R> om, int a = 0) {
    Atom t; t.kind = AtomKind::SphH1; t.c = coef; t.l = order; t.omega = om; t.alpha = a; return t;
  }
  static Atom besselj(Cx<R> coef, int order, Cx<R> om, int a = 0) {
    Atom t; t.kind = AtomKind::SphJ; t.c = coef; t.l = order; t.omega = om; t.alpha = a; return t;
  }
};

template <class R> Cx<R> sph_h1_ext(int l, const Cx<R>& z);  // allows l = -1
template <class R> Cx<R> sph_j_ext(int l, const Cx<R>& z);

template <class R> Cx<R> atom_eval(const Atom<R>& t, const R& r) {
  Cx<R> v = t.c * Cx<R>(pow(r, R(t.alpha)));
  if (t.kind == AtomKind::Mono) {
    if (t.lnpow > 0) {
      R lr = log(r), m(1);
      for (int i = 0; i < t.lnpow; ++i) m *= lr;
      v *= Cx<R>(m);
    }
    return v;
  }
  Cx<R> z = t.omega * Cx<R>(r);
  return v * (t.kind == AtomKind::SphH1 ? sph_h1_ext<R>(t.l, z) : sph_j_ext<R>(t.l, z));
}

// d/dr of an atom as a list of atoms.
template <class R> std::vector<Atom<R>> atom_ddr(const Atom<R>& t) {
  std::vector<Atom<R>> out;
  if (t.kind == AtomKind::Mono) {
    if (t.alpha != 0) out.push_back(Atom<R>::mono(t.c * Cx<R>(R(t.alpha)), t.alpha - 1, t.lnpow));
    if (t.lnpow > 0) out.push_back(Atom<R>::mono(t.c * Cx<R>(R(t.lnpow)), t.alpha - 1, t.lnpow - 1));
    return out;
  }
  // d/dr [c r^a f_l(om r)] with f_l' (z) = f_{l-1}(z) - (l+1) f_l(z) / z
  Atom<R> lower = t;
  lower.l = t.l - 1;
  lower.c = t.c * t.omega;
  lower.alpha = t.alpha;
  out.push_back(lower);
  Atom<R> same = t;
  same.c = t.c * Cx<R>(R(t.alpha - (t.l + 1)));
  same.alpha = t.alpha - 1;
  if (t.alpha != t.l + 1) out.push_back(same);
  return out;
}

template <class R> struct NumPiece {
  std::vector<Atom<R>> atoms;
  std::vector<Cx<R>> cheb;  // coefficients on the piece, may be empty
};

// Piece i lives on [breaks[i], breaks[i+1]); the last piece is the tail on
// [breaks.back(), inf) and must not carry a Chebyshev part.
template <class R> struct NumProfile {
  std::vector<R> breaks;
  std::vector<NumPiece<R>> pieces;

  static NumProfile zero(const R& start) { return {{start}, {NumPiece<R>{}}}; }
  bool tail_empty(double tol = 0.0) const;
  void refine(const std::vector<R>& cuts);
};

template <class R> Cx<R> profile_value(const NumProfile<R>& p, const R& r);
template <class R> NumProfile<R> profile_sum(const NumProfile<R>& x, const NumProfile<R>& y);
template <class R> NumProfile<R> profile_scaled(const NumProfile<R>& x, const Cx<R>& c);
template <class R> NumProfile<R> profile_deriv(const NumProfile<R>& x);
template <class R> NumProfile<R> profile_rshift(const NumProfile<R>& x, int dalpha);
template <class R> std::vector<R> merge_breaks_num(const std::vector<R>& a, const std::vector<R>& b);

// Exact -> numeric conversion.
template <class R> NumProfile<R> to_numeric(const ExactProfile& p);

// ------------------------------------------------------------------- fields

struct Geometry {
  double a = 0.5;       // obstacle radius
  double r_max = 64.0;  // quadrature horizon for reports
};

template <class R> struct ModeField {
  int rank = 0;
  R start = R(0.5);
  std::map<ExactKey, NumProfile<R>> parts;

  void set(int ell, int m, int chan, NumProfile<R> p) {
    parts[ExactKey{ell, m, chan}] = std::move(p);
  }
  const NumProfile<R>* find(int ell, int m, int chan) const {
    auto it = parts.find(ExactKey{ell, m, chan});
    return it == parts.end() ? nullptr : &it->second;
  }
};

template <class R> struct FieldPair {
  ModeField<R> E, H;
};

template <class R> ModeField<R> to_numeric_field(const ExactField& f);
template <class R> FieldPair<R> to_numeric_pair(const ExactPair& p);

template <class R> ModeField<R> field_sum(const ModeField<R>& x, const ModeField<R>& y);
template <class R> ModeField<R> field_scaled(const ModeField<R>& x, const Cx<R>& c);
template <class R> FieldPair<R> pair_sum(const FieldPair<R>& x, const FieldPair<R>& y);
template <class R> FieldPair<R> pair_scaled(const FieldPair<R>& x, const Cx<R>& c);

// Stencil application (spectral differentiation on Chebyshev parts).
template <class R> ModeField<R> rot(const ModeField<R>& x);
template <class R> ModeField<R> div(const ModeField<R>& x);
template <class R> FieldPair<R> apply_M(const FieldPair<R>& x);

// -------------------------------------------------------------- integration

struct NormOptions {
  int gl_order = 48;
  double tail_rel_eps = 1e-30;
  int binom_terms = 10;
};

// L2 norm with weight rho^{2s} = (1+r^2)^s; checks tail integrability and
// throws std::domain_error naming the offending atom otherwise.
template <class R> R weighted_norm(const ModeField<R>& f, double s, const NormOptions& opt = {});
template <class R> R pair_norm(const FieldPair<R>& f, double s, const NormOptions& opt = {});

// Plain L2 pairing (weight s), conjugate-linear in the second slot.
template <class R> Cx<R> field_inner(const ModeField<R>& u, const ModeField<R>& v, double s = 0.0,
                                     const NormOptions& opt = {});
template <class R> Cx<R> pair_inner_product(const FieldPair<R>& u, const FieldPair<R>& v,
                                            double s = 0.0, const NormOptions& opt = {});

// Norm over [start, r_cap] only (local norms for development checks).
template <class R> R local_norm(const ModeField<R>& f, double r_cap, const NormOptions& opt = {});
template <class R> R local_pair_norm(const FieldPair<R>& f, double r_cap, const NormOptions& opt = {});

// Relative residual max over sample grid of |field| vs scale.
template <class R> R sample_max(const ModeField<R>& f, const std::vector<R>& rs);

// ------------------------------------------------------------------- JSON

std::string field_to_json(const ModeField<double>& f);
ModeField<double> field_from_json(const std::string& text);
std::string pair_to_json(const FieldPair<double>& p);
FieldPair<double> pair_from_json(const std::string& text);

}  // namespace maxlf
