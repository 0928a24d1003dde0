#pragma once

#include "maxlf/scalars.hpp"
#include "maxlf/special.hpp"

#include <cassert>
#include <string>
#include <vector>

namespace maxlf {

constexpr int kDimN = 3;  // ambient dimension

enum class Family { T, S };

// Angular harmonic address in the concrete basis: sigma is the scalar
// spherical-harmonic degree, m = 1..mode_count counts within the eigenspace.
struct ModeIndex {
  int sigma = 0;
  int m = 1;
  Family family = Family::T;
};

// Dimension of the (q, sigma, family) eigenspace of the concrete basis of
// sphere eigenforms on S^2 built from real scalar harmonics.
int mode_count(int q, int sigma, Family family);

// Coupling constant between the two tangential families under rot/div,
// omega^q_sigma with (omega^q_sigma)^2 = (q+1+sigma)(N-1-q+sigma).
double eigen_constant(int q, int sigma);

// ------------------------------------------------------------------ channels

// Radial channels of a q-form per scalar harmonic mode. Ranks 0 and 3 have a
// single scalar channel; ranks 1 and 2 have radial (P), spheroidal (S) and
// toroidal (T) proxy channels (S, T only for ell >= 1).
enum Chan : int { CH_P = 0, CH_S = 1, CH_T = 2, CH_SC = 0 };

inline int channel_count(int rank, int ell) {
  if (rank == 0 || rank == 3) return 1;
  return ell == 0 ? 1 : 3;
}

inline const char* channel_name(int rank, int chan) {
  if (rank == 0 || rank == 3) return "scalar";
  switch (chan) {
    case CH_P: return "P";
    case CH_S: return "S";
    case CH_T: return "T";
  }
  return "?";
}

// Channels whose value must vanish at r = a under the tangential trace.
std::vector<int> trace_channels(int rank, int ell);

// One term of a first-order radial stencil:
//   out[to] += (rat + root*sqrt(w)) * r^{dr-1} * (d/dr)^{dr} in[from]
// i.e. dr = 1 contributes coef * f', dr = 0 contributes coef * f / r.
struct StencilTerm {
  int to = 0, from = 0, dr = 0;
  Rational rat{0}, root{0};  // coefficient rat + root*sqrt(ell(ell+1))
};

// Exterior derivative (rot) acting on rank -> rank+1, per mode of degree ell.
std::vector<StencilTerm> rot_stencil(int rank, int ell);
// Coderivative (div) acting on rank -> rank-1.
std::vector<StencilTerm> div_stencil(int rank, int ell);

// ------------------------------------------------------- angular quadrature

// An angular basis function of one of the concrete channel shapes evaluated
// on the sphere: scalar Y, tangential spheroidal/toroidal unit fields, or the
// Hodge proxies (which reduce to the same scalars).
struct AngularFn {
  int ell, m;
  int kind;  // 0 scalar, 1 spheroidal vector, 2 toroidal vector
};

// L2(S^2) pairing by Gauss-Legendre x trapezoid quadrature, exact for the
// polynomial degrees involved; conjugate-linear slot is trivial here since
// the basis is real.
double angular_inner_product(const AngularFn& u, const AngularFn& v, int n_theta = 0,
                             int n_phi = 0);

}  // namespace maxlf
