#pragma once

#include "maxlf/cutoff.hpp"
#include "maxlf/field.hpp"
#include "maxlf/towers.hpp"

#include <map>
#include <optional>
#include <vector>

namespace maxlf {

// All solvers here address the rank pair (1, 2) on the exterior of the ball
// r > a: the static problem M(E, H) = (F, G) decouples into
//   rot E = G, div E = 0, tangential trace of E = 0, E perp harmonic kernel,
//   div H = F, rot H = 0, tangential trace of H = 0,
// with the decaying homogeneous branch selected at infinity.

// ---------------------------------------------------------------- exact path

// Static solve for fields whose profiles are global monomial sums (tower
// combinations). Throws on resonant exponents (log terms) and on rhs that
// violates the data class.
ExactPair solve_static_exact(const ExactPair& rhs);

ExactPair iterate_L_exact(const ExactPair& pair, int j);

// Growing static solutions: E+ (rank 1) and H+ (rank 2) on the tower index
// sigma (>= 0), m. Returned as pairs (E+, 0) resp. (0, H+).
ExactPair growing_static(char side /* 'E' or 'H' */, int sigma, int m,
                         const Rational& start = Rational(1, 2));

// E^{+,k} = L^k (E+, 0) and H^{+,k} = L^k (0, H+), k = 0..k_max.
std::vector<ExactPair> growing_iterates(char side, int sigma, int m, int k_max,
                                        const Rational& start = Rational(1, 2));

// Tower-coefficient readout of a single-mode monomial field: maps
// (theta, height) -> coefficient against the corresponding D/R tower.
std::map<std::pair<int, int>, QScalar> tower_coefficients(const ExactField& f, char type);

// zeta^{j}_{(-,1,sigma,m)}: coefficient of -R^{2,1} in E^{+,j} (odd j) resp.
// of -D^{1,1}... the height-1 minus-tower in the active slot.
QScalar zeta_height1(const ExactPair& iterate, char side);

// Dual families built from the cut-off:
//   e^{pm} = eta (pm D^{1,1}, 0),  h^{pm} = eta (0, pm R^{2,1}),
//   e^{pm,l} = M^l e^{pm},         h^{pm,l} = M^l h^{pm}.
ExactPair dual_family(char which /* 'e' or 'h' */, int pm, int sigma, int m, int ell_power,
                      const MomentCutoff& cut, const Rational& start = Rational(1, 2));

// ------------------------------------------------------------- numeric path

struct StaticOpts {
  int gl_order = 64;
  double class_tol = 1e-9;  // tolerance for data-class assertions
};

template <class R> FieldPair<R> solve_static(const FieldPair<R>& rhs, const StaticOpts& opt = {});
template <class R> FieldPair<R> iterate_L(const FieldPair<R>& pair, int j,
                                          const StaticOpts& opt = {});

// -------------------------------------------------------------- decomposition

template <class R> struct HodgeSplit {
  FieldPair<R> trivial;   // (F_r, G_d): rot-free with bc x div-free
  FieldPair<R> regular;   // (F_d, G_r) = (F, G) - trivial
  // tower coefficients recovered by pairing with the growing statics
  std::map<std::pair<int, int>, Cx<R>> phi, psi;  // key (sigma, m)
};

template <class R>
HodgeSplit<R> hodge_split(const FieldPair<R>& pair, double s, const StaticOpts& opt = {});

struct ThetaEntry {
  int k, sigma, m;
};
// Theta^{q,J}_s index set: k <= J-1, sigma < s - N/2 - k - 1, 1 <= m <= mu_sigma.
std::vector<ThetaEntry> theta_set(double s, int J);
// Theta~^q_j: 2 sigma <= k <= j.
std::vector<ThetaEntry> theta_tilde_set(int j);

struct RegReport {
  bool member = false;
  double worst = 0.0;
  std::string witness;
};

template <class R>
RegReport reg_membership(const FieldPair<R>& pair, double s, int J, const StaticOpts& opt = {});

template <class R> struct UpsilonSplit {
  FieldPair<R> regular;   // component in Reg^{q,J}
  FieldPair<R> upsilon;   // finite combination of e^{-,k+2}, h^{-,k+2}
};

template <class R>
UpsilonSplit<R> upsilon_split(const FieldPair<R>& pair, double s, int J, const MomentCutoff& cut,
                              const StaticOpts& opt = {});

// Cache of growing iterates converted to numeric fields (shared by the
// decomposition and correction machinery).
template <class R> struct GrowingCache {
  Rational start{1, 2};
  int k_max = 6;
  int sigma_max = 3;
  std::map<std::tuple<char, int, int, int>, FieldPair<R>> items;  // (side, sigma, m, k)
  std::map<std::tuple<char, int, int, int>, ExactPair> exact_items;

  const FieldPair<R>& get(char side, int sigma, int m, int k);
  const ExactPair& get_exact(char side, int sigma, int m, int k);
};

extern template struct GrowingCache<double>;
extern template struct GrowingCache<BigReal>;

}  // namespace maxlf
