#pragma once

#include "maxlf/exact.hpp"
#include "maxlf/field.hpp"

#include <optional>
#include <vector>

namespace maxlf {

// Multi-index of a tower form: sign theta, height k, eigenvalue index sigma
// (the tower convention, so that +towers are homogeneous of degree k+sigma
// and -towers of degree k-sigma-N), counting index m.
struct TowerIndex {
  int theta = -1;  // +1 or -1
  int height = 0;
  int sigma = 0;
  int m = 1;
};

struct TowerForm {
  TowerIndex idx;
  int rank = 0;
  char type = 'D';       // 'D' or 'R'
  int ell = 0;           // scalar degree of the angular content
  int homogeneity = 0;   // k + sigma or k - sigma - N
  bool zero = false;     // exceptional identically-zero tower
  ExactField field;
};

// Ladders are generated per rank pair (q, q+1) by the two radiating-solution
// families; kind 1 carries D^{q,odd} / R^{q+1,even}, kind 2 carries
// R^{q+1,odd} / D^{q,even}.
struct Ladder {
  int q = 1;      // rank pair (q, q+1)
  int kind = 1;   // 1 or 2
  int sigma = 0;
  bool valid = false;
  int ell = 0;        // scalar degree of the generator channel
  int gen_rank = 0;   // rank carrying the generator channel
  int gen_chan = 0;
  QScalar phase;      // per-ladder basis phase
  int plus_sign = 1;  // extra sign on +towers from the kappa convention
};

Ladder ladder_info(int q, int kind, int sigma);

// Tower counting: number of m-values for a ladder at given sigma.
int tower_mu(int q, int kind, int sigma);

// D^{q,k}_{sigma,m} (rank q in 0..2) and R^{q1,k}_{sigma,m} (rank q1 in 1..3).
// Returns nullopt when the family is empty for these indices; exceptional
// vanishing towers come back with zero = true.
std::optional<TowerForm> tower_D(int q, int theta, int height, int sigma, int m,
                                 const Rational& start = Rational(1, 2));
std::optional<TowerForm> tower_R(int q1, int theta, int height, int sigma, int m,
                                 const Rational& start = Rational(1, 2));

// All towers of both families for a rank pair, heights <= max_height.
std::vector<TowerForm> extract_towers(int q, int sigma, int m, int max_height,
                                      const Rational& start = Rational(1, 2));

// ------------------------------------------------------------- constants

struct SpecialConstants {
  static int nu2(int sigma) { return 2 * sigma + 3; }  // 2 * nu_sigma
  // kappa_sigma = -i (2s+3) / ((2s+1)!! (2s+3)!!)
  static QScalar kappa(int sigma);
  // rank-decorated kappa^q with the extra sign for q in {0, N}
  static QScalar kappa_rank(int q, int sigma);
  // kappa_{k,sigma} = i^{2k-2sigma+N} kappa_sigma (real)
  static QScalar kappa_k(int k, int sigma);
  // series coefficients of the two branches
  static Rational c_minus(int k, int sigma);
  static Rational c_plus(int k, int sigma);
};

// --------------------------------------------- radiating mode solutions

// Closed-form outgoing pair (E, H) of the given kind on the mode (sigma, m);
// (M + i omega)(E, H) = 0, div E = 0, rot H = 0 away from the origin.
template <class R>
FieldPair<R> radiating_mode_solution(int q, int kind, int sigma, int m, const Cx<R>& omega,
                                     const R& start);

// Truncated tower series of the same pair through index K-1 in both branches.
template <class R>
FieldPair<R> series_mode_solution(int q, int kind, int sigma, int m, const Cx<R>& omega, int K,
                                  const R& start, const Rational& start_rat);

// --------------------------------------------------------- phi expansion

// Taylor split of the free-space Helmholtz kernel profile phi(t) =
// e^{i omega t}/(4 pi t) and its derivative around omega t = 0:
//   phi      = t^{-1} sum_{j<=J-2} c_j z^j + rem_J(z) t^{J-2} omega^{J-1}
//   phi'     = t^{-2} sum_{j<=J-1} cp_j z^j + rem~_J(z) t^{J-2} omega^J
// with z = omega t.
struct PhiTaylor {
  int J = 1;
  std::vector<std::complex<double>> c, cp;
  std::complex<double> phi(std::complex<double> omega, double t) const;
  std::complex<double> dphi(std::complex<double> omega, double t) const;
  std::complex<double> rem(std::complex<double> z) const;
  std::complex<double> rem_tilde(std::complex<double> z) const;
  double rem_bound(double zmax = 1.0) const;        // max over a C+ sample grid
  double rem_tilde_bound(double zmax = 1.0) const;
};

PhiTaylor taylor_phi(int J);

}  // namespace maxlf
