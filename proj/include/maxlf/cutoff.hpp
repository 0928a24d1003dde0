#pragma once

#include "maxlf/exact.hpp"
#include "maxlf/towers.hpp"

#include <string>
#include <vector>

namespace maxlf {

// Radial cut-off with prescribed vanishing moments:
//   int eta'(r) r^j dr = delta_{0,j}  for |j| <= j_hat,
// eta = 0 on [0, r1], eta = 1 on [r2, inf). eta' is chosen of the form
// (r - r1)(r2 - r) r^{j_hat} p(r) so every moment entry is rational.
struct MomentCutoff {
  int j_hat = 0;
  Rational r1, r2;
  ExactPoly eta_prime_poly;  // on [r1, r2]
  ExactPoly eta_poly;        // antiderivative on [r1, r2]

  // profiles starting at `start` (0 / polynomial / 1 resp. 0 / p / 0 pieces)
  ExactProfile eta(const Rational& start) const;
  ExactProfile eta_prime(const Rational& start) const;

  // exact moment  int_{r1}^{r2} eta'(r) r^j dr  for any integer j
  LogValue moment(int j) const;
};

MomentCutoff build_cutoff(int j_hat, const Rational& r1, const Rational& r2);

// Commutator C = Delta(eta .) - eta Delta(.), acting channel-diagonally as
// eta'' + 2 eta' d/dr + (N-1) eta'/r.
ExactField commutator(const ExactField& u, const MomentCutoff& cut);
ExactPair commutator(const ExactPair& u, const MomentCutoff& cut);

// <C u, v> for tower forms, two routes:
//   formula   (hom(u) - hom(v)) <u, v>_(1) * moment(N - 2 + hom(u) + hom(v))
//   direct    quadrature of <Delta(eta u) - eta Delta u, v>
struct CommutatorPairing {
  std::complex<double> formula;
  std::complex<double> quadrature;
  QScalar exact_rat;  // rational part of the formula route (exact)
  double discrepancy;
};
CommutatorPairing commutator_pairing(const TowerForm& u, const TowerForm& v,
                                     const MomentCutoff& cut);

// Expected value of <C u, v> per the pairing tables (regular and exceptional
// entries); nullopt when the pairing is a forced zero.
std::optional<std::complex<double>> expected_commutator_pairing(const TowerForm& u,
                                                                const TowerForm& v);

struct OrthogonalityRow {
  std::string u_desc, v_desc;
  std::complex<double> expected;
  std::complex<double> formula;
  std::complex<double> quadrature;
  bool special = false;  // nonzero expected
  double err_expected = 0.0;
  double err_routes = 0.0;
};

struct OrthogonalityReport {
  std::vector<OrthogonalityRow> rows;
  double max_err_special = 0.0;
  double max_err_zero = 0.0;
  double max_route_disagreement = 0.0;
  int n_special = 0;
};

// All pairings of rank-q towers for q in `ranks`, sigma <= sigma_max,
// heights <= height_max.
OrthogonalityReport verify_orthogonality_table(int sigma_max, int height_max,
                                               const MomentCutoff& cut,
                                               const std::vector<int>& ranks = {1, 2});

}  // namespace maxlf
