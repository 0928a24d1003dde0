#pragma once

#include "maxlf/cutoff.hpp"
#include "maxlf/static_solver.hpp"
#include "maxlf/timeharmonic.hpp"

#include <map>
#include <vector>

namespace maxlf {

// Coefficient families and the X/Y coefficient forms entering the correction
// operators. At this geometry all pairings are diagonal in the angular mode,
// so coefficients are stored per (k, sigma, m).
template <class R> class CorrectionEngine {
 public:
  CorrectionEngine(const MomentCutoff& cut, double s, int j_max, int sigma_max = 2);

  // fam: 'A' alpha_e, 'B' beta_e, 'a' alpha_h, 'b' beta_h
  Cx<R> coef(char fam, int k, int sigma, int m);
  // the same value recomputed from the height-1 tower coefficient of the
  // growing iterates (the closed-form route)
  Cx<R> coef_from_zeta(char fam, int k, int sigma, int m);

  const FieldPair<R>& X(int l, int sigma, int m);
  const FieldPair<R>& Y(int l, int sigma, int m);
  const ExactPair& growing(char side, int sigma, int m, int k) {
    return cache_.get_exact(side, sigma, m, k);
  }
  const FieldPair<R>& growing_num(char side, int sigma, int m, int k) {
    return cache_.get(side, sigma, m, k);
  }

  FieldPair<R> correction_hat(int j, const FieldPair<R>& pair, const NormOptions& opt = {});
  FieldPair<R> correction_tilde(int j, const FieldPair<R>& pair, const NormOptions& opt = {});
  FieldPair<R> correction_full(int j, const FieldPair<R>& pair, const NormOptions& opt = {});

  int sigma_max() const { return sigma_max_; }
  const MomentCutoff& cut() const { return cut_; }

 private:
  FieldPair<R> zero_pair() const;
  MomentCutoff cut_;
  double s_;
  int j_max_, sigma_max_;
  GrowingCache<R> cache_;
  std::map<std::tuple<char, int, int, int>, Cx<R>> coefs_;
  std::map<std::tuple<char, int, int, int>, FieldPair<R>> rows_;
};

extern template class CorrectionEngine<double>;
extern template class CorrectionEngine<BigReal>;

// ----------------------------------------------------- corrected expansion

// Frequency-independent ingredients of the corrected Neumann expansion of
// the radiating solution operator applied to one right-hand side.
template <class R> struct ExpansionSetup {
  FieldPair<R> rhs;
  FieldPair<R> trivial;                // kernel-type projection
  std::vector<FieldPair<R>> neumann;   // L0 L^j (regular projection), j = 0..J-1
  std::vector<FieldPair<R>> gammas;    // Gamma_j(rhs), j = 0..J-N
  int J = 0;
  double s = 0, t = 0;
};

template <class R>
ExpansionSetup<R> prepare_expansion(const FieldPair<R>& rhs, int J, double s, double t,
                                    CorrectionEngine<R>& eng, const StaticOpts& sopt = {},
                                    const NormOptions& nopt = {});

// Remainder of the corrected (or non-corrected) expansion at one frequency,
// together with its weighted norm.
template <class R>
std::pair<FieldPair<R>, R> expansion_remainder(const ExpansionSetup<R>& setup, const Cx<R>& omega,
                                               bool with_corrections,
                                               const HarmonicOpts& hopt = {},
                                               const NormOptions& nopt = {});

}  // namespace maxlf
