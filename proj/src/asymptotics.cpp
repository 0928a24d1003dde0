#include "maxlf/asymptotics.hpp"

#include <sstream>
#include <stdexcept>

namespace maxlf {

template <class R>
CorrectionEngine<R>::CorrectionEngine(const MomentCutoff& cut, double s, int j_max, int sigma_max)
    : cut_(cut), s_(s), j_max_(j_max), sigma_max_(sigma_max) {}

template <class R> FieldPair<R> CorrectionEngine<R>::zero_pair() const {
  FieldPair<R> p;
  p.E.rank = 1;
  p.H.rank = 2;
  p.E.start = ScalarTraits<R>::from_rational(cache_.start);
  p.H.start = p.E.start;
  return p;
}

template <class R> Cx<R> CorrectionEngine<R>::coef(char fam, int k, int sigma, int m) {
  auto key = std::make_tuple(fam, k, sigma, m);
  auto it = coefs_.find(key);
  if (it != coefs_.end()) return it->second;
  // kappa_{k,sigma} <dual^{+,2}, growing iterate^{+,k-2sigma+1}>
  int j = k - 2 * sigma + 1;
  Cx<R> val{};
  if (j >= 0) {
    ExactPair dual;
    char side;
    if (fam == 'A' || fam == 'B') dual = dual_family('e', +1, sigma, m, 2, cut_, cache_.start);
    else dual = dual_family('h', +1, sigma, m, 2, cut_, cache_.start);
    side = (fam == 'B' || fam == 'b') ? 'E' : 'H';
    const ExactPair& it2 = cache_.get_exact(side, sigma, m, j);
    Cx<R> inner = pair_inner_value<R>(dual, it2);
    val = qscalar_value<R>(SpecialConstants::kappa_k(k, sigma)) * inner;
  }
  coefs_.emplace(key, val);
  return val;
}

template <class R> Cx<R> CorrectionEngine<R>::coef_from_zeta(char fam, int k, int sigma, int m) {
  int j = k - 2 * sigma + 1;
  if (j < 0) return Cx<R>{};
  char side = (fam == 'B' || fam == 'b') ? 'E' : 'H';
  // alpha_e and beta_h pick the height-1 minus tower of the iterate; the
  // remaining two families vanish identically at this geometry.
  if (fam == 'B' || fam == 'a') return Cx<R>{};
  const ExactPair& it2 = cache_.get_exact(side, sigma, m, j);
  QScalar z = zeta_height1(it2, side);
  return -qscalar_value<R>(SpecialConstants::kappa_k(k, sigma)) * qscalar_value<R>(z);
}

template <class R> const FieldPair<R>& CorrectionEngine<R>::X(int l, int sigma, int m) {
  auto key = std::make_tuple('X', l, sigma, m);
  auto it = rows_.find(key);
  if (it != rows_.end()) return it->second;
  FieldPair<R> row = cache_.get('H', sigma, m, l);
  if (l >= kDimN) {
    for (int k = 2 * sigma; k <= l - kDimN; ++k) {
      Cx<R> be = coef('B', k, sigma, m);
      Cx<R> ae = coef('A', k, sigma, m);
      if (!(abs(be) == R(0)))
        row = pair_sum(row, pair_scaled(Y(l - kDimN - k, sigma, m), -be));
      if (!(abs(ae) == R(0)))
        row = pair_sum(row, pair_scaled(X(l - kDimN - k, sigma, m), -ae));
    }
  }
  auto [jt, ok] = rows_.emplace(key, std::move(row));
  return jt->second;
}

template <class R> const FieldPair<R>& CorrectionEngine<R>::Y(int l, int sigma, int m) {
  auto key = std::make_tuple('Y', l, sigma, m);
  auto it = rows_.find(key);
  if (it != rows_.end()) return it->second;
  FieldPair<R> row = cache_.get('E', sigma, m, l);
  if (l >= kDimN) {
    for (int k = 2 * sigma; k <= l - kDimN; ++k) {
      Cx<R> bh = coef('b', k, sigma, m);
      Cx<R> ah = coef('a', k, sigma, m);
      if (!(abs(bh) == R(0)))
        row = pair_sum(row, pair_scaled(Y(l - kDimN - k, sigma, m), -bh));
      if (!(abs(ah) == R(0)))
        row = pair_sum(row, pair_scaled(X(l - kDimN - k, sigma, m), -ah));
    }
  }
  auto [jt, ok] = rows_.emplace(key, std::move(row));
  return jt->second;
}

template <class R>
FieldPair<R> CorrectionEngine<R>::correction_hat(int j, const FieldPair<R>& pair,
                                                 const NormOptions& opt) {
  FieldPair<R> acc = zero_pair();
  if (j < 0) return acc;
  for (const auto& e : theta_tilde_set(j)) {
    if (e.sigma > sigma_max_) continue;
    int it_index = e.k - 2 * e.sigma + 1;
    Cx<R> kap = qscalar_value<R>(SpecialConstants::kappa_k(e.k, e.sigma));
    Cx<R> pe = pair_inner_product(pair, cache_.get('E', e.sigma, e.m, it_index), 0.0, opt);
    Cx<R> ph = pair_inner_product(pair, cache_.get('H', e.sigma, e.m, it_index), 0.0, opt);
    if (!(abs(pe) == R(0)))
      acc = pair_sum(acc, pair_scaled(Y(j - e.k, e.sigma, e.m), kap * pe));
    if (!(abs(ph) == R(0)))
      acc = pair_sum(acc, pair_scaled(X(j - e.k, e.sigma, e.m), kap * ph));
  }
  return acc;
}

template <class R>
FieldPair<R> CorrectionEngine<R>::correction_tilde(int j, const FieldPair<R>& pair,
                                                   const NormOptions& opt) {
  FieldPair<R> acc = zero_pair();
  if (j < 0) return acc;
  for (int sigma = 0; 2 * sigma <= j && sigma <= sigma_max_; ++sigma) {
    Cx<R> kap = qscalar_value<R>(SpecialConstants::kappa_k(0, sigma));
    for (int m = 1; m <= 2 * (sigma + 1) + 1; ++m) {
      Cx<R> pe = pair_inner_product(pair, cache_.get('E', sigma, m, 0), 0.0, opt);
      Cx<R> ph = pair_inner_product(pair, cache_.get('H', sigma, m, 0), 0.0, opt);
      if (!(abs(pe) == R(0)))
        acc = pair_sum(acc, pair_scaled(Y(j - 2 * sigma, sigma, m), -kap * pe));
      if (!(abs(ph) == R(0)))
        acc = pair_sum(acc, pair_scaled(X(j - 2 * sigma, sigma, m), -kap * ph));
    }
  }
  return acc;
}

template <class R>
FieldPair<R> CorrectionEngine<R>::correction_full(int j, const FieldPair<R>& pair,
                                                  const NormOptions& opt) {
  if (j == 0) return correction_tilde(0, pair, opt);
  return pair_sum(correction_hat(j - 1, pair, opt), correction_tilde(j, pair, opt));
}

template class CorrectionEngine<double>;
template class CorrectionEngine<BigReal>;

// ----------------------------------------------------------- expansion

template <class R>
ExpansionSetup<R> prepare_expansion(const FieldPair<R>& rhs, int J, double s, double t,
                                    CorrectionEngine<R>& eng, const StaticOpts& sopt,
                                    const NormOptions& nopt) {
  if (!(s > J + 0.5)) {
    std::ostringstream os;
    os << "expansion: hypothesis s > J + 1/2 violated (s = " << s << ", J = " << J << ")";
    throw std::domain_error(os.str());
  }
  double t_cap = std::min(kDimN / 2.0 - J - 2.0, -0.5);
  if (!(t < t_cap)) {
    std::ostringstream os;
    os << "expansion: hypothesis t < min{N/2 - J - 2, -1/2} violated (t = " << t << ")";
    throw std::domain_error(os.str());
  }
  ExpansionSetup<R> setup;
  setup.rhs = rhs;
  setup.J = J;
  setup.s = s;
  setup.t = t;
  HodgeSplit<R> split = hodge_split(rhs, s, sopt);
  setup.trivial = split.trivial;
  FieldPair<R> cur = split.regular;
  for (int j = 0; j < J; ++j) {
    cur = solve_static(cur, sopt);  // L0 L^j applied cumulatively
    setup.neumann.push_back(cur);
  }
  for (int j = 0; j + kDimN <= J; ++j)
    setup.gammas.push_back(eng.correction_full(j, rhs, nopt));
  return setup;
}

template <class R>
std::pair<FieldPair<R>, R> expansion_remainder(const ExpansionSetup<R>& setup, const Cx<R>& omega,
                                               bool with_corrections, const HarmonicOpts& hopt,
                                               const NormOptions& nopt) {
  using C = Cx<R>;
  const C iu(R(0), R(1));
  const C miom = -iu * omega;
  FieldPair<R> rem = solve_timeharmonic(setup.rhs, omega, Domain::exterior_ball, hopt);
  rem = pair_sum(rem, pair_scaled(setup.trivial, C(R(1)) / miom));
  C w(R(1));
  for (int j = 0; j < setup.J; ++j) {
    rem = pair_sum(rem, pair_scaled(setup.neumann[j], -w));
    w *= miom;
  }
  if (with_corrections) {
    C wg(R(1));
    for (int i = 0; i < kDimN - 1; ++i) wg *= miom;  // (-i omega)^{N-1}
    for (size_t j = 0; j < setup.gammas.size(); ++j) {
      rem = pair_sum(rem, pair_scaled(setup.gammas[j], -wg));
      wg *= miom;
    }
  }
  R nr = pair_norm(rem, setup.t, nopt);
  return {rem, nr};
}

#define MAXLF_INST_ASY(R)                                                                   \
  template ExpansionSetup<R> prepare_expansion<R>(const FieldPair<R>&, int, double, double, \
                                                  CorrectionEngine<R>&, const StaticOpts&,  \
                                                  const NormOptions&);                      \
  template std::pair<FieldPair<R>, R> expansion_remainder<R>(                               \
      const ExpansionSetup<R>&, const Cx<R>&, bool, const HarmonicOpts&, const NormOptions&);

MAXLF_INST_ASY(double)
MAXLF_INST_ASY(BigReal)

}  // namespace maxlf
