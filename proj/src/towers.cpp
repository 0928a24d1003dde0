#include "maxlf/towers.hpp"

#include <stdexcept>

namespace maxlf {

Ladder ladder_info(int q, int kind, int sigma) {
  Ladder L;
  L.q = q;
  L.kind = kind;
  L.sigma = sigma;
  L.phase = QScalar(Rational(1));
  if (sigma < 0 || q < 0 || q > 2) return L;
  if (kind == 1) {
    // generator channel: tangential family of rank q (the E side)
    switch (q) {
      case 0: L.valid = true; L.ell = sigma + 1; L.gen_rank = 0; L.gen_chan = CH_SC; break;
      case 1: L.valid = true; L.ell = sigma + 1; L.gen_rank = 1; L.gen_chan = CH_T; break;
      case 2:
        L.valid = (sigma == 0);  // only the volume-form family
        L.ell = 0; L.gen_rank = 2; L.gen_chan = CH_P;
        L.plus_sign = -1;  // kappa^{q+1} with q+1 = N
        break;
    }
  } else {
    // generator channel: rank q+1 (the H side)
    switch (q) {
      case 0:
        L.valid = (sigma == 0);
        L.ell = 0; L.gen_rank = 1; L.gen_chan = CH_P;
        L.plus_sign = -1;  // kappa^q with q = 0
        L.phase = QScalar(Rational(0), Rational(-1));
        break;
      case 1:
        L.valid = true; L.ell = sigma + 1; L.gen_rank = 2; L.gen_chan = CH_T;
        L.phase = QScalar(Rational(0), Rational(-1));
        break;
      case 2:
        L.valid = true; L.ell = sigma + 1; L.gen_rank = 3; L.gen_chan = CH_SC;
        L.phase = QScalar(Rational(0), Rational(1));
        break;
    }
  }
  return L;
}

int tower_mu(int q, int kind, int sigma) {
  Ladder L = ladder_info(q, kind, sigma);
  if (!L.valid) return 0;
  return 2 * L.ell + 1;
}

QScalar SpecialConstants::kappa(int sigma) {
  Rational mag = Rational(2 * sigma + 3) /
                 (double_factorial(2 * sigma + 1) * double_factorial(2 * sigma + 3));
  return QScalar(Rational(0), -mag);  // -i * mag
}

QScalar SpecialConstants::kappa_rank(int q, int sigma) {
  QScalar k = kappa(sigma);
  if (q == 0 || q == kDimN) k = -k;
  return k;
}

QScalar SpecialConstants::kappa_k(int k, int sigma) {
  // i^{2k - 2 sigma + 3} * kappa = (-1)^{k+sigma+1} * |kappa| as a real number
  Rational mag = Rational(2 * sigma + 3) /
                 (double_factorial(2 * sigma + 1) * double_factorial(2 * sigma + 3));
  int sign = ((k + sigma + 1) % 2 == 0) ? 1 : -1;
  return QScalar(sign * mag);
}

Rational SpecialConstants::c_minus(int k, int sigma) {
  Rational c(1);
  for (int i = 1; i <= k; ++i) c /= Rational(2 * i) * Rational(2 * i - 2 * sigma - 3);
  return c;
}

Rational SpecialConstants::c_plus(int k, int sigma) {
  Rational c(-1, 2 * sigma + 3);
  for (int i = 1; i <= k; ++i) c /= Rational(2 * i) * Rational(2 * i + 2 * sigma + 3);
  return c;
}

// generator-side tower of the ladder at series index k (height 2k+1)
static ExactField ladder_odd_tower(const Ladder& L, int theta, int k, int m,
                                   const Rational& start) {
  ExactField f;
  f.rank = L.gen_rank;
  f.start = start;
  int alpha = theta > 0 ? 2 * k + L.sigma + 1 : 2 * k - L.sigma - 2;
  QScalar coef = L.phase;
  if (theta > 0) {
    coef = coef * QScalar(SpecialConstants::c_plus(k, L.sigma) * L.plus_sign);
  } else {
    coef = coef * QScalar(SpecialConstants::c_minus(k, L.sigma));
  }
  coef.w = long(L.ell) * (L.ell + 1);
  coef.canon();
  f.set(L.ell, m, L.gen_chan, ExactProfile::global(start, {{coef, alpha, 0}}));
  return f;
}

std::optional<TowerForm> tower_D(int q, int theta, int height, int sigma, int m,
                                 const Rational& start) {
  if (q < 0 || q > 2 || sigma < 0 || height < 0) return std::nullopt;
  const bool odd = height % 2 == 1;
  Ladder L = ladder_info(q, odd ? 1 : 2, sigma);
  if (!L.valid || m < 1 || m > 2 * L.ell + 1) return std::nullopt;
  TowerForm t;
  t.idx = {theta, height, sigma, m};
  t.rank = q;
  t.type = 'D';
  t.ell = L.ell;
  t.homogeneity = theta > 0 ? height + sigma : height - sigma - kDimN;
  if (odd) {
    t.field = ladder_odd_tower(L, theta, (height - 1) / 2, m, start);
  } else {
    // D^{q,2k} = div R^{q+1,2k+1}
    ExactField r_odd = ladder_odd_tower(L, theta, height / 2, m, start);
    t.field = field_div(r_odd);
  }
  t.zero = t.field.is_zero();
  return t;
}

std::optional<TowerForm> tower_R(int q1, int theta, int height, int sigma, int m,
                                 const Rational& start) {
  if (q1 < 1 || q1 > 3 || sigma < 0 || height < 0) return std::nullopt;
  int q = q1 - 1;
  const bool odd = height % 2 == 1;
  Ladder L = ladder_info(q, odd ? 2 : 1, sigma);
  if (!L.valid || m < 1 || m > 2 * L.ell + 1) return std::nullopt;
  TowerForm t;
  t.idx = {theta, height, sigma, m};
  t.rank = q1;
  t.type = 'R';
  t.ell = L.ell;
  t.homogeneity = theta > 0 ? height + sigma : height - sigma - kDimN;
  if (odd) {
    t.field = ladder_odd_tower(L, theta, (height - 1) / 2, m, start);
  } else {
    // R^{q+1,2k} = rot D^{q,2k+1}
    ExactField d_odd = ladder_odd_tower(ladder_info(q, 1, sigma), theta, height / 2, m, start);
    t.field = field_rot(d_odd);
  }
  t.zero = t.field.is_zero();
  return t;
}

std::vector<TowerForm> extract_towers(int q, int sigma, int m, int max_height,
                                      const Rational& start) {
  std::vector<TowerForm> out;
  for (int theta : {-1, +1}) {
    for (int k = 0; k <= max_height; ++k) {
      if (auto t = tower_D(q, theta, k, sigma, m, start)) out.push_back(*t);
      if (auto t = tower_R(q + 1, theta, k, sigma, m, start)) out.push_back(*t);
    }
  }
  return out;
}

// --------------------------------------------- radiating mode solutions

template <class R>
FieldPair<R> radiating_mode_solution(int q, int kind, int sigma, int m, const Cx<R>& omega,
                                     const R& start) {
  using C = Cx<R>;
  Ladder L = ladder_info(q, kind, sigma);
  if (!L.valid) throw std::domain_error("radiating_mode_solution: empty mode family");
  if (m < 1 || m > 2 * L.ell + 1) throw std::domain_error("radiating_mode_solution: bad m");
  if (abs(omega) == R(0)) throw std::domain_error("radiating_mode_solution: omega = 0");
  // (omega^nu / beta) r^{1-N/2} H1_nu(omega r) = i omega^{sigma+2}/(2 sigma+1)!! h1_{sigma+1}
  C pref = qscalar_value<R>(L.phase) * C(R(0), R(1));
  C ompow(R(1));
  for (int i = 0; i < sigma + 2; ++i) ompow *= omega;
  pref *= ompow / C(ScalarTraits<R>::from_rational(double_factorial(2 * sigma + 1)));
  ModeField<R> gen;
  gen.rank = L.gen_rank;
  gen.start = start;
  NumProfile<R> prof = NumProfile<R>::zero(start);
  prof.pieces[0].atoms.push_back(Atom<R>::hankel(pref, sigma + 1, omega));
  gen.set(L.ell, m, L.gen_chan, prof);

  const C iu(R(0), R(1));
  FieldPair<R> pair;
  if (kind == 1) {
    pair.E = gen;
    pair.H = field_scaled(rot(gen), iu / omega);
  } else {
    pair.H = gen;
    pair.E = field_scaled(div(gen), iu / omega);
  }
  return pair;
}

template <class R>
FieldPair<R> series_mode_solution(int q, int kind, int sigma, int m, const Cx<R>& omega, int K,
                                  const R& start, const Rational& start_rat) {
  using C = Cx<R>;
  Ladder L = ladder_info(q, kind, sigma);
  if (!L.valid) throw std::domain_error("series_mode_solution: empty mode family");
  if (K < 1) throw std::domain_error("series_mode_solution: K >= 1 required");
  const C iu(R(0), R(1));
  const C miom = -iu * omega;
  // kappa^{q+1} for kind 1, kappa^{q} for kind 2 (matching the extraction)
  QScalar kap = SpecialConstants::kappa_rank(kind == 1 ? q + 1 : q, sigma);
  C kapv = qscalar_value<R>(kap);
  C omnu(R(1));
  for (int i = 0; i < 2 * sigma + 3; ++i) omnu *= omega;  // omega^{2 nu}

  auto accum = [&](ModeField<R>& dst, const ExactField& tower, const C& coef) {
    ModeField<R> tf = to_numeric_field<R>(tower);
    dst = field_sum(dst, field_scaled(tf, coef));
  };

  FieldPair<R> out;
  ModeField<R> gen_side, partner_side;
  gen_side.rank = L.gen_rank;
  gen_side.start = start;
  partner_side.rank = (kind == 1) ? L.gen_rank + 1 : L.gen_rank - 1;
  partner_side.start = start;

  for (int k = 0; k < K; ++k) {
    C w_even(R(1));  // (-i omega)^{2k}
    for (int i = 0; i < 2 * k; ++i) w_even *= miom;
    C w_odd = w_even / miom;  // (-i omega)^{2k-1}
    for (int theta : {-1, +1}) {
      C branch = (theta > 0) ? kapv * omnu : C(R(1));
      if (kind == 1) {
        auto D = tower_D(q, theta, 2 * k + 1, sigma, m, start_rat);
        auto Rt = tower_R(q + 1, theta, 2 * k, sigma, m, start_rat);
        if (D && !D->zero) accum(gen_side, D->field, branch * w_even);
        if (Rt && !Rt->zero) accum(partner_side, Rt->field, branch * w_odd);
      } else {
        auto Rt = tower_R(q + 1, theta, 2 * k + 1, sigma, m, start_rat);
        auto D = tower_D(q, theta, 2 * k, sigma, m, start_rat);
        if (Rt && !Rt->zero) accum(gen_side, Rt->field, branch * w_even);
        if (D && !D->zero) accum(partner_side, D->field, branch * w_odd);
      }
    }
  }
  if (kind == 1) {
    out.E = gen_side;
    out.H = partner_side;
  } else {
    out.H = gen_side;
    out.E = partner_side;
  }
  return out;
}

template FieldPair<double> radiating_mode_solution<double>(int, int, int, int,
                                                           const Cx<double>&, const double&);
template FieldPair<BigReal> radiating_mode_solution<BigReal>(int, int, int, int,
                                                             const Cx<BigReal>&, const BigReal&);
template FieldPair<double> series_mode_solution<double>(int, int, int, int, const Cx<double>&,
                                                        int, const double&, const Rational&);
template FieldPair<BigReal> series_mode_solution<BigReal>(int, int, int, int,
                                                          const Cx<BigReal>&, int,
                                                          const BigReal&, const Rational&);

// --------------------------------------------------------- phi expansion

static std::complex<double> ipow(int j) {
  switch (((j % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
  }
  return {0, -1};
}

PhiTaylor taylor_phi(int J) {
  if (J < 1) throw std::domain_error("taylor_phi: J >= 1");
  PhiTaylor t;
  t.J = J;
  const double fourpi = 4.0 * 3.14159265358979323846;
  for (int j = 0; j <= J - 2; ++j) t.c.push_back(ipow(j) / (fourpi * factorial_d(j)));
  for (int j = 0; j <= J - 1; ++j)
    t.cp.push_back(ipow(j) * (double(j) - 1.0) / (fourpi * factorial_d(j)));
  return t;
}

std::complex<double> PhiTaylor::phi(std::complex<double> omega, double tt) const {
  std::complex<double> iu(0, 1);
  return std::exp(iu * omega * tt) / (4.0 * 3.14159265358979323846 * tt);
}

std::complex<double> PhiTaylor::dphi(std::complex<double> omega, double tt) const {
  std::complex<double> iu(0, 1);
  std::complex<double> z = omega * tt;
  return std::exp(iu * z) * (iu * z - 1.0) / (4.0 * 3.14159265358979323846 * tt * tt);
}

std::complex<double> PhiTaylor::rem(std::complex<double> z) const {
  const double fourpi = 4.0 * 3.14159265358979323846;
  std::complex<double> iu(0, 1);
  std::complex<double> s{};
  // (e^{iz} - sum_{j<=J-2} (iz)^j/j!) / (4 pi z^{J-1}), stable for small z via series
  if (std::abs(z) < 0.5) {
    std::complex<double> term = std::pow(iu, J - 1) / factorial_d(J - 1);
    std::complex<double> acc{};
    std::complex<double> zp = 1.0;
    for (int j = 0; j < 30; ++j) {
      acc += term * zp;
      zp *= z;
      term *= iu / double(J + j);
    }
    return acc / fourpi;
  }
  std::complex<double> partial{};
  std::complex<double> zp = 1.0;
  for (int j = 0; j <= J - 2; ++j) {
    partial += std::pow(iu * z, j) / factorial_d(j);
  }
  (void)zp;
  s = (std::exp(iu * z) - partial) / std::pow(z, J - 1) / fourpi;
  return s;
}

std::complex<double> PhiTaylor::rem_tilde(std::complex<double> z) const {
  const double fourpi = 4.0 * 3.14159265358979323846;
  std::complex<double> iu(0, 1);
  if (std::abs(z) < 0.5) {
    // ((iz-1)e^{iz} - 4pi sum cp_j z^j) / z^J as a convergent series
    std::complex<double> acc{};
    for (int j = J; j < J + 40; ++j) {
      std::complex<double> cj = ipow(j) * (double(j) - 1.0) / factorial_d(j);
      acc += cj * std::pow(z, j - J);
    }
    return acc / fourpi;
  }
  std::complex<double> partial{};
  for (int j = 0; j <= J - 1; ++j) partial += cp[j] * std::pow(z, j) * fourpi;
  return ((iu * z - 1.0) * std::exp(iu * z) - partial) / std::pow(z, J) / fourpi;
}

double PhiTaylor::rem_bound(double zmax) const {
  double mx = 0;
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; j <= 12; ++j) {
      double th = 3.14159265358979323846 * i / 24;
      double rr = zmax * (j + 1) / 13.0;
      std::complex<double> z = rr * std::exp(std::complex<double>(0, th));
      mx = std::max(mx, std::abs(rem(z)));
    }
  return mx;
}

double PhiTaylor::rem_tilde_bound(double zmax) const {
  double mx = 0;
  for (int i = 0; i <= 24; ++i)
    for (int j = 0; j <= 12; ++j) {
      double th = 3.14159265358979323846 * i / 24;
      double rr = zmax * (j + 1) / 13.0;
      std::complex<double> z = rr * std::exp(std::complex<double>(0, th));
      mx = std::max(mx, std::abs(rem_tilde(z)));
    }
  return mx;
}

}  // namespace maxlf
