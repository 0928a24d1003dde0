#include "maxlf/cutoff.hpp"

#include <sstream>
#include <stdexcept>

namespace maxlf {

// int_{r1}^{r2} (r - r1)(r2 - r) r^n dr, n >= 0
static Rational bump_moment(const Rational& r1, const Rational& r2, int n) {
  auto ipow = [](const Rational& x, int e) { return rat_pow(x, e); };
  Rational s = r1 + r2, p = r1 * r2;
  // -r^{n+2} + s r^{n+1} - p r^n
  Rational hi = -ipow(r2, n + 3) / (n + 3) + s * ipow(r2, n + 2) / (n + 2) - p * ipow(r2, n + 1) / (n + 1);
  Rational lo = -ipow(r1, n + 3) / (n + 3) + s * ipow(r1, n + 2) / (n + 2) - p * ipow(r1, n + 1) / (n + 1);
  return hi - lo;
}

MomentCutoff build_cutoff(int j_hat, const Rational& r1, const Rational& r2) {
  if (!(Rational(0) < r1 && r1 < r2)) throw std::domain_error("build_cutoff: need 0 < r1 < r2");
  if (j_hat < 0) throw std::domain_error("build_cutoff: j_hat >= 0");
  const int n = 2 * j_hat + 1;  // unknowns p_0..p_{2 j_hat}
  // moment system sum_k p_k M_{jk} = delta_{j,0}, M_{jk} = bump_moment(j_hat + k + j)
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1, Rational(0)));
  for (int row = 0; row < n; ++row) {
    int j = row - j_hat;
    for (int k = 0; k < n; ++k) A[row][k] = bump_moment(r1, r2, j_hat + k + j);
    A[row][n] = (j == 0) ? Rational(1) : Rational(0);
  }
  // exact Gaussian elimination with partial pivot on nonzero entries
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int row = col; row < n; ++row)
      if (A[row][col] != 0) { piv = row; break; }
    if (piv < 0) throw std::logic_error("build_cutoff: singular moment system");
    std::swap(A[col], A[piv]);
    for (int row = 0; row < n; ++row) {
      if (row == col || A[row][col] == 0) continue;
      Rational f = A[row][col] / A[col][col];
      for (int k = col; k <= n; ++k) A[row][k] -= f * A[col][k];
    }
  }
  std::vector<Rational> p(n);
  for (int k = 0; k < n; ++k) p[k] = A[k][n] / A[k][k];

  MomentCutoff cut;
  cut.j_hat = j_hat;
  cut.r1 = r1;
  cut.r2 = r2;
  // eta' = (r - r1)(r2 - r) r^{j_hat} p(r)
  ExactPoly ep;
  Rational s = r1 + r2, pr = r1 * r2;
  for (int k = 0; k < n; ++k) {
    if (p[k] == 0) continue;
    int base = j_hat + k;
    ep.push_back({QScalar(-p[k]), base + 2, 0});
    ep.push_back({QScalar(p[k] * s), base + 1, 0});
    ep.push_back({QScalar(-p[k] * pr), base, 0});
  }
  cut.eta_prime_poly = poly_canon(ep);
  // antiderivative with eta(r1) = 0
  ExactPoly anti;
  QScalar at_r1;
  for (const auto& t : cut.eta_prime_poly) {
    QScalar c = t.coeff;
    c *= QScalar(Rational(1, t.alpha + 1));
    anti.push_back({c, t.alpha + 1, 0});
    at_r1 += c * QScalar(rat_pow(r1, t.alpha + 1));
  }
  anti.push_back({-at_r1, 0, 0});
  cut.eta_poly = poly_canon(anti);
  return cut;
}

ExactProfile MomentCutoff::eta(const Rational& start) const {
  if (start > r1) throw std::logic_error("cutoff eta: start beyond r1");
  ExactProfile p;
  p.breaks = {start, r1, r2};
  p.pieces = {{}, eta_poly, {{QScalar(Rational(1)), 0, 0}}};
  return p;
}

ExactProfile MomentCutoff::eta_prime(const Rational& start) const {
  if (start > r1) throw std::logic_error("cutoff eta': start beyond r1");
  ExactProfile p;
  p.breaks = {start, r1, r2};
  p.pieces = {{}, eta_prime_poly, {}};
  return p;
}

LogValue MomentCutoff::moment(int j) const {
  LogValue acc{};
  for (const auto& t : eta_prime_poly) {
    LogValue I = power_integral(t.alpha + j, r1, r2, false);
    acc.rat += t.coeff * I.rat;
    acc.ln2 += t.coeff * I.ln2;
  }
  return acc;
}

ExactField commutator(const ExactField& u, const MomentCutoff& cut) {
  ExactProfile ep = cut.eta_prime(u.start);
  ExactProfile epp = profile_ddr(ep);
  ExactField out;
  out.rank = u.rank;
  out.start = u.start;
  for (const auto& [k, prof] : u.parts) {
    // eta'' f + 2 eta' f' + (N-1) eta' f / r
    ExactProfile t1 = profile_mul(epp, prof);
    ExactProfile t2 = profile_scale(profile_mul(ep, profile_ddr(prof)), QScalar(Rational(2)));
    ExactProfile t3 =
        profile_scale(profile_mul(ep, profile_shift(prof, -1)), QScalar(Rational(kDimN - 1)));
    out.parts[k] = profile_add(profile_add(t1, t2), t3);
  }
  out.prune();
  return out;
}

ExactPair commutator(const ExactPair& u, const MomentCutoff& cut) {
  return {commutator(u.E, cut), commutator(u.H, cut)};
}

static QScalar tower_sphere_dot(const TowerForm& u, const TowerForm& v) {
  // <u, v>_(1): sum over common channels of the monomial coefficients
  QScalar dot;
  for (const auto& [k, pu] : u.field.parts) {
    const ExactProfile* pv = v.field.find(k.ell, k.m, k.chan);
    if (!pv) continue;
    if (pu.pieces.size() != 1 || pv->pieces.size() != 1)
      throw std::logic_error("tower_sphere_dot: not a pure tower");
    for (const auto& tu : pu.pieces[0])
      for (const auto& tv : pv->pieces[0]) dot += tu.coeff * conj(tv.coeff);
  }
  return dot;
}

CommutatorPairing commutator_pairing(const TowerForm& u, const TowerForm& v,
                                     const MomentCutoff& cut) {
  CommutatorPairing out{};
  int alpha = u.homogeneity, beta = v.homogeneity;
  int need = std::abs(kDimN - 2 + alpha + beta);
  if (need > cut.j_hat && !(u.zero || v.zero)) {
    std::ostringstream os;
    os << "commutator_pairing: cutoff moment order insufficient, need j_hat >= " << need;
    throw std::domain_error(os.str());
  }
  // formula route
  QScalar dot = tower_sphere_dot(u, v);
  LogValue mom = cut.moment(kDimN - 2 + alpha + beta);
  QScalar val = QScalar(Rational(alpha - beta)) * dot * mom.rat;
  QScalar val_ln = QScalar(Rational(alpha - beta)) * dot * mom.ln2;
  out.exact_rat = val;
  const double LN2 = 0.69314718055994530942;
  auto vd = to_cdbl(qscalar_value<BigReal>(val));
  auto vl = to_cdbl(qscalar_value<BigReal>(val_ln));
  out.formula = vd + LN2 * vl;
  // direct quadrature route
  ExactField cu = commutator(u.field, cut);
  auto cu_num = to_numeric_field<double>(cu);
  auto v_num = to_numeric_field<double>(v.field);
  NormOptions opt;
  opt.gl_order = 64;
  out.quadrature = field_inner(cu_num, v_num, 0.0, opt);
  out.discrepancy = std::abs(out.formula - out.quadrature);
  return out;
}

std::optional<std::complex<double>> expected_commutator_pairing(const TowerForm& u,
                                                                const TowerForm& v) {
  using CD = std::complex<double>;
  if (u.zero || v.zero) return std::nullopt;
  if (u.rank != v.rank) throw std::logic_error("expected pairing: rank mismatch");
  if (u.ell != v.ell || u.idx.m != v.idx.m) return std::nullopt;
  if (u.idx.theta == v.idx.theta) return std::nullopt;
  int sigma = u.idx.sigma;
  if (sigma != v.idx.sigma) return std::nullopt;
  int q = u.rank;
  double denom = kDimN + 2.0 * sigma;
  auto table = [&](int k, int l, int qq) -> std::optional<double> {
    if (k == 0 && l == 2) return -(qq + sigma) / denom;
    if (k == 1 && l == 1) return 1.0;
    if (k == 2 && l == 0) return -(kDimN - qq + sigma) / denom;
    return std::nullopt;
  };
  const bool exceptional = (u.ell == 0);
  if (u.type == 'D' && v.type == 'D') {
    int k = u.idx.theta < 0 ? u.idx.height : v.idx.height;  // minus-tower height
    int l = u.idx.theta < 0 ? v.idx.height : u.idx.height;  // plus-tower height
    std::optional<double> base;
    if (exceptional) {
      // rank-0 even ladder: <C -D^{0,2}, +D^{0,0}> = 1 ; rank-2 odd ladder:
      // <C -D^{2,1}, +D^{2,1}> = -1
      if (q == 0 && k == 2 && l == 0) base = 1.0;
      else if (q == 2 && k == 1 && l == 1) base = -1.0;
      else if (q == 0 && k == 0 && l == 2) base = std::nullopt;  // -D^{0,0} = 0
      else base = table(k, l, q);
    } else {
      base = table(k, l, q);
    }
    if (!base) return std::nullopt;
    double sgn = u.idx.theta < 0 ? 1.0 : -1.0;
    return CD(sgn * *base, 0.0);
  }
  if (u.type == 'R' && v.type == 'R') {
    // <C -R^{q,l}, +R^{q,k}> = table(k, l)
    int l = u.idx.theta < 0 ? u.idx.height : v.idx.height;  // minus height
    int k = u.idx.theta < 0 ? v.idx.height : u.idx.height;  // plus height
    std::optional<double> base;
    if (exceptional) {
      // rank-1 odd ladder: <C -R^{1,1}, +R^{1,1}> = -1 ; rank-3 even ladder:
      // <C -R^{3,2}, +R^{3,0}> = 1
      if (q == 1 && k == 1 && l == 1) base = -1.0;
      else if (q == 3 && k == 0 && l == 2) base = 1.0;
      else if (q == 3 && k == 2 && l == 0) base = std::nullopt;  // -R^{3,0} = 0
      else base = table(k, l, q);
    } else {
      base = table(k, l, q);
    }
    if (!base) return std::nullopt;
    double sgn = u.idx.theta < 0 ? 1.0 : -1.0;
    return CD(sgn * *base, 0.0);
  }
  // mixed D-R of the same rank: only even-even heights couple
  int hd = u.type == 'D' ? u.idx.height : v.idx.height;
  int hr = u.type == 'R' ? u.idx.height : v.idx.height;
  if (hd % 2 != 0 || hr % 2 != 0) return std::nullopt;
  double om = eigen_constant(q - 1, sigma);
  if ((hd == 0 && hr == 2)) return CD(0.0, -om / denom);
  if ((hd == 2 && hr == 0)) return CD(0.0, om / denom);
  return std::nullopt;
}

OrthogonalityReport verify_orthogonality_table(int sigma_max, int height_max,
                                               const MomentCutoff& cut,
                                               const std::vector<int>& ranks) {
  int need = kDimN + 2 * (1 + height_max + sigma_max);
  if (cut.j_hat < need) {
    std::ostringstream os;
    os << "verify_orthogonality_table: need cutoff j_hat >= " << need;
    throw std::domain_error(os.str());
  }
  OrthogonalityReport rep;
  for (int q : ranks) {
    std::vector<TowerForm> towers;
    for (int sigma = 0; sigma <= sigma_max; ++sigma)
      for (int theta : {-1, +1})
        for (int h = 0; h <= height_max; ++h) {
          if (q <= 2)
            if (auto t = tower_D(q, theta, h, sigma, 1)) towers.push_back(*t);
          if (q >= 1)
            if (auto t = tower_R(q, theta, h, sigma, 1)) towers.push_back(*t);
        }
    for (const auto& u : towers)
      for (const auto& v : towers) {
        if (u.zero || v.zero) continue;
        auto expected = expected_commutator_pairing(u, v);
        auto pr = commutator_pairing(u, v, cut);
        OrthogonalityRow row;
        auto desc = [](const TowerForm& t) {
          std::ostringstream os;
          os << (t.idx.theta > 0 ? "+" : "-") << t.type << "^{" << t.rank << "," << t.idx.height
             << "}_{" << t.idx.sigma << "," << t.idx.m << "}";
          return os.str();
        };
        row.u_desc = desc(u);
        row.v_desc = desc(v);
        row.expected = expected.value_or(std::complex<double>{});
        row.formula = pr.formula;
        row.quadrature = pr.quadrature;
        row.special = expected.has_value();
        row.err_expected = std::abs(row.formula - row.expected);
        row.err_routes = pr.discrepancy;
        if (row.special) {
          rep.max_err_special = std::max(rep.max_err_special, row.err_expected);
          ++rep.n_special;
        } else {
          rep.max_err_zero = std::max(rep.max_err_zero, row.err_expected);
        }
        rep.max_route_disagreement = std::max(rep.max_route_disagreement, row.err_routes);
        rep.rows.push_back(std::move(row));
      }
  }
  return rep;
}

}  // namespace maxlf
