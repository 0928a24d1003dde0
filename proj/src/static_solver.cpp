#include "maxlf/static_solver.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace maxlf {

// ================================================================ exact path

namespace {

// particular of r y' = h y + c r^g ln^k, exact, no log escalation allowed
ExactPoly euler1_particular(int h, const ExactTerm& t) {
  if (t.alpha == h)
    throw std::domain_error("static solve: resonant exponent r^" + std::to_string(h));
  ExactPoly out;
  // y = r^g sum_{i<=k} u_i ln^i, (g-h) u_i + (i+1) u_{i+1} = c delta_{ik}
  std::vector<QScalar> u(t.lnpow + 1);
  QScalar gh{Rational(t.alpha - h)};
  u[t.lnpow] = t.coeff / gh;
  for (int i = t.lnpow - 1; i >= 0; --i) u[i] = -(QScalar(Rational(i + 1)) * u[i + 1]) / gh;
  for (int i = 0; i <= t.lnpow; ++i)
    if (!u[i].is_zero()) out.push_back({u[i], t.alpha, i});
  return out;
}

ExactPoly poly_eval_free(const ExactPoly& p, const Rational& r, QScalar& out_val) {
  out_val = QScalar();
  for (const auto& t : p) {
    if (t.lnpow > 0) throw std::domain_error("exact static: log value at breakpoint");
    out_val += t.coeff * QScalar(rat_pow(r, t.alpha));
  }
  return p;
}

struct ExactModeChannels {
  ExactPoly P, S, T;
};

ExactPoly get_global_poly(const ExactField& f, int ell, int m, int chan) {
  const ExactProfile* p = f.find(ell, m, chan);
  if (!p) return {};
  if (p->breaks.size() != 1)
    throw std::domain_error("exact static solve expects global monomial profiles");
  return p->pieces[0];
}

// r v' = A v + (0, g2), A = [[-2, w^{1/2}],[w^{1/2}, -1]]; returns (vP, vS)
std::pair<ExactPoly, ExactPoly> solve_ps_exact(int ell, const ExactPoly& g2, const Rational& a,
                                               char bc /* 'S' or 'P' */) {
  long w = long(ell) * (ell + 1);
  int hp = ell - 1, hm = -ell - 2;
  QScalar inv2l1{Rational(1, 2 * ell + 1)};
  // phi_+ = g2/(2l+1), phi_- = -g2/(2l+1)
  ExactPoly yp, ym;
  for (const auto& t : g2) {
    ExactTerm tp{t.coeff * inv2l1, t.alpha, t.lnpow};
    ExactTerm tm{-(t.coeff * inv2l1), t.alpha, t.lnpow};
    auto pp = euler1_particular(hp, tp);
    auto pm = euler1_particular(hm, tm);
    yp.insert(yp.end(), pp.begin(), pp.end());
    ym.insert(ym.end(), pm.begin(), pm.end());
  }
  yp = poly_canon(std::move(yp));
  ym = poly_canon(std::move(ym));
  // no growing homogeneous branch; fix C_- from the boundary condition
  QScalar yp_a, ym_a;
  poly_eval_free(yp, a, yp_a);
  poly_eval_free(ym, a, ym_a);
  QScalar sw = QScalar::root_w(w);
  QScalar lp1{Rational(ell + 1)}, lmin{Rational(-ell)};
  QScalar Cm;
  if (bc == 'S') {
    // E_S(a) = (l+1) y+ - l y- = 0
    QScalar num = lp1 * yp_a + lmin * ym_a;
    Cm = -(num / lmin) / QScalar(rat_pow(a, hm));
  } else {
    // H_P(a) = sqrt(w) (y+ + y-) = 0
    QScalar num = yp_a + ym_a;
    Cm = -num / QScalar(rat_pow(a, hm));
  }
  if (!Cm.is_zero()) ym.push_back({Cm, hm, 0});
  ym = poly_canon(std::move(ym));
  // v = S y with columns (sqrt w, l+1), (sqrt w, -l)
  ExactPoly vP = poly_add(poly_scale(yp, sw), poly_scale(ym, sw));
  ExactPoly vS = poly_add(poly_scale(yp, lp1), poly_scale(ym, lmin));
  return {vP, vS};
}

void require_same(const ExactPoly& x, const ExactPoly& y, const char* what) {
  if (!poly_is_zero(poly_add(x, poly_scale(y, QScalar(Rational(-1)))))) {
    throw std::domain_error(std::string("exact static solve: data class violated (") + what + ")");
  }
}

}  // namespace

ExactPair solve_static_exact(const ExactPair& rhs) {
  if (rhs.E.rank != 1 || rhs.H.rank != 2)
    throw std::domain_error("solve_static_exact: rank pair (1,2) expected");
  const Rational a = rhs.E.start;
  ExactPair out;
  out.E.rank = 1;
  out.E.start = a;
  out.H.rank = 2;
  out.H.start = a;

  // collect modes
  std::set<std::pair<int, int>> modes;
  for (const auto& [k, p] : rhs.E.parts) modes.insert({k.ell, k.m});
  for (const auto& [k, p] : rhs.H.parts) modes.insert({k.ell, k.m});

  for (auto [ell, m] : modes) {
    long w = long(ell) * (ell + 1);
    QScalar inv_sw = ell > 0 ? QScalar::root_w(w, Rational(1, w)) : QScalar();
    // ----- E from G: rot E = G, div E = 0
    ExactPoly GP = get_global_poly(rhs.H, ell, m, CH_P);
    ExactPoly GS = ell > 0 ? get_global_poly(rhs.H, ell, m, CH_S) : ExactPoly{};
    ExactPoly GT = ell > 0 ? get_global_poly(rhs.H, ell, m, CH_T) : ExactPoly{};
    if (ell == 0) {
      if (!poly_is_zero(GP))
        throw std::domain_error("solve_static_exact: no solution for ell=0 rot data");
    } else {
      // E_T = -r G_P / sqrt(w); consistency with G_S
      ExactPoly ET = poly_scale(poly_shift(GP, 1), -inv_sw);
      ExactPoly mET = poly_add(poly_ddr(ET), poly_shift(ET, -1));
      require_same(poly_scale(mET, QScalar(Rational(-1))), GS, "rot E = G, S channel");
      auto [EP, ES] = solve_ps_exact(ell, poly_shift(GT, 1), a, 'S');
      if (!poly_is_zero(EP)) out.E.set(ell, m, CH_P, ExactProfile::global(a, EP));
      if (!poly_is_zero(ES)) out.E.set(ell, m, CH_S, ExactProfile::global(a, ES));
      if (!poly_is_zero(ET)) out.E.set(ell, m, CH_T, ExactProfile::global(a, ET));
    }
    // ----- H from F: div H = F, rot H = 0
    ExactPoly FP = get_global_poly(rhs.E, ell, m, CH_P);
    ExactPoly FS = ell > 0 ? get_global_poly(rhs.E, ell, m, CH_S) : ExactPoly{};
    ExactPoly FT = ell > 0 ? get_global_poly(rhs.E, ell, m, CH_T) : ExactPoly{};
    if (ell == 0) {
      if (!poly_is_zero(FP)) {
        std::ostringstream os;
        os << "solve_static_exact: solvability violated at mode (0," << m
           << "): kernel pairing nonzero";
        throw std::domain_error(os.str());
      }
    } else {
      ExactPoly HT = poly_scale(poly_shift(FP, 1), inv_sw);
      ExactPoly dHT = poly_add(poly_ddr(HT), poly_shift(HT, -1));
      require_same(dHT, FS, "div H = F, S channel");
      auto [HP, HS] = solve_ps_exact(ell, poly_scale(poly_shift(FT, 1), QScalar(Rational(-1))), a, 'P');
      if (!poly_is_zero(HP)) out.H.set(ell, m, CH_P, ExactProfile::global(a, HP));
      if (!poly_is_zero(HS)) out.H.set(ell, m, CH_S, ExactProfile::global(a, HS));
      if (!poly_is_zero(HT)) out.H.set(ell, m, CH_T, ExactProfile::global(a, HT));
    }
  }
  out.E.prune();
  out.H.prune();
  return out;
}

ExactPair iterate_L_exact(const ExactPair& pair, int j) {
  ExactPair cur = pair;
  for (int i = 0; i < j; ++i) cur = solve_static_exact(cur);
  return cur;
}

ExactPair growing_static(char side, int sigma, int m, const Rational& start) {
  ExactPair out;
  out.E.rank = 1;
  out.E.start = start;
  out.H.rank = 2;
  out.H.start = start;
  if (side == 'E') {
    auto plus = tower_D(1, +1, 0, sigma, m, start);
    auto minus = tower_D(1, -1, 0, sigma, m, start);
    if (!plus || !minus) throw std::domain_error("growing_static: empty family");
    // boundary condition on the S channel at r = a
    const ExactProfile* ps = plus->field.find(plus->ell, m, CH_S);
    const ExactProfile* ms = minus->field.find(minus->ell, m, CH_S);
    if (!ps || !ms) throw std::logic_error("growing_static: missing channels");
    QScalar cp = ps->pieces[0][0].coeff * QScalar(rat_pow(start, plus->homogeneity));
    QScalar cm = ms->pieces[0][0].coeff * QScalar(rat_pow(start, minus->homogeneity));
    QScalar c = -(cp / cm);
    out.E = field_add(plus->field, field_scale(minus->field, c));
  } else {
    auto plus = tower_R(2, +1, 0, sigma, m, start);
    auto minus = tower_R(2, -1, 0, sigma, m, start);
    if (!plus || !minus) throw std::domain_error("growing_static: empty family");
    const ExactProfile* pp = plus->field.find(plus->ell, m, CH_P);
    const ExactProfile* mp = minus->field.find(minus->ell, m, CH_P);
    if (!pp || !mp) throw std::logic_error("growing_static: missing channels");
    QScalar cp = pp->pieces[0][0].coeff * QScalar(rat_pow(start, plus->homogeneity));
    QScalar cm = mp->pieces[0][0].coeff * QScalar(rat_pow(start, minus->homogeneity));
    QScalar c = -(cp / cm);
    out.H = field_add(plus->field, field_scale(minus->field, c));
  }
  return out;
}

std::vector<ExactPair> growing_iterates(char side, int sigma, int m, int k_max,
                                        const Rational& start) {
  std::vector<ExactPair> out;
  out.push_back(growing_static(side, sigma, m, start));
  for (int k = 1; k <= k_max; ++k) out.push_back(solve_static_exact(out.back()));
  return out;
}

std::map<std::pair<int, int>, QScalar> tower_coefficients(const ExactField& f, char type) {
  std::map<std::pair<int, int>, QScalar> out;
  if (f.is_zero()) return out;
  // single-mode field expected
  int ell = -1, m = -1;
  for (const auto& [k, p] : f.parts) {
    if (p.is_zero()) continue;
    if (ell < 0) { ell = k.ell; m = k.m; }
    else if (ell != k.ell || m != k.m)
      throw std::logic_error("tower_coefficients: multi-mode field");
  }
  if (ell < 0) return out;
  int sigma = ell >= 1 ? ell - 1 : 0;
  // gather exponents
  std::set<int> alphas;
  for (const auto& [k, p] : f.parts) {
    if (p.breaks.size() != 1) throw std::logic_error("tower_coefficients: not global");
    for (const auto& t : p.pieces[0]) {
      if (t.lnpow > 0) throw std::logic_error("tower_coefficients: log content");
      alphas.insert(t.alpha);
    }
  }
  ExactField rem = f;
  for (int alpha : alphas) {
    for (int theta : {+1, -1}) {
      int height = theta > 0 ? alpha - sigma : alpha + sigma + kDimN;
      if (height < 0) continue;
      std::optional<TowerForm> tow;
      if (type == 'D') tow = tower_D(f.rank, theta, height, sigma, m, f.start);
      else tow = tower_R(f.rank, theta, height, sigma, m, f.start);
      if (!tow || tow->zero) continue;
      // coefficient from the first matching channel
      QScalar coef;
      bool found = false;
      for (const auto& [k, p] : tow->field.parts) {
        const ExactProfile* pr = rem.find(k.ell, k.m, k.chan);
        if (!pr) continue;
        for (const auto& t : pr->pieces[0]) {
          if (t.alpha != alpha) continue;
          coef = t.coeff / p.pieces[0][0].coeff;
          found = true;
          break;
        }
        if (found) break;
      }
      if (!found || coef.is_zero()) continue;
      rem = field_sub(rem, field_scale(tow->field, coef));
      auto key = std::make_pair(theta, height);
      auto it = out.find(key);
      if (it == out.end()) out.emplace(key, coef);
      else it->second += coef;
    }
  }
  if (!rem.is_zero())
    throw std::logic_error("tower_coefficients: residual content not matched by towers");
  return out;
}

QScalar zeta_height1(const ExactPair& iterate, char side) {
  (void)side;
  if (!iterate.H.is_zero()) {
    auto cs = tower_coefficients(iterate.H, 'R');
    auto it = cs.find({-1, 1});
    return it == cs.end() ? QScalar() : it->second;
  }
  auto cs = tower_coefficients(iterate.E, 'D');
  auto it = cs.find({-1, 1});
  return it == cs.end() ? QScalar() : it->second;
}

ExactPair dual_family(char which, int pm, int sigma, int m, int ell_power,
                      const MomentCutoff& cut, const Rational& start) {
  ExactPair base;
  base.E.rank = 1;
  base.E.start = start;
  base.H.rank = 2;
  base.H.start = start;
  ExactProfile eta = cut.eta(start);
  if (which == 'e') {
    auto t = tower_D(1, pm, 1, sigma, m, start);
    if (!t) throw std::domain_error("dual_family: empty family");
    base.E = field_radial_mul(t->field, eta);
  } else {
    auto t = tower_R(2, pm, 1, sigma, m, start);
    if (!t) throw std::domain_error("dual_family: empty family");
    base.H = field_radial_mul(t->field, eta);
  }
  for (int i = 0; i < ell_power; ++i) base = apply_M(base);
  return base;
}

// ============================================================== numeric path

namespace {

template <class R> struct ScalarPieces {
  // per-region particular solutions of r y' = h y + phi
  std::vector<NumPiece<R>> pieces;
};

// algebraic particular for an atom rhs of r y' = h y + c r^g ln^k (Mono only)
template <class R> std::vector<Atom<R>> euler1_atom(int h, const Atom<R>& t) {
  std::vector<Atom<R>> out;
  if (t.kind != AtomKind::Mono) throw std::logic_error("euler1_atom: Mono expected");
  if (t.alpha != h) {
    std::vector<Cx<R>> u(t.lnpow + 1);
    Cx<R> gh(R(t.alpha - h));
    u[t.lnpow] = t.c / gh;
    for (int i = t.lnpow - 1; i >= 0; --i) u[i] = -Cx<R>(R(i + 1)) * u[i + 1] / gh;
    for (int i = 0; i <= t.lnpow; ++i) out.push_back(Atom<R>::mono(u[i], t.alpha, i));
    return out;
  }
  // resonance: y = c r^h ln^{k+1}/(k+1)
  out.push_back(Atom<R>::mono(t.c / Cx<R>(R(t.lnpow + 1)), h, t.lnpow + 1));
  return out;
}

// particular for the Chebyshev part via y(r) = r^h int_{b}^{r} t^{-h-1} phi dt
template <class R>
NumPiece<R> vop_piece(int h, const NumProfile<R>& phi, size_t pidx, int gl_order) {
  NumPiece<R> out;
  const auto& src = phi.pieces[pidx];
  for (const auto& a : src.atoms) {
    auto part = euler1_atom<R>(h, a);
    out.atoms.insert(out.atoms.end(), part.begin(), part.end());
  }
  if (!src.cheb.empty()) {
    R lo = phi.breaks[pidx], hi = phi.breaks[pidx + 1];
    int n = std::max<int>(int(src.cheb.size()) - 1, 16);
    auto pts = cheb_points<R>(n);
    std::vector<Cx<R>> vals(n + 1);
    // nodes are ordered decreasing in cheb_points; integrate in increasing r
    std::vector<R> rs(n + 1);
    for (int k = 0; k <= n; ++k) rs[k] = (lo + hi) / R(2) + (hi - lo) / R(2) * pts[k];
    std::vector<Cx<R>> acc(n + 1);
    Cx<R> run{};
    auto f = [&](const R& t) -> Cx<R> {
      R tt = (R(2) * t - lo - hi) / (hi - lo);
      return cheb_eval<R>(src.cheb, tt) * Cx<R>(pow(t, R(-h - 1)));
    };
    R prev = lo;
    for (int k = n; k >= 0; --k) {  // increasing r
      run += gl_integrate<R>(f, prev, rs[k], gl_order);
      acc[k] = run;
      prev = rs[k];
    }
    for (int k = 0; k <= n; ++k) vals[k] = acc[k] * Cx<R>(pow(rs[k], R(h)));
    out.cheb = cheb_fit<R>(vals);
  }
  return out;
}

template <class R> Cx<R> piece_value(const NumPiece<R>& pc, const R& lo, const R& hi, const R& r,
                                     bool tail) {
  Cx<R> acc{};
  for (const auto& a : pc.atoms) acc += atom_eval(a, r);
  if (!pc.cheb.empty() && !tail) {
    R t = (R(2) * r - lo - hi) / (hi - lo);
    acc += cheb_eval<R>(pc.cheb, t);
  }
  return acc;
}

// Solve the coupled (P,S) block: r v' = A v + (0, g2), boundary condition
// selected by bc ('S': (l+1)y+ - l y- = 0 at a; 'P': y+ + y- = 0 at a).
template <class R>
std::pair<NumProfile<R>, NumProfile<R>> solve_ps_num(int ell, const NumProfile<R>& g2,
                                                     char bc, int gl_order) {
  using C = Cx<R>;
  int hp = ell - 1, hm = -ell - 2;
  size_t nreg = g2.pieces.size();
  NumProfile<R> yplus, yminus;
  yplus.breaks = g2.breaks;
  yminus.breaks = g2.breaks;
  yplus.pieces.resize(nreg);
  yminus.pieces.resize(nreg);
  C inv2l1(R(1) / R(2 * ell + 1));
  NumProfile<R> phip = profile_scaled(g2, inv2l1);
  NumProfile<R> phim = profile_scaled(g2, -inv2l1);
  for (size_t i = 0; i < nreg; ++i) {
    yplus.pieces[i] = vop_piece<R>(hp, phip, i, gl_order);
    yminus.pieces[i] = vop_piece<R>(hm, phim, i, gl_order);
  }
  // thread the growing branch backward from the tail (coefficient 0 there)
  size_t last = nreg - 1;
  std::vector<C> Cp(nreg), Cm(nreg);
  Cp[last] = C{};
  for (size_t i = last; i-- > 0;) {
    R b = yplus.breaks[i + 1];
    R lo_i = yplus.breaks[i];
    R hi_i = yplus.breaks[i + 1];
    R lo_n = yplus.breaks[i + 1];
    R hi_n = (i + 2 < yplus.breaks.size()) ? yplus.breaks[i + 2] : R(0);
    C right = piece_value(yplus.pieces[i + 1], lo_n, hi_n, b, i + 1 == last) +
              Cp[i + 1] * C(pow(b, R(hp)));
    C left = piece_value(yplus.pieces[i], lo_i, hi_i, b, false);
    Cp[i] = (right - left) / C(pow(b, R(hp)));
  }
  // boundary condition determines the decaying branch at the inner radius
  R a = yplus.breaks.front();
  C ypa = piece_value(yplus.pieces[0], yplus.breaks[0],
                      nreg > 1 ? yplus.breaks[1] : R(0), a, nreg == 1) +
          Cp[0] * C(pow(a, R(hp)));
  C yma = piece_value(yminus.pieces[0], yminus.breaks[0],
                      nreg > 1 ? yminus.breaks[1] : R(0), a, nreg == 1);
  if (bc == 'S') {
    C num = C(R(ell + 1)) * ypa - C(R(ell)) * yma;
    Cm[0] = num / (C(R(ell)) * C(pow(a, R(hm))));
  } else {
    Cm[0] = -(ypa + yma) / C(pow(a, R(hm)));
  }
  for (size_t i = 0; i + 1 < nreg; ++i) {
    R b = yminus.breaks[i + 1];
    R lo_i = yminus.breaks[i], hi_i = yminus.breaks[i + 1];
    R lo_n = yminus.breaks[i + 1];
    R hi_n = (i + 2 < yminus.breaks.size()) ? yminus.breaks[i + 2] : R(0);
    C left = piece_value(yminus.pieces[i], lo_i, hi_i, b, false) + Cm[i] * C(pow(b, R(hm)));
    C right = piece_value(yminus.pieces[i + 1], lo_n, hi_n, b, i + 1 == last);
    Cm[i + 1] = (left - right) / C(pow(b, R(hm)));
  }
  for (size_t i = 0; i < nreg; ++i) {
    yplus.pieces[i].atoms.push_back(Atom<R>::mono(Cp[i], hp));
    yminus.pieces[i].atoms.push_back(Atom<R>::mono(Cm[i], hm));
  }
  // v = S y, columns (sqrt w, l+1), (sqrt w, -l)
  R sw = sqrt(R(ell) * R(ell + 1));
  NumProfile<R> vP = profile_sum(profile_scaled(yplus, C(sw)), profile_scaled(yminus, C(sw)));
  NumProfile<R> vS = profile_sum(profile_scaled(yplus, C(R(ell + 1))),
                                 profile_scaled(yminus, C(R(-ell))));
  return {vP, vS};
}

template <class R> R profile_scale_est(const NumProfile<R>& p) {
  R mx(0);
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    for (const auto& a : p.pieces[i].atoms) {
      R v = abs(a.c);
      if (v > mx) mx = v;
    }
    for (const auto& c : p.pieces[i].cheb) {
      R v = abs(c);
      if (v > mx) mx = v;
    }
  }
  return mx;
}

}  // namespace

template <class R> FieldPair<R> solve_static(const FieldPair<R>& rhs, const StaticOpts& opt) {
  if (rhs.E.rank != 1 || rhs.H.rank != 2)
    throw std::domain_error("solve_static: rank pair (1,2) expected");
  using C = Cx<R>;
  FieldPair<R> out;
  out.E.rank = 1;
  out.E.start = rhs.E.start;
  out.H.rank = 2;
  out.H.start = rhs.H.start;
  std::set<std::pair<int, int>> modes;
  for (const auto& [k, p] : rhs.E.parts) modes.insert({k.ell, k.m});
  for (const auto& [k, p] : rhs.H.parts) modes.insert({k.ell, k.m});
  const R start = rhs.E.start;
  for (auto [ell, m] : modes) {
    R sw = sqrt(R(ell) * R(ell + 1));
    auto grab = [&](const ModeField<R>& f, int chan) -> NumProfile<R> {
      const NumProfile<R>* p = f.find(ell, m, chan);
      return p ? *p : NumProfile<R>::zero(start);
    };
    if (ell == 0) {
      // only the trivial kernel modes live here; no static solution exists
      R fe = profile_scale_est(grab(rhs.E, CH_P));
      R fh = profile_scale_est(grab(rhs.H, CH_P));
      if (double(fe) > opt.class_tol || double(fh) > opt.class_tol) {
        std::ostringstream os;
        os << "solve_static: solvability violated at mode (0," << m << ")";
        throw std::domain_error(os.str());
      }
      continue;
    }
    // E from G
    {
      NumProfile<R> GP = grab(rhs.H, CH_P), GT = grab(rhs.H, CH_T);
      NumProfile<R> ET = profile_scaled(profile_rshift(GP, 1), C(R(-1) / sw));
      auto br = merge_breaks_num(ET.breaks, GT.breaks);
      ET.refine(br);
      NumProfile<R> g2 = profile_rshift(GT, 1);
      g2.refine(br);
      auto [EP, ES] = solve_ps_num<R>(ell, g2, 'S', opt.gl_order);
      out.E.set(ell, m, CH_P, EP);
      out.E.set(ell, m, CH_S, ES);
      out.E.set(ell, m, CH_T, ET);
    }
    // H from F
    {
      NumProfile<R> FP = grab(rhs.E, CH_P), FT = grab(rhs.E, CH_T);
      NumProfile<R> HT = profile_scaled(profile_rshift(FP, 1), C(R(1) / sw));
      NumProfile<R> g2 = profile_scaled(profile_rshift(FT, 1), C(R(-1)));
      auto [HP, HS] = solve_ps_num<R>(ell, g2, 'P', opt.gl_order);
      out.H.set(ell, m, CH_P, HP);
      out.H.set(ell, m, CH_S, HS);
      out.H.set(ell, m, CH_T, HT);
    }
  }
  return out;
}

template <class R> FieldPair<R> iterate_L(const FieldPair<R>& pair, int j, const StaticOpts& opt) {
  FieldPair<R> cur = pair;
  for (int i = 0; i < j; ++i) cur = solve_static(cur, opt);
  return cur;
}

// ---------------------------------------------------------------- splits

namespace {

// second-order Poisson solve per mode: u'' + 2u'/r - w u / r^2 = rho,
// u(a) = 0, no growing branch r^ell in the tail.
template <class R> NumProfile<R> poisson_solve(int ell, const NumProfile<R>& rho, int gl_order) {
  using C = Cx<R>;
  int hp = ell, hm = -ell - 1;
  size_t nreg = rho.pieces.size();
  NumProfile<R> u;
  u.breaks = rho.breaks;
  u.pieces.resize(nreg);
  // particulars
  for (size_t i = 0; i < nreg; ++i) {
    const auto& src = rho.pieces[i];
    for (const auto& t : src.atoms) {
      if (t.kind != AtomKind::Mono) throw std::logic_error("poisson_solve: Mono rhs expected");
      // ansatz r^{g+2} sum u_i ln^i with P(alpha) = alpha(alpha+1) - w
      int alpha = t.alpha + 2;
      long P = long(alpha) * (alpha + 1) - long(ell) * (ell + 1);
      if (P != 0) {
        std::vector<C> us(t.lnpow + 1);
        us[t.lnpow] = t.c / C(R(P));
        for (int i2 = t.lnpow - 1; i2 >= 0; --i2) {
          C corr = C(R((i2 + 1) * (2 * alpha + 1))) * us[i2 + 1];
          if (i2 + 2 <= t.lnpow) corr += C(R((i2 + 2) * (i2 + 1))) * us[i2 + 2];
          us[i2] = -corr / C(R(P));
        }
        for (int i2 = 0; i2 <= t.lnpow; ++i2)
          u.pieces[i].atoms.push_back(Atom<R>::mono(us[i2], alpha, i2));
      } else {
        // resonance: escalate one log power
        std::vector<C> us(t.lnpow + 2);
        us[t.lnpow + 1] = t.c / C(R((t.lnpow + 1) * (2 * alpha + 1)));
        for (int i2 = t.lnpow; i2 >= 1; --i2) {
          C corr = C(R((i2 + 1) * i2)) * us[i2 + 1];
          us[i2] = -corr / C(R(i2 * (2 * alpha + 1)));
        }
        for (int i2 = 1; i2 <= t.lnpow + 1; ++i2)
          u.pieces[i].atoms.push_back(Atom<R>::mono(us[i2], alpha, i2));
      }
    }
    if (!src.cheb.empty()) {
      R lo = rho.breaks[i], hi = rho.breaks[i + 1];
      int n = std::max<int>(int(src.cheb.size()) - 1, 16);
      auto pts = cheb_points<R>(n);
      std::vector<R> rs(n + 1);
      for (int k = 0; k <= n; ++k) rs[k] = (lo + hi) / R(2) + (hi - lo) / R(2) * pts[k];
      auto fsrc = [&](const R& t) -> Cx<R> {
        R tt = (R(2) * t - lo - hi) / (hi - lo);
        return cheb_eval<R>(src.cheb, tt);
      };
      // y_p = (1/(2l+1)) [u1(r) int t^{1-l} rho - u2(r) int t^{l+2} rho]
      std::vector<C> J1(n + 1), J2(n + 1);
      C run1{}, run2{};
      R prev = lo;
      auto f1 = [&](const R& t) { return fsrc(t) * Cx<R>(pow(t, R(1 - ell))); };
      auto f2 = [&](const R& t) { return fsrc(t) * Cx<R>(pow(t, R(ell + 2))); };
      for (int k = n; k >= 0; --k) {
        run1 += gl_integrate<R>(f1, prev, rs[k], gl_order);
        run2 += gl_integrate<R>(f2, prev, rs[k], gl_order);
        J1[k] = run1;
        J2[k] = run2;
        prev = rs[k];
      }
      std::vector<C> vals(n + 1);
      for (int k = 0; k <= n; ++k) {
        vals[k] = (C(pow(rs[k], R(hp))) * J1[k] - C(pow(rs[k], R(hm))) * J2[k]) /
                  C(R(2 * ell + 1));
      }
      u.pieces[i].cheb = cheb_fit<R>(vals);
    }
  }
  // derivative profiles for threading continuity of (u, u')
  // thread hp branch backwards (0 in tail), then bc at a, then hm forwards.
  std::vector<C> Cp(nreg), Cm(nreg);
  Cp[nreg - 1] = C{};
  auto val_and_deriv = [&](size_t i, const R& r, C& v, C& dv) {
    v = C{};
    dv = C{};
    const auto& pc = u.pieces[i];
    for (const auto& at : pc.atoms) {
      v += atom_eval(at, r);
      for (const auto& da : atom_ddr(at)) dv += atom_eval(da, r);
    }
    if (!pc.cheb.empty()) {
      R lo = u.breaks[i], hi = u.breaks[i + 1];
      R t = (R(2) * r - lo - hi) / (hi - lo);
      v += cheb_eval<R>(pc.cheb, t);
      auto dcoef = cheb_derivative<R>(pc.cheb);
      dv += cheb_eval<R>(dcoef, t) * Cx<R>(R(2) / (hi - lo));
    }
  };
  // continuity needs two conditions per break; with two branch constants per
  // region this determines everything once the tail and bc rows are fixed.
  // Solve the little linear system explicitly.
  size_t nun = 2 * nreg;
  std::vector<std::vector<C>> Amat(nun, std::vector<C>(nun + 1, C{}));
  size_t row = 0;
  for (size_t i = 0; i + 1 < nreg; ++i) {
    R b = u.breaks[i + 1];
    C v1, d1, v2, d2;
    val_and_deriv(i, b, v1, d1);
    val_and_deriv(i + 1, b, v2, d2);
    // value continuity
    Amat[row][2 * i] = C(pow(b, R(hp)));
    Amat[row][2 * i + 1] = C(pow(b, R(hm)));
    Amat[row][2 * (i + 1)] = -C(pow(b, R(hp)));
    Amat[row][2 * (i + 1) + 1] = -C(pow(b, R(hm)));
    Amat[row][nun] = v2 - v1;
    ++row;
    // derivative continuity
    Amat[row][2 * i] = C(R(hp)) * C(pow(b, R(hp - 1)));
    Amat[row][2 * i + 1] = C(R(hm)) * C(pow(b, R(hm - 1)));
    Amat[row][2 * (i + 1)] = -C(R(hp)) * C(pow(b, R(hp - 1)));
    Amat[row][2 * (i + 1) + 1] = -C(R(hm)) * C(pow(b, R(hm - 1)));
    Amat[row][nun] = d2 - d1;
    ++row;
  }
  // tail: no growing branch
  Amat[row][2 * (nreg - 1)] = C(R(1));
  Amat[row][nun] = C{};
  ++row;
  // dirichlet at a
  {
    R a = u.breaks.front();
    C v0, d0;
    val_and_deriv(0, a, v0, d0);
    Amat[row][0] = C(pow(a, R(hp)));
    Amat[row][1] = C(pow(a, R(hm)));
    Amat[row][nun] = -v0;
    ++row;
  }
  // gaussian elimination
  for (size_t col = 0; col < nun; ++col) {
    size_t piv = col;
    R best(0);
    for (size_t r2 = col; r2 < nun; ++r2) {
      R m2 = abs(Amat[r2][col]);
      if (m2 > best) { best = m2; piv = r2; }
    }
    std::swap(Amat[col], Amat[piv]);
    for (size_t r2 = 0; r2 < nun; ++r2) {
      if (r2 == col) continue;
      if (abs(Amat[r2][col]) == R(0)) continue;
      C f = Amat[r2][col] / Amat[col][col];
      for (size_t k = col; k <= nun; ++k) Amat[r2][k] -= f * Amat[col][k];
    }
  }
  for (size_t i = 0; i < nreg; ++i) {
    Cp[i] = Amat[2 * i][nun] / Amat[2 * i][2 * i];
    Cm[i] = Amat[2 * i + 1][nun] / Amat[2 * i + 1][2 * i + 1];
  }
  for (size_t i = 0; i < nreg; ++i) {
    u.pieces[i].atoms.push_back(Atom<R>::mono(Cp[i], hp));
    u.pieces[i].atoms.push_back(Atom<R>::mono(Cm[i], hm));
  }
  return u;
}

}  // namespace

std::vector<ThetaEntry> theta_set(double s, int J) {
  std::vector<ThetaEntry> out;
  for (int k = 0; k <= J - 1; ++k)
    for (int sigma = 0; sigma < 64; ++sigma) {
      if (!(sigma < s - kDimN / 2.0 - k - 1)) break;
      int mu = 2 * (sigma + 1) + 1;
      for (int m = 1; m <= mu; ++m) out.push_back({k, sigma, m});
    }
  return out;
}

std::vector<ThetaEntry> theta_tilde_set(int j) {
  std::vector<ThetaEntry> out;
  for (int k = 0; k <= j; ++k)
    for (int sigma = 0; 2 * sigma <= k; ++sigma) {
      int mu = 2 * (sigma + 1) + 1;
      for (int m = 1; m <= mu; ++m) out.push_back({k, sigma, m});
    }
  return out;
}

template <class R> const FieldPair<R>& GrowingCache<R>::get(char side, int sigma, int m, int k) {
  auto key = std::make_tuple(side, sigma, m, k);
  auto it = items.find(key);
  if (it != items.end()) return it->second;
  const ExactPair& ex = get_exact(side, sigma, m, k);
  auto [jt, ok] = items.emplace(key, to_numeric_pair<R>(ex));
  return jt->second;
}

template <class R>
const ExactPair& GrowingCache<R>::get_exact(char side, int sigma, int m, int k) {
  auto key = std::make_tuple(side, sigma, m, k);
  auto it = exact_items.find(key);
  if (it != exact_items.end()) return it->second;
  auto iter = growing_iterates(side, sigma, m, k, start);
  for (int kk = 0; kk <= k; ++kk) {
    auto kk_key = std::make_tuple(side, sigma, m, kk);
    if (!exact_items.count(kk_key)) exact_items.emplace(kk_key, iter[kk]);
  }
  return exact_items.at(key);
}

template struct GrowingCache<double>;
template struct GrowingCache<BigReal>;

template <class R>
HodgeSplit<R> hodge_split(const FieldPair<R>& pair, double s, const StaticOpts& opt) {
  using C = Cx<R>;
  if (s <= 1 - kDimN / 2.0) throw std::domain_error("hodge_split: weight too small");
  HodgeSplit<R> out;
  out.trivial.E.rank = out.regular.E.rank = 1;
  out.trivial.H.rank = out.regular.H.rank = 2;
  out.trivial.E.start = out.regular.E.start = pair.E.start;
  out.trivial.H.start = out.regular.H.start = pair.H.start;
  const R start = pair.E.start;

  std::set<std::pair<int, int>> modesE, modesH;
  for (const auto& [k, p] : pair.E.parts) modesE.insert({k.ell, k.m});
  for (const auto& [k, p] : pair.H.parts) modesH.insert({k.ell, k.m});

  for (auto [ell, m] : modesE) {
    auto grab = [&](int chan) -> NumProfile<R> {
      const NumProfile<R>* p = pair.E.find(ell, m, chan);
      return p ? *p : NumProfile<R>::zero(start);
    };
    if (ell == 0) {
      out.trivial.E.set(0, m, CH_P, grab(CH_P));
      continue;
    }
    R sw = sqrt(R(ell) * R(ell + 1));
    NumProfile<R> FP = grab(CH_P), FS = grab(CH_S), FT = grab(CH_T);
    // div F = F_P' + 2 F_P / r - sw F_S / r
    NumProfile<R> rho = profile_sum(
        profile_sum(profile_deriv(FP), profile_scaled(profile_rshift(FP, -1), C(R(2)))),
        profile_scaled(profile_rshift(FS, -1), C(-sw)));
    NumProfile<R> chi = poisson_solve<R>(ell, rho, opt.gl_order);
    NumProfile<R> FrP = profile_deriv(chi);
    NumProfile<R> FrS = profile_scaled(profile_rshift(chi, -1), C(sw));
    out.trivial.E.set(ell, m, CH_P, FrP);
    out.trivial.E.set(ell, m, CH_S, FrS);
    out.regular.E.set(ell, m, CH_P, profile_sum(FP, profile_scaled(FrP, C(R(-1)))));
    out.regular.E.set(ell, m, CH_S, profile_sum(FS, profile_scaled(FrS, C(R(-1)))));
    out.regular.E.set(ell, m, CH_T, FT);
  }
  for (auto [ell, m] : modesH) {
    auto grab = [&](int chan) -> NumProfile<R> {
      const NumProfile<R>* p = pair.H.find(ell, m, chan);
      return p ? *p : NumProfile<R>::zero(start);
    };
    if (ell == 0) {
      out.trivial.H.set(0, m, CH_P, grab(CH_P));
      continue;
    }
    R sw = sqrt(R(ell) * R(ell + 1));
    NumProfile<R> GP = grab(CH_P), GS = grab(CH_S), GT = grab(CH_T);
    // rho_G = sw G_P / r - (G_S' + G_S / r)
    NumProfile<R> rhoG = profile_sum(
        profile_scaled(profile_rshift(GP, -1), C(sw)),
        profile_scaled(profile_sum(profile_deriv(GS), profile_rshift(GS, -1)), C(R(-1))));
    // rot-free part with bc: same block system as the H solve with rhs rho_G
    NumProfile<R> g2 = profile_scaled(profile_rshift(rhoG, 1), C(R(-1)));
    auto [GrP, GrS] = solve_ps_num<R>(ell, g2, 'P', opt.gl_order);
    out.regular.H.set(ell, m, CH_P, GrP);
    out.regular.H.set(ell, m, CH_S, GrS);
    out.regular.H.set(ell, m, CH_T, GT);
    out.trivial.H.set(ell, m, CH_P, profile_sum(GP, profile_scaled(GrP, C(R(-1)))));
    out.trivial.H.set(ell, m, CH_S, profile_sum(GS, profile_scaled(GrS, C(R(-1)))));
  }

  // recover tower coefficients by pairing with the growing statics
  static thread_local GrowingCache<R> cache;
  NormOptions nopt;
  nopt.gl_order = opt.gl_order;
  for (int sigma = 0; sigma <= 2; ++sigma) {
    if (!(sigma < s - kDimN / 2.0)) continue;
    int ell = sigma + 1;
    for (int m = 1; m <= 2 * ell + 1; ++m) {
      bool haveE = modesE.count({ell, m}) > 0, haveH = modesH.count({ell, m}) > 0;
      if (haveE) {
        const FieldPair<R>& Ep = cache.get('E', sigma, m, 0);
        out.phi[{sigma, m}] = -field_inner(pair.E, Ep.E, 0.0, nopt);
      }
      if (haveH) {
        const FieldPair<R>& Hp = cache.get('H', sigma, m, 0);
        out.psi[{sigma, m}] = -field_inner(pair.H, Hp.H, 0.0, nopt);
      }
    }
  }
  return out;
}

template <class R>
RegReport reg_membership(const FieldPair<R>& pair, double s, int J, const StaticOpts& opt) {
  RegReport rep;
  NormOptions nopt;
  nopt.gl_order = opt.gl_order;
  // slot conditions: div F = 0, rot G = 0, tangential trace of G vanishes
  R scale = pair_norm(pair, 0.0, nopt) + R(1e-300);
  {
    ModeField<R> dF = div(pair.E);
    ModeField<R> rG = rot(pair.H);
    std::vector<R> rs;
    for (int i = 0; i <= 40; ++i) rs.push_back(pair.E.start * R(1) + R(i) * R(0.6));
    R v1 = sample_max(dF, rs), v2 = sample_max(rG, rs);
    if (double(v1 / scale) > opt.class_tol) {
      rep.member = false;
      rep.worst = double(v1 / scale);
      rep.witness = "div F != 0";
      throw std::domain_error("reg_membership: pair not in the order-0 class (div F != 0)");
    }
    if (double(v2 / scale) > opt.class_tol)
      throw std::domain_error("reg_membership: pair not in the order-0 class (rot G != 0)");
  }
  static thread_local GrowingCache<R> cache;
  rep.member = true;
  for (const auto& e : theta_set(s, J)) {
    if (e.sigma > cache.sigma_max) continue;
    Cx<R> vE = pair_inner_product(pair, cache.get('E', e.sigma, e.m, e.k + 1), 0.0, nopt);
    Cx<R> vH = pair_inner_product(pair, cache.get('H', e.sigma, e.m, e.k + 1), 0.0, nopt);
    double aE = double(abs(vE) / scale), aH = double(abs(vH) / scale);
    if (aE > rep.worst) {
      rep.worst = aE;
      rep.witness = "<., E^{+," + std::to_string(e.k + 1) + "}> sigma=" + std::to_string(e.sigma) +
                    " m=" + std::to_string(e.m);
    }
    if (aH > rep.worst) {
      rep.worst = aH;
      rep.witness = "<., H^{+," + std::to_string(e.k + 1) + "}> sigma=" + std::to_string(e.sigma) +
                    " m=" + std::to_string(e.m);
    }
  }
  rep.member = rep.worst < opt.class_tol;
  return rep;
}

template <class R>
UpsilonSplit<R> upsilon_split(const FieldPair<R>& pair, double s, int J, const MomentCutoff& cut,
                              const StaticOpts& opt) {
  using C = Cx<R>;
  UpsilonSplit<R> out;
  out.upsilon.E.rank = 1;
  out.upsilon.H.rank = 2;
  out.upsilon.E.start = pair.E.start;
  out.upsilon.H.start = pair.H.start;
  static thread_local GrowingCache<R> cache;
  NormOptions nopt;
  nopt.gl_order = opt.gl_order;
  Rational start_rat(1, 2);  // geometry default
  FieldPair<R> ups = out.upsilon;
  for (const auto& e : theta_set(s, J)) {
    if (e.sigma > cache.sigma_max) continue;
    C cE = pair_inner_product(pair, cache.get('E', e.sigma, e.m, e.k + 1), 0.0, nopt);
    C cH = pair_inner_product(pair, cache.get('H', e.sigma, e.m, e.k + 1), 0.0, nopt);
    C sgn = (e.k % 2 == 0) ? C(R(1)) : C(R(-1));
    if (!(abs(cE) == R(0))) {
      ExactPair h = dual_family('h', -1, e.sigma, e.m, e.k + 2, cut, start_rat);
      ups = pair_sum(ups, pair_scaled(to_numeric_pair<R>(h), sgn * cE));
    }
    if (!(abs(cH) == R(0))) {
      ExactPair ee = dual_family('e', -1, e.sigma, e.m, e.k + 2, cut, start_rat);
      ups = pair_sum(ups, pair_scaled(to_numeric_pair<R>(ee), sgn * cH));
    }
  }
  out.upsilon = ups;
  out.regular = pair_sum(pair, pair_scaled(ups, Cx<R>(R(-1))));
  return out;
}

#define MAXLF_INST_SOLVER(R)                                                                  \
  template FieldPair<R> solve_static<R>(const FieldPair<R>&, const StaticOpts&);              \
  template FieldPair<R> iterate_L<R>(const FieldPair<R>&, int, const StaticOpts&);            \
  template HodgeSplit<R> hodge_split<R>(const FieldPair<R>&, double, const StaticOpts&);      \
  template RegReport reg_membership<R>(const FieldPair<R>&, double, int, const StaticOpts&);  \
  template UpsilonSplit<R> upsilon_split<R>(const FieldPair<R>&, double, int,                 \
                                            const MomentCutoff&, const StaticOpts&);

MAXLF_INST_SOLVER(double)
MAXLF_INST_SOLVER(BigReal)

}  // namespace maxlf
