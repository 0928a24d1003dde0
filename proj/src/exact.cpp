#include "maxlf/exact.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace maxlf {

ExactPoly poly_canon(ExactPoly p) {
  std::map<std::pair<int, int>, QScalar> acc;
  for (auto& t : p) {
    if (t.coeff.is_zero()) continue;
    auto key = std::make_pair(t.alpha, t.lnpow);
    auto it = acc.find(key);
    if (it == acc.end()) acc.emplace(key, t.coeff);
    else it->second += t.coeff;
  }
  ExactPoly out;
  for (auto& [k, c] : acc) {
    if (!c.is_zero()) out.push_back({c, k.first, k.second});
  }
  return out;
}

ExactPoly poly_add(const ExactPoly& x, const ExactPoly& y) {
  ExactPoly p = x;
  p.insert(p.end(), y.begin(), y.end());
  return poly_canon(std::move(p));
}

ExactPoly poly_scale(const ExactPoly& x, const QScalar& c) {
  if (c.is_zero()) return {};
  ExactPoly p = x;
  for (auto& t : p) t.coeff *= c;
  return poly_canon(std::move(p));
}

ExactPoly poly_mul(const ExactPoly& x, const ExactPoly& y) {
  ExactPoly p;
  for (const auto& tx : x)
    for (const auto& ty : y)
      p.push_back({tx.coeff * ty.coeff, tx.alpha + ty.alpha, tx.lnpow + ty.lnpow});
  return poly_canon(std::move(p));
}

ExactPoly poly_ddr(const ExactPoly& x) {
  ExactPoly p;
  for (const auto& t : x) {
    QScalar ca = t.coeff;
    QScalar alpha{Rational(t.alpha)};
    p.push_back({ca * alpha, t.alpha - 1, t.lnpow});
    if (t.lnpow > 0) p.push_back({ca * QScalar(Rational(t.lnpow)), t.alpha - 1, t.lnpow - 1});
  }
  return poly_canon(std::move(p));
}

ExactPoly poly_shift(const ExactPoly& x, int dalpha) {
  ExactPoly p = x;
  for (auto& t : p) t.alpha += dalpha;
  return p;
}

bool poly_is_zero(const ExactPoly& x) {
  for (const auto& t : x)
    if (!t.coeff.is_zero()) return false;
  return true;
}

bool poly_log_free(const ExactPoly& x) {
  for (const auto& t : x)
    if (t.lnpow > 0 && !t.coeff.is_zero()) return false;
  return true;
}

int poly_max_alpha(const ExactPoly& x) {
  int a = INT_MIN;
  for (const auto& t : x) a = std::max(a, t.alpha);
  return a;
}

bool ExactProfile::is_zero() const {
  for (const auto& p : pieces)
    if (!poly_is_zero(p)) return false;
  return true;
}

bool ExactProfile::log_free() const {
  for (const auto& p : pieces)
    if (!poly_log_free(p)) return false;
  return true;
}

void ExactProfile::refine(const std::vector<Rational>& cuts) {
  for (const auto& c : cuts) {
    if (c < breaks.front()) continue;
    auto it = std::lower_bound(breaks.begin(), breaks.end(), c);
    if (it != breaks.end() && *it == c) continue;
    size_t idx = size_t(it - breaks.begin());
    breaks.insert(it, c);
    pieces.insert(pieces.begin() + idx, pieces[idx - 1]);
  }
}

std::vector<Rational> merge_breaks(const std::vector<Rational>& a,
                                   const std::vector<Rational>& b) {
  std::vector<Rational> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

static void align(ExactProfile& x, ExactProfile& y) {
  if (x.breaks.front() != y.breaks.front())
    throw std::logic_error("profiles start at different radii");
  auto breaks = merge_breaks(x.breaks, y.breaks);
  x.refine(breaks);
  y.refine(breaks);
}

ExactProfile profile_add(const ExactProfile& x0, const ExactProfile& y0) {
  ExactProfile x = x0, y = y0;
  align(x, y);
  for (size_t i = 0; i < x.pieces.size(); ++i) x.pieces[i] = poly_add(x.pieces[i], y.pieces[i]);
  return x;
}

ExactProfile profile_scale(const ExactProfile& x, const QScalar& c) {
  ExactProfile p = x;
  for (auto& q : p.pieces) q = poly_scale(q, c);
  return p;
}

ExactProfile profile_mul(const ExactProfile& x0, const ExactProfile& y0) {
  ExactProfile x = x0, y = y0;
  align(x, y);
  for (size_t i = 0; i < x.pieces.size(); ++i) x.pieces[i] = poly_mul(x.pieces[i], y.pieces[i]);
  return x;
}

ExactProfile profile_ddr(const ExactProfile& x) {
  ExactProfile p = x;
  for (auto& q : p.pieces) q = poly_ddr(q);
  return p;
}

ExactProfile profile_shift(const ExactProfile& x, int dalpha) {
  ExactProfile p = x;
  for (auto& q : p.pieces) q = poly_shift(q, dalpha);
  return p;
}

void ExactField::set(int ell, int m, int chan, ExactProfile p) {
  parts[ExactKey{ell, m, chan}] = std::move(p);
}

const ExactProfile* ExactField::find(int ell, int m, int chan) const {
  auto it = parts.find(ExactKey{ell, m, chan});
  return it == parts.end() ? nullptr : &it->second;
}

void ExactField::prune() {
  for (auto it = parts.begin(); it != parts.end();) {
    if (it->second.is_zero()) it = parts.erase(it);
    else ++it;
  }
}

bool ExactField::is_zero() const {
  for (const auto& [k, p] : parts)
    if (!p.is_zero()) return false;
  return true;
}

bool ExactField::log_free() const {
  for (const auto& [k, p] : parts)
    if (!p.log_free()) return false;
  return true;
}

ExactField field_add(const ExactField& x, const ExactField& y) {
  if (x.rank != y.rank) throw std::logic_error("field_add: rank mismatch");
  ExactField out = x;
  for (const auto& [k, p] : y.parts) {
    auto it = out.parts.find(k);
    if (it == out.parts.end()) out.parts.emplace(k, p);
    else it->second = profile_add(it->second, p);
  }
  out.prune();
  return out;
}

ExactField field_scale(const ExactField& x, const QScalar& c) {
  ExactField out = x;
  for (auto& [k, p] : out.parts) p = profile_scale(p, c);
  out.prune();
  return out;
}

ExactField field_sub(const ExactField& x, const ExactField& y) {
  return field_add(x, field_scale(y, QScalar(Rational(-1))));
}

static ExactField apply_stencil(const ExactField& x, bool is_rot) {
  ExactField out;
  out.rank = x.rank + (is_rot ? 1 : -1);
  out.start = x.start;
  if (out.rank < 0 || out.rank > 3)
    throw std::domain_error(is_rot ? "rot: top rank" : "div: bottom rank");
  for (const auto& [key, prof] : x.parts) {
    long w = long(key.ell) * (key.ell + 1);
    auto terms = is_rot ? rot_stencil(x.rank, key.ell) : div_stencil(x.rank, key.ell);
    for (const auto& t : terms) {
      if (t.from != key.chan) continue;
      QScalar c;
      c.w = w;
      c.a = t.rat;
      c.b = t.root;
      c.canon();
      ExactProfile piece = t.dr ? profile_ddr(prof) : profile_shift(prof, -1);
      piece = profile_scale(piece, c);
      ExactKey ko{key.ell, key.m, t.to};
      auto it = out.parts.find(ko);
      if (it == out.parts.end()) out.parts.emplace(ko, std::move(piece));
      else it->second = profile_add(it->second, piece);
    }
  }
  out.prune();
  return out;
}

ExactField field_rot(const ExactField& x) { return apply_stencil(x, true); }
ExactField field_div(const ExactField& x) { return apply_stencil(x, false); }

ExactField field_laplace(const ExactField& x) {
  ExactField out;
  out.rank = x.rank;
  out.start = x.start;
  if (x.rank < 3) out = field_add(out, field_div(field_rot(x)));
  if (x.rank > 0) out = field_add(out, field_rot(field_div(x)));
  return out;
}

ExactField field_radial_mul(const ExactField& x, const ExactProfile& eta) {
  ExactField out = x;
  for (auto& [k, p] : out.parts) p = profile_mul(p, eta);
  out.prune();
  return out;
}

ExactPair pair_add(const ExactPair& x, const ExactPair& y) {
  return {field_add(x.E, y.E), field_add(x.H, y.H)};
}
ExactPair pair_sub(const ExactPair& x, const ExactPair& y) {
  return {field_sub(x.E, y.E), field_sub(x.H, y.H)};
}
ExactPair pair_scale(const ExactPair& x, const QScalar& c) {
  return {field_scale(x.E, c), field_scale(x.H, c)};
}
ExactPair apply_M(const ExactPair& x) { return {field_div(x.H), field_rot(x.E)}; }

// ----------------------------------------------------------------- pairings

static bool dyadic_power(const Rational& ratio, long& k) {
  BigInt num = numerator(ratio), den = denominator(ratio);
  if (num == 1) {
    long e = 0;
    while (den % 2 == 0) { den /= 2; ++e; }
    if (den != 1) return false;
    k = -e;
    return true;
  }
  if (den == 1) {
    long e = 0;
    while (num % 2 == 0) { num /= 2; ++e; }
    if (num != 1) return false;
    k = e;
    return true;
  }
  return false;
}

LogValue power_integral(int p, const Rational& x, const Rational& y, bool y_inf) {
  LogValue v{};
  if (y_inf) {
    if (p >= -1) throw std::domain_error("power_integral: divergent tail");
    v.rat = QScalar(-rat_pow(x, p + 1) / (p + 1));
    return v;
  }
  if (p == -1) {
    long k = 0;
    if (!dyadic_power(y / x, k))
      throw std::domain_error("power_integral: non-dyadic log interval");
    v.ln2 = QScalar(Rational(k));
    return v;
  }
  v.rat = QScalar((rat_pow(y, p + 1) - rat_pow(x, p + 1)) / (p + 1));
  return v;
}

LogValue exact_inner(const ExactProfile& u0, const ExactProfile& v0) {
  ExactProfile u = u0, v = v0;
  align(u, v);
  LogValue acc{};
  for (size_t i = 0; i < u.pieces.size(); ++i) {
    bool tail = (i + 1 == u.pieces.size());
    for (const auto& tu : u.pieces[i]) {
      for (const auto& tv : v.pieces[i]) {
        if (tu.lnpow + tv.lnpow > 0)
          throw std::domain_error("exact_inner: log terms present");
        QScalar c = tu.coeff * conj(tv.coeff);
        if (c.is_zero()) continue;
        LogValue I = power_integral(tu.alpha + tv.alpha + 2, u.breaks[i],
                                    tail ? Rational(0) : u.breaks[i + 1], tail);
        acc.rat += c * I.rat;
        acc.ln2 += c * I.ln2;
      }
    }
  }
  return acc;
}

LogValue exact_field_inner(const ExactField& u, const ExactField& v) {
  if (u.rank != v.rank) throw std::logic_error("exact_field_inner: rank mismatch");
  LogValue acc{};
  for (const auto& [k, pu] : u.parts) {
    const ExactProfile* pv = v.find(k.ell, k.m, k.chan);
    if (!pv) continue;
    LogValue I = exact_inner(pu, *pv);
    acc.rat += I.rat;
    acc.ln2 += I.ln2;
  }
  return acc;
}

LogValue exact_pair_inner(const ExactPair& u, const ExactPair& v) {
  LogValue a = exact_field_inner(u.E, v.E);
  LogValue b = exact_field_inner(u.H, v.H);
  return a + b;
}

// ------------------------------------------------ numeric-valued pairings

// antiderivative of r^p ln^j r at r
template <class R> static Cx<R> primitive(int p, int j, const R& r) {
  R lr = log(r);
  if (p == -1) {
    R v = R(1);
    for (int i = 0; i <= j; ++i) v *= lr;
    return Cx<R>(v / R(j + 1));
  }
  // A(p, j) = r^{p+1}/(p+1) sum_{i=0..j} (-1)^{j-i} j!/(i!) ln^i r / (p+1)^{j-i}
  R rp = pow(r, R(p + 1));
  R acc(0), fac(1);
  for (int i = j; i >= 0; --i) {
    R term = fac;
    for (int t = 0; t < i; ++t) term *= lr;
    acc += term;
    fac *= R(-(i)) / R(p + 1);  // moving from i to i-1 multiplies by -i/(p+1)
  }
  return Cx<R>(rp / R(p + 1) * acc);
}

template <class R> Cx<R> inner_value(const ExactProfile& u0, const ExactProfile& v0) {
  ExactProfile u = u0, v = v0;
  align(u, v);
  Cx<R> acc{};
  for (size_t i = 0; i < u.pieces.size(); ++i) {
    bool tail = (i + 1 == u.pieces.size());
    R lo = ScalarTraits<R>::from_rational(u.breaks[i]);
    R hi = tail ? R(0) : ScalarTraits<R>::from_rational(u.breaks[i + 1]);
    for (const auto& tu : u.pieces[i]) {
      for (const auto& tv : v.pieces[i]) {
        Cx<R> c = qscalar_value<R>(tu.coeff) * conj(qscalar_value<R>(tv.coeff));
        int p = tu.alpha + tv.alpha + 2;
        int j = tu.lnpow + tv.lnpow;
        if (tail) {
          if (p >= -1) throw std::domain_error("inner_value: divergent tail");
          acc += c * (-primitive<R>(p, j, lo));
        } else {
          acc += c * (primitive<R>(p, j, hi) - primitive<R>(p, j, lo));
        }
      }
    }
  }
  return acc;
}

template <class R> Cx<R> pair_inner_value(const ExactPair& u, const ExactPair& v) {
  Cx<R> acc{};
  for (int slot = 0; slot < 2; ++slot) {
    const ExactField& fu = slot ? u.H : u.E;
    const ExactField& fv = slot ? v.H : v.E;
    for (const auto& [k, pu] : fu.parts) {
      const ExactProfile* pv = fv.find(k.ell, k.m, k.chan);
      if (!pv) continue;
      acc += inner_value<R>(pu, *pv);
    }
  }
  return acc;
}

template Cx<double> inner_value<double>(const ExactProfile&, const ExactProfile&);
template Cx<BigReal> inner_value<BigReal>(const ExactProfile&, const ExactProfile&);
template Cx<double> pair_inner_value<double>(const ExactPair&, const ExactPair&);
template Cx<BigReal> pair_inner_value<BigReal>(const ExactPair&, const ExactPair&);

}  // namespace maxlf
