#include "maxlf/field.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace maxlf {

template <class R> Cx<R> sph_h1_ext(int l, const Cx<R>& z) {
  using C = Cx<R>;
  if (l >= 0) return sph_hankel1<R>(l, z);
  const C iu(R(0), R(1));
  C h0 = -iu * exp(iu * z) / z;
  C hm1 = exp(iu * z) / z;
  if (l == -1) return hm1;
  // downward: h_{n-1} = (2n+1)/z h_n - h_{n+1}
  C hi = h0, lo = hm1;
  for (int n = -1; n > l; --n) {
    C nxt = C(R(2 * n + 1)) / z * lo - hi;
    hi = lo; lo = nxt;
  }
  return lo;
}

template <class R> Cx<R> sph_j_ext(int l, const Cx<R>& z) {
  using C = Cx<R>;
  if (l >= 0) return sph_besselj<R>(l, z);
  C j0 = sph_besselj<R>(0, z);
  C jm1 = cos(z) / z;
  if (l == -1) return jm1;
  C hi = j0, lo = jm1;
  for (int n = -1; n > l; --n) {
    C nxt = C(R(2 * n + 1)) / z * lo - hi;
    hi = lo; lo = nxt;
  }
  return lo;
}

template <class R> bool NumProfile<R>::tail_empty(double tol) const {
  const auto& t = pieces.back();
  if (!t.cheb.empty()) return false;
  for (const auto& a : t.atoms)
    if (double(abs(a.c)) > tol) return false;
  return true;
}

template <class R> static NumPiece<R> split_piece(const NumPiece<R>& p, const R& lo0, const R& hi0,
                                                  const R& lo, const R& hi) {
  NumPiece<R> out;
  out.atoms = p.atoms;
  if (!p.cheb.empty()) {
    int n = int(p.cheb.size()) - 1;
    auto pts = cheb_points<R>(n);
    std::vector<Cx<R>> vals(n + 1);
    for (int k = 0; k <= n; ++k) {
      R r = (lo + hi) / R(2) + (hi - lo) / R(2) * pts[k];
      R t = (R(2) * r - lo0 - hi0) / (hi0 - lo0);
      vals[k] = cheb_eval<R>(p.cheb, t);
    }
    out.cheb = cheb_fit<R>(vals);
  }
  return out;
}

template <class R> void NumProfile<R>::refine(const std::vector<R>& cuts) {
  for (const auto& c : cuts) {
    if (c <= breaks.front()) continue;
    auto it = std::lower_bound(breaks.begin(), breaks.end(), c);
    if (it != breaks.end() && *it == c) continue;
    size_t idx = size_t(it - breaks.begin());
    R lo0 = breaks[idx - 1];
    bool was_tail = (idx == breaks.size());
    R hi0 = was_tail ? R(0) : breaks[idx];
    NumPiece<R> old = pieces[idx - 1];
    breaks.insert(it, c);
    if (was_tail) {
      // tail split: both halves keep the same atoms
      pieces.insert(pieces.begin() + idx, old);
    } else {
      NumPiece<R> left = split_piece(old, lo0, hi0, lo0, c);
      NumPiece<R> right = split_piece(old, lo0, hi0, c, hi0);
      pieces[idx - 1] = left;
      pieces.insert(pieces.begin() + idx, right);
    }
  }
}

template <class R> Cx<R> profile_value(const NumProfile<R>& p, const R& r) {
  size_t piece = 0;
  for (size_t i = 1; i < p.breaks.size(); ++i)
    if (r >= p.breaks[i]) piece = i;
  Cx<R> acc{};
  const auto& pc = p.pieces[piece];
  for (const auto& a : pc.atoms) acc += atom_eval(a, r);
  if (!pc.cheb.empty()) {
    R lo = p.breaks[piece], hi = p.breaks[piece + 1];
    R t = (R(2) * r - lo - hi) / (hi - lo);
    acc += cheb_eval<R>(pc.cheb, t);
  }
  return acc;
}

template <class R> std::vector<R> merge_breaks_num(const std::vector<R>& a, const std::vector<R>& b) {
  std::vector<R> out = a;
  out.insert(out.end(), b.begin(), b.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class R> NumProfile<R> profile_sum(const NumProfile<R>& x0, const NumProfile<R>& y0) {
  NumProfile<R> x = x0, y = y0;
  if (!(x.breaks.front() == y.breaks.front()))
    throw std::logic_error("profile_sum: start mismatch");
  auto br = merge_breaks_num(x.breaks, y.breaks);
  x.refine(br); y.refine(br);
  for (size_t i = 0; i < x.pieces.size(); ++i) {
    auto& px = x.pieces[i];
    const auto& py = y.pieces[i];
    px.atoms.insert(px.atoms.end(), py.atoms.begin(), py.atoms.end());
    if (!py.cheb.empty()) {
      if (px.cheb.empty()) px.cheb = py.cheb;
      else {
        if (px.cheb.size() < py.cheb.size()) px.cheb.resize(py.cheb.size());
        for (size_t k = 0; k < py.cheb.size(); ++k) px.cheb[k] += py.cheb[k];
      }
    }
  }
  return x;
}

template <class R> NumProfile<R> profile_scaled(const NumProfile<R>& x, const Cx<R>& c) {
  NumProfile<R> p = x;
  for (auto& pc : p.pieces) {
    for (auto& a : pc.atoms) a.c *= c;
    for (auto& v : pc.cheb) v *= c;
  }
  return p;
}

template <class R> NumProfile<R> profile_deriv(const NumProfile<R>& x) {
  NumProfile<R> p;
  p.breaks = x.breaks;
  p.pieces.resize(x.pieces.size());
  for (size_t i = 0; i < x.pieces.size(); ++i) {
    for (const auto& a : x.pieces[i].atoms) {
      auto das = atom_ddr(a);
      p.pieces[i].atoms.insert(p.pieces[i].atoms.end(), das.begin(), das.end());
    }
    if (!x.pieces[i].cheb.empty()) {
      R lo = x.breaks[i], hi = x.breaks[i + 1];
      auto d = cheb_derivative<R>(x.pieces[i].cheb);
      Cx<R> scale(R(2) / (hi - lo));
      for (auto& v : d) v *= scale;
      p.pieces[i].cheb = d;
    }
  }
  return p;
}

template <class R> NumProfile<R> profile_rshift(const NumProfile<R>& x, int dalpha) {
  NumProfile<R> p = x;
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    for (auto& a : p.pieces[i].atoms) a.alpha += dalpha;
    if (!p.pieces[i].cheb.empty()) {
      // resample r^dalpha * f on the same nodes
      int n = int(p.pieces[i].cheb.size()) - 1;
      auto pts = cheb_points<R>(n);
      R lo = p.breaks[i], hi = p.breaks[i + 1];
      std::vector<Cx<R>> vals(n + 1);
      for (int k = 0; k <= n; ++k) {
        R r = (lo + hi) / R(2) + (hi - lo) / R(2) * pts[k];
        vals[k] = cheb_eval<R>(x.pieces[i].cheb, pts[k]) * Cx<R>(pow(r, R(dalpha)));
      }
      p.pieces[i].cheb = cheb_fit<R>(vals);
    }
  }
  return p;
}

template <class R> NumProfile<R> to_numeric(const ExactProfile& p) {
  NumProfile<R> out;
  out.breaks.reserve(p.breaks.size());
  for (const auto& b : p.breaks) out.breaks.push_back(ScalarTraits<R>::from_rational(b));
  out.pieces.resize(p.pieces.size());
  for (size_t i = 0; i < p.pieces.size(); ++i)
    for (const auto& t : p.pieces[i]) {
      out.pieces[i].atoms.push_back(Atom<R>::mono(qscalar_value<R>(t.coeff), t.alpha, t.lnpow));
    }
  return out;
}

template <class R> ModeField<R> to_numeric_field(const ExactField& f) {
  ModeField<R> out;
  out.rank = f.rank;
  out.start = ScalarTraits<R>::from_rational(f.start);
  for (const auto& [k, p] : f.parts) out.parts.emplace(k, to_numeric<R>(p));
  return out;
}

template <class R> FieldPair<R> to_numeric_pair(const ExactPair& p) {
  return {to_numeric_field<R>(p.E), to_numeric_field<R>(p.H)};
}

template <class R> ModeField<R> field_sum(const ModeField<R>& x, const ModeField<R>& y) {
  if (x.rank != y.rank) throw std::logic_error("field_sum: rank mismatch");
  ModeField<R> out = x;
  for (const auto& [k, p] : y.parts) {
    auto it = out.parts.find(k);
    if (it == out.parts.end()) out.parts.emplace(k, p);
    else it->second = profile_sum(it->second, p);
  }
  return out;
}

template <class R> ModeField<R> field_scaled(const ModeField<R>& x, const Cx<R>& c) {
  ModeField<R> out = x;
  for (auto& [k, p] : out.parts) p = profile_scaled(p, c);
  return out;
}

template <class R> FieldPair<R> pair_sum(const FieldPair<R>& x, const FieldPair<R>& y) {
  return {field_sum(x.E, y.E), field_sum(x.H, y.H)};
}
template <class R> FieldPair<R> pair_scaled(const FieldPair<R>& x, const Cx<R>& c) {
  return {field_scaled(x.E, c), field_scaled(x.H, c)};
}

// stencil application with nodal evaluation of Chebyshev parts
template <class R> static ModeField<R> apply_stencil_num(const ModeField<R>& x, bool is_rot) {
  ModeField<R> out;
  out.rank = x.rank + (is_rot ? 1 : -1);
  out.start = x.start;
  if (out.rank < 0 || out.rank > 3)
    throw std::domain_error(is_rot ? "rot: top rank" : "div: bottom rank");
  for (const auto& [key, prof] : x.parts) {
    auto terms = is_rot ? rot_stencil(x.rank, key.ell) : div_stencil(x.rank, key.ell);
    R w = R(key.ell) * R(key.ell + 1);
    R sw = sqrt(w);
    for (const auto& t : terms) {
      if (t.from != key.chan) continue;
      Cx<R> coef(ScalarTraits<R>::from_rational(t.rat) + ScalarTraits<R>::from_rational(t.root) * sw);
      NumProfile<R> piece = t.dr ? profile_deriv(prof) : profile_rshift(prof, -1);
      piece = profile_scaled(piece, coef);
      ExactKey ko{key.ell, key.m, t.to};
      auto it = out.parts.find(ko);
      if (it == out.parts.end()) out.parts.emplace(ko, std::move(piece));
      else it->second = profile_sum(it->second, piece);
    }
  }
  return out;
}

template <class R> ModeField<R> rot(const ModeField<R>& x) { return apply_stencil_num(x, true); }
template <class R> ModeField<R> div(const ModeField<R>& x) { return apply_stencil_num(x, false); }
template <class R> FieldPair<R> apply_M(const FieldPair<R>& x) { return {div(x.H), rot(x.E)}; }

// ------------------------------------------------------------ integration

// I(q, j, X) = int_X^inf r^q ln^j dr, q < -1
template <class R> static R tail_power_integral(R q, int j, const R& X) {
  R lx = log(X);
  R base = -pow(X, q + R(1)) / (q + R(1));
  if (j == 0) return base;
  R lj(1);
  for (int i = 0; i < j; ++i) lj *= lx;
  return base * lj - R(j) / (q + R(1)) * tail_power_integral(q, j - 1, X);
}

// generalized binomial coefficient C(s, i)
template <class R> static R gen_binom(double s, int i) {
  R acc(1);
  for (int k = 0; k < i; ++k) acc *= (R(s) - R(k)) / R(k + 1);
  return acc;
}

template <class R>
static Cx<R> tail_atom_pair(const Atom<R>& u, const Atom<R>& v, double s, const R& X,
                            const NormOptions& opt, const std::string& what) {
  using C = Cx<R>;
  if (u.kind == AtomKind::Mono && v.kind == AtomKind::Mono) {
    // rho^{2s} expanded as r^{2s} (1 + r^{-2})^s
    int p = u.alpha + v.alpha + 2;
    int j = u.lnpow + v.lnpow;
    double q0 = p + 2.0 * s;
    if (q0 >= -1.0) throw std::domain_error("weighted_norm: non-integrable tail: " + what);
    C cc = u.c * conj(v.c);
    C acc{};
    for (int i = 0; i < opt.binom_terms; ++i) {
      R q = R(q0) - R(2 * i);
      R coef = gen_binom<R>(s, i);
      if (abs(q + R(1)) < R(1e-12)) {
        // ln branch: integral of r^{-1} ln^j from X is divergent; cannot occur
        // for q0 < -1 and i >= 0 shifts downward, guard anyway
        throw std::domain_error("weighted_norm: resonant tail weight");
      }
      acc += C(coef) * C(tail_power_integral<R>(q, j, X));
    }
    return cc * acc;
  }
  // oscillatory / exponentially decaying tails: numeric with adaptive horizon
  R decay(0);
  double powr = u.alpha + v.alpha + 2 + 2.0 * s;
  auto rate = [&](const Atom<R>& t, bool conjugated) {
    if (t.kind == AtomKind::Mono) return R(0);
    R im = conjugated ? t.omega.imag() : t.omega.imag();
    if (t.kind == AtomKind::SphH1) return im;  // e^{i om r} decays by Im om
    return -abs(im);                           // j grows like e^{|Im om| r}
  };
  decay = rate(u, false) + rate(v, true);
  if (u.kind != AtomKind::Mono) powr -= 1.0;
  if (v.kind != AtomKind::Mono) powr -= 1.0;
  if (decay <= R(0) && powr >= -1.0)
    throw std::domain_error("weighted_norm: non-integrable oscillatory tail: " + what);
  auto f = [&](const R& r) -> Cx<R> {
    R wgt = pow(R(1) + r * r, R(s)) * r * r;
    return atom_eval(u, r) * conj(atom_eval(v, r)) * Cx<R>(wgt);
  };
  Cx<R> acc{};
  R lo = X;
  int pieces = 0;
  while (pieces < 400) {
    R len = lo;  // geometric doubling
    if (decay > R(0)) {
      R cap = R(5) / decay;
      if (cap < len) len = cap;
    }
    R hi = lo + len;
    Cx<R> part = gl_integrate<R>(f, lo, hi, opt.gl_order);
    acc += part;
    ++pieces;
    R mag = abs(part), tot = abs(acc);
    if (mag < R(opt.tail_rel_eps) * (tot + R(1e-300))) break;
    lo = hi;
  }
  return acc;
}

template <class R>
static Cx<R> profile_pair_integral(const NumProfile<R>& u0, const NumProfile<R>& v0, double s,
                                   const NormOptions& opt, const std::string& what) {
  NumProfile<R> u = u0, v = v0;
  auto br = merge_breaks_num(u.breaks, v.breaks);
  u.refine(br); v.refine(br);
  Cx<R> acc{};
  size_t npieces = u.pieces.size();
  for (size_t i = 0; i + 1 < npieces; ++i) {
    auto f = [&](const R& r) -> Cx<R> {
      R pos = r;
      // evaluate piece i directly
      Cx<R> a{}, b{};
      for (const auto& t : u.pieces[i].atoms) a += atom_eval(t, pos);
      if (!u.pieces[i].cheb.empty()) {
        R t2 = (R(2) * pos - u.breaks[i] - u.breaks[i + 1]) / (u.breaks[i + 1] - u.breaks[i]);
        a += cheb_eval<R>(u.pieces[i].cheb, t2);
      }
      for (const auto& t : v.pieces[i].atoms) b += atom_eval(t, pos);
      if (!v.pieces[i].cheb.empty()) {
        R t2 = (R(2) * pos - v.breaks[i] - v.breaks[i + 1]) / (v.breaks[i + 1] - v.breaks[i]);
        b += cheb_eval<R>(v.pieces[i].cheb, t2);
      }
      R wgt = pow(R(1) + pos * pos, R(s)) * pos * pos;
      return a * conj(b) * Cx<R>(wgt);
    };
    acc += gl_integrate<R>(f, u.breaks[i], u.breaks[i + 1], opt.gl_order);
  }
  // tail
  const auto& tu = u.pieces.back();
  const auto& tv = v.pieces.back();
  if (!tu.cheb.empty() || !tv.cheb.empty())
    throw std::logic_error("pair integral: chebyshev tail");
  R X = u.breaks.back();
  for (const auto& a : tu.atoms)
    for (const auto& b : tv.atoms) acc += tail_atom_pair(a, b, s, X, opt, what);
  return acc;
}

template <class R> Cx<R> field_inner(const ModeField<R>& u, const ModeField<R>& v, double s,
                                     const NormOptions& opt) {
  if (u.rank != v.rank) throw std::logic_error("field_inner: rank mismatch");
  Cx<R> acc{};
  for (const auto& [k, pu] : u.parts) {
    const NumProfile<R>* pv = v.find(k.ell, k.m, k.chan);
    if (!pv) continue;
    std::string what = "mode(" + std::to_string(k.ell) + "," + std::to_string(k.m) + ")/" +
                       channel_name(u.rank, k.chan);
    acc += profile_pair_integral(pu, *pv, s, opt, what);
  }
  return acc;
}

template <class R> Cx<R> pair_inner_product(const FieldPair<R>& u, const FieldPair<R>& v, double s,
                                            const NormOptions& opt) {
  return field_inner(u.E, v.E, s, opt) + field_inner(u.H, v.H, s, opt);
}

template <class R> R weighted_norm(const ModeField<R>& f, double s, const NormOptions& opt) {
  Cx<R> v = field_inner(f, f, s, opt);
  R re = v.real();
  if (re < R(0)) re = R(0);
  return sqrt(re);
}

template <class R> R pair_norm(const FieldPair<R>& f, double s, const NormOptions& opt) {
  Cx<R> v = pair_inner_product(f, f, s, opt);
  R re = v.real();
  if (re < R(0)) re = R(0);
  return sqrt(re);
}

template <class R> static R local_profile_norm2(const NumProfile<R>& p, double r_cap,
                                                const NormOptions& opt) {
  R acc(0);
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    R lo = p.breaks[i];
    R hi = (i + 1 < p.breaks.size()) ? p.breaks[i + 1] : R(r_cap);
    if (lo >= R(r_cap)) break;
    if (hi > R(r_cap)) hi = R(r_cap);
    if (hi <= lo) continue;
    auto f = [&](const R& r) -> Cx<R> {
      Cx<R> a{};
      for (const auto& t : p.pieces[i].atoms) a += atom_eval(t, r);
      if (!p.pieces[i].cheb.empty()) {
        R t2 = (R(2) * r - p.breaks[i] - p.breaks[i + 1]) / (p.breaks[i + 1] - p.breaks[i]);
        a += cheb_eval<R>(p.pieces[i].cheb, t2);
      }
      R v = abs(a);
      return Cx<R>(v * v * r * r);
    };
    acc += gl_integrate<R>(f, lo, hi, opt.gl_order).real();
  }
  return acc;
}

template <class R> R local_norm(const ModeField<R>& f, double r_cap, const NormOptions& opt) {
  R acc(0);
  for (const auto& [k, p] : f.parts) acc += local_profile_norm2(p, r_cap, opt);
  return sqrt(acc);
}

template <class R> R local_pair_norm(const FieldPair<R>& f, double r_cap, const NormOptions& opt) {
  R a = local_norm(f.E, r_cap, opt), b = local_norm(f.H, r_cap, opt);
  return sqrt(a * a + b * b);
}

template <class R> R sample_max(const ModeField<R>& f, const std::vector<R>& rs) {
  R mx(0);
  for (const auto& [k, p] : f.parts)
    for (const auto& r : rs) {
      R v = abs(profile_value(p, r));
      if (v > mx) mx = v;
    }
  return mx;
}

// ------------------------------------------------------------------- JSON

using nlohmann::json;

static json atom_to_json(const Atom<double>& a) {
  json j;
  j["kind"] = a.kind == AtomKind::Mono ? "mono" : (a.kind == AtomKind::SphH1 ? "hankel" : "besselj");
  j["re"] = a.c.real();
  j["im"] = a.c.imag();
  j["alpha"] = a.alpha;
  if (a.kind == AtomKind::Mono) {
    j["lnpow"] = a.lnpow;
  } else {
    j["l"] = a.l;
    j["omega_re"] = a.omega.real();
    j["omega_im"] = a.omega.imag();
  }
  return j;
}

static Atom<double> atom_from_json(const json& j) {
  Atom<double> a;
  std::string kind = j.at("kind");
  a.kind = kind == "mono" ? AtomKind::Mono : (kind == "hankel" ? AtomKind::SphH1 : AtomKind::SphJ);
  a.c = {j.at("re").get<double>(), j.at("im").get<double>()};
  a.alpha = j.at("alpha").get<int>();
  if (a.kind == AtomKind::Mono) {
    a.lnpow = j.value("lnpow", 0);
  } else {
    a.l = j.at("l").get<int>();
    a.omega = {j.at("omega_re").get<double>(), j.at("omega_im").get<double>()};
  }
  return a;
}

static json field_to_json_obj(const ModeField<double>& f) {
  json j;
  j["rank"] = f.rank;
  j["start"] = f.start;
  json modes = json::array();
  for (const auto& [k, p] : f.parts) {
    json m;
    m["ell"] = k.ell;
    m["m"] = k.m;
    m["channel"] = channel_name(f.rank, k.chan);
    m["breaks"] = p.breaks;
    json pieces = json::array();
    for (const auto& pc : p.pieces) {
      json pj;
      json atoms = json::array();
      for (const auto& a : pc.atoms) atoms.push_back(atom_to_json(a));
      pj["atoms"] = atoms;
      json cheb = json::array();
      for (const auto& c : pc.cheb) cheb.push_back(json::array({c.real(), c.imag()}));
      pj["cheb"] = cheb;
      pieces.push_back(pj);
    }
    m["pieces"] = pieces;
    modes.push_back(m);
  }
  j["modes"] = modes;
  return j;
}

static ModeField<double> field_from_json_obj(const json& j) {
  ModeField<double> f;
  f.rank = j.at("rank").get<int>();
  f.start = j.at("start").get<double>();
  for (const auto& m : j.at("modes")) {
    int ell = m.at("ell").get<int>();
    int mm = m.at("m").get<int>();
    std::string ch = m.at("channel");
    int chan = CH_SC;
    if (f.rank == 1 || f.rank == 2) {
      if (ch == "P") chan = CH_P;
      else if (ch == "S") chan = CH_S;
      else if (ch == "T") chan = CH_T;
      else throw std::runtime_error("bad channel name " + ch);
    }
    NumProfile<double> p;
    p.breaks = m.at("breaks").get<std::vector<double>>();
    for (const auto& pj : m.at("pieces")) {
      NumPiece<double> pc;
      for (const auto& aj : pj.at("atoms")) pc.atoms.push_back(atom_from_json(aj));
      for (const auto& cj : pj.at("cheb"))
        pc.cheb.push_back({cj.at(0).get<double>(), cj.at(1).get<double>()});
      p.pieces.push_back(pc);
    }
    if (p.pieces.size() != p.breaks.size())
      throw std::runtime_error("profile pieces/breaks mismatch");
    f.set(ell, mm, chan, p);
  }
  return f;
}

std::string field_to_json(const ModeField<double>& f) { return field_to_json_obj(f).dump(2); }

ModeField<double> field_from_json(const std::string& text) {
  return field_from_json_obj(json::parse(text));
}

std::string pair_to_json(const FieldPair<double>& p) {
  json j;
  j["first"] = field_to_json_obj(p.E);
  j["second"] = field_to_json_obj(p.H);
  return j.dump(2);
}

FieldPair<double> pair_from_json(const std::string& text) {
  json j = json::parse(text);
  return {field_from_json_obj(j.at("first")), field_from_json_obj(j.at("second"))};
}

// ------------------------------------------------------------ instantiation

#define MAXLF_INSTANTIATE(R)                                                                   \
  template Cx<R> sph_h1_ext<R>(int, const Cx<R>&);                                             \
  template Cx<R> sph_j_ext<R>(int, const Cx<R>&);                                              \
  template struct NumProfile<R>;                                                               \
  template Cx<R> profile_value<R>(const NumProfile<R>&, const R&);                             \
  template NumProfile<R> profile_sum<R>(const NumProfile<R>&, const NumProfile<R>&);           \
  template NumProfile<R> profile_scaled<R>(const NumProfile<R>&, const Cx<R>&);                \
  template NumProfile<R> profile_deriv<R>(const NumProfile<R>&);                               \
  template NumProfile<R> profile_rshift<R>(const NumProfile<R>&, int);                         \
  template std::vector<R> merge_breaks_num<R>(const std::vector<R>&, const std::vector<R>&);   \
  template NumProfile<R> to_numeric<R>(const ExactProfile&);                                   \
  template ModeField<R> to_numeric_field<R>(const ExactField&);                                \
  template FieldPair<R> to_numeric_pair<R>(const ExactPair&);                                  \
  template ModeField<R> field_sum<R>(const ModeField<R>&, const ModeField<R>&);                \
  template ModeField<R> field_scaled<R>(const ModeField<R>&, const Cx<R>&);                    \
  template FieldPair<R> pair_sum<R>(const FieldPair<R>&, const FieldPair<R>&);                 \
  template FieldPair<R> pair_scaled<R>(const FieldPair<R>&, const Cx<R>&);                     \
  template ModeField<R> rot<R>(const ModeField<R>&);                                           \
  template ModeField<R> div<R>(const ModeField<R>&);                                           \
  template FieldPair<R> apply_M<R>(const FieldPair<R>&);                                       \
  template Cx<R> field_inner<R>(const ModeField<R>&, const ModeField<R>&, double,              \
                                const NormOptions&);                                           \
  template Cx<R> pair_inner_product<R>(const FieldPair<R>&, const FieldPair<R>&, double,       \
                                       const NormOptions&);                                    \
  template R weighted_norm<R>(const ModeField<R>&, double, const NormOptions&);                \
  template R pair_norm<R>(const FieldPair<R>&, double, const NormOptions&);                    \
  template R local_norm<R>(const ModeField<R>&, double, const NormOptions&);                   \
  template R local_pair_norm<R>(const FieldPair<R>&, double, const NormOptions&);              \
  template R sample_max<R>(const ModeField<R>&, const std::vector<R>&);

MAXLF_INSTANTIATE(double)
MAXLF_INSTANTIATE(BigReal)

}  // namespace maxlf
