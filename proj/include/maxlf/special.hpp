#pragma once

#include "maxlf/scalars.hpp"

#include <array>
#include <cassert>
#include <vector>

namespace maxlf {

// ---------------------------------------------------------------- quadrature

template <class R> struct QuadRule {
  std::vector<R> x, w;  // nodes and weights on [-1, 1]
};

// Gauss-Legendre by Newton iteration on P_n; initial guesses from the usual
// cosine estimate. Works for double and extended precision alike.
template <class R> QuadRule<R> gauss_legendre(int n) {
  QuadRule<R> rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const R one(1), two(2);
  const double pi_d = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    R x = R(std::cos(pi_d * (i + 0.75) / (n + 0.5)));
    R p1(1), p2(0);
    for (int iter = 0; iter < 100; ++iter) {
      p1 = one; p2 = R(0);
      for (int j = 0; j < n; ++j) {
        R p3 = p2; p2 = p1;
        p1 = ((two * R(j) + one) * x * p2 - R(j) * p3) / R(j + 1);
      }
      R dp = R(n) * (x * p1 - p2) / (x * x - one);
      R dx = p1 / dp;
      x -= dx;
      if (abs(dx) <= R(4) * ScalarTraits<R>::epsilon() * (abs(x) + R(1))) break;
    }
    // refresh P_n, P_{n-1} at the converged node
    p1 = one; p2 = R(0);
    for (int j = 0; j < n; ++j) {
      R p3 = p2; p2 = p1;
      p1 = ((two * R(j) + one) * x * p2 - R(j) * p3) / R(j + 1);
    }
    R dp = R(n) * (x * p1 - p2) / (x * x - one);
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    R w = two / ((one - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  return rule;
}

template <class R> const QuadRule<R>& gl_cache(int n) {
  static thread_local std::vector<QuadRule<R>> cache(193);
  assert(n >= 1 && n <= 192);
  if (cache[n].x.empty()) cache[n] = gauss_legendre<R>(n);
  return cache[n];
}

// Integrate f over [lo, hi] with an n-point rule.
template <class R, class F>
auto gl_integrate(const F& f, const R& lo, const R& hi, int n) {
  const auto& rule = gl_cache<R>(n);
  R h = (hi - lo) / R(2), m = (hi + lo) / R(2);
  decltype(f(lo)) acc{};
  for (int i = 0; i < n; ++i) acc += decltype(f(lo))(rule.w[i]) * f(m + h * rule.x[i]);
  return decltype(f(lo))(h) * acc;
}

// --------------------------------------------------------------- Chebyshev

// Chebyshev points of the second kind on [-1,1], x_k = cos(k pi / n), k=0..n.
template <class R> std::vector<R> cheb_points(int n) {
  std::vector<R> x(n + 1);
  const R pi = R(2) * asin(R(1));
  for (int k = 0; k <= n; ++k) x[k] = cos(pi * R(k) / R(n));
  return x;
}

// Values at cheb points (ordered as cheb_points) -> coefficients.
template <class R> std::vector<Cx<R>> cheb_fit(const std::vector<Cx<R>>& vals) {
  using C = Cx<R>;
  int n = int(vals.size()) - 1;
  const R pi = R(2) * asin(R(1));
  std::vector<C> coef(n + 1);
  for (int j = 0; j <= n; ++j) {
    C s{};
    for (int k = 0; k <= n; ++k) {
      R ck = (k == 0 || k == n) ? R(1) / R(2) : R(1);
      s += C(ck * cos(pi * R(j) * R(k) / R(n))) * vals[k];
    }
    R cj = (j == 0 || j == n) ? R(1) : R(2);
    coef[j] = s * C(cj / R(n));
  }
  return coef;
}

template <class R> Cx<R> cheb_eval(const std::vector<Cx<R>>& coef, const R& t) {
  using C = Cx<R>;
  C b1{}, b2{};
  for (int j = int(coef.size()) - 1; j >= 1; --j) {
    C b0 = C(R(2) * t) * b1 - b2 + coef[j];
    b2 = b1; b1 = b0;
  }
  return C(t) * b1 - b2 + coef[0];
}

// d/dt of a Chebyshev series on [-1,1].
template <class R> std::vector<Cx<R>> cheb_derivative(const std::vector<Cx<R>>& coef) {
  using C = Cx<R>;
  int n = int(coef.size()) - 1;
  if (n == 0) return {C{}};
  std::vector<C> dd(n + 2);
  for (int j = n - 1; j >= 0; --j)
    dd[j] = dd[j + 2] + C(R(2 * (j + 1))) * coef[j + 1];
  dd[0] *= C(R(1) / R(2));
  dd.resize(n);
  return dd;
}

// ------------------------------------------------- spherical Bessel family

// h1(l, z): spherical Hankel of the first kind, upward recurrence from the
// closed forms h0 = -i e^{iz}/z, h1 = -(1 + i/z) e^{iz}/z (stable upward).
template <class R> Cx<R> sph_hankel1(int l, const Cx<R>& z) {
  using C = Cx<R>;
  const C iu(R(0), R(1));
  C ez = exp(iu * z);
  C h0 = -iu * ez / z;
  if (l == 0) return h0;
  C h1 = -(C(R(1)) + iu / z) * ez / z;
  C hm = h0, hc = h1;
  for (int n = 1; n < l; ++n) {
    C hn = C(R(2 * n + 1)) / z * hc - hm;
    hm = hc; hc = hn;
  }
  return hc;
}

// j(l, z): ascending series for moderate |z| (cancellation-free), otherwise
// the closed form with both exponentials.
template <class R> Cx<R> sph_besselj(int l, const Cx<R>& z) {
  using C = Cx<R>;
  R az = abs(z);
  if (az < R(2 * l + 14)) {
    C z2 = -z * z / C(R(2));
    C term(R(1));
    C sum = term;
    for (int k = 1; k < 400; ++k) {
      term *= z2 / C(R(k) * R(2 * l + 2 * k + 1));
      sum += term;
      if (abs(term) < ScalarTraits<R>::epsilon() * abs(sum) && k > 4) break;
    }
    C pref(R(1));
    for (int m = 1; m <= l; ++m) pref *= z / C(R(2 * m + 1));
    return pref * sum;
  }
  const C iu(R(0), R(1));
  C ezp = exp(iu * z), ezm = exp(-iu * z);
  C a0 = -iu / z, b0 = iu / z;  // h1_0 = a0 e^{iz}; h2_0 = b0 e^{-iz}
  C a1 = -(C(R(1)) + iu / z) / z, b1 = -(C(R(1)) - iu / z) / z;
  if (l == 0) return (a0 * ezp + b0 * ezm) / C(R(2));
  C am = a0, ac = a1, bm = b0, bc = b1;
  for (int n = 1; n < l; ++n) {
    C an = C(R(2 * n + 1)) / z * ac - am;
    C bn = C(R(2 * n + 1)) / z * bc - bm;
    am = ac; ac = an; bm = bc; bc = bn;
  }
  return (ac * ezp + bc * ezm) / C(R(2));
}

template <class R> Cx<R> sph_bessely(int l, const Cx<R>& z) {
  using C = Cx<R>;
  const C iu(R(0), R(1));
  return (sph_hankel1<R>(l, z) - sph_besselj<R>(l, z)) / iu;
}

// Half-integer-order cylinder functions, order nu = nu2/2 with odd nu2 > 0.
// H^1_{l+1/2}(z) = sqrt(2 z/pi) h1_l(z) etc. (principal square root).
template <class R> Cx<R> hankel1_half(int nu2, const Cx<R>& z) {
  assert(nu2 % 2 == 1 && nu2 > 0);
  const R pi = R(2) * asin(R(1));
  return sqrt(Cx<R>(R(2) / pi) * z) * sph_hankel1<R>((nu2 - 1) / 2, z);
}
template <class R> Cx<R> besselj_half(int nu2, const Cx<R>& z) {
  assert(nu2 % 2 == 1 && nu2 > 0);
  const R pi = R(2) * asin(R(1));
  return sqrt(Cx<R>(R(2) / pi) * z) * sph_besselj<R>((nu2 - 1) / 2, z);
}
template <class R> Cx<R> bessely_half(int nu2, const Cx<R>& z) {
  assert(nu2 % 2 == 1 && nu2 > 0);
  const R pi = R(2) * asin(R(1));
  return sqrt(Cx<R>(R(2) / pi) * z) * sph_bessely<R>((nu2 - 1) / 2, z);
}

// --------------------------------------------- real spherical harmonics

// Unnormalized associated Legendre P_l^m(x), Condon-Shortley phase.
double legendre_p(int l, int m, double x);

// Real fully normalized spherical harmonics; m = 1..2l+1 maps to the order
// mu = m - l - 1 in [-l, l].
struct SphValue {
  double y;        // Y
  double dth;      // d/dtheta Y
  double dph_sin;  // (1/sin theta) d/dphi Y
};
SphValue real_sph(int l, int m, double theta, double phi);

}  // namespace maxlf
