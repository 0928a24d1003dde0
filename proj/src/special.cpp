#include "maxlf/sphere.hpp"

#include <cmath>

namespace maxlf {

double legendre_p(int l, int m, double x) {
  if (m > l || m < 0) return 0.0;
  double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0;
  for (int i = 1; i <= m; ++i) pmm *= -(2 * i - 1) * somx2;
  if (l == m) return pmm;
  double pmmp1 = x * (2 * m + 1) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2.0 * ll - 1.0) * x * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

// (1-x^2) dP/dx = l x P_l^m - (l+m) P_{l-1}^m ; d/dtheta = -sin(theta) d/dx
static double legendre_p_dtheta(int l, int m, double x, double sth) {
  double plm = legendre_p(l, m, x);
  double plm1 = legendre_p(l - 1, m, x);
  return -(l * x * plm - (l + m) * plm1) / sth;
}

SphValue real_sph(int l, int m, double theta, double phi) {
  int mu = m - l - 1;
  int am = std::abs(mu);
  double x = std::cos(theta), sth = std::sin(theta);
  double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * 3.14159265358979323846) *
                          factorial_d(l - am) / factorial_d(l + am));
  double p = legendre_p(l, am, x);
  double dp = legendre_p_dtheta(l, am, x, sth);
  SphValue out{};
  if (mu == 0) {
    out.y = norm * p;
    out.dth = norm * dp;
    out.dph_sin = 0.0;
  } else if (mu > 0) {
    double c = std::sqrt(2.0) * norm;
    out.y = c * p * std::cos(mu * phi);
    out.dth = c * dp * std::cos(mu * phi);
    out.dph_sin = -c * mu * p * std::sin(mu * phi) / sth;
  } else {
    double c = std::sqrt(2.0) * norm;
    out.y = c * p * std::sin(am * phi);
    out.dth = c * dp * std::sin(am * phi);
    out.dph_sin = c * am * p * std::cos(am * phi) / sth;
  }
  return out;
}

int mode_count(int q, int sigma, Family family) {
  assert(q >= 0 && q <= 3 && sigma >= 0);
  switch (q) {
    case 0: return family == Family::T ? 2 * sigma + 1 : 0;
    case 1: return sigma >= 1 ? 2 * sigma + 1 : 0;  // both families
    case 2:
      if (family == Family::S) return sigma >= 1 ? 2 * sigma + 1 : 0;
      return sigma == 0 ? 1 : 0;  // the volume form
    case 3: return 0;
  }
  return 0;
}

double eigen_constant(int q, int sigma) {
  long p = long(q + 1 + sigma) * long(kDimN - 1 - q + sigma);
  assert(p >= 0);
  return std::sqrt(double(p));
}

std::vector<int> trace_channels(int rank, int ell) {
  switch (rank) {
    case 0: return {CH_SC};
    case 1: return ell == 0 ? std::vector<int>{} : std::vector<int>{CH_S, CH_T};
    case 2: return {CH_P};
    case 3: return {};
  }
  return {};
}

std::vector<StencilTerm> rot_stencil(int rank, int ell) {
  std::vector<StencilTerm> t;
  const bool tang = ell >= 1;  // S, T channels present
  switch (rank) {
    case 0:  // gradient: scalar -> (P, S)
      t.push_back({CH_P, CH_SC, 1, 1, 0});
      if (tang) t.push_back({CH_S, CH_SC, 0, 0, 1});
      break;
    case 1:  // curl
      if (tang) {
        t.push_back({CH_P, CH_T, 0, 0, -1});
        t.push_back({CH_S, CH_T, 1, -1, 0});
        t.push_back({CH_S, CH_T, 0, -1, 0});
        t.push_back({CH_T, CH_S, 1, 1, 0});
        t.push_back({CH_T, CH_S, 0, 1, 0});
        t.push_back({CH_T, CH_P, 0, 0, -1});
      }
      break;
    case 2:  // proxy divergence: (P,S,T) -> scalar
      t.push_back({CH_SC, CH_P, 1, 1, 0});
      t.push_back({CH_SC, CH_P, 0, 2, 0});
      if (tang) t.push_back({CH_SC, CH_S, 0, 0, -1});
      break;
    default:
      throw std::domain_error("rot: top rank");
  }
  return t;
}

std::vector<StencilTerm> div_stencil(int rank, int ell) {
  std::vector<StencilTerm> t;
  const bool tang = ell >= 1;
  switch (rank) {
    case 1:  // divergence: (P,S,T) -> scalar
      t.push_back({CH_SC, CH_P, 1, 1, 0});
      t.push_back({CH_SC, CH_P, 0, 2, 0});
      if (tang) t.push_back({CH_SC, CH_S, 0, 0, -1});
      break;
    case 2:  // minus proxy curl
      if (tang) {
        t.push_back({CH_P, CH_T, 0, 0, 1});
        t.push_back({CH_S, CH_T, 1, 1, 0});
        t.push_back({CH_S, CH_T, 0, 1, 0});
        t.push_back({CH_T, CH_S, 1, -1, 0});
        t.push_back({CH_T, CH_S, 0, -1, 0});
        t.push_back({CH_T, CH_P, 0, 0, 1});
      }
      break;
    case 3:  // proxy gradient
      t.push_back({CH_P, CH_SC, 1, 1, 0});
      if (tang) t.push_back({CH_S, CH_SC, 0, 0, 1});
      break;
    default:
      throw std::domain_error("div: bottom rank");
  }
  return t;
}

double angular_inner_product(const AngularFn& u, const AngularFn& v, int n_theta, int n_phi) {
  int lmax = std::max(u.ell, v.ell);
  if (n_theta == 0) n_theta = 2 * lmax + 6;
  if (n_phi == 0) n_phi = 4 * lmax + 8;
  const auto& rule = gl_cache<double>(n_theta);
  const double pi = 3.14159265358979323846;
  double acc = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    double theta = std::acos(rule.x[i]);
    double row = 0.0;
    for (int j = 0; j < n_phi; ++j) {
      double phi = 2.0 * pi * j / n_phi;
      SphValue a = real_sph(u.ell, u.m, theta, phi);
      SphValue b = real_sph(v.ell, v.m, theta, phi);
      double dot = 0.0;
      auto comp = [](const SphValue& s, int kind, double om, double& c1, double& c2) {
        if (kind == 0) { c1 = s.y; c2 = 0.0; return; }
        if (kind == 1) { c1 = s.dth / om; c2 = s.dph_sin / om; return; }
        c1 = -s.dph_sin / om; c2 = s.dth / om;  // toroidal = e_r x spheroidal
      };
      if ((u.kind == 0) != (v.kind == 0)) {
        dot = 0.0;  // scalar vs tangential
      } else {
        double ou = std::sqrt(double(u.ell) * (u.ell + 1));
        double ov = std::sqrt(double(v.ell) * (v.ell + 1));
        double a1, a2, b1, b2;
        comp(a, u.kind, ou, a1, a2);
        comp(b, v.kind, ov, b1, b2);
        dot = a1 * b1 + a2 * b2;
      }
      row += dot;
    }
    acc += rule.w[i] * row * (2.0 * pi / n_phi);
  }
  return acc;
}

}  // namespace maxlf
