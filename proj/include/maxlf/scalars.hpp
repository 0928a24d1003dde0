#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace maxlf {

namespace mp = boost::multiprecision;

using BigReal    = mp::cpp_bin_float_50;
using BigComplex = mp::cpp_complex_50;
using Rational   = mp::cpp_rational;
using BigInt     = mp::cpp_int;

// Scalar traits tie a real type to its complex companion so the solvers can
// run in double or in extended precision.
template <class R> struct ScalarTraits;

template <> struct ScalarTraits<double> {
  using Real    = double;
  using Complex = std::complex<double>;
  static Real from_rational(const Rational& q) {
    return static_cast<double>(mp::cpp_bin_float_50(q));
  }
  static double to_double(Real x) { return x; }
  static constexpr double epsilon() { return 2.220446049250313e-16; }
};

template <> struct ScalarTraits<BigReal> {
  using Real    = BigReal;
  using Complex = BigComplex;
  static Real from_rational(const Rational& q) { return BigReal(q); }
  static double to_double(const Real& x) { return static_cast<double>(x); }
  static BigReal epsilon() { return std::numeric_limits<BigReal>::epsilon(); }
};

template <class R> using Cx = typename ScalarTraits<R>::Complex;

inline double to_dbl(double x) { return x; }
inline double to_dbl(const BigReal& x) { return static_cast<double>(x); }
inline std::complex<double> to_cdbl(const std::complex<double>& z) { return z; }
inline std::complex<double> to_cdbl(const BigComplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class R> Cx<R> cx_from(const std::complex<double>& z) {
  return Cx<R>(R(z.real()), R(z.imag()));
}

// Element of the field Q(sqrt(w)) + i*Q(sqrt(w)), w = ell*(ell+1) for the
// mode's angular degree.  Channel couplings introduce single factors of
// sqrt(w); products stay in the field since w is an integer.
struct QScalar {
  Rational a{0}, b{0}, c{0}, d{0};  // (a + b sqrt w) + i (c + d sqrt w)
  long w{0};

  QScalar() = default;
  explicit QScalar(Rational re) : a(std::move(re)) {}
  QScalar(Rational re, Rational im) : a(std::move(re)), c(std::move(im)) {}
  static QScalar root_w(long w_, Rational coef = 1) {
    QScalar s; s.w = w_; s.b = std::move(coef);
    if (w_ == 0) s.b = 0;
    return s;
  }
  static QScalar i_unit() { return QScalar(Rational(0), Rational(1)); }

  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }
  bool pure() const { return b == 0 && d == 0; }  // no sqrt(w) content

  void canon() {
    if (w == 0) { b = 0; d = 0; }
    if (b == 0 && d == 0) w = 0;
  }
};

inline long join_w(const QScalar& x, const QScalar& y) {
  if (x.pure() || x.w == 0) return y.w;
  if (y.pure() || y.w == 0) return x.w;
  if (x.w != y.w) throw std::logic_error("QScalar: mixing sqrt fields");
  return x.w;
}

inline QScalar operator+(const QScalar& x, const QScalar& y) {
  QScalar r;
  r.w = join_w(x, y);
  r.a = x.a + y.a; r.b = x.b + y.b; r.c = x.c + y.c; r.d = x.d + y.d;
  r.canon();
  return r;
}
inline QScalar operator-(const QScalar& x) {
  QScalar r = x; r.a = -r.a; r.b = -r.b; r.c = -r.c; r.d = -r.d; return r;
}
inline QScalar operator-(const QScalar& x, const QScalar& y) { return x + (-y); }

inline QScalar operator*(const QScalar& x, const QScalar& y) {
  QScalar r;
  r.w = join_w(x, y);
  Rational w(r.w);
  // complex product of (a+b s) + i(c+d s) terms, s^2 = w
  Rational re_a = x.a * y.a + w * x.b * y.b - x.c * y.c - w * x.d * y.d;
  Rational re_b = x.a * y.b + x.b * y.a - x.c * y.d - x.d * y.c;
  Rational im_a = x.a * y.c + w * x.b * y.d + x.c * y.a + w * x.d * y.b;
  Rational im_b = x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a;
  r.a = re_a; r.b = re_b; r.c = im_a; r.d = im_b;
  r.canon();
  return r;
}

inline QScalar conj(const QScalar& x) {
  QScalar r = x; r.c = -r.c; r.d = -r.d; return r;
}

inline QScalar inv(const QScalar& x) {
  if (x.is_zero()) throw std::domain_error("QScalar: divide by zero");
  Rational w(x.w);
  // first clear i: multiply by complex conjugate
  QScalar num = conj(x);
  // |x|^2 = (a+bs)^2 + (c+ds)^2 = (a^2+w b^2+c^2+w d^2) + 2(ab+cd) s
  Rational p = x.a * x.a + w * x.b * x.b + x.c * x.c + w * x.d * x.d;
  Rational q = 2 * (x.a * x.b + x.c * x.d);
  // 1/(p + q s) = (p - q s)/(p^2 - w q^2)
  Rational den = p * p - w * q * q;
  if (den == 0) throw std::domain_error("QScalar: singular norm");
  QScalar f; f.w = x.w;
  f.a = p / den; f.b = -q / den;
  QScalar r = num * f;
  r.canon();
  return r;
}
inline QScalar operator/(const QScalar& x, const QScalar& y) { return x * inv(y); }

inline QScalar& operator+=(QScalar& x, const QScalar& y) { x = x + y; return x; }
inline QScalar& operator-=(QScalar& x, const QScalar& y) { x = x - y; return x; }
inline QScalar& operator*=(QScalar& x, const QScalar& y) { x = x * y; return x; }

inline bool operator==(const QScalar& x, const QScalar& y) { return (x - y).is_zero(); }

template <class R> Cx<R> qscalar_value(const QScalar& x) {
  using T = ScalarTraits<R>;
  R s = sqrt(R(x.w));
  R re = T::from_rational(x.a) + T::from_rational(x.b) * s;
  R im = T::from_rational(x.c) + T::from_rational(x.d) * s;
  return Cx<R>(re, im);
}

inline std::string qscalar_str(const QScalar& x) {
  std::string s = "(" + x.a.str();
  if (x.b != 0) s += (x.b > 0 ? "+" : "") + x.b.str() + "*sqrt(" + std::to_string(x.w) + ")";
  s += ")";
  if (x.c != 0 || x.d != 0) {
    s += "+i*(" + x.c.str();
    if (x.d != 0) s += (x.d > 0 ? "+" : "") + x.d.str() + "*sqrt(" + std::to_string(x.w) + ")";
    s += ")";
  }
  return s;
}

// Exact integral values live in Q + Q*ln2 once dyadic breakpoints are involved.
struct LogValue {
  QScalar rat;   // rational part
  QScalar ln2;   // coefficient of ln 2
  bool log_free() const { return ln2.is_zero(); }
};

inline LogValue operator+(const LogValue& x, const LogValue& y) {
  return {x.rat + y.rat, x.ln2 + y.ln2};
}

inline double factorial_d(int n) { return std::tgamma(n + 1.0); }

inline Rational rat_pow(const Rational& x, int n) {
  Rational r(1);
  Rational base = x;
  int m = n;
  if (m < 0) { base = 1 / x; m = -m; }
  for (int i = 0; i < m; ++i) r *= base;
  return r;
}

inline Rational double_factorial(int n) {  // n!! with (-1)!! = 1
  Rational r(1);
  for (int k = n; k >= 2; k -= 2) r *= k;
  return r;
}

}  // namespace maxlf
