#include "maxlf/harness.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace maxlf {

FitResult fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 4) throw std::domain_error("fit_slope: need at least 4 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [x, y] : pts) { sx += x; sy += y; sxx += x * x; sxy += x * y; }
  double n = double(pts.size());
  double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-14 * (std::abs(sxx) + 1.0) * n)
    throw std::domain_error("fit_slope: degenerate abscissae");
  FitResult f;
  f.slope = (n * sxy - sx * sy) / den;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (auto [x, y] : pts) {
    double e = y - (f.slope * x + f.intercept);
    ss += e * e;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

ExactProfile bump_profile(const Rational& start, const Rational& u, const Rational& v,
                          const Rational& scale) {
  // (r-u)^3 (v-r)^3 expanded exactly
  auto mul = [](const ExactPoly& a, const ExactPoly& b) { return poly_mul(a, b); };
  ExactPoly f1 = {{QScalar(Rational(1)), 1, 0}, {QScalar(-u), 0, 0}};
  ExactPoly f2 = {{QScalar(Rational(-1)), 1, 0}, {QScalar(v), 0, 0}};
  ExactPoly p = {{QScalar(scale), 0, 0}};
  for (int i = 0; i < 3; ++i) p = mul(p, f1);
  for (int i = 0; i < 3; ++i) p = mul(p, f2);
  ExactProfile prof;
  prof.breaks = {start, u, v};
  prof.pieces = {{}, p, {}};
  return prof;
}

ExactPair constructed_rhs(const std::string& family, int sigma_max, const Rational& start) {
  ExactPair rhs;
  rhs.E.rank = 1;
  rhs.H.rank = 2;
  rhs.E.start = start;
  rhs.H.start = start;
  Rational u(5, 8), v(5, 4);
  auto B = [&](const Rational& c) { return bump_profile(start, u, v, c); };
  if (family == "generic") {
    // kernel-type content (ell = 0) in both slots
    rhs.E.set(0, 1, CH_P, B(Rational(3)));
    rhs.H.set(0, 1, CH_P, B(Rational(2)));
    // sigma = 0 modes (ell = 1): all channels
    rhs.E.set(1, 1, CH_P, B(Rational(1)));
    rhs.E.set(1, 1, CH_S, B(Rational(2)));
    rhs.E.set(1, 1, CH_T, B(Rational(1, 2)));
    rhs.H.set(1, 1, CH_P, B(Rational(1, 3)));
    rhs.H.set(1, 1, CH_S, B(Rational(1)));
    rhs.H.set(1, 1, CH_T, B(Rational(1)));
    if (sigma_max >= 1) {
      // sigma = 1 modes (ell = 2)
      rhs.E.set(2, 2, CH_T, B(Rational(1)));
      rhs.E.set(2, 2, CH_P, B(Rational(1, 2)));
      rhs.H.set(2, 1, CH_T, B(Rational(1)));
      rhs.H.set(2, 3, CH_S, B(Rational(1, 4)));
    }
    return rhs;
  }
  if (family == "regular") {
    // divergence-free / rotation-free content only: toroidal channels
    rhs.E.set(1, 1, CH_T, B(Rational(1)));
    if (sigma_max >= 1) rhs.H.set(2, 1, CH_T, B(Rational(1)));
    rhs.H.set(1, 1, CH_T, B(Rational(1, 2)));
    return rhs;
  }
  if (family == "trivial") {
    // rot-free with boundary condition x div-free (kernel of M)
    // F_r = grad of chi with chi(a) = 0: chi = bump (vanishes at a)
    ExactProfile chi = B(Rational(1));
    ExactField chi_f;
    chi_f.rank = 0;
    chi_f.start = start;
    chi_f.set(1, 1, CH_SC, chi);
    rhs.E = field_rot(chi_f);
    rhs.H.set(1, 1, CH_T, B(Rational(1)));  // toroidal rank-2: div-free
    rhs.H.set(0, 1, CH_P, B(Rational(1)));
    return rhs;
  }
  throw std::domain_error("constructed_rhs: unknown family " + family);
}

namespace {

template <class R> SweepReport run_sweep_impl(const SweepConfig& cfg0) {
  SweepConfig cfg = cfg0;
  if (cfg.s == 0.0) cfg.s = cfg.J + 1.0;
  if (cfg.t == 0.0) cfg.t = std::min(kDimN / 2.0 - cfg.J - 2.0, -0.5) - 0.5;
  if (cfg.mag_hi > cfg.omega_hat)
    throw std::domain_error("run_sweep: magnitude grid exceeds the frequency cap");
  SweepReport rep;
  rep.config = cfg;
  if (const char* h = std::getenv("MAXLF_GIT_HASH")) rep.git_hash = h;

  ExactPair rhs_e = constructed_rhs(cfg.rhs_family, cfg.sigma_max);
  FieldPair<R> rhs = to_numeric_pair<R>(rhs_e);
  MomentCutoff cut = build_cutoff(2 * (int(std::ceil(cfg.s)) + cfg.J + 1), Rational(2), Rational(4));
  CorrectionEngine<R> eng(cut, cfg.s, std::max(cfg.J - kDimN, 0) + 1, cfg.sigma_max);
  StaticOpts sopt;
  NormOptions nopt;
  ExpansionSetup<R> setup = prepare_expansion(rhs, cfg.J, cfg.s, cfg.t, eng, sopt, nopt);

  for (int i = 0; i < cfg.n_magnitudes; ++i) {
    double frac = cfg.n_magnitudes == 1 ? 0.0 : double(i) / (cfg.n_magnitudes - 1);
    double mag = cfg.mag_lo * std::pow(cfg.mag_hi / cfg.mag_lo, frac);
    for (double ph : cfg.phases_deg) {
      double rad = ph * 3.14159265358979323846 / 180.0;
      std::complex<double> om_d(mag * std::cos(rad), mag * std::sin(rad));
      Cx<R> om = cx_from<R>(om_d);
      auto [rem_c, nc] = expansion_remainder(setup, om, true);
      SweepPoint pt;
      pt.mag = mag;
      pt.phase_deg = ph;
      pt.omega = om_d;
      pt.corrected = to_dbl(nc);
      if (cfg.with_control) {
        auto [rem_u, nu] = expansion_remainder(setup, om, false);
        pt.control = to_dbl(nu);
      }
      rep.points.push_back(pt);
    }
  }

  // fit on the smallest magnitudes
  std::vector<std::pair<double, double>> pc, pu;
  std::vector<std::vector<std::pair<double, double>>> per_phase(cfg.phases_deg.size());
  for (const auto& pt : rep.points) {
    bool in_window = false;
    int idx = 0;
    for (int i = 0; i < cfg.n_magnitudes; ++i) {
      double frac = cfg.n_magnitudes == 1 ? 0.0 : double(i) / (cfg.n_magnitudes - 1);
      double mag = cfg.mag_lo * std::pow(cfg.mag_hi / cfg.mag_lo, frac);
      if (std::abs(std::log(mag) - std::log(pt.mag)) < 1e-12) {
        idx = i;
        in_window = i < cfg.fit_window;
        break;
      }
    }
    (void)idx;
    if (!in_window) continue;
    pc.push_back({std::log(pt.mag), std::log(std::max(pt.corrected, 1e-300))});
    if (cfg.with_control) pu.push_back({std::log(pt.mag), std::log(std::max(pt.control, 1e-300))});
    for (size_t p = 0; p < cfg.phases_deg.size(); ++p)
      if (pt.phase_deg == cfg.phases_deg[p])
        per_phase[p].push_back({std::log(pt.mag), std::log(std::max(pt.corrected, 1e-300))});
  }
  rep.corrected_fit = fit_slope(pc);
  if (cfg.with_control && !pu.empty()) rep.control_fit = fit_slope(pu);
  for (auto& v : per_phase)
    if (v.size() >= 4) rep.per_phase.push_back(fit_slope(v));
  rep.pass = rep.corrected_fit.slope >= cfg.J - cfg.slope_tol;
  return rep;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SweepReport run_sweep(const SweepConfig& config) {
  if (config.precision == "double") return run_sweep_impl<double>(config);
  return run_sweep_impl<BigReal>(config);
}

std::vector<std::string> emit_report(const SweepReport& rep, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::vector<std::string> files;
  // CSV
  {
    std::string path = out_dir + "/sweep.csv";
    std::ofstream os(path, std::ios::binary);
    os << "mag,phase_deg,omega_re,omega_im,corrected,control\r\n";
    for (const auto& p : rep.points) {
      os << fmt_double(p.mag) << ',' << fmt_double(p.phase_deg) << ','
         << fmt_double(p.omega.real()) << ',' << fmt_double(p.omega.imag()) << ','
         << fmt_double(p.corrected) << ',' << fmt_double(p.control) << "\r\n";
    }
    files.push_back(path);
  }
  // JSON
  {
    nlohmann::json j;
    j["config"] = {{"J", rep.config.J},
                   {"s", rep.config.s},
                   {"t", rep.config.t},
                   {"n_magnitudes", rep.config.n_magnitudes},
                   {"mag_lo", rep.config.mag_lo},
                   {"mag_hi", rep.config.mag_hi},
                   {"phases_deg", rep.config.phases_deg},
                   {"fit_window", rep.config.fit_window},
                   {"rhs_family", rep.config.rhs_family},
                   {"sigma_max", rep.config.sigma_max},
                   {"precision", rep.config.precision},
                   {"omega_hat", rep.config.omega_hat},
                   {"slope_tol", rep.config.slope_tol}};
    j["git_hash"] = rep.git_hash;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : rep.points)
      pts.push_back({{"mag", p.mag},
                     {"phase_deg", p.phase_deg},
                     {"omega", {p.omega.real(), p.omega.imag()}},
                     {"corrected", p.corrected},
                     {"control", p.control}});
    j["points"] = pts;
    j["corrected_fit"] = {{"slope", rep.corrected_fit.slope},
                          {"intercept", rep.corrected_fit.intercept},
                          {"residual", rep.corrected_fit.residual}};
    j["control_fit"] = {{"slope", rep.control_fit.slope},
                        {"intercept", rep.control_fit.intercept},
                        {"residual", rep.control_fit.residual}};
    nlohmann::json pp = nlohmann::json::array();
    for (const auto& f : rep.per_phase)
      pp.push_back({{"slope", f.slope}, {"intercept", f.intercept}, {"residual", f.residual}});
    j["per_phase"] = pp;
    j["pass"] = rep.pass;
    std::string path = out_dir + "/sweep.json";
    std::ofstream os(path, std::ios::binary);
    os << j.dump(2) << "\n";
    files.push_back(path);
  }
  // SVG: log-log plot, two polylines (corrected, control)
  {
    std::string path = out_dir + "/sweep.svg";
    std::ofstream os(path, std::ios::binary);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& p : rep.points) {
      double x = std::log10(p.mag);
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      for (double v : {p.corrected, p.control}) {
        if (v <= 0) continue;
        double y = std::log10(v);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
    if (!(xmax > xmin)) { xmax = xmin + 1; }
    if (!(ymax > ymin)) { ymax = ymin + 1; }
    const double W = 640, H = 480, M = 60;
    auto X = [&](double x) { return M + (x - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto Y = [&](double y) { return H - M - (y - ymin) / (ymax - ymin) * (H - 2 * M); };
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
          "viewBox=\"0 0 640 480\">\n";
    os << "<rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
       << "\" stroke=\"black\"/>\n";
    auto polyline = [&](bool corrected, const char* color) {
      std::ostringstream pl;
      // average over phases per magnitude, sorted by magnitude
      std::map<double, std::pair<double, int>> agg;
      for (const auto& p : rep.points) {
        double v = corrected ? p.corrected : p.control;
        if (v <= 0) continue;
        auto& e = agg[p.mag];
        e.first += std::log10(v);
        e.second += 1;
      }
      pl << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
      for (const auto& [mag, acc] : agg)
        pl << fmt_double(X(std::log10(mag))) << ',' << fmt_double(Y(acc.first / acc.second))
           << ' ';
      pl << "\"/>\n";
      return pl.str();
    };
    os << polyline(true, "#1f77b4");
    os << polyline(false, "#d62728");
    os << "<text x=\"" << W / 2 << "\" y=\"" << H - 15
       << "\" text-anchor=\"middle\" font-size=\"14\">log10 |omega|</text>\n";
    os << "<text x=\"15\" y=\"" << H / 2
       << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 15 " << H / 2
       << ")\">log10 remainder norm</text>\n";
    os << "</svg>\n";
    files.push_back(path);
  }
  return files;
}

}  // namespace maxlf
