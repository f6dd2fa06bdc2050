#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "spectra/scenario.hpp"
#include "spectra/spectral_set.hpp"
#include "spectra/theorem_engine.hpp"

namespace randomized {

using nlohmann::json;

inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "(%.17g)", v);
  return buf;
}

struct Draw {
  std::string family;
  int n = 1;
  std::string phi;  // x + x(1-x)(alpha + beta x)
  std::string w;
  double c = 1.0;   // scale factor for the covariance check
};

// Increasing cubic with hyperbolic fixed points and a nonvanishing quadratic
// weight; every other block of four draws has an interior fixed point.
inline Draw draw(std::mt19937& rng, int index) {
  std::uniform_real_distribution<double> ua(-0.8, 0.8), ub(-0.7, 0.7), uc0(1.0, 3.0), uc(-0.4, 0.4);
  std::uniform_real_distribution<double> ux(0.15, 0.85);
  const bool interior = (index / 4) % 2 == 1;
  double alpha, beta;
  for (;;) {
    beta = ub(rng);
    alpha = interior ? -beta * ux(rng) : ua(rng);
    if (std::abs(alpha) + 1.25 * std::abs(beta) > 0.9) continue;
    if (std::abs(alpha) < 0.02 || std::abs(alpha + beta) < 0.02) continue;
    if (beta != 0.0) {
      const double xs = -alpha / beta;
      if (xs > 0.0 && xs < 1.0) {
        if (xs < 0.05 || xs > 0.95) continue;
        if (std::abs(xs * (1.0 - xs) * beta) < 0.02) continue;
      }
    }
    break;
  }
  const double c0 = uc0(rng), c1 = uc(rng) * c0, c2 = uc(rng) * c0;
  const double sign = (rng() & 1u) ? 1.0 : -1.0;
  static const double scales[] = {0.5, -0.5, 3.0, -3.0};
  Draw d;
  d.family = index % 2 == 0 ? "C" : "Lip";
  d.n = 1 + (index / 2) % 2;
  d.phi = "x+x*(1-x)*(" + num(alpha) + "+" + num(beta) + "*x)";
  d.w = num(sign * c0) + "+" + num(sign * c1) + "*x+" + num(sign * c2) + "*x^2";
  d.c = scales[index % 4];
  return d;
}

inline json expression(const std::string& text) { return {{"kind", "expression"}, {"expr", text}}; }

inline spectra::Scenario scenario(const Draw& d, const json& phi, const json& w) {
  return spectra::scenario_from_json({{"space", {{"family", d.family}, {"n", d.n}}}, {"phi", phi}, {"w", w}});
}

inline spectra::Scenario base(const Draw& d) { return scenario(d, expression(d.phi), expression(d.w)); }

inline spectra::Scenario scaled(const Draw& d) {
  return scenario(d, expression(d.phi),
                  {{"kind", "composite"}, {"op", "multiply"}, {"factors", {{{"kind", "constant"}, {"value", d.c}}, expression(d.w)}}});
}

// T^-1 f = (1 / w o phi^-1) f o phi^-1.
inline spectra::Scenario inverted(const Draw& d) {
  const json inv = {{"kind", "composite"}, {"op", "inverse"}, {"of", expression(d.phi)}};
  return scenario(d, inv, {{"kind", "composite"}, {"op", "compose"}, {"outer", expression("1/(" + d.w + ")")}, {"inner", inv}});
}

inline spectra::SpectralSet apply(const spectra::SpectralSet& s, bool invert, spectra::Complex c) {
  return invert ? spectra::invert(s) : spectra::scale(s, c);
}

inline bool same_eigenvalues(const spectra::SpectrumReport& a, const spectra::SpectrumReport& b, bool invert,
                             spectra::Complex c, double tol) {
  if (a.eigenvalues.size() != b.eigenvalues.size()) return false;
  for (const auto& e : a.eigenvalues) {
    const spectra::Complex target = invert ? 1.0 / e.value : c * e.value;
    bool found = false;
    for (const auto& f : b.eigenvalues)
      found = found || (std::abs(f.value - target) <= tol * std::max(1.0, std::abs(target)) && f.multiplicity == e.multiplicity);
    if (!found) return false;
  }
  return true;
}

// Violations of the transformed report against the expected image of `a`.
inline std::vector<std::string> compare(const spectra::SpectrumReport& a, const spectra::SpectrumReport& b, bool invert,
                                        spectra::Complex c, const std::string& tag) {
  const double tol = 1e-8;
  std::vector<std::string> out;
  if (!spectra::approx_equal(apply(a.sigma, invert, c), b.sigma, tol)) out.push_back(tag + ": sigma");
  for (int k = 1; k <= 5; ++k)
    if (!spectra::approx_equal(apply(a.sigma_k(k), invert, c), b.sigma_k(k), tol))
      out.push_back(tag + ": sigma" + std::to_string(k));
  if (!spectra::approx_equal(apply(a.sigma2_adjoint, invert, c), b.sigma2_adjoint, tol))
    out.push_back(tag + ": sigma2 of the adjoint");
  if (!same_eigenvalues(a, b, invert, c, tol)) out.push_back(tag + ": eigenvalues");
  return out;
}

struct Outcome {
  int scenarios = 0;
  std::vector<std::string> violations;
};

inline Outcome run(int count, unsigned seed) {
  std::mt19937 rng(seed);
  Outcome o;
  for (int i = 0; i < count; ++i) {
    const Draw d = draw(rng, i);
    const std::string id = "#" + std::to_string(i) + " " + d.family + std::to_string(d.n) + " phi=" + d.phi + " w=" + d.w;
    try {
      const spectra::SpectrumReport a = spectra::compute_spectra(base(d));
      for (const auto& v : spectra::report_violations(a)) o.violations.push_back(id + ": " + v);
      const spectra::SpectrumReport s = spectra::compute_spectra(scaled(d));
      for (const auto& v : spectra::report_violations(s)) o.violations.push_back(id + " scaled: " + v);
      for (const auto& v : compare(a, s, false, {d.c, 0.0}, "scale")) o.violations.push_back(id + " " + v);
      const spectra::SpectrumReport t = spectra::compute_spectra(inverted(d));
      for (const auto& v : spectra::report_violations(t)) o.violations.push_back(id + " inverse: " + v);
      for (const auto& v : compare(a, t, true, {}, "inversion")) o.violations.push_back(id + " " + v);
    } catch (const std::exception& e) {
      o.violations.push_back(id + ": " + e.what());
    }
    ++o.scenarios;
  }
  return o;
}

}  // namespace randomized
