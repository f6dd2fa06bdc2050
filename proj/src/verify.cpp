#include <algorithm>
#include <cmath>
#include <limits>

#include "spectra/errors.hpp"
#include "spectra/numerics.hpp"
#include "spectra/piecewise_family.hpp"
#include "spectra/theorem_engine.hpp"

namespace spectra::numerics {

namespace {

constexpr double kRadiusTolerance = 0.05;
constexpr double kEigenResidual = 1e-8;
constexpr int kEigenFactors = 60;
constexpr double kWitnessBound = 0.25;  // times |lambda|

bool is_sobolev(const Scenario& scn) { return scn.space.family == Family::W && std::isfinite(scn.space.p); }

// Exponent m of the derivative factor in the multiplier |w| (phi')^m.
double multiplier_exponent(const Scenario& scn) {
  const double n = scn.space.n;
  if (!is_sobolev(scn)) return n;
  const double p = scn.space.p;
  return scn.options.sobolev_mode == SobolevMode::lemma_l9 ? n - 1.0 / p : 2.0 * n - n / p;
}

bool stable(const std::array<double, 3>& v) {
  const double lo = std::min({v[0], v[1], v[2]}), hi = std::max({v[0], v[1], v[2]});
  return hi - lo <= 0.02 * std::max(std::abs(hi), 1e-300);
}

std::vector<double> as_vector(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

void radius_verdicts(std::vector<OracleVerdict>& out, const GrowthRates& g, double R1, double R2, const char* tag) {
  out.push_back(value_verdict(std::string("R1 ") + tag, R1, g.max_rate, kRadiusTolerance, stable(g.max_by_depth),
                              as_vector(g.max_by_depth)));
  out.push_back(value_verdict(std::string("R2 ") + tag, R2, g.min_rate, kRadiusTolerance, stable(g.min_by_depth),
                              as_vector(g.min_by_depth)));
}

void eigen_verdicts(std::vector<OracleVerdict>& out, const ScenarioModels& m, const SpectrumReport& r, int grid) {
  for (const auto& e : r.eigenvalues) {
    int end = -1;
    for (int a : {0, 1})
      if (m.phi(a) == a && std::abs(e.value - Complex(m.w(a), 0.0)) < 1e-12) end = a;
    if (end < 0) continue;
    const std::string label = "eigenfunction product at " + std::to_string(end);
    // Truncation error decays like q^K.
    const double d = m.phi.derivative(end, 1);
    const double mod = std::abs(e.value);
    const double q = std::max({std::min(d, 1.0 / d), r.R1 / mod < 1.0 ? r.R1 / mod : 0.0, mod / r.R2 < 1.0 ? mod / r.R2 : 0.0});
    int factors = kEigenFactors;
    if (q > 0.0 && q < 1.0) factors = std::clamp(static_cast<int>(std::ceil(std::log(1e-12) / std::log(q))), kEigenFactors, 4000);
    try {
      const EigenfunctionCheck c = eigenfunction_product(m.phi, m.w, end, factors, grid, r.R1, r.R2);
      auto v = residual_verdict(label, c.residual, kEigenResidual, c.converged, c.residual_by_factors);
      if (c.inverse_orbit) v.note += "; product along the inverse map";
      out.push_back(std::move(v));
    } catch (const Refusal& ex) {
      auto v = residual_verdict(label, std::numeric_limits<double>::infinity(), kEigenResidual, false);
      v.note = std::string("oracle refused: ") + ex.what();
      out.push_back(std::move(v));
    }
  }
}

void witness_verdicts(std::vector<OracleVerdict>& out, const ScenarioModels& m, const SpectrumReport& r, double expo,
                      int grid) {
  // The weighted-shift witness acts on g -> w (phi')^m g o phi, which is the
  // operator A whose sigma_2 the report lists.
  for (const auto& an : r.sigma_k(2).annuli()) {
    const double radius = 0.5 * (an.r_in + an.r_out);
    if (!(radius > 0.0)) continue;
    const WitnessResult coarse = approx_point_witness(m.phi, m.w, expo, {radius, 0.0}, 8, grid);
    const WitnessResult fine = approx_point_witness(m.phi, m.w, expo, {radius, 0.0}, 32, grid);
    const bool decreasing = fine.residual < coarse.residual || fine.residual < 1e-6;
    auto v = residual_verdict("approximate point witness at |lambda|=" + std::to_string(radius), fine.residual,
                              kWitnessBound * radius, decreasing, {coarse.residual, fine.residual});
    if (fine.truncated) v.note += "; " + fine.warning;
    out.push_back(std::move(v));
  }
}

void piecewise_verdicts(std::vector<OracleVerdict>& out, const PiecewiseLinearFamily& fam, const ScenarioModels& m,
                        const SpectrumReport& r, int n) {
  const int nmax = fam.n_max();
  for (const auto& info : r.lip_classes) {
    const IntervalClass* cls = nullptr;
    for (const auto& c : fam.classes())
      if (c.label == info.label) cls = &c;
    if (!cls) continue;
    // Which sign of the index runs towards 0.
    const bool positive_near_zero = fam.breakpoint(cls->first_generator, nmax / 2) < 0.5;
    for (int end : {0, 1}) {
      const int sign = (end == 0) == positive_near_zero ? 1 : -1;
      const int start = sign > 0 ? nmax / 2 : -nmax / 2 - cls->index_shift;
      const double slope = fam.orbit_growth(*cls, start, nmax / 4);
      const double estimate = std::abs(m.w(end)) * std::pow(slope, n);
      const double closed = end == 0 ? info.e0 : info.e1;
      out.push_back(value_verdict("class " + info.label + " exponent at " + std::to_string(end), closed, estimate,
                                  kRadiusTolerance, std::isfinite(estimate), {slope}));
    }
  }
}

}  // namespace

std::vector<OracleVerdict> verify(const Scenario& scn, const SpectrumReport& report, const VerifyOptions& opts) {
  std::vector<OracleVerdict> out;
  const ScenarioModels models = build_models(scn);
  const HomeoModel& phi = models.phi;
  const double expo = multiplier_exponent(scn);
  const int eigen_grid = std::min(opts.grid, 2001);
  const bool literal_derivative = scn.options.multiplier_reading == MultiplierReading::derivative && scn.space.n > 1;

  if (const PiecewiseLinearFamily* fam = phi.piecewise()) {
    piecewise_verdicts(out, *fam, models, report, scn.space.n);
    return out;
  }
  if (phi.orientation() == Orientation::reversing) {
    const HomeoModel sq = square_map(phi);
    const WeightModel sw = square_weight(models.w, phi);
    if (!literal_derivative)
      radius_verdicts(out, cocycle_growth(sq, sw, expo, opts.depth, opts.grid), report.R1 * report.R1,
                      report.R2 * report.R2, "(square map)");
    return out;
  }
  if (!literal_derivative) radius_verdicts(out, cocycle_growth(phi, models.w, expo, opts.depth, opts.grid),
                                           report.R1, report.R2, "(cocycle growth)");
  if (is_sobolev(scn)) {
    const double p = scn.space.p;
    const IsometryCheck iso = lp_isometry_check(phi, p, 10, 2048);
    out.push_back(residual_verdict("L^p isometry ratios", iso.max_deviation, 1e-6, true, iso.power_norm_estimates));
    const PowerNormEstimate pn = sobolev_power_norms(phi, models.w, scn.space.n, p, 10, 4097);
    out.push_back(value_verdict("R1 (power norms)", report.R1, pn.upper_rate, kRadiusTolerance, true));
    out.push_back(value_verdict("R2 (power norms)", report.R2, pn.lower_rate, kRadiusTolerance, true));
    return out;
  }
  eigen_verdicts(out, models, report, eigen_grid);
  if (!literal_derivative) witness_verdicts(out, models, report, expo, opts.grid);
  return out;
}

}  // namespace spectra::numerics
