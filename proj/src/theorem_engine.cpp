#include "spectra/theorem_engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "spectra/dynamics.hpp"
#include "spectra/errors.hpp"
#include "spectra/piecewise_family.hpp"

namespace spectra {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  return fmt(z.real()) + (z.imag() < 0 ? "-" : "+") + fmt(std::abs(z.imag())) + "i";
}

void note(SpectrumReport& r, std::string component, std::string rule, std::string detail) {
  r.provenance.push_back({std::move(component), std::move(rule), std::move(detail)});
}

FixedPointOptions fp_options(const Scenario& scn) {
  FixedPointOptions o;
  o.tol = scn.options.tol;
  o.grid = scn.options.grid;
  o.segment_samples = scn.options.segment_samples;
  return o;
}

struct Pipeline {
  int multiplicity = 1;
  std::function<double(const FixedPoint&)> multiplier;
  std::function<Complex(const FixedPoint&)> eigen_value;
  bool endpoints_only = false;
  std::string multiplier_label;
  std::string eigen_source;
};

void add_eigenvalue(std::vector<Eigenvalue>& eig, Complex z, int mult, const std::string& source) {
  for (auto& e : eig) {
    if (std::abs(e.value - z) <= SpectralSet::kSlack * std::max(1.0, std::abs(z))) {
      e.multiplicity += mult;
      return;
    }
  }
  eig.push_back({z, mult, source});
}

SpectralSet eigen_points(const std::vector<Eigenvalue>& eig) {
  std::vector<SpectralPoint> pts;
  for (const auto& e : eig) pts.push_back({e.value, e.multiplicity, e.source});
  return SpectralSet({}, std::move(pts));
}

void sort_eigenvalues(std::vector<Eigenvalue>& eig) {
  std::sort(eig.begin(), eig.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
    return a.value.real() < b.value.real() || (a.value.real() == b.value.real() && a.value.imag() < b.value.imag());
  });
}

// Fixed-point assembly shared by the C, smooth Lipschitz and Sobolev engines.
SpectrumReport assemble_preserving(FixedPointAnalysis fa, const Pipeline& p) {
  assign_multipliers(fa, p.multiplier);
  SpectrumReport r;
  r.multiplier = p.multiplier_label;

  std::vector<Annulus> a2, a2p;
  std::vector<SpectralPoint> p2, p2p;
  for (const auto& seg : fa.segments) {
    for (double v : seg.w_samples) {
      p2.push_back({Complex(v, 0.0), 1, "curve_sample"});
      p2p.push_back({Complex(v, 0.0), 1, "curve_sample"});
    }
    const std::string d = "w over fixed segment [" + fmt(seg.lo) + ", " + fmt(seg.hi) + "], " +
                          std::to_string(seg.w_samples.size()) + " samples";
    note(r, "sigma2", "curve_sample:interior-fixed-segment", d);
    note(r, "sigma2_adjoint", "curve_sample:interior-fixed-segment", d);
  }
  for (const auto& fp : fa.fixed_points) {
    if (fp.interior) continue;
    a2.push_back({fp.v, fp.v});
    a2p.push_back({fp.v, fp.v});
    const std::string d = "a=" + fmt(fp.a) + " r=" + fmt(fp.v) + (fp.isolated ? "" : " (boundary of a fixed segment)") +
                          (fp.tangential ? " (tangential)" : "");
    note(r, "sigma2", "circle:fixed-point-multiplier", d);
    note(r, "sigma2_adjoint", "circle:fixed-point-multiplier", d);
  }
  for (const auto& iv : fa.complementary_intervals) {
    if (iv.v_a == iv.v_b) continue;
    const bool below = iv.direction == Direction::below;
    const bool to_T = below ? iv.v_b < iv.v_a : iv.v_a < iv.v_b;
    const double lo = std::min(iv.v_a, iv.v_b), hi = std::max(iv.v_a, iv.v_b);
    (to_T ? a2 : a2p).push_back({lo, hi});
    note(r, to_T ? "sigma2" : "sigma2_adjoint", std::string("open_generator:") + (below ? "below" : "above") + "-interval",
         "(" + fmt(iv.a) + ", " + fmt(iv.b) + "): " + fmt(lo) + " < |z| < " + fmt(hi));
  }
  const SpectralSet s2(a2, p2), s2p(a2p, p2p);
  const SpectralSet s1 = set_intersection(s2, s2p);
  const SpectralSet sA = set_union(s2, s2p);
  r.sigma_i = {s1, s2, sA, sA, sA};
  r.sigma2_adjoint = s2p;
  r.sigma_A = sA;
  note(r, "sigma1", "identity:intersection", "sigma2 and sigma2_adjoint");
  note(r, "sigma_A", "identity:union", "sigma3 = sigma4 = sigma5 = sigma_A = sigma2 U sigma2_adjoint");

  double R1 = 0.0, R2 = INFINITY;
  for (const auto& fp : fa.fixed_points) {
    R1 = std::max(R1, fp.v);
    R2 = std::min(R2, fp.v);
  }
  for (const auto& seg : fa.segments) {
    for (double v : seg.w_samples) {
      R1 = std::max(R1, std::abs(v));
      R2 = std::min(R2, std::abs(v));
    }
  }
  r.R1 = R1;
  r.R2 = std::isfinite(R2) ? R2 : 0.0;
  note(r, "R1", "radius:max-fixed-point-multiplier", fmt(r.R1));
  note(r, "R2", "radius:min-fixed-point-multiplier", fmt(r.R2));

  for (const auto& fp : fa.fixed_points) {
    if (!fp.isolated) continue;
    if (p.endpoints_only && fp.a != 0.0 && fp.a != 1.0) continue;
    const Complex z = p.eigen_value(fp);
    if (sA.contains(z)) continue;
    const double m = std::abs(z);
    if (!(m > r.R1 || m < r.R2)) continue;
    add_eigenvalue(r.eigenvalues, z, p.multiplicity, p.eigen_source);
    note(r, "eigenvalues", p.eigen_source, "a=" + fmt(fp.a) + " lambda=" + fmt(z));
  }
  sort_eigenvalues(r.eigenvalues);
  const SpectralSet ep = eigen_points(r.eigenvalues);
  r.sigma = set_union(sA, ep);
  r.sigma_ap = set_union(s2, ep);
  r.analysis = std::move(fa);
  return r;
}

void require_preserving_resolved(const FixedPointAnalysis& fa) {
  if (!fa.interval_structure_resolved)
    throw Refusal("fixed-point structure unresolved at the working tolerance: " + fa.diagnostic);
}

void require_smooth(const HomeoModel& phi, int order, const char* family) {
  if (phi.piecewise() || phi.smoothness() < order)
    throw Refusal(std::string(family) + " engine requires a map with " + std::to_string(order) +
                  " continuous derivatives");
}

Pipeline power_pipeline(const Scenario& scn, const HomeoModel& phi, const WeightModel& w, int n) {
  Pipeline p;
  p.multiplicity = n;
  if (scn.options.multiplier_reading == MultiplierReading::derivative && n > 1) {
    p.multiplier = [&phi, n](const FixedPoint& fp) { return std::abs(phi.derivative(fp.a, n)); };
    p.multiplier_label = "|w(a)| |phi^(" + std::to_string(n) + ")(a)|";
  } else {
    p.multiplier = [n](const FixedPoint& fp) { return std::pow(fp.phi_prime, n); };
    p.multiplier_label = n == 1 ? "|w(a)| phi'(a)" : "|w(a)| phi'(a)^" + std::to_string(n);
  }
  p.eigen_value = [&w](const FixedPoint& fp) { return Complex(w(fp.a), 0.0); };
  p.eigen_source = "eigenvalue:isolated-fixed-point";
  return p;
}

SpectrumReport c_preserving(const Scenario& scn, const HomeoModel& phi, const WeightModel& w) {
  const int n = scn.space.n;
  require_smooth(phi, n, "C");
  FixedPointAnalysis fa = find_fixed_points(phi, w, fp_options(scn));
  require_preserving_resolved(fa);
  if (n > 1 && !fa.F_nowhere_dense) throw Refusal("the fixed-point set has interior; the C^n engine requires F nowhere dense");
  SpectrumReport r = assemble_preserving(std::move(fa), power_pipeline(scn, phi, w, n));
  r.engine = n == 1 ? "C1" : "Cn";
  if (n == 1) {
    // The grid maximum of |w| phi' over [0,1] is reported next to the fixed-point form.
    double gmax = 0.0;
    const int N = 2000;
    for (int i = 0; i <= N; ++i) {
      const double x = static_cast<double>(i) / N;
      gmax = std::max(gmax, std::abs(w(x)) * phi.derivative(x, 1));
    }
    if (std::abs(gmax - r.R1) > 1e-9 * std::max(1.0, r.R1))
      note(r, "R1", "radius:fixed-point-form",
           "grid maximum of |w| phi' over [0,1] is " + fmt(gmax) + "; the fixed-point form " + fmt(r.R1) + " is used");
  }
  return r;
}

SpectrumReport lip_smooth(const Scenario& scn, const HomeoModel& phi, const WeightModel& w, bool endpoints_only) {
  const int n = scn.space.n;
  require_smooth(phi, 1, "Lip");
  FixedPointAnalysis fa = find_fixed_points(phi, w, fp_options(scn));
  require_preserving_resolved(fa);
  if (n > 1 && !fa.F_nowhere_dense) throw Refusal("the fixed-point set has interior; the Lip^n engine requires F nowhere dense");
  Pipeline p = power_pipeline(scn, phi, w, n);
  p.endpoints_only = endpoints_only;
  p.eigen_source = endpoints_only ? "eigenvalue:endpoint-weight" : "eigenvalue:isolated-fixed-point";
  SpectrumReport r = assemble_preserving(std::move(fa), p);
  r.engine = "Lip-smooth";
  return r;
}

struct ClassData {
  std::string label;
  double s0, s1;
  double spread0 = 0.0, spread1 = 0.0;
  std::string snapped0, snapped1;
};

SpectrumReport lip_piecewise(const Scenario& scn, const HomeoModel& phi, const WeightModel& w) {
  if (phi.orientation() != Orientation::preserving) throw Refusal("piecewise Lipschitz engine requires a preserving map");
  const int n = scn.space.n;
  SpectrumReport r;
  r.engine = "Lip-piecewise";
  r.multiplier = n == 1 ? "|w(end)| class slope" : "|w(end)| class slope^" + std::to_string(n);

  std::vector<ClassData> classes;
  bool below = true;
  if (scn.options.lip_invariant_sets) {
    if (const PiecewiseLinearFamily* fam = phi.piecewise()) {
      below = fam->below();
    } else {
      FixedPointAnalysis fa = find_fixed_points(phi, w, fp_options(scn));
      require_preserving_resolved(fa);
      if (fa.fixed_points.size() != 2 || fa.complementary_intervals.size() != 1)
        throw Refusal("explicit invariant classes require F = {0, 1}");
      below = fa.complementary_intervals[0].direction == Direction::below;
    }
    for (const auto& c : *scn.options.lip_invariant_sets) {
      classes.push_back({c.label, c.slope0, c.slope1, 0.0, 0.0, {}, {}});
      note(r, "lip_classes", "class:declared", c.label + " slopes " + fmt(c.slope0) + ", " + fmt(c.slope1));
    }
  } else {
    const PiecewiseLinearFamily* fam = phi.piecewise();
    if (!fam) throw Refusal("Lipschitz scenario is neither smooth nor decomposable into invariant classes");
    below = fam->below();
    note(r, "lip_classes", "family:index-offset", std::to_string(fam->index_offset()) + ", n_max " + std::to_string(fam->n_max()));
    for (const auto& c : fam->classes()) {
      const TailSlope t0 = fam->tail_slope(c, 0);
      const TailSlope t1 = fam->tail_slope(c, 1);
      for (const auto* t : {&t0, &t1}) {
        if (!(t->spread <= scn.options.stabilization_spread)) {
          std::string est;
          for (double d : t->depth_estimates) est += (est.empty() ? "" : ", ") + fmt(d);
          throw Refusal("tail slope of class " + c.label + " at end " + (t == &t0 ? "0" : "1") +
                        " did not stabilize: spread " + fmt(t->spread) + " over depths (" + est + ")");
        }
      }
      ClassData d{c.label, t0.value, t1.value, t0.spread, t1.spread, {}, {}};
      if (t0.rational_snap) d.snapped0 = std::to_string(t0.numerator) + "/" + std::to_string(t0.denominator);
      if (t1.rational_snap) d.snapped1 = std::to_string(t1.numerator) + "/" + std::to_string(t1.denominator);
      for (int end = 0; end < 2; ++end) {
        const TailSlope& t = end == 0 ? t0 : t1;
        note(r, "lip_classes", t.rational_snap ? "tail-limit:rational-snap" : "tail-limit:extrapolated",
             c.label + " end " + std::to_string(end) + ": slope " + fmt(t.value) + " (raw " + fmt(t.raw) + ", spread " +
                 fmt(t.spread) + ")");
      }
      classes.push_back(std::move(d));
    }
  }

  const double w0 = std::abs(w(0.0)), w1 = std::abs(w(1.0));
  std::vector<double> es;
  for (const auto& c : classes) {
    LipClassInfo info;
    info.label = c.label;
    info.slope0 = c.s0;
    info.slope1 = c.s1;
    info.e0 = w0 * std::pow(c.s0, n);
    info.e1 = w1 * std::pow(c.s1, n);
    info.spread0 = c.spread0;
    info.spread1 = c.spread1;
    info.snapped0 = c.snapped0;
    info.snapped1 = c.snapped1;
    es.push_back(info.e0);
    es.push_back(info.e1);
    r.lip_classes.push_back(info);
  }
  std::sort(es.begin(), es.end());
  std::vector<double> distinct;
  for (double e : es)
    if (distinct.empty() || e > distinct.back() * (1.0 + 1e-12)) distinct.push_back(e);

  std::vector<Annulus> a1, a2, a2p;
  for (double e : distinct) {
    a1.push_back({e, e});
    note(r, "sigma1", "circle:class-exponent", "r=" + fmt(e));
  }
  a2 = a1;
  a2p = a1;
  for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
    LipBandInfo band;
    band.r_lo = distinct[i];
    band.r_hi = distinct[i + 1];
    band.r_test = 0.5 * (band.r_lo + band.r_hi);
    const double rt = band.r_test;
    bool t_kind = false, tp_kind = false;
    for (const auto& c : r.lip_classes) {
      const double ea = below ? c.e0 : c.e1;
      const double er = below ? c.e1 : c.e0;
      if (ea > rt && rt > er) {
        t_kind = true;
        band.E1.push_back(c.label);
      } else if (ea < rt && rt < er) {
        tp_kind = true;
        band.E1.push_back(c.label);
      } else if (ea < rt && er < rt) {
        band.E2.push_back(c.label);
      } else {
        band.E3.push_back(c.label);
      }
    }
    const std::string range = fmt(band.r_lo) + " < |z| < " + fmt(band.r_hi);
    if (t_kind && tp_kind) {
      band.classification = "sigma1";
      a1.push_back({band.r_lo, band.r_hi});
      a2.push_back({band.r_lo, band.r_hi});
      a2p.push_back({band.r_lo, band.r_hi});
      note(r, "sigma1", "band:both-transitions", range);
    } else if (t_kind) {
      band.classification = "sigma2_only";
      a2.push_back({band.r_lo, band.r_hi});
      note(r, "sigma2", "band:transition", range);
    } else if (tp_kind) {
      band.classification = "sigma2_adjoint_only";
      a2p.push_back({band.r_lo, band.r_hi});
      note(r, "sigma2_adjoint", "band:adjoint-transition", range);
    } else {
      band.classification = "gap";
      r.warnings.push_back("no invariant class changes behavior on " + range + "; band left out of sigma3");
    }
    r.lip_bands.push_back(std::move(band));
  }
  const SpectralSet s1(a1), s2(a2), s2p(a2p);
  const SpectralSet s3 = set_union(s2, s2p);
  r.sigma_i = {s1, s2, s3, s3, s3};
  r.sigma2_adjoint = s2p;
  r.sigma_A = SpectralSet::annulus(distinct.front(), distinct.back());
  note(r, "sigma_A", "annulus:class-exponent-range", fmt(distinct.front()) + " <= |z| <= " + fmt(distinct.back()));
  r.R1 = distinct.back();
  r.R2 = distinct.front();
  note(r, "R1", "radius:max-class-exponent", fmt(r.R1));
  note(r, "R2", "radius:min-class-exponent", fmt(r.R2));

  for (double a : {0.0, 1.0}) {
    const Complex z(w(a), 0.0);
    if (r.sigma_A.contains(z)) continue;
    add_eigenvalue(r.eigenvalues, z, n, "eigenvalue:endpoint-weight");
    note(r, "eigenvalues", "eigenvalue:endpoint-weight", "a=" + fmt(a) + " lambda=" + fmt(z));
  }
  sort_eigenvalues(r.eigenvalues);
  const SpectralSet ep = eigen_points(r.eigenvalues);
  r.sigma = set_union(r.sigma_A, ep);
  r.sigma_ap = set_union(s2, ep);
  return r;
}

SpectrumReport lip_dispatch(const Scenario& scn, const HomeoModel& phi, const WeightModel& w) {
  if (scn.options.lip_invariant_sets || phi.piecewise()) return lip_piecewise(scn, phi, w);
  return lip_smooth(scn, phi, w, true);
}

SpectrumReport sobolev_l9(const Scenario& scn, const HomeoModel& phi, const WeightModel& w) {
  const int n = scn.space.n;
  const double p = scn.space.p;
  FixedPointAnalysis fa = find_fixed_points(phi, w, fp_options(scn));
  require_preserving_resolved(fa);
  if (n > 1 && !fa.F_nowhere_dense) throw Refusal("the fixed-point set has interior; the W^{n,p} engine requires F nowhere dense");
  const double m = n - 1.0 / p;
  const double e = n - n / p;
  Pipeline pl;
  pl.multiplicity = n;
  pl.multiplier = [m](const FixedPoint& fp) { return std::pow(fp.phi_prime, m); };
  pl.multiplier_label = "|w(a)| phi'(a)^" + fmt(m);
  pl.eigen_value = [&w, e](const FixedPoint& fp) { return Complex(w(fp.a) * std::pow(fp.phi_prime, e), 0.0); };
  pl.eigen_source = "eigenvalue:transformed-weight";
  SpectrumReport r = assemble_preserving(std::move(fa), pl);
  r.engine = "Sobolev-lemma_l9";
  note(r, "sigma_A", "multiplier:sobolev-renormalized", "exponent n - 1/p = " + fmt(m));
  note(r, "eigenvalues", "multiplier:transformed-weight", "w(a) phi'(a)^(n - n/p), exponent " + fmt(e));
  return r;
}

SpectrumReport sobolev_transform(const Scenario& scn, const HomeoModel& phi, const WeightModel& w) {
  const int n = scn.space.n;
  const double e = n - n / scn.space.p;
  WeightModel wt(w.spec(), derivative_power_weight(w.model_ptr(), phi.model_ptr(), e), scn.options.validation_grid);
  SpectrumReport r = lip_smooth(scn, phi, wt, true);
  r.engine = "Sobolev-t4_1_transform";
  r.multiplier = "|w(a)| phi'(a)^(" + fmt(e) + ") phi'(a)^" + std::to_string(n);
  note(r, "sigma_A", "multiplier:transformed-weight", "weight w phi'^" + fmt(e) + " on Lip^" + std::to_string(n));
  return r;
}

void check_weight_smoothness(const WeightModel& w, int n) {
  if (w.smoothness() < n) throw Refusal("weight lacks the required smoothness");
}

}  // namespace

ScenarioModels build_models(const Scenario& scn) {
  ValidationOptions vo;
  vo.grid = scn.options.validation_grid;
  try {
    return ScenarioModels{HomeoModel(scn.phi, vo), WeightModel(scn.w, scn.options.validation_grid)};
  } catch (const DomainError& e) {
    throw Refusal(std::string("invalid scenario data: ") + e.what());
  }
}

SpectrumReport spectra_C1(const Scenario& scn) {
  if (scn.space.family != Family::C || scn.space.n != 1) throw DomainError("spectra_C1 expects family C with n = 1");
  const ScenarioModels m = build_models(scn);
  if (m.phi.orientation() == Orientation::reversing) return spectra_reversing(scn);
  SpectrumReport r = c_preserving(scn, m.phi, m.w);
  r.space = scn.space;
  return r;
}

SpectrumReport spectra_Cn(const Scenario& scn) {
  if (scn.space.family != Family::C) throw DomainError("spectra_Cn expects family C");
  const ScenarioModels m = build_models(scn);
  if (m.phi.orientation() == Orientation::reversing) return spectra_reversing(scn);
  check_weight_smoothness(m.w, scn.space.n);
  SpectrumReport r = c_preserving(scn, m.phi, m.w);
  r.space = scn.space;
  return r;
}

SpectrumReport spectra_reversing(const Scenario& scn) {
  if (scn.space.family == Family::W) throw Refusal("orientation-reversing maps are not supported on W^{n,p}");
  const ScenarioModels m = build_models(scn);
  if (m.phi.orientation() != Orientation::reversing) throw DomainError("spectra_reversing expects phi(0) = 1");
  const int n = scn.space.n;
  if (m.phi.piecewise()) throw Refusal("reversing engine requires a smooth map");
  PeriodTwoAnalysis pa = analyze_period_two(m.phi, m.w, fp_options(scn));
  if (!pa.resolved) throw Refusal("period-two structure unresolved: " + pa.square.diagnostic);

  const HomeoModel phi2 = square_map(m.phi);
  const WeightModel w2 = square_weight(m.w, m.phi);
  SpectrumReport sq;
  if (scn.space.family == Family::C) {
    sq = c_preserving(scn, phi2, w2);
  } else {
    sq = lip_smooth(scn, phi2, w2, false);
  }

  SpectrumReport r;
  r.engine = "reversing";
  r.space = scn.space;
  r.multiplier = "square root of the T^2 multiplier " + sq.multiplier;
  for (std::size_t i = 0; i < 5; ++i) r.sigma_i[i] = square_root_preimage(sq.sigma_i[i]);
  r.sigma2_adjoint = square_root_preimage(sq.sigma2_adjoint);
  r.sigma_A = square_root_preimage(sq.sigma_A);
  r.R1 = std::sqrt(sq.R1);
  r.R2 = std::sqrt(sq.R2);
  for (const auto& pr : sq.provenance) r.provenance.push_back({pr.component, "square:" + pr.rule, pr.detail});
  note(r, "sigma_A", "preimage:square-root", "every set is the preimage of the T^2 set under z -> z^2");

  const int mult = scn.space.family == Family::Lip ? n : 1;
  auto square_is_eigen = [&](Complex z) {
    const Complex z2 = z * z;
    return std::any_of(sq.eigenvalues.begin(), sq.eigenvalues.end(), [&](const Eigenvalue& e) {
      return std::abs(e.value - z2) <= 1e-9 * std::max(1.0, std::abs(z2));
    });
  };
  const Complex wa(pa.central_w, 0.0);
  if (square_is_eigen(wa) && !r.sigma_A.contains(wa)) {
    add_eigenvalue(r.eigenvalues, wa, mult, "eigenvalue:central-fixed-point");
    note(r, "eigenvalues", "eigenvalue:central-fixed-point", "a=" + fmt(pa.central_fixed_point) + " lambda=" + fmt(wa));
  }
  for (const auto& pr : pa.isolated_period2_points) {
    const Complex root = std::sqrt(Complex(pr.product, 0.0));
    for (const Complex z : {root, -root}) {
      if (!square_is_eigen(z) || r.sigma_A.contains(z)) continue;
      add_eigenvalue(r.eigenvalues, z, mult, "eigenvalue:period-two-pair");
      note(r, "eigenvalues", "eigenvalue:period-two-pair", "t=" + fmt(pr.t) + " lambda=" + fmt(z));
    }
  }
  sort_eigenvalues(r.eigenvalues);
  const SpectralSet ep = eigen_points(r.eigenvalues);
  r.sigma = set_union(r.sigma_A, ep);
  r.sigma_ap = set_union(r.sigma_i[1], ep);
  if (!pa.Pi_nowhere_dense)
    r.warnings.push_back("the set of periodic points has interior; rotation invariance of the sigma_i is not asserted");
  r.warnings.insert(r.warnings.end(), sq.warnings.begin(), sq.warnings.end());
  r.period_two = std::move(pa);
  return r;
}

SpectrumReport spectra_Lip(const Scenario& scn) {
  const ScenarioModels m = build_models(scn);
  if (m.phi.orientation() == Orientation::reversing) {
    Scenario s = scn;
    s.space.family = Family::Lip;
    return spectra_reversing(s);
  }
  SpectrumReport r = lip_dispatch(scn, m.phi, m.w);
  r.space = scn.space;
  return r;
}

SpectrumReport spectra_Sobolev(const Scenario& scn) {
  const double p = scn.space.p;
  if (!(p >= 1.0)) throw DomainError("p must lie in [1, inf]");
  if (std::isinf(p)) {
    Scenario s = scn;
    s.space.family = Family::Lip;
    SpectrumReport r = spectra_Lip(s);
    r.space = scn.space;
    note(r, "sigma_A", "delegation:p-infinity", "W^{n,inf} handled by the Lipschitz engine");
    return r;
  }
  const ScenarioModels m = build_models(scn);
  if (m.phi.orientation() == Orientation::reversing)
    throw Refusal("orientation-reversing maps are not supported on W^{n,p}");
  require_smooth(m.phi, 1, "W^{n,p}");
  SpectrumReport r = scn.options.sobolev_mode == SobolevMode::lemma_l9 ? sobolev_l9(scn, m.phi, m.w)
                                                                       : sobolev_transform(scn, m.phi, m.w);
  r.space = scn.space;
  return r;
}

SpectrumReport compute_spectra(const Scenario& scn) {
  switch (scn.space.family) {
    case Family::C: return scn.space.n == 1 ? spectra_C1(scn) : spectra_Cn(scn);
    case Family::Lip: return spectra_Lip(scn);
    case Family::W: return spectra_Sobolev(scn);
  }
  throw DomainError("unknown family");
}

std::vector<std::string> report_violations(const SpectrumReport& r) {
  std::vector<std::string> v;
  const double tol = 1e-9;
  for (int k = 1; k < 5; ++k)
    if (!is_subset(r.sigma_k(k), r.sigma_k(k + 1)))
      v.push_back("sigma" + std::to_string(k) + " is not contained in sigma" + std::to_string(k + 1));
  if (!approx_equal(r.sigma_k(1), set_intersection(r.sigma_k(2), r.sigma2_adjoint), tol))
    v.push_back("sigma1 differs from sigma2 intersected with sigma2_adjoint");
  if (!approx_equal(r.sigma_k(3), set_union(r.sigma_k(2), r.sigma2_adjoint), tol))
    v.push_back("sigma3 differs from sigma2 united with sigma2_adjoint");
  for (int k = 3; k <= 5; ++k)
    if (!approx_equal(r.sigma_k(k), r.sigma_A, tol)) v.push_back("sigma" + std::to_string(k) + " differs from sigma_A");
  for (const auto& e : r.eigenvalues)
    if (r.sigma_A.contains(e.value)) v.push_back("eigenvalue " + fmt(e.value) + " lies in sigma_A");
  if (!is_subset(r.sigma_A, r.sigma)) v.push_back("sigma_A is not contained in sigma");
  return v;
}

}  // namespace spectra
