#include "spectra/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "spectra/errors.hpp"
#include "spectra/piecewise_family.hpp"

namespace spectra {

namespace {

using Fn = std::function<double(double)>;

double bisect_root(const Fn& g, double lo, double hi, const Fn* dg) {
  double glo = g(lo);
  if (glo == 0.0) return lo;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    double mid = 0.5 * (lo + hi);
    if (dg) {
      const double x = mid;
      const double d = (*dg)(x);
      if (d != 0.0 && std::isfinite(d)) {
        const double nx = x - g(x) / d;
        if (nx > lo && nx < hi) mid = nx;
      }
    }
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (glo > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
    if (dg && hi - lo > 1e-15 && std::abs(gm) < 1e-16) return mid;
  }
  return 0.5 * (lo + hi);
}

// Minimizes |g| on [lo, hi] by golden-section search.
double argmin_abs(const Fn& g, double lo, double hi) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = std::abs(g(c)), fd = std::abs(g(d));
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = std::abs(g(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = std::abs(g(d));
    }
  }
  return 0.5 * (a + b);
}

// Boundary of the plateau {|g| <= tol} between an outside point and an inside point.
double plateau_edge(const Fn& g, double outside, double inside, double tol) {
  for (int it = 0; it < 100 && std::abs(inside - outside) > 1e-15; ++it) {
    const double mid = 0.5 * (outside + inside);
    if (std::abs(g(mid)) <= tol) inside = mid; else outside = mid;
  }
  return inside;
}

struct Component {
  double lo, hi;
  bool segment;
  bool tangential;
};

FixedPoint make_point(const HomeoModel& phi, const WeightModel& w, double a) {
  FixedPoint p;
  p.a = a;
  p.w_value = w(a);
  p.phi_prime = std::numeric_limits<double>::quiet_NaN();
  if (!phi.piecewise() && phi.smoothness() >= 1) p.phi_prime = phi.derivative(a, 1);
  return p;
}

}  // namespace

std::string to_string(Direction d) { return d == Direction::below ? "below" : "above"; }

FixedPointAnalysis find_fixed_points(const HomeoModel& phi, const WeightModel& w, const FixedPointOptions& opts) {
  if (phi.orientation() != Orientation::preserving)
    throw DomainError("fixed-point analysis requires an orientation-preserving map");
  FixedPointAnalysis fa;
  const double tol = opts.tol;

  if (const PiecewiseLinearFamily* fam = phi.piecewise()) {
    fa.fixed_points = {make_point(phi, w, 0.0), make_point(phi, w, 1.0)};
    ComplementaryInterval iv;
    iv.a = 0.0;
    iv.b = 1.0;
    iv.direction = fam->below() ? Direction::below : Direction::above;
    iv.left = 0;
    iv.right = 1;
    fa.complementary_intervals.push_back(iv);
    for (auto& p : fa.fixed_points) p.v = std::numeric_limits<double>::quiet_NaN();
    fa.complementary_intervals[0].v_a = fa.complementary_intervals[0].v_b = std::numeric_limits<double>::quiet_NaN();
    return fa;
  }

  const Fn g = [&](double x) { return phi(x) - x; };
  Fn dg_store = [&](double x) { return phi.derivative(x, 1) - 1.0; };
  const Fn* dg = phi.smoothness() >= 1 ? &dg_store : nullptr;

  const int N = std::max(opts.grid, 4);
  const double h = 1.0 / N;
  std::vector<double> xs(static_cast<std::size_t>(N + 1)), gs(xs.size());
  for (int i = 0; i <= N; ++i) {
    xs[static_cast<std::size_t>(i)] = i == N ? 1.0 : i * h;
    gs[static_cast<std::size_t>(i)] = g(xs[static_cast<std::size_t>(i)]);
  }
  auto zero = [&](std::size_t i) { return std::abs(gs[i]) <= tol; };

  std::vector<Component> comps;
  const std::size_t M = xs.size();
  std::size_t i = 0;
  while (i < M) {
    if (zero(i)) {
      std::size_t j = i;
      while (j + 1 < M && zero(j + 1)) ++j;
      const std::size_t run = j - i + 1;
      if (run >= 3) {
        const double lo = i == 0 ? 0.0 : plateau_edge(g, xs[i - 1], xs[i], tol);
        const double hi = j == M - 1 ? 1.0 : plateau_edge(g, xs[j + 1], xs[j], tol);
        comps.push_back({lo, hi, true, false});
      } else {
        double a;
        bool tangential = false;
        if (i == 0) {
          a = 0.0;
        } else if (j == M - 1) {
          a = 1.0;
        } else {
          const double glo = gs[i - 1], ghi = gs[j + 1];
          if ((glo > 0.0) != (ghi > 0.0)) {
            a = bisect_root(g, xs[i - 1], xs[j + 1], dg);
          } else {
            a = argmin_abs(g, xs[i - 1], xs[j + 1]);
            tangential = true;
          }
        }
        comps.push_back({a, a, false, tangential});
      }
      i = j + 1;
      continue;
    }
    if (i + 1 < M && !zero(i + 1) && (gs[i] > 0.0) != (gs[i + 1] > 0.0)) {
      const double a = bisect_root(g, xs[i], xs[i + 1], dg);
      comps.push_back({a, a, false, false});
    } else if (i > 0 && i + 1 < M && !zero(i - 1) && !zero(i + 1) && (gs[i - 1] > 0.0) == (gs[i] > 0.0) &&
               (gs[i] > 0.0) == (gs[i + 1] > 0.0) && std::abs(gs[i]) < std::abs(gs[i - 1]) &&
               std::abs(gs[i]) <= std::abs(gs[i + 1])) {
      const double a = argmin_abs(g, xs[i - 1], xs[i + 1]);
      if (std::abs(g(a)) <= tol) comps.push_back({a, a, false, true});
    }
    ++i;
  }

  std::sort(comps.begin(), comps.end(), [](const Component& a, const Component& b) { return a.lo < b.lo; });
  std::vector<Component> merged;
  for (const Component& c : comps) {
    if (!merged.empty() && c.lo <= merged.back().hi + 10.0 * tol) {
      Component& m = merged.back();
      m.hi = std::max(m.hi, c.hi);
      m.segment = m.segment || c.segment;
      m.tangential = m.tangential && c.tangential;
      continue;
    }
    merged.push_back(c);
  }

  for (const Component& c : merged) {
    if (!c.segment) {
      FixedPoint p = make_point(phi, w, c.lo);
      p.isolated = true;
      p.tangential = c.tangential;
      if (std::abs(g(p.a)) > tol) {
        fa.interval_structure_resolved = false;
        fa.diagnostic = "fixed point residual above tolerance";
      }
      fa.fixed_points.push_back(p);
      continue;
    }
    FixedSegment s;
    s.lo = c.lo;
    s.hi = c.hi;
    const int ns = std::max(opts.segment_samples, 2);
    for (int k = 0; k < ns; ++k) s.w_samples.push_back(w(s.lo + (s.hi - s.lo) * k / (ns - 1)));
    fa.segments.push_back(std::move(s));
    FixedPoint lo = make_point(phi, w, c.lo);
    lo.isolated = false;
    lo.interior = c.lo == 0.0;
    fa.fixed_points.push_back(lo);
    FixedPoint hi = make_point(phi, w, c.hi);
    hi.isolated = false;
    hi.interior = c.hi == 1.0;
    fa.fixed_points.push_back(hi);
  }
  fa.has_interior = !fa.segments.empty();
  fa.F_nowhere_dense = fa.segments.empty();

  for (std::size_t k = 0; k + 1 < fa.fixed_points.size(); ++k) {
    const FixedPoint& l = fa.fixed_points[k];
    const FixedPoint& r = fa.fixed_points[k + 1];
    const bool inside_segment = std::any_of(fa.segments.begin(), fa.segments.end(),
                                            [&](const FixedSegment& s) { return s.lo == l.a && s.hi == r.a; });
    if (inside_segment) continue;
    if (l.isolated && r.isolated && r.a - l.a < 3.0 * h) {
      fa.interval_structure_resolved = false;
      fa.diagnostic = "fixed points closer than the scan resolution near " + std::to_string(l.a);
    }
    ComplementaryInterval iv;
    iv.a = l.a;
    iv.b = r.a;
    iv.left = k;
    iv.right = k + 1;
    const double mid = 0.5 * (l.a + r.a);
    const double gm = g(mid);
    iv.direction = gm < 0.0 ? Direction::below : Direction::above;
    for (std::size_t q = 0; q < M; ++q) {
      if (xs[q] <= l.a + tol || xs[q] >= r.a - tol || zero(q)) continue;
      if ((gs[q] < 0.0) != (iv.direction == Direction::below)) {
        fa.interval_structure_resolved = false;
        fa.diagnostic = "inconsistent sign of phi(x) - x on (" + std::to_string(l.a) + ", " + std::to_string(r.a) + ")";
        break;
      }
    }
    fa.complementary_intervals.push_back(iv);
  }

  assign_multipliers(fa, [](const FixedPoint& p) { return p.phi_prime; });
  return fa;
}

PeriodTwoAnalysis analyze_period_two(const HomeoModel& phi, const WeightModel& w, const FixedPointOptions& opts) {
  if (phi.orientation() != Orientation::reversing) throw DomainError("period-two analysis requires a reversing map");
  PeriodTwoAnalysis pa;
  const Fn g = [&](double x) { return phi(x) - x; };
  pa.central_fixed_point = bisect_root(g, 0.0, 1.0, nullptr);
  pa.central_w = w(pa.central_fixed_point);

  const HomeoModel phi2 = square_map(phi);
  const WeightModel w2 = square_weight(w, phi);
  pa.square = find_fixed_points(phi2, w2, opts);
  pa.Pi_nowhere_dense = pa.square.F_nowhere_dense;
  pa.resolved = pa.square.interval_structure_resolved;
  const double a = pa.central_fixed_point;
  for (const FixedPoint& p : pa.square.fixed_points) {
    if (!p.isolated) continue;
    if (std::abs(p.a - a) <= std::max(1e-9, 100.0 * opts.tol)) continue;
    if (p.a > a) continue;
    PeriodTwoPair pr;
    pr.t = p.a;
    pr.phi_t = phi(p.a);
    pr.product = w(pr.t) * w(pr.phi_t);
    pa.isolated_period2_points.push_back(pr);
  }
  return pa;
}

}  // namespace spectra
