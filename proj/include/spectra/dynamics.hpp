#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "spectra/funcmodel.hpp"

namespace spectra {

struct FixedPoint {
  double a = 0.0;
  double phi_prime = 0.0;  ///< NaN when phi is not differentiable at a
  double w_value = 0.0;
  bool isolated = true;
  bool interior = false;   ///< a lies in the interior of F relative to [0,1]
  bool tangential = false; ///< no sign change of phi(x) - x across a
  double v = 0.0;          ///< |w(a)| times the active multiplier
};

/// Closed interval of fixed points with weight samples over it.
struct FixedSegment {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> w_samples;
};

enum class Direction { below, above };

struct ComplementaryInterval {
  double a = 0.0;
  double b = 0.0;
  Direction direction = Direction::below;
  std::size_t left = 0;   ///< index of the fixed point at a
  std::size_t right = 0;  ///< index of the fixed point at b
  double v_a = 0.0;
  double v_b = 0.0;
};

struct FixedPointAnalysis {
  std::vector<FixedPoint> fixed_points;  ///< sorted by location
  std::vector<FixedSegment> segments;
  std::vector<ComplementaryInterval> complementary_intervals;
  bool has_interior = false;
  bool F_nowhere_dense = true;
  bool interval_structure_resolved = true;
  std::string diagnostic;
};

struct FixedPointOptions {
  double tol = 1e-11;
  int grid = 10000;
  int segment_samples = 512;
};

std::string to_string(Direction d);

/// Locates F = {phi(x) = x} by a sign scan of phi(x) - x with bracket
/// refinement, tangential-root detection and plateau detection. Multipliers
/// default to v(a) = |w(a)| phi'(a) on isolated points and |w(a)| elsewhere.
FixedPointAnalysis find_fixed_points(const HomeoModel& phi, const WeightModel& w, const FixedPointOptions& opts = {});

/// Recomputes v for every fixed point with v(a) = |w(a)| * m(a), using
/// m = 1 on non-isolated points, and refreshes the interval endpoint values.
template <class Multiplier>
void assign_multipliers(FixedPointAnalysis& fa, Multiplier&& m) {
  for (auto& p : fa.fixed_points) p.v = std::abs(p.w_value) * (p.isolated ? m(p) : 1.0);
  for (auto& iv : fa.complementary_intervals) {
    iv.v_a = fa.fixed_points[iv.left].v;
    iv.v_b = fa.fixed_points[iv.right].v;
  }
}

struct PeriodTwoPair {
  double t = 0.0;
  double phi_t = 0.0;
  double product = 0.0;  ///< w(t) w(phi(t))
};

struct PeriodTwoAnalysis {
  double central_fixed_point = 0.0;
  double central_w = 0.0;
  std::vector<PeriodTwoPair> isolated_period2_points;
  bool Pi_nowhere_dense = true;
  bool resolved = true;
  FixedPointAnalysis square;  ///< analysis of phi o phi with weight w (w o phi)
};

PeriodTwoAnalysis analyze_period_two(const HomeoModel& phi, const WeightModel& w, const FixedPointOptions& opts = {});

}  // namespace spectra
