#pragma once

#include <memory>
#include <string>
#include <vector>

#include "spectra/function_spec.hpp"
#include "spectra/funcmodel.hpp"

namespace spectra {

/// Invariant interval class of a piecewise-linear family: the orbit of one
/// of the pieces of a fundamental domain.
struct IntervalClass {
  std::string label;  ///< endpoint generator names in orbit order, e.g. "a-b"
  int first_generator = 0;
  int second_generator = 0;
  int index_shift = 0;  ///< the piece P_n runs from first_n to second_{n+shift}
};

/// Asymptotic forward slope of a class near one endpoint of [0,1].
struct TailSlope {
  double value = 0.0;       ///< extrapolated limit (snapped if rational_snap)
  double raw = 0.0;         ///< extrapolated limit before snapping
  double spread = 0.0;      ///< relative spread over the last three depths
  bool rational_snap = false;
  long numerator = 0, denominator = 0;  ///< set when rational_snap
  std::vector<double> depth_estimates;
};

/// Homeomorphism phi with phi(G_n) = G_{n+1} for every generator sequence G,
/// linear between consecutive breakpoints. Breakpoints are generated once at
/// construction in 120-digit arithmetic for |n| <= n_max.
class PiecewiseLinearFamily {
 public:
  explicit PiecewiseLinearFamily(const FunctionSpec& spec);
  ~PiecewiseLinearFamily();
  PiecewiseLinearFamily(const PiecewiseLinearFamily&) = delete;
  PiecewiseLinearFamily& operator=(const PiecewiseLinearFamily&) = delete;

  int n_max() const noexcept { return n_max_; }
  int index_offset() const noexcept { return offset_; }
  /// true when phi(x) < x on (0,1) (breakpoints decrease with the index).
  bool below() const noexcept { return below_; }
  const std::vector<IntervalClass>& classes() const noexcept { return classes_; }

  /// Breakpoint value in double precision.
  double breakpoint(int generator, int n) const;
  const std::vector<std::string>& generator_names() const noexcept { return names_; }

  /// Limit of the forward slope of `cls` at endpoint `end` (0 or 1).
  /// Polynomial extrapolation in 1/|k| (k the formula index) over the deepest
  /// generated pieces; spread is measured over three truncation depths.
  TailSlope tail_slope(const IntervalClass& cls, int end) const;

  /// Geometric-mean slope along the forward orbit of length `depth` of the
  /// midpoint of P_start. Iterates the map in extended precision by
  /// breakpoint lookup, independently of the tail extrapolation.
  double orbit_growth(const IntervalClass& cls, int start, int depth) const;

  // Double-precision evaluation. Points strictly between 0 and the deepest
  // breakpoint (or the deepest breakpoint and 1) raise TruncationError.
  double value(double x) const;
  double slope(double x) const;
  double inverse(double y) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int n_max_ = 64;
  int offset_ = 0;
  bool below_ = true;
  std::vector<IntervalClass> classes_;
  std::vector<std::string> names_;
  std::vector<double> xs_, ys_;
};

FunctionModelPtr make_piecewise_model(std::shared_ptr<const PiecewiseLinearFamily> family);

}  // namespace spectra
