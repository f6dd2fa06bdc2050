#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spectra/function_spec.hpp"
#include "spectra/jet.hpp"

namespace spectra {

/// An evaluatable real function on [0,1]. Evaluating on a Jet propagates
/// derivatives; models are immutable and thread-safe.
class FunctionModel {
 public:
  virtual ~FunctionModel() = default;
  virtual Jet eval(const Jet& x) const = 0;
  /// Highest derivative order that is available.
  virtual int smoothness() const = 0;

  double value(double x) const { return eval(Jet::constant(x, 0)).value(); }
  double derivative(double x, int order) const;
};

using FunctionModelPtr = std::shared_ptr<const FunctionModel>;

class PiecewiseLinearFamily;

enum class Orientation { preserving, reversing };

struct ValidationOptions {
  int grid = 2001;
  double endpoint_tol = 1e-12;
};

/// Homeomorphism of [0,1] with derivative evaluators, inverse, and iterates.
class HomeoModel {
 public:
  explicit HomeoModel(const FunctionSpec& spec, ValidationOptions opts = {});

  /// Wraps an already-built model (used for composed maps such as phi o phi).
  HomeoModel(FunctionSpec spec, FunctionModelPtr model, ValidationOptions opts = {});

  const FunctionSpec& spec() const noexcept { return spec_; }
  const FunctionModel& model() const noexcept { return *model_; }
  FunctionModelPtr model_ptr() const noexcept { return model_; }
  Orientation orientation() const noexcept { return orientation_; }
  int smoothness() const { return model_->smoothness(); }

  double operator()(double x) const { return model_->value(x); }
  double derivative(double x, int order = 1) const { return model_->derivative(x, order); }
  double inverse(double y) const;

  /// Set for moebius maps, whose iterates have the closed form
  /// x / (c^n - (c^n - 1) x).
  std::optional<double> moebius_parameter() const noexcept { return moebius_c_; }
  /// Non-null for piecewise-linear families.
  const PiecewiseLinearFamily* piecewise() const noexcept { return family_.get(); }

 private:
  void validate(const ValidationOptions& opts);

  FunctionSpec spec_;
  FunctionModelPtr model_;
  std::shared_ptr<const PiecewiseLinearFamily> family_;
  std::optional<double> moebius_c_;
  FunctionModelPtr forward_;  ///< the original map, for inverse-kind maps
  Orientation orientation_ = Orientation::preserving;
};

/// Invertible weight; construction fails when |w| is not bounded away from 0
/// on the validation grid.
class WeightModel {
 public:
  explicit WeightModel(const FunctionSpec& spec, int grid = 2001);
  WeightModel(FunctionSpec spec, FunctionModelPtr model, int grid = 2001);

  const FunctionSpec& spec() const noexcept { return spec_; }
  const FunctionModel& model() const noexcept { return *model_; }
  FunctionModelPtr model_ptr() const noexcept { return model_; }
  int smoothness() const { return model_->smoothness(); }
  double min_abs() const noexcept { return min_abs_; }

  double operator()(double x) const { return model_->value(x); }
  double derivative(double x, int order = 1) const { return model_->derivative(x, order); }

 private:
  void certify(int grid);

  FunctionSpec spec_;
  FunctionModelPtr model_;
  double min_abs_ = 0.0;
};

FunctionModelPtr make_model(const FunctionSpec& spec);
/// outer o inner
FunctionModelPtr compose_models(FunctionModelPtr outer, FunctionModelPtr inner);
FunctionModelPtr multiply_models(std::vector<FunctionModelPtr> factors);
/// w * (phi')^exponent
FunctionModelPtr derivative_power_weight(FunctionModelPtr w, FunctionModelPtr phi, double exponent);

/// f^(order)(x); order 0 returns f(x).
double evaluate(const HomeoModel& f, double x, int order = 0);
double evaluate(const WeightModel& f, double x, int order = 0);

/// n-fold composition; phi^0 is the identity and negative n uses the inverse.
double iterate(const HomeoModel& phi, long n, double x);

/// w(x) w(phi(x)) ... w(phi^{n-1}(x)).
double weight_cocycle(const WeightModel& w, const HomeoModel& phi, long n, double x);

/// (phi^n)'(x) by the chain rule along the orbit; negative n follows the
/// backward orbit.
double derivative_cocycle(const HomeoModel& phi, long n, double x);

/// phi o phi as a homeomorphism model.
HomeoModel square_map(const HomeoModel& phi);
/// w * (w o phi), the weight of T^2.
WeightModel square_weight(const WeightModel& w, const HomeoModel& phi);

}  // namespace spectra
