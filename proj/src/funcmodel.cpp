#include "spectra/funcmodel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spectra/errors.hpp"
#include "spectra/piecewise_family.hpp"

namespace spectra {

namespace {

constexpr int kAnalyticSmoothness = 64;

class ExpressionModel final : public FunctionModel {
 public:
  explicit ExpressionModel(expr::Expression e) : e_(std::move(e)) {}
  Jet eval(const Jet& x) const override { return e_.evaluate<Jet>(x); }
  int smoothness() const override { return kAnalyticSmoothness; }

 private:
  expr::Expression e_;
};

class ConstantModel final : public FunctionModel {
 public:
  explicit ConstantModel(double c) : c_(c) {}
  Jet eval(const Jet& x) const override { return Jet::constant(c_, x.order()); }
  int smoothness() const override { return kAnalyticSmoothness; }

 private:
  double c_;
};

class MoebiusModel final : public FunctionModel {
 public:
  explicit MoebiusModel(double c) : c_(c) {}
  Jet eval(const Jet& x) const override {
    const std::size_t k = x.order();
    return x / (Jet::constant(c_, k) - Jet::constant(c_ - 1.0, k) * x);
  }
  int smoothness() const override { return kAnalyticSmoothness; }

 private:
  double c_;
};

class ComposeModel final : public FunctionModel {
 public:
  ComposeModel(FunctionModelPtr outer, FunctionModelPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {}
  Jet eval(const Jet& x) const override { return outer_->eval(inner_->eval(x)); }
  int smoothness() const override { return std::min(outer_->smoothness(), inner_->smoothness()); }

 private:
  FunctionModelPtr outer_, inner_;
};

// Inverse of a homeomorphism; derivatives by reverting the Taylor series of
// the forward map at the preimage.
class InverseModel final : public FunctionModel {
 public:
  explicit InverseModel(const FunctionSpec& of) : map_(of) {}
  Jet eval(const Jet& x) const override {
    const std::size_t k = x.order();
    Jet r(k, map_.inverse(x.value()));
    if (k == 0) return r;
    const Jet f = map_.model().eval(Jet::variable(r.value(), k));
    if (f[1] == 0.0) throw DomainError("inverse is not differentiable where the map has a critical point");
    r[1] = 1.0 / f[1];
    for (std::size_t i = 2; i <= k; ++i) r[i] = -compose(f, r)[i] / f[1];
    return compose(r, x);
  }
  int smoothness() const override { return map_.smoothness(); }

 private:
  HomeoModel map_;
};

class ProductModel final : public FunctionModel {
 public:
  explicit ProductModel(std::vector<FunctionModelPtr> f) : f_(std::move(f)) {}
  Jet eval(const Jet& x) const override {
    Jet r = Jet::constant(1.0, x.order());
    for (const auto& f : f_) r *= f->eval(x);
    return r;
  }
  int smoothness() const override {
    int s = kAnalyticSmoothness;
    for (const auto& f : f_) s = std::min(s, f->smoothness());
    return s;
  }

 private:
  std::vector<FunctionModelPtr> f_;
};

class DerivativePowerModel final : public FunctionModel {
 public:
  DerivativePowerModel(FunctionModelPtr w, FunctionModelPtr phi, double e)
      : w_(std::move(w)), phi_(std::move(phi)), e_(e) {}
  Jet eval(const Jet& x) const override {
    const std::size_t k = x.order();
    Jet taylor = phi_->eval(Jet::variable(x.value(), k + 1));
    Jet dphi = compose(differentiate(taylor), x);
    return w_->eval(x) * pow(dphi, e_);
  }
  int smoothness() const override { return std::min(w_->smoothness(), phi_->smoothness() - 1); }

 private:
  FunctionModelPtr w_, phi_;
  double e_;
};

class PiecewiseModel final : public FunctionModel {
 public:
  explicit PiecewiseModel(std::shared_ptr<const PiecewiseLinearFamily> f) : f_(std::move(f)) {}
  Jet eval(const Jet& x) const override {
    const double x0 = x.value();
    const double s = x.order() >= 1 ? f_->slope(x0) : 0.0;
    Jet r(x.order(), f_->value(x0));
    for (std::size_t k = 1; k <= x.order(); ++k) r[k] = s * x[k];
    return r;
  }
  int smoothness() const override { return 1; }

 private:
  std::shared_ptr<const PiecewiseLinearFamily> f_;
};

void check_unit(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("argument outside [0,1]");
}

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

double FunctionModel::derivative(double x, int order) const {
  if (order < 0) throw DomainError("negative derivative order");
  if (order > smoothness()) throw UnsupportedDerivative("derivative order exceeds available smoothness");
  if (order == 0) return value(x);
  return eval(Jet::variable(x, static_cast<std::size_t>(order))).derivative(static_cast<std::size_t>(order));
}

FunctionModelPtr make_model(const FunctionSpec& spec) {
  switch (spec.kind) {
    case FunctionSpec::Kind::expression: return std::make_shared<ExpressionModel>(spec.expression);
    case FunctionSpec::Kind::constant: return std::make_shared<ConstantModel>(spec.value);
    case FunctionSpec::Kind::moebius: return std::make_shared<MoebiusModel>(spec.value);
    case FunctionSpec::Kind::piecewise_linear_family:
      return make_piecewise_model(std::make_shared<PiecewiseLinearFamily>(spec));
    case FunctionSpec::Kind::composite: {
      if (spec.op == CompositeOp::inverse) {
        if (spec.parts.size() != 1) throw DomainError("inverse needs exactly one part");
        return std::make_shared<InverseModel>(spec.parts[0]);
      }
      std::vector<FunctionModelPtr> parts;
      for (const auto& p : spec.parts) parts.push_back(make_model(p));
      if (spec.op == CompositeOp::compose) {
        if (parts.size() != 2) throw DomainError("composition needs exactly two parts");
        return compose_models(parts[0], parts[1]);
      }
      return multiply_models(std::move(parts));
    }
  }
  throw DomainError("unknown function kind");
}

FunctionModelPtr compose_models(FunctionModelPtr outer, FunctionModelPtr inner) {
  return std::make_shared<ComposeModel>(std::move(outer), std::move(inner));
}

FunctionModelPtr multiply_models(std::vector<FunctionModelPtr> factors) {
  return std::make_shared<ProductModel>(std::move(factors));
}

FunctionModelPtr derivative_power_weight(FunctionModelPtr w, FunctionModelPtr phi, double exponent) {
  return std::make_shared<DerivativePowerModel>(std::move(w), std::move(phi), exponent);
}

FunctionModelPtr make_piecewise_model(std::shared_ptr<const PiecewiseLinearFamily> family) {
  return std::make_shared<PiecewiseModel>(std::move(family));
}

// --- HomeoModel -------------------------------------------------------------

HomeoModel::HomeoModel(const FunctionSpec& spec, ValidationOptions opts) : spec_(spec) {
  if (spec.kind == FunctionSpec::Kind::piecewise_linear_family) {
    family_ = std::make_shared<PiecewiseLinearFamily>(spec);
    model_ = make_piecewise_model(family_);
  } else {
    model_ = make_model(spec);
  }
  if (spec.kind == FunctionSpec::Kind::moebius) {
    if (!(spec.value > 0.0)) throw DomainError("moebius parameter must be positive");
    moebius_c_ = spec.value;
  }
  if (spec.kind == FunctionSpec::Kind::composite && spec.op == CompositeOp::inverse) forward_ = make_model(spec.parts.at(0));
  validate(opts);
}

HomeoModel::HomeoModel(FunctionSpec spec, FunctionModelPtr model, ValidationOptions opts)
    : spec_(std::move(spec)), model_(std::move(model)) {
  validate(opts);
}

void HomeoModel::validate(const ValidationOptions& opts) {
  const double f0 = model_->value(0.0);
  const double f1 = model_->value(1.0);
  const double tol = opts.endpoint_tol;
  if (near(f0, 0.0, tol) && near(f1, 1.0, tol)) {
    orientation_ = Orientation::preserving;
  } else if (near(f0, 1.0, tol) && near(f1, 0.0, tol)) {
    orientation_ = Orientation::reversing;
  } else {
    throw DomainError("map does not send {0,1} onto {0,1}");
  }
  const double sign = orientation_ == Orientation::preserving ? 1.0 : -1.0;
  const bool check_derivative = family_ == nullptr && model_->smoothness() >= 1;
  const int n = std::max(opts.grid, 2);
  double prev = sign > 0 ? f0 : -f0;
  for (int i = 1; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    double y;
    try {
      y = model_->value(x);
      if (check_derivative && !(sign * model_->derivative(x, 1) > 0.0))
        throw DomainError("derivative of the map vanishes or changes sign");
    } catch (const TruncationError&) {
      continue;
    }
    if (!(y >= -tol && y <= 1.0 + tol)) throw DomainError("map leaves [0,1]");
    const double s = sign * y;
    if (!(s > prev)) throw DomainError("map is not strictly monotone on the validation grid");
    prev = s;
  }
}

double HomeoModel::inverse(double y) const {
  check_unit(y);
  if (moebius_c_) {
    const double c = *moebius_c_;
    return c * y / (1.0 + (c - 1.0) * y);
  }
  if (family_) return family_->inverse(y);
  if (forward_) return forward_->value(y);
  const double sign = orientation_ == Orientation::preserving ? 1.0 : -1.0;
  auto g = [&](double x) { return sign * (model_->value(x) - y); };
  double lo = 0.0, hi = 1.0;
  double glo = g(lo), ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (glo > 0.0 || ghi < 0.0) throw ConvergenceError("inverse: value not bracketed");
  double x = 0.5;
  for (int it = 0; it < 200; ++it) {
    const double gx = g(x);
    if (gx == 0.0) return x;
    if (gx < 0.0) lo = x; else hi = x;
    if (hi - lo <= 1e-13) return 0.5 * (lo + hi);
    double next = 0.5 * (lo + hi);
    double d = 0.0;
    try {
      d = sign * model_->derivative(x, 1);
    } catch (const UnsupportedDerivative&) {
    }
    if (d > 0.0) {
      const double newton = x - gx / d;
      if (newton > lo && newton < hi) {
        if (std::abs(newton - x) <= 1e-15) return newton;
        next = newton;
      }
    }
    x = next;
  }
  throw ConvergenceError("inverse: no convergence within tolerance");
}

// --- WeightModel ------------------------------------------------------------

WeightModel::WeightModel(const FunctionSpec& spec, int grid) : spec_(spec), model_(make_model(spec)) {
  certify(grid);
}

WeightModel::WeightModel(FunctionSpec spec, FunctionModelPtr model, int grid)
    : spec_(std::move(spec)), model_(std::move(model)) {
  certify(grid);
}

void WeightModel::certify(int grid) {
  const int n = std::max(grid, 2);
  double m = std::numeric_limits<double>::infinity();
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / (n - 1);
    const double v = model_->value(x);
    if (!std::isfinite(v)) throw DomainError("weight is not finite on [0,1]");
    if (i > 0 && (v > 0.0) != (prev > 0.0)) throw DomainError("weight changes sign on [0,1]");
    m = std::min(m, std::abs(v));
    prev = v;
  }
  if (!(m > 0.0)) throw DomainError("weight is not invertible");
  min_abs_ = m;
}

// --- free functions ---------------------------------------------------------

double evaluate(const HomeoModel& f, double x, int order) {
  check_unit(x);
  return f.model().derivative(x, order);
}

double evaluate(const WeightModel& f, double x, int order) {
  check_unit(x);
  return f.model().derivative(x, order);
}

double iterate(const HomeoModel& phi, long n, double x) {
  check_unit(x);
  if (n == 0) return x;
  if (auto c = phi.moebius_parameter()) {
    if (x == 1.0 || x == 0.0) return x;
    const double cn = std::pow(*c, static_cast<double>(n));
    return x / (cn * (1.0 - x) + x);
  }
  if (n > 0) {
    for (long k = 0; k < n; ++k) x = std::clamp(phi(x), 0.0, 1.0);
  } else {
    for (long k = 0; k < -n; ++k) x = phi.inverse(x);
  }
  return x;
}

double weight_cocycle(const WeightModel& w, const HomeoModel& phi, long n, double x) {
  check_unit(x);
  double r = 1.0;
  for (long k = 0; k < n; ++k) {
    r *= w(x);
    x = std::clamp(phi(x), 0.0, 1.0);
  }
  return r;
}

double derivative_cocycle(const HomeoModel& phi, long n, double x) {
  check_unit(x);
  double r = 1.0;
  if (n >= 0) {
    for (long k = 0; k < n; ++k) {
      r *= phi.derivative(x, 1);
      x = std::clamp(phi(x), 0.0, 1.0);
    }
  } else {
    for (long k = 0; k < -n; ++k) {
      x = phi.inverse(x);
      r /= phi.derivative(x, 1);
    }
  }
  return r;
}

HomeoModel square_map(const HomeoModel& phi) {
  return HomeoModel(FunctionSpec::make_compose(phi.spec(), phi.spec()),
                    compose_models(phi.model_ptr(), phi.model_ptr()));
}

WeightModel square_weight(const WeightModel& w, const HomeoModel& phi) {
  FunctionSpec spec = FunctionSpec::make_product({w.spec(), FunctionSpec::make_compose(w.spec(), phi.spec())});
  return WeightModel(std::move(spec),
                     multiply_models({w.model_ptr(), compose_models(w.model_ptr(), phi.model_ptr())}));
}

}  // namespace spectra
