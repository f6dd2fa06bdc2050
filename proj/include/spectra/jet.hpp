#pragma once

#include <cstddef>
#include <vector>

namespace spectra {

// Truncated Taylor series c[0] + c[1] h + ... + c[K] h^K of a function around
// a base point. Arithmetic propagates derivatives through the expression
// operators, so evaluating a model on Jet::variable(x0, K) yields its first K
// derivatives at x0.
class Jet {
 public:
  Jet() : c_(1, 0.0) {}
  explicit Jet(std::size_t order, double value = 0.0) : c_(order + 1, 0.0) { c_[0] = value; }

  static Jet constant(double value, std::size_t order) { return Jet(order, value); }
  static Jet variable(double x0, std::size_t order) {
    Jet j(order, x0);
    if (order >= 1) j.c_[1] = 1.0;
    return j;
  }

  std::size_t order() const noexcept { return c_.size() - 1; }
  double value() const noexcept { return c_[0]; }
  double operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }
  double& operator[](std::size_t k) { return c_[k]; }

  /// k-th derivative, k! * c[k].
  double derivative(std::size_t k) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  friend Jet operator-(Jet a);

 private:
  std::vector<double> c_;
};

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sqrt(const Jet& a);
/// a^r for a real constant exponent r; requires a.value() > 0 unless r is a
/// non-negative integer.
Jet pow(const Jet& a, double r);
Jet pow(const Jet& a, const Jet& b);
Jet ipow(const Jet& a, long k);

/// Composes a Taylor expansion `outer` (coefficients of f(x0 + h)) with an
/// inner jet whose value is x0, i.e. returns the jet of f(inner).
Jet compose(const Jet& outer, const Jet& inner);

/// Formal derivative of the series; the result has order one less.
Jet differentiate(const Jet& a);

}  // namespace spectra
