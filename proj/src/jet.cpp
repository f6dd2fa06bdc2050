#include "spectra/jet.hpp"

#include <algorithm>
#include <cmath>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

std::size_t common_order(const Jet& a, const Jet& b) { return std::min(a.order(), b.order()); }

double factorial(std::size_t k) {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f;
}

}  // namespace

double Jet::derivative(std::size_t k) const { return (*this)[k] * factorial(k); }

Jet& Jet::operator+=(const Jet& o) {
  c_.resize(common_order(*this, o) + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  c_.resize(common_order(*this, o) + 1);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o[k];
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  const std::size_t n = common_order(*this, o);
  std::vector<double> r(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t j = 0; j <= k; ++j) r[k] += c_[j] * o[k - j];
  c_ = std::move(r);
  return *this;
}

Jet& Jet::operator/=(const Jet& o) {
  if (o.value() == 0.0) throw DomainError("division by zero");
  const std::size_t n = common_order(*this, o);
  std::vector<double> q(n + 1, 0.0);
  for (std::size_t k = 0; k <= n; ++k) {
    double s = c_[k];
    for (std::size_t j = 1; j <= k; ++j) s -= o[j] * q[k - j];
    q[k] = s / o.value();
  }
  c_ = std::move(q);
  return *this;
}

Jet operator-(Jet a) {
  for (std::size_t k = 0; k <= a.order(); ++k) a[k] = -a[k];
  return a;
}

Jet exp(const Jet& a) {
  const std::size_t n = a.order();
  Jet e(n, std::exp(a.value()));
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return e;
}

Jet log(const Jet& a) {
  if (!(a.value() > 0.0)) throw DomainError("log of non-positive value");
  const std::size_t n = a.order();
  Jet l(n, std::log(a.value()));
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j < k; ++j) s += static_cast<double>(j) * l[j] * a[k - j];
    l[k] = (a[k] - s / static_cast<double>(k)) / a.value();
  }
  return l;
}

Jet sqrt(const Jet& a) {
  if (a.value() < 0.0) throw DomainError("sqrt of negative value");
  return pow(a, 0.5);
}

Jet ipow(const Jet& a, long k) {
  if (k < 0) return Jet::constant(1.0, a.order()) / ipow(a, -k);
  Jet result = Jet::constant(1.0, a.order());
  Jet base = a;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

Jet pow(const Jet& a, double r) {
  if (r == std::floor(r) && std::abs(r) <= 64.0) return ipow(a, static_cast<long>(r));
  if (!(a.value() > 0.0)) {
    if (a.value() == 0.0 && r > 0.0 && a.order() == 0) return Jet::constant(0.0, 0);
    throw DomainError("non-integer power of non-positive value");
  }
  const std::size_t n = a.order();
  Jet p(n, std::pow(a.value(), r));
  for (std::size_t k = 1; k <= n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j)
      s += ((r + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * p[k - j];
    p[k] = s / (static_cast<double>(k) * a.value());
  }
  return p;
}

Jet pow(const Jet& a, const Jet& b) {
  bool constant_exponent = true;
  for (std::size_t k = 1; k <= b.order(); ++k) constant_exponent = constant_exponent && b[k] == 0.0;
  if (constant_exponent) return pow(a, b.value());
  return exp(b * log(a));
}

Jet compose(const Jet& outer, const Jet& inner) {
  const std::size_t n = inner.order();
  Jet h = inner;
  h[0] = 0.0;
  // Horner in the shifted variable h = inner - x0.
  Jet result = Jet::constant(outer[std::min(outer.order(), n)], n);
  for (std::size_t k = std::min(outer.order(), n); k-- > 0;) {
    result *= h;
    result[0] += outer[k];
  }
  return result;
}

Jet differentiate(const Jet& a) {
  if (a.order() == 0) return Jet::constant(0.0, 0);
  Jet d(a.order() - 1);
  for (std::size_t k = 0; k + 1 <= a.order(); ++k) d[k] = static_cast<double>(k + 1) * a[k + 1];
  return d;
}

}  // namespace spectra
