#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spectra/errors.hpp"

namespace spectra::expr {

// Parse tree for the small real expression grammar used by scenarios:
// literals, one free variable, + - * / ^, unary minus and exp/log/sqrt.

enum class BinaryOp { add, sub, mul, div, pow };
enum class Function { exp, log, sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Number {
  double value;
};
struct Variable {
  std::string name;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs, rhs;
};
struct Call {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Call> data;
};

class Expression {
 public:
  Expression() = default;
  explicit Expression(NodePtr root) : root_(std::move(root)) {}

  /// Parses infix text. `variables` lists the admissible identifiers.
  static Expression parse(std::string_view text, const std::vector<std::string>& variables = {"x"});

  const Node& root() const { return *root_; }
  bool empty() const noexcept { return !root_; }

  /// Fully parenthesized text; parse(print()) reproduces the same tree.
  std::string print() const;

  friend bool operator==(const Expression& a, const Expression& b);

  /// Evaluates with the single named variable bound to `value`. T may be
  /// double, Jet, or a multiprecision float.
  template <class T>
  T evaluate(const T& value) const {
    return eval_node<T>(*root_, value);
  }

 private:
  template <class T>
  static T pow_node(const T& base, const Node& exponent_node, const T& value);

  template <class T>
  static T eval_node(const Node& n, const T& value);

  NodePtr root_;
};

bool structurally_equal(const Node& a, const Node& b);

namespace detail {

template <class T>
T integer_power(T base, long k) {
  if (k < 0) return T(1) / integer_power(base, -k);
  T result(1);
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

template <class T>
T lift(double v, const T& like) {
  if constexpr (requires { like.order(); }) {
    return T::constant(v, like.order());
  } else {
    return T(v);
  }
}

template <class T>
bool positive(const T& v) {
  if constexpr (requires { v.value(); }) {
    return v.value() > 0;
  } else {
    return v > 0;
  }
}

}  // namespace detail

template <class T>
T Expression::pow_node(const T& base, const Node& exponent_node, const T& value) {
  if (const auto* num = std::get_if<Number>(&exponent_node.data)) {
    const double e = num->value;
    if (e == std::floor(e) && std::abs(e) <= 1024.0) {
      if constexpr (requires { base.order(); }) {
        return ipow(base, static_cast<long>(e));
      } else {
        return detail::integer_power(base, static_cast<long>(e));
      }
    }
  }
  T exponent = eval_node<T>(exponent_node, value);
  if constexpr (!requires { base.order(); }) {
    using std::abs;
    using std::floor;
    if (floor(exponent) == exponent && abs(exponent) <= T(1e6))
      return detail::integer_power(base, static_cast<long>(exponent));
  }
  if (!detail::positive(base)) throw DomainError("non-integer power of non-positive base");
  using std::exp;
  using std::log;
  return exp(exponent * log(base));
}

template <class T>
T Expression::eval_node(const Node& n, const T& value) {
  using std::exp;
  using std::log;
  using std::sqrt;
  return std::visit(
      [&](const auto& node) -> T {
        using K = std::decay_t<decltype(node)>;
        if constexpr (std::is_same_v<K, Number>) {
          return detail::lift<T>(node.value, value);
        } else if constexpr (std::is_same_v<K, Variable>) {
          return value;
        } else if constexpr (std::is_same_v<K, Negate>) {
          return T(-eval_node<T>(*node.operand, value));
        } else if constexpr (std::is_same_v<K, Binary>) {
          if (node.op == BinaryOp::pow) return pow_node<T>(eval_node<T>(*node.lhs, value), *node.rhs, value);
          T a = eval_node<T>(*node.lhs, value);
          T b = eval_node<T>(*node.rhs, value);
          switch (node.op) {
            case BinaryOp::add: return T(a + b);
            case BinaryOp::sub: return T(a - b);
            case BinaryOp::mul: return T(a * b);
            case BinaryOp::div:
              if (!detail::positive(b) && !detail::positive(T(-b))) throw DomainError("division by zero");
              return T(a / b);
            default: break;
          }
          throw DomainError("unreachable operator");
        } else {
          T a = eval_node<T>(*node.arg, value);
          switch (node.fn) {
            case Function::exp: return T(exp(a));
            case Function::log:
              if (!detail::positive(a)) throw DomainError("log of non-positive value");
              return T(log(a));
            case Function::sqrt:
              if (detail::positive(T(-a))) throw DomainError("sqrt of negative value");
              return T(sqrt(a));
          }
          throw DomainError("unreachable function");
        }
      },
      n.data);
}

}  // namespace spectra::expr
