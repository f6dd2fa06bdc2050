#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "spectra/expression.hpp"

namespace spectra {

/// One breakpoint generator of a piecewise-linear family: closed-form
/// formulas in the integer index n, one for n >= 0 and one for n < 0.
struct GeneratorSpec {
  std::string name;
  std::string nonneg_text;
  std::string neg_text;
  expr::Expression nonneg;
  expr::Expression neg;
};

enum class CompositeOp { compose, multiply, inverse };

struct FunctionSpec {
  enum class Kind { expression, constant, moebius, piecewise_linear_family, composite };

  Kind kind = Kind::expression;

  // expression
  std::string text;
  expr::Expression expression;

  // constant value, or the moebius parameter c of x / (c - (c - 1) x)
  double value = 0.0;

  // piecewise_linear_family
  std::vector<GeneratorSpec> generators;
  int index_offset = -1;  ///< -1 selects the smallest offset giving a valid family
  int n_max = 64;

  // composite: compose = parts[0] o parts[1]; multiply = product of parts;
  // inverse = the inverse map of parts[0]
  CompositeOp op = CompositeOp::compose;
  std::vector<FunctionSpec> parts;

  static FunctionSpec make_expression(const std::string& text);
  static FunctionSpec make_constant(double c);
  static FunctionSpec make_moebius(double c);
  static FunctionSpec make_compose(FunctionSpec outer, FunctionSpec inner);
  static FunctionSpec make_product(std::vector<FunctionSpec> factors);
  static FunctionSpec make_inverse(FunctionSpec map);
};

std::string to_string(FunctionSpec::Kind kind);

/// Throws SchemaError with a JSON pointer rooted at `pointer`.
FunctionSpec function_spec_from_json(const nlohmann::json& j, const std::string& pointer);
nlohmann::ordered_json to_json(const FunctionSpec& spec);

}  // namespace spectra
