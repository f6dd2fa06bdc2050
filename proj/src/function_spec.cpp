#include "spectra/function_spec.hpp"

#include <cmath>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

const nlohmann::json& require(const nlohmann::json& j, const char* key, const std::string& pointer) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(pointer + "/" + key, "missing required field");
  return j.at(key);
}

double finite_number(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_number()) throw SchemaError(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(pointer, "number must be finite");
  return v;
}

std::string string_field(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_string()) throw SchemaError(pointer, "expected a string");
  return j.get<std::string>();
}

expr::Expression parse_at(const std::string& text, const std::vector<std::string>& vars, const std::string& pointer) {
  try {
    return expr::Expression::parse(text, vars);
  } catch (const ParseError& e) {
    throw SchemaError(pointer, e.what());
  }
}

}  // namespace

std::string to_string(FunctionSpec::Kind kind) {
  switch (kind) {
    case FunctionSpec::Kind::expression: return "expression";
    case FunctionSpec::Kind::constant: return "constant";
    case FunctionSpec::Kind::moebius: return "moebius";
    case FunctionSpec::Kind::piecewise_linear_family: return "piecewise_linear_family";
    case FunctionSpec::Kind::composite: return "composite";
  }
  return "unknown";
}

FunctionSpec FunctionSpec::make_expression(const std::string& text) {
  FunctionSpec s;
  s.kind = Kind::expression;
  s.text = text;
  s.expression = expr::Expression::parse(text);
  return s;
}

FunctionSpec FunctionSpec::make_constant(double c) {
  FunctionSpec s;
  s.kind = Kind::constant;
  s.value = c;
  return s;
}

FunctionSpec FunctionSpec::make_moebius(double c) {
  if (!(c > 0.0)) throw DomainError("moebius parameter must be positive");
  FunctionSpec s;
  s.kind = Kind::moebius;
  s.value = c;
  return s;
}

FunctionSpec FunctionSpec::make_compose(FunctionSpec outer, FunctionSpec inner) {
  FunctionSpec s;
  s.kind = Kind::composite;
  s.op = CompositeOp::compose;
  s.parts = {std::move(outer), std::move(inner)};
  return s;
}

FunctionSpec FunctionSpec::make_product(std::vector<FunctionSpec> factors) {
  FunctionSpec s;
  s.kind = Kind::composite;
  s.op = CompositeOp::multiply;
  s.parts = std::move(factors);
  return s;
}

FunctionSpec FunctionSpec::make_inverse(FunctionSpec map) {
  FunctionSpec s;
  s.kind = Kind::composite;
  s.op = CompositeOp::inverse;
  s.parts = {std::move(map)};
  return s;
}

FunctionSpec function_spec_from_json(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  const std::string kind = string_field(require(j, "kind", pointer), pointer + "/kind");
  FunctionSpec s;
  if (kind == "expression") {
    s.kind = FunctionSpec::Kind::expression;
    s.text = string_field(require(j, "expr", pointer), pointer + "/expr");
    s.expression = parse_at(s.text, {"x"}, pointer + "/expr");
  } else if (kind == "constant") {
    s.kind = FunctionSpec::Kind::constant;
    s.value = finite_number(require(j, "value", pointer), pointer + "/value");
  } else if (kind == "moebius") {
    s.kind = FunctionSpec::Kind::moebius;
    s.value = finite_number(require(j, "c", pointer), pointer + "/c");
    if (!(s.value > 0.0)) throw SchemaError(pointer + "/c", "moebius parameter must be positive");
  } else if (kind == "piecewise_linear_family") {
    s.kind = FunctionSpec::Kind::piecewise_linear_family;
    const auto& gens = require(j, "generators", pointer);
    if (!gens.is_array() || gens.size() < 2)
      throw SchemaError(pointer + "/generators", "expected an array of at least two generators");
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string gp = pointer + "/generators/" + std::to_string(i);
      GeneratorSpec g;
      g.name = string_field(require(gens[i], "name", gp), gp + "/name");
      g.nonneg_text = string_field(require(gens[i], "nonneg", gp), gp + "/nonneg");
      g.neg_text = string_field(require(gens[i], "neg", gp), gp + "/neg");
      g.nonneg = parse_at(g.nonneg_text, {"n"}, gp + "/nonneg");
      g.neg = parse_at(g.neg_text, {"n"}, gp + "/neg");
      s.generators.push_back(std::move(g));
    }
    if (j.contains("index_offset")) {
      const auto& off = j.at("index_offset");
      if (off.is_string() && off.get<std::string>() == "auto") {
        s.index_offset = -1;
      } else if (off.is_number_integer() && off.get<int>() >= 0) {
        s.index_offset = off.get<int>();
      } else {
        throw SchemaError(pointer + "/index_offset", "expected a non-negative integer or \"auto\"");
      }
    }
    if (j.contains("n_max")) {
      const auto& nm = j.at("n_max");
      if (!nm.is_number_integer() || nm.get<int>() < 8 || nm.get<int>() > 2048)
        throw SchemaError(pointer + "/n_max", "expected an integer in [8, 2048]");
      s.n_max = nm.get<int>();
    }
  } else if (kind == "composite") {
    s.kind = FunctionSpec::Kind::composite;
    const std::string op = string_field(require(j, "op", pointer), pointer + "/op");
    if (op == "compose") {
      s.op = CompositeOp::compose;
      s.parts.push_back(function_spec_from_json(require(j, "outer", pointer), pointer + "/outer"));
      s.parts.push_back(function_spec_from_json(require(j, "inner", pointer), pointer + "/inner"));
    } else if (op == "multiply") {
      s.op = CompositeOp::multiply;
      const auto& factors = require(j, "factors", pointer);
      if (!factors.is_array() || factors.empty())
        throw SchemaError(pointer + "/factors", "expected a non-empty array");
      for (std::size_t i = 0; i < factors.size(); ++i)
        s.parts.push_back(function_spec_from_json(factors[i], pointer + "/factors/" + std::to_string(i)));
    } else if (op == "inverse") {
      s.op = CompositeOp::inverse;
      s.parts.push_back(function_spec_from_json(require(j, "of", pointer), pointer + "/of"));
    } else {
      throw SchemaError(pointer + "/op", "unsupported composite op '" + op + "'");
    }
  } else {
    throw SchemaError(pointer + "/kind", "unsupported kind '" + kind + "'");
  }
  return s;
}

nlohmann::ordered_json to_json(const FunctionSpec& s) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(s.kind);
  switch (s.kind) {
    case FunctionSpec::Kind::expression: j["expr"] = s.text; break;
    case FunctionSpec::Kind::constant: j["value"] = s.value; break;
    case FunctionSpec::Kind::moebius: j["c"] = s.value; break;
    case FunctionSpec::Kind::piecewise_linear_family: {
      auto gens = nlohmann::ordered_json::array();
      for (const auto& g : s.generators) {
        nlohmann::ordered_json gj;
        gj["name"] = g.name;
        gj["nonneg"] = g.nonneg_text;
        gj["neg"] = g.neg_text;
        gens.push_back(gj);
      }
      j["generators"] = gens;
      if (s.index_offset < 0) {
        j["index_offset"] = "auto";
      } else {
        j["index_offset"] = s.index_offset;
      }
      j["n_max"] = s.n_max;
      break;
    }
    case FunctionSpec::Kind::composite:
      if (s.op == CompositeOp::compose) {
        j["op"] = "compose";
        j["outer"] = to_json(s.parts.at(0));
        j["inner"] = to_json(s.parts.at(1));
      } else if (s.op == CompositeOp::inverse) {
        j["op"] = "inverse";
        j["of"] = to_json(s.parts.at(0));
      } else {
        j["op"] = "multiply";
        auto arr = nlohmann::ordered_json::array();
        for (const auto& p : s.parts) arr.push_back(to_json(p));
        j["factors"] = arr;
      }
      break;
  }
  return j;
}

}  // namespace spectra
