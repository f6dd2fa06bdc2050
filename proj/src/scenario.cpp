#include "spectra/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

void reject_unknown(const nlohmann::json& j, const std::set<std::string>& allowed, const std::string& pointer) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) throw SchemaError(pointer + "/" + it.key(), "unknown field");
}

double number_at(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_number()) throw SchemaError(pointer, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(pointer, "number must be finite");
  return v;
}

int int_at(const nlohmann::json& j, const std::string& pointer, int lo, int hi) {
  if (!j.is_number_integer() || j.get<long>() < lo || j.get<long>() > hi)
    throw SchemaError(pointer, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return j.get<int>();
}

SpaceSpec space_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("/space", "expected an object");
  reject_unknown(j, {"family", "n", "p"}, "/space");
  SpaceSpec s;
  if (!j.contains("family") || !j.at("family").is_string()) throw SchemaError("/space/family", "expected \"C\", \"Lip\" or \"W\"");
  const std::string f = j.at("family").get<std::string>();
  if (f == "C") s.family = Family::C;
  else if (f == "Lip") s.family = Family::Lip;
  else if (f == "W") s.family = Family::W;
  else throw SchemaError("/space/family", "expected \"C\", \"Lip\" or \"W\"");
  if (!j.contains("n")) throw SchemaError("/space/n", "missing required field");
  s.n = int_at(j.at("n"), "/space/n", 1, 16);
  if (s.family == Family::W) {
    if (!j.contains("p")) throw SchemaError("/space/p", "the W family requires p");
    const auto& p = j.at("p");
    if (p.is_string() && p.get<std::string>() == "inf") {
      s.p = std::numeric_limits<double>::infinity();
    } else {
      const double v = number_at(p, "/space/p");
      if (v < 1.0) throw SchemaError("/space/p", "p must lie in [1, inf]");
      s.p = v;
    }
  }
  return s;
}

ScenarioOptions options_from_json(const nlohmann::json& j) {
  ScenarioOptions o;
  if (!j.is_object()) throw SchemaError("/options", "expected an object");
  reject_unknown(j,
                 {"tol", "grid", "segment_samples", "validation_grid", "stabilization_spread", "sobolev_mode",
                  "multiplier_reading", "lip_invariant_sets"},
                 "/options");
  if (j.contains("tol")) {
    o.tol = number_at(j.at("tol"), "/options/tol");
    if (!(o.tol > 0.0 && o.tol < 1e-3)) throw SchemaError("/options/tol", "expected a value in (0, 1e-3)");
  }
  if (j.contains("grid")) o.grid = int_at(j.at("grid"), "/options/grid", 16, 10000000);
  if (j.contains("segment_samples")) o.segment_samples = int_at(j.at("segment_samples"), "/options/segment_samples", 2, 100000);
  if (j.contains("validation_grid")) o.validation_grid = int_at(j.at("validation_grid"), "/options/validation_grid", 3, 10000000);
  if (j.contains("stabilization_spread")) {
    o.stabilization_spread = number_at(j.at("stabilization_spread"), "/options/stabilization_spread");
    if (!(o.stabilization_spread > 0.0)) throw SchemaError("/options/stabilization_spread", "expected a positive number");
  }
  if (j.contains("sobolev_mode")) {
    const auto& m = j.at("sobolev_mode");
    if (m == "lemma_l9") o.sobolev_mode = SobolevMode::lemma_l9;
    else if (m == "t4_1_transform") o.sobolev_mode = SobolevMode::t4_1_transform;
    else throw SchemaError("/options/sobolev_mode", "expected \"lemma_l9\" or \"t4_1_transform\"");
  }
  if (j.contains("multiplier_reading")) {
    const auto& m = j.at("multiplier_reading");
    if (m == "power") o.multiplier_reading = MultiplierReading::power;
    else if (m == "derivative") o.multiplier_reading = MultiplierReading::derivative;
    else throw SchemaError("/options/multiplier_reading", "expected \"power\" or \"derivative\"");
  }
  if (j.contains("lip_invariant_sets")) {
    const auto& arr = j.at("lip_invariant_sets");
    if (!arr.is_array() || arr.empty()) throw SchemaError("/options/lip_invariant_sets", "expected a non-empty array");
    std::vector<InvariantClassSpec> classes;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = "/options/lip_invariant_sets/" + std::to_string(i);
      const auto& c = arr[i];
      if (!c.is_object()) throw SchemaError(p, "expected an object");
      reject_unknown(c, {"label", "slope0", "slope1"}, p);
      InvariantClassSpec s;
      if (c.contains("label")) {
        if (!c.at("label").is_string()) throw SchemaError(p + "/label", "expected a string");
        s.label = c.at("label").get<std::string>();
      } else {
        s.label = "E" + std::to_string(i);
      }
      for (const char* key : {"slope0", "slope1"}) {
        if (!c.contains(key)) throw SchemaError(p + "/" + key, "missing required field");
        const double v = number_at(c.at(key), p + "/" + key);
        if (!(v > 0.0)) throw SchemaError(p + "/" + key, "slopes must be positive");
        (std::string(key) == "slope0" ? s.slope0 : s.slope1) = v;
      }
      classes.push_back(std::move(s));
    }
    o.lip_invariant_sets = std::move(classes);
  }
  return o;
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::C: return "C";
    case Family::Lip: return "Lip";
    case Family::W: return "W";
  }
  return "?";
}

std::string to_string(SobolevMode m) { return m == SobolevMode::lemma_l9 ? "lemma_l9" : "t4_1_transform"; }

Scenario scenario_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw SchemaError("", "scenario must be a JSON object");
  reject_unknown(j, {"name", "description", "space", "phi", "w", "options"}, "");
  Scenario s;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw SchemaError("/name", "expected a string");
    s.name = j.at("name").get<std::string>();
  }
  if (j.contains("description")) {
    if (!j.at("description").is_string()) throw SchemaError("/description", "expected a string");
    s.description = j.at("description").get<std::string>();
  }
  for (const char* key : {"space", "phi", "w"})
    if (!j.contains(key)) throw SchemaError(std::string("/") + key, "missing required field");
  s.space = space_from_json(j.at("space"));
  s.phi = function_spec_from_json(j.at("phi"), "/phi");
  s.w = function_spec_from_json(j.at("w"), "/w");
  if (s.w.kind == FunctionSpec::Kind::piecewise_linear_family)
    throw SchemaError("/w/kind", "weights must be expression, constant, moebius or composite");
  if (j.contains("options")) s.options = options_from_json(j.at("options"));
  return s;
}

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json j;
  if (!s.name.empty()) j["name"] = s.name;
  if (!s.description.empty()) j["description"] = s.description;
  nlohmann::ordered_json space;
  space["family"] = to_string(s.space.family);
  space["n"] = s.space.n;
  if (s.space.family == Family::W) {
    if (std::isinf(s.space.p)) space["p"] = "inf";
    else space["p"] = s.space.p;
  }
  j["space"] = space;
  j["phi"] = to_json(s.phi);
  j["w"] = to_json(s.w);
  const ScenarioOptions d;
  const ScenarioOptions& o = s.options;
  nlohmann::ordered_json opts = nlohmann::ordered_json::object();
  if (o.tol != d.tol) opts["tol"] = o.tol;
  if (o.grid != d.grid) opts["grid"] = o.grid;
  if (o.segment_samples != d.segment_samples) opts["segment_samples"] = o.segment_samples;
  if (o.validation_grid != d.validation_grid) opts["validation_grid"] = o.validation_grid;
  if (o.stabilization_spread != d.stabilization_spread) opts["stabilization_spread"] = o.stabilization_spread;
  if (o.sobolev_mode != d.sobolev_mode) opts["sobolev_mode"] = to_string(o.sobolev_mode);
  if (o.multiplier_reading != d.multiplier_reading) opts["multiplier_reading"] = "derivative";
  if (o.lip_invariant_sets) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : *o.lip_invariant_sets) {
      nlohmann::ordered_json e;
      e["label"] = c.label;
      e["slope0"] = c.slope0;
      e["slope1"] = c.slope1;
      arr.push_back(e);
    }
    opts["lip_invariant_sets"] = arr;
  }
  if (!opts.empty()) j["options"] = opts;
  return j;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
  return scenario_from_json(j);
}

}  // namespace spectra
