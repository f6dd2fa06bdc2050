#include "spectra/report_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

using ojson = nlohmann::ordered_json;
using json = nlohmann::json;

// NaN and infinities are written as null.
ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

const json& field(const json& j, const char* key, const std::string& ptr) {
  if (!j.is_object()) throw SchemaError(ptr, "expected an object");
  if (!j.contains(key)) throw SchemaError(ptr + "/" + key, "missing required field");
  return j.at(key);
}

double read_number(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) throw SchemaError(ptr + "/" + key, "expected a number");
  return v.get<double>();
}

int read_int(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (!v.is_number_integer()) throw SchemaError(ptr + "/" + key, "expected an integer");
  return v.get<int>();
}

bool read_bool(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (!v.is_boolean()) throw SchemaError(ptr + "/" + key, "expected a boolean");
  return v.get<bool>();
}

std::string read_string(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (!v.is_string()) throw SchemaError(ptr + "/" + key, "expected a string");
  return v.get<std::string>();
}

const json& read_array(const json& j, const char* key, const std::string& ptr) {
  const json& v = field(j, key, ptr);
  if (!v.is_array()) throw SchemaError(ptr + "/" + key, "expected an array");
  return v;
}

std::vector<std::string> read_strings(const json& j, const char* key, const std::string& ptr) {
  std::vector<std::string> out;
  const json& arr = read_array(j, key, ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) throw SchemaError(ptr + "/" + key + "/" + std::to_string(i), "expected a string");
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

std::vector<double> read_numbers(const json& j, const char* key, const std::string& ptr) {
  std::vector<double> out;
  const json& arr = read_array(j, key, ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (arr[i].is_null()) out.push_back(std::numeric_limits<double>::quiet_NaN());
    else if (arr[i].is_number()) out.push_back(arr[i].get<double>());
    else throw SchemaError(ptr + "/" + key + "/" + std::to_string(i), "expected a number");
  }
  return out;
}

ojson numbers(const std::vector<double>& v) {
  ojson a = ojson::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

ojson space_json(const SpaceSpec& s) {
  ojson j;
  j["family"] = to_string(s.family);
  j["n"] = s.n;
  if (s.family == Family::W) {
    if (std::isinf(s.p)) j["p"] = "inf";
    else j["p"] = s.p;
  }
  return j;
}

SpaceSpec space_from(const json& j, const std::string& ptr) {
  SpaceSpec s;
  const std::string f = read_string(j, "family", ptr);
  if (f == "C") s.family = Family::C;
  else if (f == "Lip") s.family = Family::Lip;
  else if (f == "W") s.family = Family::W;
  else throw SchemaError(ptr + "/family", "expected \"C\", \"Lip\" or \"W\"");
  s.n = read_int(j, "n", ptr);
  if (s.family == Family::W) {
    const json& p = field(j, "p", ptr);
    if (p.is_string() && p.get<std::string>() == "inf") s.p = std::numeric_limits<double>::infinity();
    else if (p.is_number()) s.p = p.get<double>();
    else throw SchemaError(ptr + "/p", "expected a number or \"inf\"");
  }
  return s;
}

ojson analysis_json(const FixedPointAnalysis& a) {
  ojson j;
  j["fixed_points"] = ojson::array();
  for (const auto& p : a.fixed_points) {
    ojson q;
    q["a"] = number(p.a);
    q["phi_prime"] = number(p.phi_prime);
    q["w"] = number(p.w_value);
    q["isolated"] = p.isolated;
    q["interior"] = p.interior;
    q["tangential"] = p.tangential;
    q["v"] = number(p.v);
    j["fixed_points"].push_back(q);
  }
  j["segments"] = ojson::array();
  for (const auto& s : a.segments) j["segments"].push_back({{"lo", number(s.lo)}, {"hi", number(s.hi)}});
  j["complementary_intervals"] = ojson::array();
  for (const auto& c : a.complementary_intervals) {
    ojson q;
    q["a"] = number(c.a);
    q["b"] = number(c.b);
    q["direction"] = to_string(c.direction);
    q["left"] = c.left;
    q["right"] = c.right;
    q["v_a"] = number(c.v_a);
    q["v_b"] = number(c.v_b);
    j["complementary_intervals"].push_back(q);
  }
  j["has_interior"] = a.has_interior;
  j["F_nowhere_dense"] = a.F_nowhere_dense;
  j["interval_structure_resolved"] = a.interval_structure_resolved;
  j["diagnostic"] = a.diagnostic;
  return j;
}

FixedPointAnalysis analysis_from(const json& j, const std::string& ptr) {
  FixedPointAnalysis a;
  const json& fps = read_array(j, "fixed_points", ptr);
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const std::string p = ptr + "/fixed_points/" + std::to_string(i);
    FixedPoint f;
    f.a = read_number(fps[i], "a", p);
    f.phi_prime = read_number(fps[i], "phi_prime", p);
    f.w_value = read_number(fps[i], "w", p);
    f.isolated = read_bool(fps[i], "isolated", p);
    f.interior = read_bool(fps[i], "interior", p);
    f.tangential = read_bool(fps[i], "tangential", p);
    f.v = read_number(fps[i], "v", p);
    a.fixed_points.push_back(f);
  }
  const json& segs = read_array(j, "segments", ptr);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string p = ptr + "/segments/" + std::to_string(i);
    a.segments.push_back({read_number(segs[i], "lo", p), read_number(segs[i], "hi", p), {}});
  }
  const json& ivs = read_array(j, "complementary_intervals", ptr);
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const std::string p = ptr + "/complementary_intervals/" + std::to_string(i);
    ComplementaryInterval c;
    c.a = read_number(ivs[i], "a", p);
    c.b = read_number(ivs[i], "b", p);
    const std::string d = read_string(ivs[i], "direction", p);
    if (d == "below") c.direction = Direction::below;
    else if (d == "above") c.direction = Direction::above;
    else throw SchemaError(p + "/direction", "expected \"below\" or \"above\"");
    c.left = static_cast<std::size_t>(read_int(ivs[i], "left", p));
    c.right = static_cast<std::size_t>(read_int(ivs[i], "right", p));
    c.v_a = read_number(ivs[i], "v_a", p);
    c.v_b = read_number(ivs[i], "v_b", p);
    a.complementary_intervals.push_back(c);
  }
  a.has_interior = read_bool(j, "has_interior", ptr);
  a.F_nowhere_dense = read_bool(j, "F_nowhere_dense", ptr);
  a.interval_structure_resolved = read_bool(j, "interval_structure_resolved", ptr);
  a.diagnostic = read_string(j, "diagnostic", ptr);
  return a;
}

ojson period_two_json(const PeriodTwoAnalysis& p) {
  ojson j;
  j["central_fixed_point"] = number(p.central_fixed_point);
  j["central_w"] = number(p.central_w);
  j["isolated_period2_points"] = ojson::array();
  for (const auto& q : p.isolated_period2_points)
    j["isolated_period2_points"].push_back({{"t", number(q.t)}, {"phi_t", number(q.phi_t)}, {"product", number(q.product)}});
  j["Pi_nowhere_dense"] = p.Pi_nowhere_dense;
  j["resolved"] = p.resolved;
  j["square"] = analysis_json(p.square);
  return j;
}

PeriodTwoAnalysis period_two_from(const json& j, const std::string& ptr) {
  PeriodTwoAnalysis p;
  p.central_fixed_point = read_number(j, "central_fixed_point", ptr);
  p.central_w = read_number(j, "central_w", ptr);
  const json& arr = read_array(j, "isolated_period2_points", ptr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string q = ptr + "/isolated_period2_points/" + std::to_string(i);
    p.isolated_period2_points.push_back(
        {read_number(arr[i], "t", q), read_number(arr[i], "phi_t", q), read_number(arr[i], "product", q)});
  }
  p.Pi_nowhere_dense = read_bool(j, "Pi_nowhere_dense", ptr);
  p.resolved = read_bool(j, "resolved", ptr);
  p.square = analysis_from(field(j, "square", ptr), ptr + "/square");
  return p;
}

const std::vector<std::pair<std::string, std::string>>& set_keys() {
  static const std::vector<std::pair<std::string, std::string>> keys = {
      {"1", "sigma_1"}, {"2", "sigma_2"},  {"3", "sigma_3"},          {"4", "sigma_4"},
      {"5", "sigma_5"}, {"ap", "sigma_ap"}, {"adjoint", "sigma2_adjoint"}};
  return keys;
}

template <class Report>
auto set_slot(Report& r, const std::string& name) {
  if (name == "ap") return &r.sigma_ap;
  if (name == "adjoint") return &r.sigma2_adjoint;
  return &r.sigma_i.at(static_cast<std::size_t>(std::stoi(name) - 1));
}

}  // namespace

std::set<std::string> all_set_names() { return {"1", "2", "3", "4", "5", "ap", "adjoint"}; }

std::set<std::string> parse_set_selection(const std::string& csv) {
  std::set<std::string> out;
  const auto valid = all_set_names();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    if (!valid.count(item)) throw SchemaError("/sigma", "unknown set name \"" + item + "\"");
    out.insert(item);
  }
  if (out.empty()) throw SchemaError("/sigma", "empty set selection");
  return out;
}

ojson to_json(const SpectrumReport& r, const std::set<std::string>& sets) {
  ojson j;
  j["engine"] = r.engine;
  j["space"] = space_json(r.space);
  j["multiplier"] = r.multiplier;
  j["sigma"] = to_json(r.sigma);
  for (const auto& [name, key] : set_keys()) {
    if (!sets.count(name)) continue;
    j[key] = to_json(*set_slot(r, name));
  }
  j["sigma_A"] = to_json(r.sigma_A);
  j["eigenvalues"] = ojson::array();
  for (const auto& e : r.eigenvalues)
    j["eigenvalues"].push_back(
        {{"re", e.value.real()}, {"im", e.value.imag()}, {"multiplicity", e.multiplicity}, {"source", e.source}});
  j["essential_radii"] = {{"R1", number(r.R1)}, {"R2", number(r.R2)}};
  j["provenance"] = ojson::array();
  for (const auto& p : r.provenance)
    j["provenance"].push_back({{"component", p.component}, {"rule", p.rule}, {"detail", p.detail}});
  j["warnings"] = r.warnings;
  if (!r.lip_classes.empty()) {
    j["lip_classes"] = ojson::array();
    for (const auto& c : r.lip_classes) {
      ojson q;
      q["label"] = c.label;
      q["slope0"] = number(c.slope0);
      q["slope1"] = number(c.slope1);
      q["e0"] = number(c.e0);
      q["e1"] = number(c.e1);
      q["spread0"] = number(c.spread0);
      q["spread1"] = number(c.spread1);
      q["snapped0"] = c.snapped0;
      q["snapped1"] = c.snapped1;
      j["lip_classes"].push_back(q);
    }
  }
  if (!r.lip_bands.empty()) {
    j["lip_bands"] = ojson::array();
    for (const auto& b : r.lip_bands) {
      ojson q;
      q["r_lo"] = number(b.r_lo);
      q["r_hi"] = number(b.r_hi);
      q["r_test"] = number(b.r_test);
      q["classification"] = b.classification;
      q["E1"] = b.E1;
      q["E2"] = b.E2;
      q["E3"] = b.E3;
      j["lip_bands"].push_back(q);
    }
  }
  if (r.analysis) j["fixed_point_analysis"] = analysis_json(*r.analysis);
  if (r.period_two) j["period_two"] = period_two_json(*r.period_two);
  return j;
}

SpectrumReport report_from_json(const json& j, const std::string& ptr) {
  SpectrumReport r;
  r.engine = read_string(j, "engine", ptr);
  r.space = space_from(field(j, "space", ptr), ptr + "/space");
  r.multiplier = read_string(j, "multiplier", ptr);
  r.sigma = spectral_set_from_json(field(j, "sigma", ptr), ptr + "/sigma");
  for (const auto& [name, key] : set_keys())
    if (j.contains(key)) *set_slot(r, name) = spectral_set_from_json(j.at(key), ptr + "/" + key);
  r.sigma_A = spectral_set_from_json(field(j, "sigma_A", ptr), ptr + "/sigma_A");
  const json& eig = read_array(j, "eigenvalues", ptr);
  for (std::size_t i = 0; i < eig.size(); ++i) {
    const std::string p = ptr + "/eigenvalues/" + std::to_string(i);
    r.eigenvalues.push_back({Complex(read_number(eig[i], "re", p), read_number(eig[i], "im", p)),
                             read_int(eig[i], "multiplicity", p), read_string(eig[i], "source", p)});
  }
  const json& radii = field(j, "essential_radii", ptr);
  r.R1 = read_number(radii, "R1", ptr + "/essential_radii");
  r.R2 = read_number(radii, "R2", ptr + "/essential_radii");
  const json& prov = read_array(j, "provenance", ptr);
  for (std::size_t i = 0; i < prov.size(); ++i) {
    const std::string p = ptr + "/provenance/" + std::to_string(i);
    r.provenance.push_back(
        {read_string(prov[i], "component", p), read_string(prov[i], "rule", p), read_string(prov[i], "detail", p)});
  }
  r.warnings = read_strings(j, "warnings", ptr);
  if (j.contains("lip_classes")) {
    const json& arr = read_array(j, "lip_classes", ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = ptr + "/lip_classes/" + std::to_string(i);
      LipClassInfo c;
      c.label = read_string(arr[i], "label", p);
      c.slope0 = read_number(arr[i], "slope0", p);
      c.slope1 = read_number(arr[i], "slope1", p);
      c.e0 = read_number(arr[i], "e0", p);
      c.e1 = read_number(arr[i], "e1", p);
      c.spread0 = read_number(arr[i], "spread0", p);
      c.spread1 = read_number(arr[i], "spread1", p);
      c.snapped0 = read_string(arr[i], "snapped0", p);
      c.snapped1 = read_string(arr[i], "snapped1", p);
      r.lip_classes.push_back(c);
    }
  }
  if (j.contains("lip_bands")) {
    const json& arr = read_array(j, "lip_bands", ptr);
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = ptr + "/lip_bands/" + std::to_string(i);
      LipBandInfo b;
      b.r_lo = read_number(arr[i], "r_lo", p);
      b.r_hi = read_number(arr[i], "r_hi", p);
      b.r_test = read_number(arr[i], "r_test", p);
      b.classification = read_string(arr[i], "classification", p);
      b.E1 = read_strings(arr[i], "E1", p);
      b.E2 = read_strings(arr[i], "E2", p);
      b.E3 = read_strings(arr[i], "E3", p);
      r.lip_bands.push_back(b);
    }
  }
  if (j.contains("fixed_point_analysis"))
    r.analysis = analysis_from(j.at("fixed_point_analysis"), ptr + "/fixed_point_analysis");
  if (j.contains("period_two")) r.period_two = period_two_from(j.at("period_two"), ptr + "/period_two");
  return r;
}

ojson to_json(const numerics::OracleVerdict& v) {
  ojson j;
  j["quantity"] = v.quantity;
  j["closed_form"] = number(v.closed_form);
  j["estimate"] = number(v.estimate);
  j["relative_error"] = number(v.relative_error);
  j["tolerance"] = number(v.tolerance);
  j["converged"] = v.converged;
  j["passed"] = v.passed;
  j["samples"] = numbers(v.samples);
  j["note"] = v.note;
  return j;
}

numerics::OracleVerdict verdict_from_json(const json& j, const std::string& ptr) {
  numerics::OracleVerdict v;
  v.quantity = read_string(j, "quantity", ptr);
  v.closed_form = read_number(j, "closed_form", ptr);
  v.estimate = read_number(j, "estimate", ptr);
  v.relative_error = read_number(j, "relative_error", ptr);
  v.tolerance = read_number(j, "tolerance", ptr);
  v.converged = read_bool(j, "converged", ptr);
  v.passed = read_bool(j, "passed", ptr);
  v.samples = read_numbers(j, "samples", ptr);
  v.note = read_string(j, "note", ptr);
  return v;
}

ojson to_json(const ReportDocument& d, const std::set<std::string>& sets) {
  ojson j;
  j["tool"] = {{"name", "spectra"}, {"version", d.tool_version}};
  j["scenario"] = to_json(d.scenario);
  j["report"] = to_json(d.report, sets);
  j["warnings"] = d.report.warnings;
  if (d.verdicts) {
    j["verdicts"] = ojson::array();
    for (const auto& v : *d.verdicts) j["verdicts"].push_back(to_json(v));
  }
  return j;
}

ReportDocument report_document_from_json(const json& j) {
  ReportDocument d;
  const json& tool = field(j, "tool", "");
  d.tool_version = read_string(tool, "version", "/tool");
  d.scenario = scenario_from_json(field(j, "scenario", ""));
  d.report = report_from_json(field(j, "report", ""), "/report");
  if (j.contains("verdicts")) {
    const json& arr = read_array(j, "verdicts", "");
    std::vector<numerics::OracleVerdict> vs;
    for (std::size_t i = 0; i < arr.size(); ++i) vs.push_back(verdict_from_json(arr[i], "/verdicts/" + std::to_string(i)));
    d.verdicts = std::move(vs);
  }
  return d;
}

std::string dump(const ojson& j) { return j.dump(2) + "\n"; }

}  // namespace spectra
