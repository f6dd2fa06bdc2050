#include "spectra/catalog.hpp"

namespace spectra {

namespace {

using oj = nlohmann::ordered_json;

oj moebius(double c = 2.0) { return {{"kind", "moebius"}, {"c", c}}; }
oj ex(const char* text) { return {{"kind", "expression"}, {"expr", text}}; }
oj constant(double v) { return {{"kind", "constant"}, {"value", v}}; }

oj generator(const char* name, const char* nonneg, const char* neg) {
  return {{"name", name}, {"nonneg", nonneg}, {"neg", neg}};
}

oj example3_map() {
  return {{"kind", "piecewise_linear_family"},
          {"generators",
           {generator("a", "1/2^(n+1)", "1-1/2^(-n+1)"),
            generator("b", "1/2^(n+2)+1/4^(n+2)", "1-1/2^(-n+1)-1/4^(-n+1)")}},
          {"n_max", 64}};
}

oj example4_map() {
  return {{"kind", "piecewise_linear_family"},
          {"generators",
           {generator("a", "1/(n+2)", "1-1/(-n+2)"),
            generator("b", "(1/(n+2)+1/(n+3))/2", "1-1/(-n+2)-1/2^(-n+3)"),
            generator("c", "1/(n+3)+1/2^(n+3)+(3/4)^(n+3)", "1-1/(-n+2)-1/2^(-n+3)-(2/3)^(-n+3)"),
            generator("d", "1/(n+3)+1/2^(n+3)", "(1-1/(-n+2)+1-1/(-n+1))/2")}},
          {"index_offset", "auto"},
          {"n_max", 256}};
}

oj space(const char* family, int n) { return {{"family", family}, {"n", n}}; }

oj sobolev(int n, oj p) { return {{"family", "W"}, {"n", n}, {"p", p}}; }

CatalogEntry entry(const char* name, const char* description, oj sp, oj phi, oj w, oj options = oj()) {
  oj j = {{"name", name}, {"description", description}, {"space", sp}, {"phi", phi}, {"w", w}};
  if (!options.is_null()) j["options"] = options;
  return {name, j};
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  out.push_back(entry("moebius_c1_w1", "x/(2-x) on C1 with unit weight", space("C", 1), moebius(), constant(1)));
  out.push_back(entry("moebius_c1_affine", "x/(2-x) on C1, w = 5-4x", space("C", 1), moebius(), ex("5-4*x")));
  out.push_back(entry("moebius_c2_affine", "x/(2-x) on C2, w = 5-4x", space("C", 2), moebius(), ex("5-4*x")));
  out.push_back(entry("moebius_lip1_exp", "x/(2-x) on Lip1, w = 3-x*exp(x-1)", space("Lip", 1), moebius(),
                      ex("3-x*exp(x-1)")));
  out.push_back(entry("moebius_lip2_affine", "x/(2-x) on Lip2, w = 5-4x", space("Lip", 2), moebius(), ex("5-4*x")));
  out.push_back(entry("cubic_perturbation", "x + 0.3x(1-x)(x-1/2) on C1, w = 2+x", space("C", 1),
                      ex("x+0.3*x*(1-x)*(x-0.5)"), ex("2+x")));
  out.push_back(entry("example_e1_1_case1", "equal end rates: w = 4-3x, both ends give 2", space("C", 1), moebius(),
                      ex("4-3*x")));
  out.push_back(entry("example_e1_1_case2", "rate at 0 exceeds rate at 1: w = 5-4x", space("C", 1), moebius(),
                      ex("5-4*x")));
  out.push_back(entry("example_e1_1_case3", "rate at 0 below rate at 1: unit weight", space("C", 1), moebius(),
                      constant(1)));
  out.push_back(entry("example_e3", "two-sequence piecewise linear map on Lip1, unit weight", space("Lip", 1),
                      example3_map(), constant(1)));
  out.push_back(entry("example_e4", "four-sequence piecewise linear map on Lip1, w = 2-x", space("Lip", 1),
                      example4_map(), ex("2-x")));
  out.push_back(entry("reversing_involution", "1-x on C1, unit weight", space("C", 1), ex("1-x"), constant(1)));
  out.push_back(entry("reversing_weighted", "1-x on C1, w = 1+x", space("C", 1), ex("1-x"), ex("1+x")));
  out.push_back(entry("reversing_moebius", "1 - x/(2-x) on C1, unit weight", space("C", 1), ex("1-x/(2-x)"),
                      constant(1)));
  for (auto [label, p] : {std::pair<const char*, oj>{"1", 1}, {"2", 2}, {"4", 4}, {"inf", "inf"}}) {
    const std::string name = std::string("sobolev_p") + label;
    const std::string desc = std::string("x/(2-x) on W^{1,") + label + "}, unit weight";
    out.push_back(entry(name.c_str(), desc.c_str(), sobolev(1, p), moebius(), constant(1),
                        {{"sobolev_mode", "lemma_l9"}}));
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& list_examples() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

}  // namespace spectra
