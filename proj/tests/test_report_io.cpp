#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "scenarios_fixture.hpp"
#include "spectra/catalog.hpp"
#include "spectra/errors.hpp"
#include "spectra/report_io.hpp"
#include "spectra/svg_plot.hpp"
#include "spectra/theorem_engine.hpp"

using namespace spectra;
using fixture::constant;
using fixture::ex;
using fixture::moebius;

namespace {

ReportDocument document(const Scenario& s) {
  ReportDocument d;
  d.scenario = s;
  d.report = compute_spectra(s);
  return d;
}

std::string round_trip(const std::string& text) {
  return dump(to_json(report_document_from_json(nlohmann::json::parse(text))));
}

}  // namespace

TEST_CASE("report document round trip is byte identical") {
  const std::vector<Scenario> scenarios = {
      fixture::make("C", 1, moebius(), ex("5-4*x")),
      fixture::make("C", 2, moebius(), ex("5-4*x")),
      fixture::make("C", 1, ex("1-x"), ex("1+x")),
      fixture::make("Lip", 1, fixture::example3_map(), constant(1)),
      fixture::make("Lip", 1, fixture::example4_map(), ex("2-x")),
      fixture::make_w(1, 2, moebius(), constant(1)),
      fixture::make("C", 1, ex("x"), ex("2+x")),
  };
  for (const auto& s : scenarios) {
    const std::string once = dump(to_json(document(s)));
    CHECK(round_trip(once) == once);
  }
}

TEST_CASE("parsed report equals the original") {
  const Scenario s = fixture::make("Lip", 1, fixture::example3_map(), constant(1));
  const SpectrumReport r = compute_spectra(s);
  const SpectrumReport back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
  CHECK(back.sigma == r.sigma);
  for (int k = 1; k <= 5; ++k) CHECK(back.sigma_k(k) == r.sigma_k(k));
  CHECK(back.sigma2_adjoint == r.sigma2_adjoint);
  CHECK(back.R1 == r.R1);
  CHECK(back.R2 == r.R2);
  CHECK(back.eigenvalues.size() == r.eigenvalues.size());
  CHECK(back.lip_classes.size() == r.lip_classes.size());
}

TEST_CASE("verdicts round trip") {
  ReportDocument d = document(fixture::make("C", 1, moebius(), constant(1)));
  d.verdicts = std::vector<numerics::OracleVerdict>{
      numerics::value_verdict("R1", 2.0, 2.01, 0.05, true, {2.0, 2.01, 2.01}),
      numerics::residual_verdict("residual", 1e-12, 1e-8, false)};
  const std::string once = dump(to_json(d));
  CHECK(round_trip(once) == once);
  const ReportDocument back = report_document_from_json(nlohmann::json::parse(once));
  REQUIRE(back.verdicts.has_value());
  CHECK(back.verdicts->size() == 2);
  CHECK((*back.verdicts)[1].converged == false);
}

TEST_CASE("set selection filters the output") {
  const ReportDocument d = document(fixture::make("C", 1, moebius(), constant(1)));
  const auto j = to_json(d, parse_set_selection("1,ap"));
  CHECK(j["report"].contains("sigma_1"));
  CHECK(j["report"].contains("sigma_ap"));
  CHECK_FALSE(j["report"].contains("sigma_2"));
  CHECK_FALSE(j["report"].contains("sigma2_adjoint"));
  CHECK(j["report"].contains("sigma"));
  CHECK_THROWS_AS(parse_set_selection("1,6"), SchemaError);
  CHECK_THROWS_AS(parse_set_selection(""), SchemaError);
}

TEST_CASE("malformed report is a schema error with a pointer") {
  const ReportDocument d = document(fixture::make("C", 1, moebius(), constant(1)));
  nlohmann::json j = nlohmann::json::parse(to_json(d).dump());
  j["report"]["essential_radii"]["R1"] = "big";
  try {
    report_document_from_json(j);
    FAIL("expected a schema error");
  } catch (const SchemaError& e) {
    CHECK(e.pointer() == "/report/essential_radii/R1");
  }
}

TEST_CASE("scenario schema errors") {
  auto pointer_of = [](const nlohmann::json& j) {
    try {
      scenario_from_json(j);
    } catch (const SchemaError& e) {
      return e.pointer();
    }
    return std::string("none");
  };
  const nlohmann::json good = {{"space", {{"family", "W"}, {"n", 1}, {"p", 2}}}, {"phi", moebius()}, {"w", constant(1)}};
  CHECK(pointer_of(good) == "none");
  nlohmann::json bad = good;
  bad["space"]["p"] = 0.5;
  CHECK(pointer_of(bad) == "/space/p");
  bad = good;
  bad["space"]["family"] = "H";
  CHECK(pointer_of(bad) == "/space/family");
  bad = good;
  bad["phi"]["kind"] = "spline";
  CHECK(pointer_of(bad) == "/phi/kind");
  bad = good;
  bad["extra"] = 1;
  CHECK(pointer_of(bad) == "/extra");
}

TEST_CASE("svg plot draws every component") {
  const SpectrumReport r = compute_spectra(fixture::make("C", 1, moebius(), ex("5-4*x")));
  const std::string svg = render_svg(r, {Complex(1.0, 0.5), Complex(-2.0, 0.0)});
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("fill-rule=\"evenodd\"") != std::string::npos);
  CHECK(svg.find("(x1)") != std::string::npos);
  CHECK(svg.find("fill=\"#999\"") != std::string::npos);

  const SpectrumReport e3 = compute_spectra(fixture::make("Lip", 1, fixture::example3_map(), constant(1)));
  SpectrumReport circles = e3;
  circles.sigma = e3.sigma_k(1);
  CHECK(render_svg(circles).find("stroke=\"#1f3f7a\" stroke-width=\"2\"") != std::string::npos);
}

TEST_CASE("catalog entries are valid scenarios") {
  const auto& entries = list_examples();
  for (const char* name : {"example_e1_1_case1", "example_e1_1_case2", "example_e1_1_case3", "example_e3", "example_e4",
                           "cubic_perturbation", "reversing_involution", "sobolev_p2"}) {
    bool found = false;
    for (const auto& e : entries) found = found || e.name == name;
    CHECK_MESSAGE(found, name);
  }
  for (const auto& e : entries) {
    INFO(e.name);
    Scenario s;
    CHECK_NOTHROW(s = scenario_from_json(nlohmann::json::parse(e.scenario.dump())));
    CHECK(s.name == e.name);
    CHECK_NOTHROW(compute_spectra(s));
  }
}

TEST_CASE("example e1.1 cases") {
  auto find = [](const std::string& n) {
    for (const auto& e : list_examples())
      if (e.name == n) return compute_spectra(scenario_from_json(nlohmann::json::parse(e.scenario.dump())));
    throw std::runtime_error(n);
  };
  const SpectrumReport c1 = find("example_e1_1_case1");
  for (int k = 1; k <= 5; ++k) CHECK(c1.sigma_k(k) == SpectralSet::circle(2.0));
  const SpectrumReport c2 = find("example_e1_1_case2");
  CHECK(c2.sigma_k(2) == SpectralSet::annulus(2.0, 2.5));
  CHECK(c2.sigma_k(1) == SpectralSet({{2.0, 2.0}, {2.5, 2.5}}));
  CHECK(c2.sigma2_adjoint == SpectralSet({{2.0, 2.0}, {2.5, 2.5}}));
  const SpectrumReport c3 = find("example_e1_1_case3");
  CHECK(c3.sigma2_adjoint == SpectralSet::annulus(0.5, 2.0));
  CHECK(c3.sigma_k(2) == SpectralSet({{0.5, 0.5}, {2.0, 2.0}}));
  CHECK(c3.eigenvalues.empty());
}
