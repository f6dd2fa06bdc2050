#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scenarios_fixture.hpp"
#include "spectra/errors.hpp"
#include "spectra/theorem_engine.hpp"

using namespace spectra;
using fixture::constant;
using fixture::ex;
using fixture::moebius;

namespace {

SpectralSet circles(std::initializer_list<double> radii) {
  SpectralSet s;
  for (double r : radii) s = set_union(s, SpectralSet::circle(r));
  return s;
}

bool same(const SpectralSet& a, const SpectralSet& b, double tol = 1e-9) { return approx_equal(a, b, tol); }

void check_identities(const SpectrumReport& r) {
  auto v = report_violations(r);
  for (const auto& s : v) MESSAGE(s);
  CHECK(v.empty());
}

const Eigenvalue* find_eigen(const SpectrumReport& r, double value) {
  for (const auto& e : r.eigenvalues)
    if (std::abs(e.value - Complex(value, 0)) < 1e-9) return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("C1 moebius with unit weight") {
  auto r = compute_spectra(fixture::make("C", 1, moebius(), constant(1)));
  CHECK(same(r.sigma_A, SpectralSet::annulus(0.5, 2)));
  CHECK(same(r.sigma_k(1), circles({0.5, 2})));
  CHECK(same(r.sigma_k(2), circles({0.5, 2})));
  CHECK(same(r.sigma2_adjoint, SpectralSet::annulus(0.5, 2)));
  for (int k = 3; k <= 5; ++k) CHECK(same(r.sigma_k(k), SpectralSet::annulus(0.5, 2)));
  CHECK(r.eigenvalues.empty());
  CHECK(r.R1 == doctest::Approx(2));
  CHECK(r.R2 == doctest::Approx(0.5));
  check_identities(r);
}

TEST_CASE("C1 moebius with weight 5-4x has two eigenvalues") {
  auto r = compute_spectra(fixture::make("C", 1, moebius(), ex("5-4*x")));
  CHECK(same(r.sigma_A, SpectralSet::annulus(2, 2.5)));
  REQUIRE(r.eigenvalues.size() == 2);
  REQUIRE(find_eigen(r, 5));
  REQUIRE(find_eigen(r, 1));
  CHECK(find_eigen(r, 5)->multiplicity == 1);
  CHECK(find_eigen(r, 1)->multiplicity == 1);
  CHECK(r.sigma.contains({5, 0}));
  CHECK(r.sigma.contains({1, 0}));
  CHECK_FALSE(r.sigma.contains({3, 0}));
  check_identities(r);
}

TEST_CASE("C1 identity map is multiplication") {
  auto r = compute_spectra(fixture::make("C", 1, ex("x"), ex("1+x")));
  CHECK(r.sigma_A.annuli().empty());
  CHECK(r.sigma_A.min_modulus() == doctest::Approx(1));
  CHECK(r.sigma_A.max_modulus() == doctest::Approx(2));
  CHECK(r.sigma_k(2).contains({1, 0}));
  CHECK(r.sigma_k(2).contains({2, 0}));
  CHECK(r.sigma_k(2).points().size() > 100);
  CHECK(r.eigenvalues.empty());
  check_identities(r);
}

TEST_CASE("Cn squares the multiplier") {
  auto r = compute_spectra(fixture::make("C", 2, moebius(), constant(1)));
  CHECK(same(r.sigma_A, SpectralSet::annulus(0.25, 4)));
  CHECK(same(r.sigma_k(1), circles({0.25, 4})));
  CHECK(r.eigenvalues.empty());

  auto r5 = compute_spectra(fixture::make("C", 2, moebius(), ex("5-4*x")));
  CHECK(same(r5.sigma_A, SpectralSet::annulus(1.25, 4)));
  REQUIRE(r5.eigenvalues.size() == 2);
  REQUIRE(find_eigen(r5, 5));
  REQUIRE(find_eigen(r5, 1));
  CHECK(find_eigen(r5, 5)->multiplicity == 2);
  CHECK(find_eigen(r5, 1)->multiplicity == 2);
  check_identities(r5);
}

TEST_CASE("Cn with n=1 matches C1") {
  auto scn = fixture::make("C", 1, moebius(), ex("5-4*x"));
  auto a = spectra_C1(scn);
  auto b = spectra_Cn(scn);
  CHECK(a.sigma == b.sigma);
  for (int k = 1; k <= 5; ++k) CHECK(a.sigma_k(k) == b.sigma_k(k));
}

TEST_CASE("reversing involution") {
  auto r = compute_spectra(fixture::make("C", 1, ex("1-x"), constant(1)));
  const bool in_pm_one = is_subset(r.sigma, set_union(SpectralSet::point({1, 0}), SpectralSet::point({-1, 0})));
  CHECK((in_pm_one || same(r.sigma_A, SpectralSet::circle(1))));
  check_identities(r);
}

TEST_CASE("reversing map with weight 1+x") {
  auto r = compute_spectra(fixture::make("C", 1, ex("1-x"), ex("1+x")));
  CHECK(r.sigma_A.min_modulus() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
  CHECK(r.sigma_A.max_modulus() == doctest::Approx(1.5).epsilon(1e-6));
  check_identities(r);
}

TEST_CASE("reversing moebius conjugate") {
  auto r = compute_spectra(fixture::make("C", 1, ex("1-x/(2-x)"), constant(1)));
  REQUIRE(r.period_two.has_value());
  CHECK(r.period_two->central_fixed_point == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-9));
  check_identities(r);
}

TEST_CASE("Lip smooth case matches C") {
  auto c = compute_spectra(fixture::make("C", 1, moebius(), constant(1)));
  auto l = compute_spectra(fixture::make("Lip", 1, moebius(), constant(1)));
  for (int k = 1; k <= 5; ++k) CHECK(c.sigma_k(k) == l.sigma_k(k));
  CHECK(c.sigma2_adjoint == l.sigma2_adjoint);
}

TEST_CASE("Lip example 3") {
  auto r = compute_spectra(fixture::make("Lip", 1, fixture::example3_map(), constant(1)));
  CHECK(r.sigma == SpectralSet::annulus(0.25, 4));
  CHECK(r.sigma_k(1) == circles({0.25, 0.5, 2, 4}));
  CHECK(r.sigma_k(2) == circles({0.25, 0.5, 2, 4}));
  CHECK(r.sigma2_adjoint == SpectralSet::annulus(0.25, 4));
  for (int k = 3; k <= 5; ++k) CHECK(r.sigma_k(k) == SpectralSet::annulus(0.25, 4));
  check_identities(r);
}

TEST_CASE("Lip example 4 full spectrum and sigma1") {
  auto r = compute_spectra(fixture::make("Lip", 1, fixture::example4_map(), ex("2-x")));
  CHECK(r.sigma == SpectralSet::annulus(1, 2));
  CHECK(r.sigma_k(1) == circles({1, 1.5, 2}));
  for (int k = 3; k <= 5; ++k) CHECK(r.sigma_k(k) == SpectralSet::annulus(1, 2));
  check_identities(r);
}

TEST_CASE("Sobolev radii with exponent n - 1/p") {
  auto r = compute_spectra(fixture::make_w(1, 2, moebius(), constant(1)));
  CHECK(same(r.sigma_A, SpectralSet::annulus(std::pow(2, -0.5), std::sqrt(2.0))));
  auto r1 = compute_spectra(fixture::make_w(1, 1, moebius(), constant(1)));
  CHECK(same(r1.sigma_A, SpectralSet::circle(1)));
  check_identities(r);
}

TEST_CASE("Sobolev with infinite p delegates to Lip") {
  nlohmann::json j = {{"space", {{"family", "W"}, {"n", 1}, {"p", "inf"}}}, {"phi", moebius()}, {"w", ex("5-4*x")}};
  auto w = compute_spectra(scenario_from_json(j));
  auto l = compute_spectra(fixture::make("Lip", 1, moebius(), ex("5-4*x")));
  CHECK(w.sigma == l.sigma);
}

TEST_CASE("scale covariance") {
  auto a = compute_spectra(fixture::make("C", 1, moebius(), ex("5-4*x")));
  auto b = compute_spectra(fixture::make("C", 1, moebius(), ex("3*(5-4*x)")));
  for (int k = 1; k <= 5; ++k) CHECK(same(scale(a.sigma_k(k), {3, 0}), b.sigma_k(k)));
}

TEST_CASE("inversion duality") {
  // inverse of moebius(2) is moebius(1/2); 1/(w o phi^-1) for w=5-4x
  auto a = compute_spectra(fixture::make("C", 1, moebius(), ex("5-4*x")));
  auto b = compute_spectra(fixture::make("C", 1, moebius(0.5), ex("1/(5-4*(2*x/(1+x)))")));
  for (int k = 1; k <= 5; ++k) CHECK(same(invert(a.sigma_k(k)), b.sigma_k(k), 1e-8));
  CHECK(same(invert(a.sigma), b.sigma, 1e-8));
}

TEST_CASE("refusals") {
  CHECK_THROWS_AS(compute_spectra(fixture::make("W", 1, ex("1-x"), constant(1))), Error);
}

TEST_CASE("inverse map op") {
  const FunctionSpec f = FunctionSpec::make_expression("x+x*(1-x)*(0.3-0.4*x)");
  const HomeoModel phi(f);
  const HomeoModel inv(FunctionSpec::make_inverse(f));
  for (double x : {0.0, 0.2, 0.5, 0.9, 1.0}) {
    const double y = inv(x);
    CHECK(phi(y) == doctest::Approx(x).epsilon(1e-14));
    const double d1 = phi.derivative(y, 1);
    CHECK(inv.derivative(x, 1) == doctest::Approx(1.0 / d1).epsilon(1e-12));
    CHECK(inv.derivative(x, 2) == doctest::Approx(-phi.derivative(y, 2) / (d1 * d1 * d1)).epsilon(1e-10));
    CHECK(inv.inverse(x) == phi(x));
  }
  const nlohmann::json j = {{"kind", "composite"}, {"op", "inverse"}, {"of", moebius()}};
  const FunctionSpec s = function_spec_from_json(j, "/phi");
  CHECK(nlohmann::json(to_json(s)) == j);
  const auto r = compute_spectra(fixture::make("C", 1, j, constant(1)));
  CHECK(same(r.sigma, SpectralSet::annulus(0.5, 2)));
}
