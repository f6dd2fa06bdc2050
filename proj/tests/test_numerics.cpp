#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scenarios_fixture.hpp"
#include "spectra/errors.hpp"
#include "spectra/function_spec.hpp"
#include "spectra/numerics.hpp"
#include "spectra/theorem_engine.hpp"

using namespace spectra;
using namespace spectra::numerics;

namespace {

HomeoModel moebius_map(double c = 2.0) { return HomeoModel(FunctionSpec::make_moebius(c)); }
HomeoModel identity_map() { return HomeoModel(FunctionSpec::make_expression("x")); }
WeightModel weight(const std::string& text) { return WeightModel(FunctionSpec::make_expression(text)); }
WeightModel unit() { return WeightModel(FunctionSpec::make_constant(1.0)); }

}  // namespace

TEST_CASE("cocycle growth on moebius") {
  const auto g = cocycle_growth(moebius_map(), unit(), 1.0, 40, 4000);
  CHECK(g.max_rate == doctest::Approx(2.0).epsilon(0.02));
  CHECK(g.min_rate == doctest::Approx(0.5).epsilon(0.02));
  const auto g32 = cocycle_growth(moebius_map(), unit(), 1.5, 40, 4000);
  CHECK(g32.max_rate == doctest::Approx(std::pow(2.0, 1.5)).epsilon(0.02));
}

TEST_CASE("cocycle growth of a constant weight under the identity") {
  const auto g = cocycle_growth(identity_map(), WeightModel(FunctionSpec::make_constant(-3.0)), 2.0, 16, 101);
  CHECK(g.max_rate == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(g.min_rate == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("cocycle growth is log-linear in the exponent") {
  const auto base = cocycle_growth(moebius_map(), unit(), 1.0, 40, 2000);
  for (double m : {0.5, 2.0, 3.0}) {
    const auto g = cocycle_growth(moebius_map(), unit(), m, 40, 2000);
    CHECK(g.max_rate == doctest::Approx(std::pow(base.max_rate, m)).epsilon(0.01));
  }
}

TEST_CASE("cocycle growth rejects shallow depth") {
  CHECK_THROWS_AS(cocycle_growth(moebius_map(), unit(), 1.0, 4, 100), DomainError);
}

TEST_CASE("eigenfunction product at the attracting end") {
  const auto c = eigenfunction_product(moebius_map(), weight("5-4*x"), 0, 60, 2001, 2.5, 2.0);
  CHECK(c.lambda == doctest::Approx(5.0));
  CHECK(c.residual < 1e-8);
  CHECK(c.converged);
  CHECK_FALSE(c.inverse_orbit);
}

TEST_CASE("eigenfunction product along the inverse map") {
  const auto c = eigenfunction_product(moebius_map(), weight("5-4*x"), 1, 60, 2001, 2.5, 2.0);
  CHECK(c.lambda == doctest::Approx(1.0));
  CHECK(c.residual < 1e-8);
  CHECK(c.inverse_orbit);
}

TEST_CASE("eigenfunction residual decays geometrically") {
  // phi'(0) = 1/2 and R1/|lambda| = 1/2 for this weight
  const auto c = eigenfunction_product(moebius_map(), weight("5-4*x"), 0, 24, 1001, 2.5, 2.0);
  REQUIRE(c.residual_by_factors.size() == 3);
  const double ratio = std::pow(c.residual_by_factors[1] / c.residual_by_factors[0], 1.0 / 6.0);
  CHECK(ratio <= 0.5 + 0.05);
  CHECK(c.residual_by_factors[2] < c.residual_by_factors[1]);
}

TEST_CASE("eigenfunction product refuses inside the essential annulus") {
  CHECK_THROWS_AS(eigenfunction_product(moebius_map(), unit(), 0, 60, 101, 2.0, 0.5), Refusal);
  CHECK_THROWS_AS(eigenfunction_product(moebius_map(), WeightModel(FunctionSpec::make_constant(3.0)), 0, 60, 101, 3.0, 3.0),
                  Refusal);
}

TEST_CASE("witness for a circle in the approximate point spectrum") {
  double previous = 1e300;
  for (int scale : {8, 16, 32}) {
    const auto w = approx_point_witness(moebius_map(), unit(), 1.0, {0.5, 0.0}, scale, 4000);
    CHECK(w.residual < previous);
    previous = w.residual;
  }
  CHECK(previous < 0.1);
}

TEST_CASE("witness residual away from the spectrum") {
  for (int scale : {8, 16, 32, 64}) {
    const auto w = approx_point_witness(moebius_map(), unit(), 1.0, {3.0, 0.0}, scale, 4000);
    CHECK(w.residual >= 0.5);
  }
  // distance 0.5 and 2 from annulus[1/2, 2]
  CHECK(approx_point_witness(moebius_map(), unit(), 1.0, {2.5, 0.0}, 32, 4000).residual >= 0.25);
  CHECK(approx_point_witness(moebius_map(), unit(), 1.0, {0.0, 4.0}, 32, 4000).residual >= 1.0);
}

TEST_CASE("witness under the identity") {
  for (int scale : {8, 32})
    CHECK(approx_point_witness(identity_map(), unit(), 1.0, {1.0, 0.0}, scale, 400).residual == 0.0);
  CHECK_THROWS_AS(approx_point_witness(identity_map(), unit(), 1.0, {0.0, 0.0}, 8, 400), DomainError);
}

TEST_CASE("Volterra approximation") {
  const auto v0 = volterra_approximation(0, 64);
  CHECK(v0.rank == 1);
  CHECK(v0.sup_norm_defect <= 0.5 + 1.0 / 64);
  CHECK(v0.l1_norm_defect <= 0.5 + 1.0 / 64);
  CHECK(v0.constant_input_defect <= 0.5);
  const auto v4 = volterra_approximation(4, 4096);
  CHECK(v4.sup_norm_defect <= 1.0 / 32 + 1e-3);
  CHECK(v4.l1_norm_defect <= 1.0 / 32 + 1e-3);
  CHECK(v4.rank == 31);
  CHECK_THROWS_AS(volterra_approximation(4, 64), Refusal);
}

TEST_CASE("Volterra bound holds for every admissible generation") {
  for (int grid : {256, 1024}) {
    for (int n = 0; (1 << (n + 3)) <= grid; ++n) {
      const auto v = volterra_approximation(n, grid);
      CHECK(v.sup_norm_defect <= std::ldexp(1.0, -(n + 1)) + 2.0 / grid);
      CHECK(v.l1_norm_defect <= std::ldexp(1.0, -(n + 1)) + 2.0 / grid);
      CHECK(v.rank == (1 << (n + 1)) - 1);
      CHECK(v.squares == v.rank);
    }
  }
}

TEST_CASE("L^p isometry") {
  for (double p : {1.0, 2.0}) {
    const auto iso = lp_isometry_check(moebius_map(), p, 10, 8192);
    CHECK(iso.max_deviation < 1e-6);
    CHECK(iso.power_norm_estimates.back() == doctest::Approx(1.0).epsilon(1e-6));
  }
  const auto id = lp_isometry_check(identity_map(), 3.0, 3, 64);
  for (const auto& row : id.ratios)
    for (double r : row) CHECK(r == 1.0);
}

TEST_CASE("Sobolev power norms") {
  const auto pn = sobolev_power_norms(moebius_map(), unit(), 1, 2.0, 10, 4097);
  CHECK(pn.upper_rate == doctest::Approx(std::sqrt(2.0)).epsilon(0.05));
  CHECK(pn.lower_rate == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(0.05));
  const auto p1 = sobolev_power_norms(moebius_map(), unit(), 1, 1.0, 10, 1025);
  CHECK(p1.upper_rate == doctest::Approx(1.0).epsilon(0.05));
  CHECK(p1.lower_rate == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("similarity residual for n = 2") {
  const auto s = similarity_residual_n2(moebius_map(), unit(), 1024);
  CHECK(s.discrepancy < 1e-3);
  CHECK(s.composition_part_error == 0.0);
  const auto s5 = similarity_residual_n2(moebius_map(), weight("5-4*x"), 1024);
  CHECK(s5.discrepancy < 1e-3);
  REQUIRE(s5.singular_values.size() > 200);
  // Observed decay is like 1/k (step kernel of the first integral term).
  CHECK(s5.singular_values[50] < 0.02 * s5.singular_values[0]);
  CHECK(s5.singular_values[200] < 0.5 * s5.singular_values[50]);
  CHECK_THROWS_AS(similarity_residual_n2(moebius_map(), unit(), 4), Refusal);
}

TEST_CASE("eigen cloud is advisory") {
  const auto id = eigen_cloud(fixture::make("C", 1, fixture::ex("x"), fixture::ex("1+x")), 41);
  CHECK(id.advisory);
  REQUIRE(id.values.size() == 41);
  for (const auto& z : id.values) {
    CHECK(std::abs(z.imag()) < 1e-12);
    CHECK(z.real() >= 1.0 - 1e-12);
    CHECK(z.real() <= 2.0 + 1e-12);
  }
  const auto e3 = eigen_cloud(fixture::make("Lip", 1, fixture::example3_map(), fixture::constant(1)), 200);
  for (const auto& z : e3.values) CHECK(std::abs(z) <= 4.5);
}

TEST_CASE("verify agrees on the moebius suite") {
  for (const char* w : {"1", "5-4*x", "3-x*exp(x-1)"})
    for (const char* fam : {"C", "Lip"})
      for (int n : {1, 2}) {
        const auto scn = fixture::make(fam, n, fixture::moebius(), fixture::ex(w));
        const auto r = compute_spectra(scn);
        for (const auto& v : verify(scn, r)) {
          INFO(fam, " n=", n, " w=", w, " ", v.quantity, " estimate ", v.estimate);
          CHECK(v.passed);
        }
      }
}

TEST_CASE("verify on example 3") {
  const auto scn = fixture::make("Lip", 1, fixture::example3_map(), fixture::constant(1));
  const auto v = verify(scn, compute_spectra(scn));
  CHECK(v.size() == 4);
  for (const auto& x : v) CHECK(x.passed);
}
