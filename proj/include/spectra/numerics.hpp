#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "spectra/funcmodel.hpp"
#include "spectra/report.hpp"
#include "spectra/scenario.hpp"

namespace spectra::numerics {

using Complex = std::complex<double>;

enum class NormTag { sup, l1, lp };

/// Dense discretization of an operator on grid functions.
struct GridOperator {
  std::vector<double> grid;
  Eigen::MatrixXd matrix;
  NormTag norm_tag = NormTag::sup;
};

/// Comparison of an oracle estimate with the closed-form value.
/// relative_error = |estimate - closed_form| / max(|closed_form|, 1e-12).
struct OracleVerdict {
  std::string quantity;
  double closed_form = 0.0;
  double estimate = 0.0;
  double relative_error = 0.0;
  double tolerance = 0.0;
  bool converged = false;
  bool passed = false;
  std::vector<double> samples;
  std::string note;
};

/// Verdict comparing a value with its closed form under a relative tolerance.
OracleVerdict value_verdict(std::string quantity, double closed_form, double estimate, double tolerance,
                            bool converged, std::vector<double> samples = {});

/// Verdict for a residual that must stay below `bound`.
OracleVerdict residual_verdict(std::string quantity, double residual, double bound, bool converged,
                               std::vector<double> samples = {});

struct GrowthRates {
  double max_rate = 0.0;
  double min_rate = 0.0;
  std::array<double, 3> max_by_depth{};  ///< depths N-2, N-1, N
  std::array<double, 3> min_by_depth{};
};

/// Grid max and min of (|w_N(x)| ((phi^N)'(x))^m)^(1/N), accumulated in log space.
GrowthRates cocycle_growth(const HomeoModel& phi, const WeightModel& w, double m, int depth, int grid_size);

struct EigenfunctionCheck {
  double lambda = 0.0;
  double residual = 0.0;             ///< sup |w f(phi) - lambda f| / sup |f|
  double derivative_residual = 0.0;  ///< same for the grid difference quotient
  bool converged = false;
  bool inverse_orbit = false;        ///< product taken along phi^-1
  std::vector<double> residual_by_factors;  ///< residual at K/4, K/2, K
};

/// Builds the eigenfunction of the fixed point `end` (0 or 1) as an infinite
/// product along the orbit attracted to it. Refuses unless |lambda| > R1
/// (forward orbit) or |lambda| < R2 (backward orbit).
EigenfunctionCheck eigenfunction_product(const HomeoModel& phi, const WeightModel& w, int end, int factors,
                                         int grid_size, double R1, double R2);

struct WitnessResult {
  double residual = 0.0;
  int offset = 0;  ///< first orbit segment of the best window
  bool truncated = false;
  std::string warning;
};

/// Relative sup-norm residual of the best windowed orbit witness for
/// lambda in sigma_ap of g -> w (phi')^m g o phi.
WitnessResult approx_point_witness(const HomeoModel& phi, const WeightModel& w, double m, Complex lambda, int scale,
                                   int grid_size);

struct VolterraResult {
  int rank = 0;
  int squares = 0;
  double sup_norm_defect = 0.0;
  double l1_norm_defect = 0.0;
  double constant_input_defect = 0.0;  ///< sup of (V - V_n)1
};

VolterraResult volterra_approximation(int generation, int grid_size);

struct IsometryCheck {
  std::vector<std::vector<double>> ratios;  ///< ratios[k-1][j] for test function j
  std::vector<double> power_norm_estimates; ///< (max_j ratio)^(1/k)
  double max_deviation = 0.0;
};

/// Norm ratios ||U^k x||_p / ||x||_p, U x = (phi')^(1/p) x o phi.
IsometryCheck lp_isometry_check(const HomeoModel& phi, double p, int k_max, int grid_size);

struct PowerNormEstimate {
  double upper_rate = 0.0;  ///< ||A^k||^(1/k)
  double lower_rate = 0.0;  ///< ||A^-k||^(-1/k)
  int depth = 0;
};

/// Bump-test-function estimate of the power norms of
/// A g = w (phi')^n g o phi on L^p.
PowerNormEstimate sobolev_power_norms(const HomeoModel& phi, const WeightModel& w, int n, double p, int depth,
                                      int grid_size);

struct SimilarityResidual {
  double composition_part_error = 0.0;  ///< leading term against the weighted composition matrix
  double discrepancy = 0.0;             ///< term-by-term against direct assembly, relative
  std::vector<double> singular_values;  ///< of the integral terms
};

SimilarityResidual similarity_residual_n2(const HomeoModel& phi, const WeightModel& w, int grid_size);

/// Weighted composition matrix on a uniform grid (linear interpolation).
GridOperator composition_operator(const HomeoModel& phi, const WeightModel& w, double m, int grid_size);

struct EigenCloud {
  std::vector<Complex> values;
  std::vector<std::string> warnings;
  bool advisory = true;
};

/// Eigenvalues of a finite section of T. Advisory only.
EigenCloud eigen_cloud(const Scenario& scn, int grid_size);

struct VerifyOptions {
  int grid = 4000;
  int depth = 40;
};

/// Runs every oracle that applies to the scenario against the report.
std::vector<OracleVerdict> verify(const Scenario& scn, const SpectrumReport& report, const VerifyOptions& opts = {});

}  // namespace spectra::numerics
