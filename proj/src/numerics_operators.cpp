#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "spectra/errors.hpp"
#include "spectra/numerics.hpp"
#include "spectra/theorem_engine.hpp"

namespace spectra::numerics {

namespace {

double uniform(int i, int n) { return n <= 1 ? 0.0 : static_cast<double>(i) / (n - 1); }

// Columns [a_lo, a_hi) of row b covered by dyadic squares of generations 0..n.
std::vector<std::pair<int, int>> covered_columns(int b, int n, int N) {
  const double t = (b + 0.5) / N;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= n; ++i) {
    const double L = std::ldexp(1.0, -(i + 1));
    const long kt = static_cast<long>(std::floor(t / L));
    if (kt % 2 == 0) continue;
    const double s_lo = (kt - 1) * L, s_hi = kt * L;
    const int a_lo = static_cast<int>(std::ceil(s_lo * N - 0.5));
    const int a_hi = static_cast<int>(std::ceil(s_hi * N - 0.5));
    out.push_back({a_lo, a_hi});
  }
  return out;
}

// Exact integral of (y - u)^power * hat over [lo, hi] within a cell
// [alpha, alpha + h]; returns the weights of the left and right nodes.
std::pair<double, double> cell_weights(double alpha, double h, double lo, double hi, double y, int power) {
  if (hi <= lo) return {0.0, 0.0};
  static const double g = 1.0 / std::sqrt(3.0);
  const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
  double left = 0.0, right = 0.0;
  for (double s : {-g, g}) {
    const double u = mid + half * s;
    const double k = power == 0 ? 1.0 : (y - u);
    const double r = (u - alpha) / h;
    left += half * k * (1.0 - r);
    right += half * k * r;
  }
  return {left, right};
}

// Row vector of the functional x -> int_0^y (y - u)^power x(u) du for x
// piecewise linear on the uniform nodes.
Eigen::RowVectorXd antiderivative_row(double y, int power, int N) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(N + 1);
  const double h = 1.0 / N;
  for (int j = 0; j < N; ++j) {
    const double alpha = j * h;
    if (alpha >= y) break;
    const double hi = std::min(alpha + h, y);
    auto [l, r] = cell_weights(alpha, h, alpha, hi, y, power);
    row(j) += l;
    row(j + 1) += r;
  }
  return row;
}

Eigen::RowVectorXd interpolation_row(double y, int N) {
  Eigen::RowVectorXd row = Eigen::RowVectorXd::Zero(N + 1);
  const double pos = std::clamp(y, 0.0, 1.0) * N;
  int j = std::min(static_cast<int>(std::floor(pos)), N - 1);
  const double r = pos - j;
  row(j) += 1.0 - r;
  row(j + 1) += r;
  return row;
}

}  // namespace

VolterraResult volterra_approximation(int generation, int grid_size) {
  if (generation < 0) throw DomainError("generation must be non-negative");
  if (generation > 20 || grid_size < (1 << (generation + 3)))
    throw Refusal("grid of " + std::to_string(grid_size) + " cells is too coarse for generation " +
                  std::to_string(generation));
  const int N = grid_size;
  const double h = 1.0 / N;
  VolterraResult out;
  out.squares = (1 << (generation + 1)) - 1;

  // Defect kernel cells: V is 1 below the diagonal and 1/2 on it.
  std::vector<double> row_sum(N, 0.0), col_sum(N, 0.0);
  std::vector<char> covered(N);
  for (int b = 0; b < N; ++b) {
    std::fill(covered.begin(), covered.end(), 0);
    for (auto [lo, hi] : covered_columns(b, generation, N))
      for (int a = std::max(lo, 0); a < std::min(hi, N); ++a) covered[a] = 1;
    for (int a = 0; a <= b; ++a) {
      const double v = a == b ? 0.5 : 1.0;
      const double k = covered[a] ? 1.0 : 0.0;
      const double d = std::abs(v - k);
      row_sum[b] += d * h;
      col_sum[a] += d * h;
    }
  }
  out.sup_norm_defect = *std::max_element(row_sum.begin(), row_sum.end());
  out.l1_norm_defect = *std::max_element(col_sum.begin(), col_sum.end());
  out.constant_input_defect = out.sup_norm_defect;

  // Rank from distinct row and column signatures (sets of containing squares).
  auto square_id = [](int i, long k) { return (1L << i) - 1 + k / 2; };
  std::map<std::vector<long>, int> rows, cols;
  for (int c = 0; c < N; ++c) {
    const double x = (c + 0.5) / N;
    std::vector<long> as_row, as_col;
    for (int i = 0; i <= generation; ++i) {
      const double L = std::ldexp(1.0, -(i + 1));
      const long k = static_cast<long>(std::floor(x / L));
      if (k % 2 == 1) as_row.push_back(square_id(i, k - 1));  // t-range of square k-1
      else as_col.push_back(square_id(i, k));                 // s-range of square k
    }
    rows.emplace(as_row, 0);
    cols.emplace(as_col, 0);
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  Eigen::Index r = 0;
  for (const auto& [rs, unused_r] : rows) {
    Eigen::Index c = 0;
    for (const auto& [cs, unused_c] : cols) {
      for (long id : rs)
        if (std::find(cs.begin(), cs.end(), id) != cs.end()) C(r, c) = 1.0;
      ++c;
    }
    ++r;
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(C);
  out.rank = static_cast<int>(lu.rank());
  return out;
}

GridOperator composition_operator(const HomeoModel& phi, const WeightModel& w, double m, int grid_size) {
  if (grid_size < 2) throw DomainError("grid too small");
  const int N = grid_size - 1;
  GridOperator op;
  op.grid.resize(grid_size);
  op.matrix = Eigen::MatrixXd::Zero(grid_size, grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double t = uniform(i, grid_size);
    op.grid[i] = t;
    double factor = w(t);
    if (m != 0.0) factor *= std::pow(phi.derivative(t, 1), m);
    op.matrix.row(i) = factor * interpolation_row(phi(t), N);
  }
  return op;
}

SimilarityResidual similarity_residual_n2(const HomeoModel& phi, const WeightModel& w, int grid_size) {
  if (grid_size < 8) throw Refusal("grid too coarse for the second-derivative stencil");
  if (phi(0.0) != 0.0) throw Refusal("the similarity requires phi(0) = 0");
  const int N = grid_size;
  const int M = N + 1;
  Eigen::MatrixXd P(M, M), Q1(M, M), Q2(M, M);
  Eigen::VectorXd lead(M), first(M), second(M), wt(M);
  for (int i = 0; i < M; ++i) {
    const double t = static_cast<double>(i) / N;
    const double y = phi(t);
    const double d1 = phi.derivative(t, 1), d2 = phi.derivative(t, 2);
    const double w0 = w(t), w1 = w.derivative(t, 1), w2 = w.derivative(t, 2);
    wt(i) = w0;
    lead(i) = w0 * d1 * d1;
    first(i) = w0 * d2 + 2.0 * w1 * d1;
    second(i) = w2;
    P.row(i) = interpolation_row(y, N);
    Q1.row(i) = antiderivative_row(y, 0, N);
    Q2.row(i) = antiderivative_row(y, 1, N);
  }
  const Eigen::MatrixXd leading = lead.asDiagonal() * P;
  const Eigen::MatrixXd integral = first.asDiagonal() * Q1 + second.asDiagonal() * Q2;
  const Eigen::MatrixXd termwise = leading + integral;

  // Direct: second difference of t -> w(t) f(phi(t)), f = J^-1 x.
  const Eigen::MatrixXd g = wt.asDiagonal() * Q2;
  Eigen::MatrixXd direct(M, M);
  const double h2 = 1.0 / (static_cast<double>(N) * N);
  for (int i = 1; i < N; ++i) direct.row(i) = (g.row(i + 1) - 2.0 * g.row(i) + g.row(i - 1)) / h2;
  direct.row(0) = (2.0 * g.row(0) - 5.0 * g.row(1) + 4.0 * g.row(2) - g.row(3)) / h2;
  direct.row(N) = (2.0 * g.row(N) - 5.0 * g.row(N - 1) + 4.0 * g.row(N - 2) - g.row(N - 3)) / h2;

  SimilarityResidual out;
  const GridOperator comp = composition_operator(phi, w, 2.0, M);
  out.composition_part_error = (leading - comp.matrix).cwiseAbs().maxCoeff();

  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * M_PI);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<double, 4> a, b;
    for (int j = 0; j < 4; ++j) a[j] = amp(rng), b[j] = phase(rng);
    Eigen::VectorXd x(M);
    for (int i = 0; i < M; ++i) {
      const double t = static_cast<double>(i) / N;
      x(i) = 1.0;
      for (int j = 0; j < 4; ++j) x(i) += a[j] * std::cos((j + 1) * M_PI * t + b[j]);
    }
    const Eigen::VectorXd lhs = termwise * x;
    const Eigen::VectorXd rhs = direct * x;
    out.discrepancy = std::max(out.discrepancy, (lhs - rhs).cwiseAbs().maxCoeff() / lhs.cwiseAbs().maxCoeff());
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(integral);
  const Eigen::VectorXd sv = svd.singularValues();
  out.singular_values.assign(sv.data(), sv.data() + sv.size());
  return out;
}

EigenCloud eigen_cloud(const Scenario& scn, int grid_size) {
  EigenCloud cloud;
  const ScenarioModels models = build_models(scn);
  const GridOperator op = composition_operator(models.phi, models.w, 0.0, grid_size);
  Eigen::EigenSolver<Eigen::MatrixXd> es(op.matrix, false);
  if (es.info() != Eigen::Success) {
    cloud.warnings.push_back("eigensolver did not converge; cloud omitted");
    return cloud;
  }
  const auto& ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) cloud.values.push_back(ev(i));
  return cloud;
}

}  // namespace spectra::numerics
