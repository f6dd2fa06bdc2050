#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "spectra/errors.hpp"
#include "spectra/numerics.hpp"

namespace spectra::numerics {

namespace {

constexpr double kTiny = 1e-12;

double uniform(int i, int n) { return n <= 1 ? 0.0 : static_cast<double>(i) / (n - 1); }

// 15-point Gauss-Kronrod rule on [-1,1], expanded to both signs.
struct Rule {
  std::vector<double> nodes, weights;
};

const Rule& gk15() {
  static const Rule rule = [] {
    using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
    Rule r;
    const auto& a = GK::abscissa();
    const auto& w = GK::weights();
    for (std::size_t i = a.size(); i-- > 1;) {
      r.nodes.push_back(-a[i]);
      r.weights.push_back(w[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      r.nodes.push_back(a[i]);
      r.weights.push_back(w[i]);
    }
    return r;
  }();
  return rule;
}

double log_derivative(const HomeoModel& phi, double x) {
  const double d = phi.derivative(x, 1);
  if (!(d > 0.0)) throw DomainError("log of non-positive derivative at x = " + std::to_string(x));
  return std::log(d);
}

double log_weight(const WeightModel& w, double x) {
  const double v = std::abs(w(x));
  if (!(v > 0.0)) throw DomainError("weight vanishes at x = " + std::to_string(x));
  return std::log(v);
}

}  // namespace

OracleVerdict value_verdict(std::string quantity, double closed_form, double estimate, double tolerance,
                            bool converged, std::vector<double> samples) {
  OracleVerdict v;
  v.quantity = std::move(quantity);
  v.closed_form = closed_form;
  v.estimate = estimate;
  v.relative_error = std::abs(estimate - closed_form) / std::max(std::abs(closed_form), kTiny);
  v.tolerance = tolerance;
  v.converged = converged;
  v.passed = converged && v.relative_error <= tolerance;
  v.samples = std::move(samples);
  return v;
}

OracleVerdict residual_verdict(std::string quantity, double residual, double bound, bool converged,
                               std::vector<double> samples) {
  OracleVerdict v = value_verdict(std::move(quantity), 0.0, residual, bound, converged, std::move(samples));
  v.passed = converged && residual <= bound;
  v.note = "residual bound";
  return v;
}

GrowthRates cocycle_growth(const HomeoModel& phi, const WeightModel& w, double m, int depth, int grid_size) {
  if (depth < 8) throw DomainError("cocycle depth must be at least 8");
  if (grid_size < 2) throw DomainError("grid must have at least two points");
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("multiplier exponent must be finite and non-negative");
  GrowthRates g;
  g.max_by_depth.fill(-std::numeric_limits<double>::infinity());
  g.min_by_depth.fill(std::numeric_limits<double>::infinity());
  for (int i = 0; i < grid_size; ++i) {
    double x = uniform(i, grid_size);
    double log_sum = 0.0;
    for (int k = 0; k < depth; ++k) {
      log_sum += log_weight(w, x);
      if (m != 0.0) log_sum += m * log_derivative(phi, x);
      x = phi(x);
      const int slot = k + 1 - (depth - 2);
      if (slot >= 0) {
        const double rate = std::exp(log_sum / (k + 1));
        g.max_by_depth[slot] = std::max(g.max_by_depth[slot], rate);
        g.min_by_depth[slot] = std::min(g.min_by_depth[slot], rate);
      }
    }
  }
  g.max_rate = g.max_by_depth[2];
  g.min_rate = g.min_by_depth[2];
  return g;
}

EigenfunctionCheck eigenfunction_product(const HomeoModel& phi, const WeightModel& w, int end, int factors,
                                         int grid_size, double R1, double R2) {
  if (end != 0 && end != 1) throw DomainError("end must be 0 or 1");
  if (factors < 4) throw DomainError("at least four factors are required");
  if (grid_size < 3) throw DomainError("grid must have at least three points");
  const double a = end;
  if (std::abs(phi(a) - a) > 1e-14) throw Refusal("end point is not fixed");
  EigenfunctionCheck out;
  out.lambda = w(a);
  const double probe = end == 0 ? 1e-3 : 1.0 - 1e-3;
  const double g = phi(probe) - probe;
  const bool forward = end == 0 ? g < 0.0 : g > 0.0;
  out.inverse_orbit = !forward;
  const double mod = std::abs(out.lambda);
  if (forward && !(mod > R1 * (1.0 + 1e-12)))
    throw Refusal("|lambda| = " + std::to_string(mod) + " does not exceed R1 = " + std::to_string(R1));
  if (!forward && !(mod < R2 * (1.0 - 1e-12)))
    throw Refusal("|lambda| = " + std::to_string(mod) + " is not below R2 = " + std::to_string(R2));

  const int n = grid_size;
  const double lambda = out.lambda;
  // factor[k][i]: w(phi^k x)/lambda forward, lambda/w(phi^-k x) backward.
  std::vector<double> x(n), wx(n);
  std::vector<std::vector<double>> factor(factors + 1, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    x[i] = uniform(i, n);
    wx[i] = w(x[i]);
    double z = x[i];
    for (int k = 0; k <= factors; ++k) {
      if (k > 0) z = forward ? phi(z) : phi.inverse(z);
      factor[k][i] = forward ? w(z) / lambda : lambda / w(z);
    }
  }
  // f uses factors [first, first+K), f o phi uses [first+shift, first+shift+K).
  const int f_first = forward ? 0 : 1;
  const int fphi_first = forward ? 1 : 0;
  auto product = [&](int first, int count, std::vector<double>& out_values) {
    out_values.assign(n, 1.0);
    for (int k = first; k < first + count; ++k)
      for (int i = 0; i < n; ++i) out_values[i] *= factor[k][i];
  };
  std::vector<double> f, fphi;
  auto residual_at = [&](int count) {
    product(f_first, count, f);
    product(fphi_first, count, fphi);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      num = std::max(num, std::abs(wx[i] * fphi[i] - lambda * f[i]));
      den = std::max(den, std::abs(f[i]));
    }
    return num / den;
  };
  std::vector<double> prev;
  product(f_first, factors - 1, prev);
  for (int count : {std::max(1, factors / 4), std::max(1, factors / 2), factors})
    out.residual_by_factors.push_back(residual_at(count));
  out.residual = out.residual_by_factors.back();
  double change = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    change = std::max(change, std::abs(f[i] - prev[i]));
    scale = std::max(scale, std::abs(f[i]));
  }
  out.converged = change <= 1e-6 * scale;

  const double h = 1.0 / (n - 1);
  double dres = 0.0, df = 0.0;
  for (int i = 0; i + 1 < n; ++i) {
    const double r0 = wx[i] * fphi[i] - lambda * f[i];
    const double r1 = wx[i + 1] * fphi[i + 1] - lambda * f[i + 1];
    dres = std::max(dres, std::abs(r1 - r0) / h);
    df = std::max(df, std::abs(f[i + 1] - f[i]) / h);
  }
  out.derivative_residual = df > 0.0 ? dres / df : dres;
  return out;
}

WitnessResult approx_point_witness(const HomeoModel& phi, const WeightModel& w, double m, Complex lambda, int scale,
                                   int grid_size) {
  if (lambda == Complex(0.0, 0.0)) throw DomainError("lambda must be non-zero");
  if (scale < 1) throw DomainError("scale must be positive");
  if (grid_size < 16) throw DomainError("grid too small");
  WitnessResult best;
  best.residual = std::numeric_limits<double>::infinity();

  // Base points: local maxima of |phi(x) - x| on a coarse grid.
  const int coarse = 201;
  std::vector<double> gap(coarse);
  for (int i = 0; i < coarse; ++i) gap[i] = std::abs(phi(uniform(i, coarse)) - uniform(i, coarse));
  std::vector<double> bases;
  for (int i = 1; i + 1 < coarse; ++i)
    if (gap[i] > 1e-12 && gap[i] >= gap[i - 1] && gap[i] >= gap[i + 1]) bases.push_back(uniform(i, coarse));
  if (bases.size() > 8) bases.resize(8);

  if (bases.empty()) {
    // phi is the identity to grid resolution: A is multiplication by w.
    int centre = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i < grid_size; ++i) {
      const double d = std::abs(Complex(w(uniform(i, grid_size)), 0.0) - lambda);
      if (d < dist) dist = d, centre = i;
    }
    const double c = uniform(centre, grid_size);
    const double half = 0.5 / scale;
    double num = 0.0, den = 0.0;
    for (int i = 0; i < grid_size; ++i) {
      const double t = uniform(i, grid_size);
      if (std::abs(t - c) >= half) continue;
      const double u = std::cos(M_PI * (t - c) / (2.0 * half));
      num = std::max(num, std::abs((Complex(w(t), 0.0) - lambda) * u));
      den = std::max(den, u);
    }
    best.residual = den > 0.0 ? num / den : 0.0;
    return best;
  }

  const double log_lambda = std::log(std::abs(lambda));
  const double theta = std::arg(lambda);
  constexpr int kMaxLevels = 200;

  for (double x0 : bases) {
    const double x1 = phi(x0);
    const int levels_needed = scale + 1;
    const int per_level = std::max(4, grid_size / std::max(levels_needed, 16));
    // Level 0 samples of the half-open fundamental domain between x0 and phi(x0).
    std::vector<double> base(per_level);
    for (int i = 0; i < per_level; ++i) base[i] = x0 + (x1 - x0) * static_cast<double>(i) / per_level;

    // z[j] holds the level-j points, j from lo to hi (stored offset by lo).
    std::vector<std::vector<double>> fwd{base}, bwd;
    // A level is lost once neighbouring samples coincide in double precision.
    auto collapsed = [&](const std::vector<double>& pts) {
      for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        if (pts[i] == pts[i + 1] || phi(pts[i]) == pts[i]) return true;
      return false;
    };
    bool fwd_collapsed = false, bwd_collapsed = false;
    while (static_cast<int>(fwd.size()) < kMaxLevels) {
      std::vector<double> next(per_level);
      for (int i = 0; i < per_level; ++i) next[i] = phi(fwd.back()[i]);
      if (collapsed(next)) {
        fwd_collapsed = true;
        break;
      }
      fwd.push_back(std::move(next));
    }
    std::vector<double> cur = base;
    while (static_cast<int>(bwd.size()) < kMaxLevels) {
      std::vector<double> next(per_level);
      for (int i = 0; i < per_level; ++i) next[i] = phi.inverse(cur[i]);
      if (collapsed(next)) {
        bwd_collapsed = true;
        break;
      }
      bwd.push_back(next);
      cur = std::move(next);
    }
    const int lo = -static_cast<int>(bwd.size());
    const int hi = static_cast<int>(fwd.size()) - 1;
    auto points = [&](int j) -> const std::vector<double>& { return j >= 0 ? fwd[j] : bwd[-j - 1]; };

    // log|M_j| and sign relative to level 0.
    const int count = hi - lo + 1;
    std::vector<std::vector<double>> logM(count, std::vector<double>(per_level, 0.0));
    std::vector<std::vector<double>> sgnM(count, std::vector<double>(per_level, 1.0));
    std::vector<std::vector<double>> logStep(count, std::vector<double>(per_level));
    std::vector<std::vector<double>> sgnStep(count, std::vector<double>(per_level));
    for (int j = lo; j <= hi; ++j)
      for (int i = 0; i < per_level; ++i) {
        const double z = points(j)[i];
        const double wv = w(z);
        double lm = log_weight(w, z);
        if (m != 0.0) lm += m * log_derivative(phi, z);
        logStep[j - lo][i] = lm;
        sgnStep[j - lo][i] = wv < 0 ? -1.0 : 1.0;
      }
    for (int j = 1; j <= hi; ++j)
      for (int i = 0; i < per_level; ++i) {
        logM[j - lo][i] = logM[j - 1 - lo][i] + logStep[j - 1 - lo][i];
        sgnM[j - lo][i] = sgnM[j - 1 - lo][i] * sgnStep[j - 1 - lo][i];
      }
    for (int j = -1; j >= lo; --j)
      for (int i = 0; i < per_level; ++i) {
        logM[j - lo][i] = logM[j + 1 - lo][i] - logStep[j - lo][i];
        sgnM[j - lo][i] = sgnM[j + 1 - lo][i] * sgnStep[j - lo][i];
      }

    int window = scale;
    bool truncated = false;
    if (count < window + 1) {
      window = count - 1;
      truncated = true;
    }
    if (window < 1) continue;
    auto chi = [&](int j, int j0) {
      const int t = j - j0;
      if (t < 0 || t >= window) return 0.0;
      return std::sin(M_PI * (t + 1) / (window + 1));
    };
    for (int j0 = lo + 1; j0 + window - 1 <= hi; ++j0) {
      // u on levels j0..j0+window-1, A_h u - lambda u on levels j0-1..j0+window-1.
      double shift = -std::numeric_limits<double>::infinity();
      for (int j = j0; j < j0 + window; ++j)
        for (int i = 0; i < per_level; ++i) shift = std::max(shift, j * log_lambda - logM[j - lo][i]);
      auto u = [&](int j, int i) -> Complex {
        const double c = chi(j, j0);
        if (c == 0.0) return {0.0, 0.0};
        const double mag = c * std::exp(j * log_lambda - logM[j - lo][i] - shift);
        return std::polar(mag, j * theta) * sgnM[j - lo][i];
      };
      double num = 0.0, den = 0.0;
      for (int j = j0 - 1; j < j0 + window; ++j)
        for (int i = 0; i < per_level; ++i) {
          const Complex uj = u(j, i);
          den = std::max(den, std::abs(uj));
          const Complex next = j + 1 <= hi ? u(j + 1, i) : Complex(0.0, 0.0);
          const double step = sgnStep[j - lo][i] * std::exp(logStep[j - lo][i]);
          num = std::max(num, std::abs(step * next - lambda * uj));
        }
      const double res = num / den;
      if (res < best.residual) {
        best.residual = res;
        best.offset = j0;
        best.truncated = truncated || (bwd_collapsed && j0 == lo + 1) || (fwd_collapsed && j0 + window - 1 == hi);
      }
    }
  }
  if (best.truncated) best.warning = "orbit resolution limits the window to fewer levels than requested";
  return best;
}

IsometryCheck lp_isometry_check(const HomeoModel& phi, double p, int k_max, int grid_size) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must lie in [1, inf)");
  if (k_max < 1) throw DomainError("k_max must be positive");
  if (grid_size < 2) throw DomainError("grid too small");
  constexpr int kTests = 4;
  std::mt19937 rng(20240611u);
  std::uniform_real_distribution<double> amp(-1.0, 1.0), phase(0.0, 2.0 * M_PI);
  struct Test {
    double c;
    std::array<double, 4> a, b;
  };
  std::vector<Test> tests(kTests);
  for (auto& t : tests) {
    for (int j = 0; j < 4; ++j) t.a[j] = amp(rng), t.b[j] = phase(rng);
    // Bounded away from zero so that |x|^p stays smooth.
    t.c = 0.5 + std::abs(t.a[0]) + std::abs(t.a[1]) + std::abs(t.a[2]) + std::abs(t.a[3]);
  }
  auto eval = [](const Test& t, double s) {
    double v = t.c;
    for (int j = 0; j < 4; ++j) v += t.a[j] * std::cos((j + 1) * M_PI * s + t.b[j]);
    return v;
  };
  const Rule& gk = gk15();
  std::vector<double> base(kTests, 0.0);
  std::vector<std::vector<double>> mapped(k_max, std::vector<double>(kTests, 0.0));
  const double h = 1.0 / grid_size;
  for (int cell = 0; cell < grid_size; ++cell) {
    const double mid = (cell + 0.5) * h;
    for (std::size_t q = 0; q < gk.nodes.size(); ++q) {
      const double t = mid + 0.5 * h * gk.nodes[q];
      const double wq = 0.5 * h * gk.weights[q];
      for (int j = 0; j < kTests; ++j) base[j] += wq * std::pow(std::abs(eval(tests[j], t)), p);
      double y = t, dprod = 1.0;
      for (int k = 1; k <= k_max; ++k) {
        dprod *= phi.derivative(y, 1);
        y = phi(y);
        for (int j = 0; j < kTests; ++j) mapped[k - 1][j] += wq * std::pow(std::abs(eval(tests[j], y)), p) * dprod;
      }
    }
  }
  IsometryCheck out;
  for (int k = 1; k <= k_max; ++k) {
    std::vector<double> r(kTests);
    double worst = 0.0;
    for (int j = 0; j < kTests; ++j) {
      r[j] = std::pow(mapped[k - 1][j] / base[j], 1.0 / p);
      worst = std::max(worst, r[j]);
      out.max_deviation = std::max(out.max_deviation, std::abs(r[j] - 1.0));
    }
    out.power_norm_estimates.push_back(std::pow(worst, 1.0 / k));
    out.ratios.push_back(std::move(r));
  }
  return out;
}

PowerNormEstimate sobolev_power_norms(const HomeoModel& phi, const WeightModel& w, int n, double p, int depth,
                                      int grid_size) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("p must lie in [1, inf)");
  if (depth < 1 || n < 1) throw DomainError("depth and n must be positive");
  if (grid_size < 3) throw DomainError("grid too small");
  const Rule& gk = gk15();
  const double half = 0.5 / (grid_size - 1);
  constexpr int kPanels = 4;
  PowerNormEstimate out;
  out.depth = depth;
  double hi = 0.0, lo = std::numeric_limits<double>::infinity();
  for (int c = 0; c < grid_size; ++c) {
    const double centre = uniform(c, grid_size);
    const double a = std::max(0.0, centre - half), b = std::min(1.0, centre + half);
    double num = 0.0, den = 0.0;
    for (int panel = 0; panel < kPanels; ++panel) {
      const double pa = a + (b - a) * panel / kPanels, pb = a + (b - a) * (panel + 1) / kPanels;
      for (std::size_t q = 0; q < gk.nodes.size(); ++q) {
        const double s = 0.5 * (pa + pb) + 0.5 * (pb - pa) * gk.nodes[q];
        const double wq = 0.5 * (pb - pa) * gk.weights[q];
        const double g = std::pow(std::cos(M_PI * (s - centre) / (2.0 * half)), 2);
        const double gp = std::pow(g, p);
        const double t = iterate(phi, -depth, s);
        const double wk = std::abs(weight_cocycle(w, phi, depth, t));
        const double dk = derivative_cocycle(phi, depth, t);
        // s = phi^k(t): integrand |w_k|^p (phi^k)'^(np-1) |g(s)|^p
        num += wq * std::pow(wk, p) * std::pow(dk, n * p - 1.0) * gp;
        den += wq * gp;
      }
    }
    const double ratio = std::pow(num / den, 1.0 / p);
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }
  out.upper_rate = std::pow(hi, 1.0 / depth);
  out.lower_rate = std::pow(lo, 1.0 / depth);
  return out;
}

}  // namespace spectra::numerics
