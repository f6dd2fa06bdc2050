#include "spectra/piecewise_family.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>,
                                           boost::multiprecision::et_off>;

constexpr int kMaxAutoOffset = 1024;
constexpr int kExtrapolationNodes = 5;

struct Label {
  int g;
  int n;
  friend bool operator==(const Label&, const Label&) = default;
};

// Value at h = 0 of the polynomial through (h[i], v[i]).
Real neville_at_zero(const std::vector<Real>& h, std::vector<Real> v) {
  const std::size_t m = h.size();
  for (std::size_t level = 1; level < m; ++level)
    for (std::size_t i = 0; i + level < m; ++i)
      v[i] = (h[i + level] * v[i] - h[i] * v[i + 1]) / (h[i + level] - h[i]);
  return v[0];
}

bool snap_rational(double v, long& p, long& q) {
  if (!std::isfinite(v) || v == 0.0) return false;
  for (long d = 1; d <= 1000; ++d) {
    const double num = std::round(v * static_cast<double>(d));
    if (std::abs(num / static_cast<double>(d) - v) <= 1e-9 * std::abs(v)) {
      p = static_cast<long>(num);
      q = d;
      return true;
    }
  }
  return false;
}

}  // namespace

struct PiecewiseLinearFamily::Impl {
  std::vector<GeneratorSpec> gens;
  int n_max = 64;
  int offset = 0;

  // Formula values by formula index, filled on demand while searching offsets.
  std::vector<std::map<int, Real>> formula_cache;

  // vals[g][n + n_max] for the chosen offset.
  std::vector<std::vector<Real>> vals;
  // Breakpoint labels in orbit order (increasing index).
  std::vector<Label> orbit;
  bool below = true;

  int formula_index(int n, int s) const { return n >= 0 ? n + s : n - s; }

  const Real& formula(int g, int k) {
    auto& cache = formula_cache[static_cast<std::size_t>(g)];
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    const auto& gen = gens[static_cast<std::size_t>(g)];
    Real v;
    try {
      v = k >= 0 ? gen.nonneg.evaluate<Real>(Real(k)) : gen.neg.evaluate<Real>(Real(k));
    } catch (const DomainError& e) {
      throw DomainError("generator " + gen.name + " at index " + std::to_string(k) + ": " + e.what());
    }
    return cache.emplace(k, v).first->second;
  }

  const Real& at(int g, int n) const { return vals[static_cast<std::size_t>(g)][static_cast<std::size_t>(n + n_max)]; }

  // Builds vals/orbit for offset s; returns false when the breakpoints are not
  // strictly ordered with a periodic label pattern.
  bool build(int s) {
    const int K = static_cast<int>(gens.size());
    vals.assign(static_cast<std::size_t>(K), std::vector<Real>(static_cast<std::size_t>(2 * n_max + 1)));
    for (int g = 0; g < K; ++g) {
      for (int n = -n_max; n <= n_max; ++n) {
        const Real& v = formula(g, formula_index(n, s));
        if (!(v > 0 && v < 1)) return false;
        vals[static_cast<std::size_t>(g)][static_cast<std::size_t>(n + n_max)] = v;
      }
    }
    below = at(0, 1) < at(0, 0);
    orbit.clear();
    for (int g = 0; g < K; ++g)
      for (int n = -n_max; n <= n_max; ++n) orbit.push_back({g, n});
    std::sort(orbit.begin(), orbit.end(), [&](const Label& a, const Label& b) {
      return below ? at(a.g, a.n) > at(b.g, b.n) : at(a.g, a.n) < at(b.g, b.n);
    });
    for (std::size_t i = 0; i + 1 < orbit.size(); ++i)
      if (at(orbit[i].g, orbit[i].n) == at(orbit[i + 1].g, orbit[i + 1].n)) return false;
    const std::size_t period = static_cast<std::size_t>(K);
    for (std::size_t i = 0; i + period < orbit.size(); ++i) {
      const Label expect{orbit[i].g, orbit[i].n + 1};
      if (!(orbit[i + period] == expect)) return false;
    }
    return true;
  }

  std::size_t position(const Label& l) const {
    for (std::size_t i = 0; i < orbit.size(); ++i)
      if (orbit[i] == l) return i;
    throw DomainError("breakpoint label not found");
  }

  Real piece_length(const IntervalClass& c, int n) const {
    const Real d = at(c.second_generator, n + c.index_shift) - at(c.first_generator, n);
    return d < 0 ? Real(-d) : d;
  }

  Real forward_slope(const IntervalClass& c, int n) const { return piece_length(c, n + 1) / piece_length(c, n); }
};

PiecewiseLinearFamily::PiecewiseLinearFamily(const FunctionSpec& spec) : impl_(std::make_unique<Impl>()) {
  if (spec.kind != FunctionSpec::Kind::piecewise_linear_family)
    throw DomainError("not a piecewise-linear family");
  if (spec.generators.size() < 2) throw DomainError("a piecewise-linear family needs at least two generators");
  Impl& im = *impl_;
  im.gens = spec.generators;
  im.n_max = spec.n_max;
  im.formula_cache.resize(im.gens.size());
  n_max_ = spec.n_max;
  for (const auto& g : im.gens) names_.push_back(g.name);

  if (spec.index_offset >= 0) {
    if (!im.build(spec.index_offset))
      throw DomainError("breakpoints are not strictly ordered with a periodic pattern at index offset " +
                        std::to_string(spec.index_offset));
    offset_ = spec.index_offset;
  } else {
    int s = 0;
    while (s <= kMaxAutoOffset && !im.build(s)) ++s;
    if (s > kMaxAutoOffset) throw DomainError("no index offset yields strictly ordered breakpoints");
    offset_ = s;
  }
  im.offset = offset_;
  im.formula_cache.clear();
  below_ = im.below;

  // One period of consecutive pieces starting at generator 0, index 0.
  const std::size_t K = im.gens.size();
  const std::size_t start = im.position({0, 0});
  for (std::size_t i = start; i < start + K; ++i) {
    const Label& a = im.orbit[i];
    const Label& b = im.orbit[i + 1];
    IntervalClass c;
    c.first_generator = a.g;
    c.second_generator = b.g;
    c.index_shift = b.n - a.n;
    c.label = names_[static_cast<std::size_t>(a.g)] + "-" + names_[static_cast<std::size_t>(b.g)];
    classes_.push_back(c);
  }

  // Double-precision table of (x, phi(x)) at breakpoints with a known image.
  std::vector<std::pair<double, double>> table;
  table.emplace_back(0.0, 0.0);
  table.emplace_back(1.0, 1.0);
  for (const Label& l : im.orbit) {
    if (l.n + 1 > n_max_) continue;
    const double x = static_cast<double>(im.at(l.g, l.n));
    const double y = static_cast<double>(im.at(l.g, l.n + 1));
    if (x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0) table.emplace_back(x, y);
  }
  std::sort(table.begin(), table.end());
  for (const auto& [x, y] : table) {
    if (!xs_.empty() && (x <= xs_.back() || y <= ys_.back())) continue;
    xs_.push_back(x);
    ys_.push_back(y);
  }
}

PiecewiseLinearFamily::~PiecewiseLinearFamily() = default;

double PiecewiseLinearFamily::breakpoint(int generator, int n) const {
  if (generator < 0 || generator >= static_cast<int>(names_.size())) throw DomainError("generator index out of range");
  if (n < -n_max_ || n > n_max_) throw TruncationError("breakpoint index beyond the generated range");
  return static_cast<double>(impl_->at(generator, n));
}

TailSlope PiecewiseLinearFamily::tail_slope(const IntervalClass& cls, int end) const {
  if (end != 0 && end != 1) throw DomainError("end must be 0 or 1");
  const Impl& im = *impl_;
  const bool toward_plus = (end == 0) == below_;
  const int step = toward_plus ? -1 : 1;
  const int top = toward_plus ? n_max_ - std::max(cls.index_shift, 0) - 1 : -n_max_ - std::min(cls.index_shift, 0);
  const int q = kExtrapolationNodes;
  TailSlope out;
  std::vector<Real> estimates;
  for (int t = 0; t < 3; ++t) {
    std::vector<Real> h, v;
    for (int i = 0; i < q; ++i) {
      const int n = top + step * (t + i);
      const int k = im.formula_index(n, offset_);
      if (k == 0) throw TruncationError("not enough generated depth for tail extrapolation");
      h.push_back(Real(1) / Real(std::abs(k)));
      v.push_back(im.forward_slope(cls, n));
    }
    estimates.push_back(neville_at_zero(h, std::move(v)));
  }
  Real lo = estimates[0], hi = estimates[0];
  for (const Real& e : estimates) {
    lo = std::min(lo, e);
    hi = std::max(hi, e);
    out.depth_estimates.push_back(static_cast<double>(e));
  }
  out.raw = static_cast<double>(estimates[0]);
  const double scale = std::max(std::abs(out.raw), 1e-300);
  out.spread = static_cast<double>(hi - lo) / scale;
  out.value = out.raw;
  long p = 0, d = 0;
  if (snap_rational(out.raw, p, d)) {
    out.rational_snap = true;
    out.numerator = p;
    out.denominator = d;
    out.value = static_cast<double>(p) / static_cast<double>(d);
  }
  return out;
}

double PiecewiseLinearFamily::orbit_growth(const IntervalClass& cls, int start, int depth) const {
  const Impl& im = *impl_;
  if (depth <= 0) throw DomainError("orbit depth must be positive");
  if (start < -n_max_ || start + cls.index_shift > n_max_) throw TruncationError("start index beyond the generated range");
  Real x = (im.at(cls.first_generator, start) + im.at(cls.second_generator, start + cls.index_shift)) / 2;
  // Breakpoints sorted by value for lookup.
  std::vector<std::size_t> by_value(im.orbit.size());
  for (std::size_t i = 0; i < by_value.size(); ++i) by_value[i] = below_ ? by_value.size() - 1 - i : i;
  auto value_of = [&](std::size_t sorted_pos) {
    const Label& l = im.orbit[by_value[sorted_pos]];
    return im.at(l.g, l.n);
  };
  Real log_sum = 0;
  for (int step = 0; step < depth; ++step) {
    std::size_t lo = 0, hi = by_value.size() - 1;
    if (!(x > value_of(lo) && x < value_of(hi))) throw TruncationError("orbit left the generated range");
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (value_of(mid) <= x) lo = mid; else hi = mid;
    }
    const Label a = im.orbit[by_value[lo]];
    const Label b = im.orbit[by_value[hi]];
    if (a.n + 1 > n_max_ || b.n + 1 > n_max_) throw TruncationError("orbit left the generated range");
    const Real xa = im.at(a.g, a.n), xb = im.at(b.g, b.n);
    const Real ya = im.at(a.g, a.n + 1), yb = im.at(b.g, b.n + 1);
    const Real slope = (yb - ya) / (xb - xa);
    x = ya + slope * (x - xa);
    log_sum += log(slope);
  }
  return static_cast<double>(exp(log_sum / depth));
}

double PiecewiseLinearFamily::value(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("argument outside [0,1]");
  if (x == 0.0 || x == 1.0) return x;
  const std::size_t m = xs_.size();
  if (m < 4 || x < xs_[1] || x > xs_[m - 2]) throw TruncationError("point beyond the generated breakpoints");
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
  if (x == xs_[i]) return ys_[i];
  const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return ys_[i] + t * (ys_[i + 1] - ys_[i]);
}

double PiecewiseLinearFamily::slope(double x) const {
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("argument outside [0,1]");
  const std::size_t m = xs_.size();
  if (m < 4 || x < xs_[1] || x >= xs_[m - 2]) throw TruncationError("point beyond the generated breakpoints");
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin()) - 1;
  return (ys_[i + 1] - ys_[i]) / (xs_[i + 1] - xs_[i]);
}

double PiecewiseLinearFamily::inverse(double y) const {
  if (!(y >= 0.0 && y <= 1.0)) throw DomainError("argument outside [0,1]");
  if (y == 0.0 || y == 1.0) return y;
  const std::size_t m = ys_.size();
  if (m < 4 || y < ys_[1] || y > ys_[m - 2]) throw TruncationError("point beyond the generated breakpoints");
  const std::size_t i = static_cast<std::size_t>(std::upper_bound(ys_.begin(), ys_.end(), y) - ys_.begin()) - 1;
  if (y == ys_[i]) return xs_[i];
  const double t = (y - ys_[i]) / (ys_[i + 1] - ys_[i]);
  return xs_[i] + t * (xs_[i + 1] - xs_[i]);
}

}  // namespace spectra
