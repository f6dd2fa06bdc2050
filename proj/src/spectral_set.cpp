#include "spectra/spectral_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "spectra/errors.hpp"

namespace spectra {

namespace {

double slack(double r) { return SpectralSet::kSlack * std::max(1.0, r); }

bool same_point(Complex a, Complex b) { return std::abs(a - b) <= slack(std::abs(a)); }

bool in_annulus(const Annulus& a, Complex z) {
  const double r = std::abs(z);
  return r >= a.r_in - slack(a.r_in) && r <= a.r_out + slack(a.r_out);
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

SpectralSet::SpectralSet(std::vector<Annulus> annuli, std::vector<SpectralPoint> points)
    : annuli_(std::move(annuli)), points_(std::move(points)) {
  normalize();
}

void SpectralSet::normalize() {
  for (const auto& a : annuli_) {
    if (!std::isfinite(a.r_in) || !std::isfinite(a.r_out)) throw DomainError("non-finite radius");
    if (a.r_in < 0.0 || a.r_out < 0.0) throw DomainError("negative radius");
    if (a.r_in > a.r_out + slack(a.r_out)) throw DomainError("inner radius exceeds outer radius");
  }
  for (const auto& p : points_)
    if (!std::isfinite(p.value.real()) || !std::isfinite(p.value.imag())) throw DomainError("non-finite point");

  std::sort(annuli_.begin(), annuli_.end(), [](const Annulus& a, const Annulus& b) {
    return a.r_in < b.r_in || (a.r_in == b.r_in && a.r_out < b.r_out);
  });
  std::vector<Annulus> merged;
  for (Annulus a : annuli_) {
    a.r_out = std::max(a.r_out, a.r_in);
    if (!merged.empty() && a.r_in <= merged.back().r_out + slack(merged.back().r_out)) {
      merged.back().r_out = std::max(merged.back().r_out, a.r_out);
    } else {
      merged.push_back(a);
    }
  }
  annuli_ = std::move(merged);

  std::vector<SpectralPoint> kept;
  for (const auto& p : points_) {
    if (std::any_of(annuli_.begin(), annuli_.end(), [&](const Annulus& a) { return in_annulus(a, p.value); })) continue;
    auto dup = std::find_if(kept.begin(), kept.end(), [&](const SpectralPoint& q) { return same_point(q.value, p.value); });
    if (dup != kept.end()) {
      if (p.multiplicity > dup->multiplicity) {
        dup->multiplicity = p.multiplicity;
        dup->provenance = p.provenance;
      }
      continue;
    }
    kept.push_back(p);
  }
  std::sort(kept.begin(), kept.end(), [](const SpectralPoint& a, const SpectralPoint& b) {
    return a.value.real() < b.value.real() || (a.value.real() == b.value.real() && a.value.imag() < b.value.imag());
  });
  points_ = std::move(kept);
}

bool SpectralSet::contains(Complex z) const {
  for (const auto& a : annuli_)
    if (in_annulus(a, z)) return true;
  for (const auto& p : points_)
    if (same_point(p.value, z)) return true;
  return false;
}

double SpectralSet::max_modulus() const {
  double m = 0.0;
  for (const auto& a : annuli_) m = std::max(m, a.r_out);
  for (const auto& p : points_) m = std::max(m, std::abs(p.value));
  return m;
}

double SpectralSet::min_modulus() const {
  if (empty()) return 0.0;
  double m = INFINITY;
  for (const auto& a : annuli_) m = std::min(m, a.r_in);
  for (const auto& p : points_) m = std::min(m, std::abs(p.value));
  return m;
}

bool operator==(const SpectralSet& a, const SpectralSet& b) {
  if (a.annuli_ != b.annuli_ || a.points_.size() != b.points_.size()) return false;
  for (std::size_t i = 0; i < a.points_.size(); ++i)
    if (a.points_[i].value != b.points_[i].value || a.points_[i].multiplicity != b.points_[i].multiplicity) return false;
  return true;
}

SpectralSet normalize(const SpectralSet& s) { return SpectralSet(s.annuli(), s.points()); }

SpectralSet set_union(const SpectralSet& s, const SpectralSet& t) {
  std::vector<Annulus> a = s.annuli();
  a.insert(a.end(), t.annuli().begin(), t.annuli().end());
  std::vector<SpectralPoint> p = s.points();
  p.insert(p.end(), t.points().begin(), t.points().end());
  return SpectralSet(std::move(a), std::move(p));
}

SpectralSet set_intersection(const SpectralSet& s, const SpectralSet& t) {
  std::vector<Annulus> a;
  for (const auto& x : s.annuli()) {
    for (const auto& y : t.annuli()) {
      const double lo = std::max(x.r_in, y.r_in);
      const double hi = std::min(x.r_out, y.r_out);
      if (lo <= hi + slack(hi)) a.push_back({lo, std::max(lo, hi)});
    }
  }
  std::vector<SpectralPoint> p;
  for (const auto& q : s.points())
    if (t.contains(q.value)) p.push_back(q);
  for (const auto& q : t.points())
    if (s.contains(q.value)) p.push_back(q);
  return SpectralSet(std::move(a), std::move(p));
}

bool is_subset(const SpectralSet& s, const SpectralSet& t) {
  for (const auto& a : s.annuli()) {
    const bool inside = std::any_of(t.annuli().begin(), t.annuli().end(), [&](const Annulus& b) {
      return a.r_in >= b.r_in - slack(b.r_in) && a.r_out <= b.r_out + slack(b.r_out);
    });
    if (!inside) return false;
  }
  for (const auto& p : s.points())
    if (!t.contains(p.value)) return false;
  return true;
}

SpectralSet scale(const SpectralSet& s, Complex c) {
  const double m = std::abs(c);
  std::vector<Annulus> a;
  for (const auto& x : s.annuli()) a.push_back({x.r_in * m, x.r_out * m});
  std::vector<SpectralPoint> p = s.points();
  for (auto& q : p) q.value *= c;
  return SpectralSet(std::move(a), std::move(p));
}

SpectralSet invert(const SpectralSet& s) {
  if (s.contains(Complex(0.0, 0.0))) throw DomainError("cannot invert a set containing 0");
  std::vector<Annulus> a;
  for (const auto& x : s.annuli()) a.push_back({1.0 / x.r_out, 1.0 / x.r_in});
  std::vector<SpectralPoint> p = s.points();
  for (auto& q : p) q.value = 1.0 / q.value;
  return SpectralSet(std::move(a), std::move(p));
}

SpectralSet square_root_preimage(const SpectralSet& s) {
  std::vector<Annulus> a;
  for (const auto& x : s.annuli()) a.push_back({std::sqrt(x.r_in), std::sqrt(x.r_out)});
  std::vector<SpectralPoint> p;
  for (const auto& q : s.points()) {
    const Complex r = std::sqrt(q.value);
    p.push_back({r, q.multiplicity, q.provenance});
    if (std::abs(r) > 0.0) p.push_back({-r, q.multiplicity, q.provenance});
  }
  return SpectralSet(std::move(a), std::move(p));
}

bool approx_equal(const SpectralSet& a, const SpectralSet& b, double tol) {
  if (a.annuli().size() != b.annuli().size() || a.points().size() != b.points().size()) return false;
  for (std::size_t i = 0; i < a.annuli().size(); ++i) {
    if (!close(a.annuli()[i].r_in, b.annuli()[i].r_in, tol) || !close(a.annuli()[i].r_out, b.annuli()[i].r_out, tol))
      return false;
  }
  for (const auto& p : a.points()) {
    const bool found = std::any_of(b.points().begin(), b.points().end(), [&](const SpectralPoint& q) {
      return std::abs(p.value - q.value) <= tol * std::max(1.0, std::abs(p.value));
    });
    if (!found) return false;
  }
  return true;
}

nlohmann::ordered_json to_json(const SpectralSet& s) {
  nlohmann::ordered_json j;
  j["annuli"] = nlohmann::ordered_json::array();
  for (const auto& a : s.annuli()) j["annuli"].push_back({a.r_in, a.r_out});
  j["points"] = nlohmann::ordered_json::array();
  for (const auto& p : s.points()) {
    nlohmann::ordered_json q;
    q["re"] = p.value.real();
    q["im"] = p.value.imag();
    q["multiplicity"] = p.multiplicity;
    q["provenance"] = p.provenance;
    j["points"].push_back(q);
  }
  return j;
}

SpectralSet spectral_set_from_json(const nlohmann::json& j, const std::string& pointer) {
  if (!j.is_object()) throw SchemaError(pointer, "expected an object");
  std::vector<Annulus> annuli;
  std::vector<SpectralPoint> points;
  if (j.contains("annuli")) {
    const auto& arr = j.at("annuli");
    if (!arr.is_array()) throw SchemaError(pointer + "/annuli", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& a = arr[i];
      const std::string ap = pointer + "/annuli/" + std::to_string(i);
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
        throw SchemaError(ap, "expected [r_in, r_out]");
      annuli.push_back({a[0].get<double>(), a[1].get<double>()});
    }
  }
  if (j.contains("points")) {
    const auto& arr = j.at("points");
    if (!arr.is_array()) throw SchemaError(pointer + "/points", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const auto& q = arr[i];
      const std::string qp = pointer + "/points/" + std::to_string(i);
      if (!q.is_object() || !q.contains("re") || !q.at("re").is_number())
        throw SchemaError(qp + "/re", "expected a number");
      SpectralPoint p;
      const double im = q.contains("im") && q.at("im").is_number() ? q.at("im").get<double>() : 0.0;
      p.value = Complex(q.at("re").get<double>(), im);
      if (q.contains("multiplicity")) {
        if (!q.at("multiplicity").is_number_integer()) throw SchemaError(qp + "/multiplicity", "expected an integer");
        p.multiplicity = q.at("multiplicity").get<int>();
      }
      if (q.contains("provenance") && q.at("provenance").is_string()) p.provenance = q.at("provenance").get<std::string>();
      points.push_back(std::move(p));
    }
  }
  try {
    return SpectralSet(std::move(annuli), std::move(points));
  } catch (const DomainError& e) {
    throw SchemaError(pointer, e.what());
  }
}

std::string describe(const SpectralSet& s) {
  std::ostringstream os;
  os.precision(10);
  bool first = true;
  for (const auto& a : s.annuli()) {
    if (!first) os << " U ";
    first = false;
    if (a.r_in == a.r_out) os << "|z|=" << a.r_out;
    else os << "[" << a.r_in << "," << a.r_out << "]";
  }
  for (const auto& p : s.points()) {
    if (!first) os << " U ";
    first = false;
    os << "{";
    if (p.value.imag() == 0.0) os << p.value.real();
    else os << p.value.real() << (p.value.imag() < 0 ? "-" : "+") << std::abs(p.value.imag()) << "i";
    if (p.multiplicity > 1) os << " (x" << p.multiplicity << ")";
    os << "}";
  }
  if (first) os << "{}";
  return os.str();
}

}  // namespace spectra
