#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"

namespace spectra {

using Complex = std::complex<double>;

/// Closed annulus r_in <= |z| <= r_out; r_in == r_out is a circle.
struct Annulus {
  double r_in = 0.0;
  double r_out = 0.0;
  friend bool operator==(const Annulus&, const Annulus&) = default;
};

struct SpectralPoint {
  Complex value;
  int multiplicity = 1;
  std::string provenance;
};

/// Finite union of closed annuli and isolated points, kept in normal form:
/// annuli sorted and pairwise separated, no point inside an annulus, no
/// duplicate points (points sorted by real then imaginary part).
class SpectralSet {
 public:
  static constexpr double kSlack = 1e-12;

  SpectralSet() = default;
  /// Normalizes; negative or non-finite radii raise DomainError.
  SpectralSet(std::vector<Annulus> annuli, std::vector<SpectralPoint> points = {});

  static SpectralSet annulus(double r_in, double r_out) { return SpectralSet({{r_in, r_out}}); }
  static SpectralSet circle(double r) { return SpectralSet({{r, r}}); }
  static SpectralSet point(Complex z, int multiplicity = 1, std::string provenance = {}) {
    return SpectralSet({}, {{z, multiplicity, std::move(provenance)}});
  }

  const std::vector<Annulus>& annuli() const noexcept { return annuli_; }
  const std::vector<SpectralPoint>& points() const noexcept { return points_; }
  bool empty() const noexcept { return annuli_.empty() && points_.empty(); }

  bool contains(Complex z) const;
  bool is_rotation_invariant() const noexcept { return points_.empty(); }

  /// Largest and smallest modulus; 0 for the empty set.
  double max_modulus() const;
  double min_modulus() const;

  friend bool operator==(const SpectralSet& a, const SpectralSet& b);

 private:
  void normalize();

  std::vector<Annulus> annuli_;
  std::vector<SpectralPoint> points_;
};

SpectralSet normalize(const SpectralSet& s);
SpectralSet set_union(const SpectralSet& s, const SpectralSet& t);
SpectralSet set_intersection(const SpectralSet& s, const SpectralSet& t);
/// Every annulus of s lies in an annulus of t and every point of s belongs to t.
bool is_subset(const SpectralSet& s, const SpectralSet& t);
SpectralSet scale(const SpectralSet& s, Complex c);
/// z -> 1/z; DomainError when 0 belongs to s.
SpectralSet invert(const SpectralSet& s);
/// Preimage under z -> z^2 (radii r -> sqrt(r), points to both square roots).
SpectralSet square_root_preimage(const SpectralSet& s);

/// Approximate equality: radii and points within `tol` (relative to max(1,|.|)).
bool approx_equal(const SpectralSet& a, const SpectralSet& b, double tol);

nlohmann::ordered_json to_json(const SpectralSet& s);
/// Throws SchemaError rooted at `pointer`.
SpectralSet spectral_set_from_json(const nlohmann::json& j, const std::string& pointer);

/// Compact human-readable form, e.g. "|z|=0.5 U [1,2] U {5 (x2)}".
std::string describe(const SpectralSet& s);

}  // namespace spectra
