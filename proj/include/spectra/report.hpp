#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "spectra/dynamics.hpp"
#include "spectra/scenario.hpp"
#include "spectra/spectral_set.hpp"

namespace spectra {

struct Eigenvalue {
  Complex value;
  int multiplicity = 1;
  std::string source;
};

/// Which rule produced a component of a spectral set.
struct ProvenanceEntry {
  std::string component;  ///< "sigma2", "sigma2_adjoint", "sigma_A", "eigenvalues", "R1", ...
  std::string rule;       ///< e.g. "circle:fixed-point-multiplier"
  std::string detail;
};

/// Asymptotic data of one invariant interval class (Lipschitz engine).
struct LipClassInfo {
  std::string label;
  double slope0 = 0.0, slope1 = 0.0;
  double e0 = 0.0, e1 = 0.0;
  double spread0 = 0.0, spread1 = 0.0;
  std::string snapped0, snapped1;  ///< "p/q" when the slope was snapped
};

/// Classification of the open band between two consecutive class exponents.
struct LipBandInfo {
  double r_lo = 0.0, r_hi = 0.0, r_test = 0.0;
  std::string classification;  ///< "sigma1", "sigma2_only", "sigma2_adjoint_only", "gap"
  std::vector<std::string> E1, E2, E3;
};

struct SpectrumReport {
  std::string engine;
  SpaceSpec space;
  std::string multiplier;

  SpectralSet sigma;
  std::array<SpectralSet, 5> sigma_i;  ///< sigma_1 .. sigma_5
  SpectralSet sigma2_adjoint;
  SpectralSet sigma_A;
  SpectralSet sigma_ap;
  std::vector<Eigenvalue> eigenvalues;
  double R1 = 0.0;
  double R2 = 0.0;

  std::vector<ProvenanceEntry> provenance;
  std::vector<std::string> warnings;
  std::vector<LipClassInfo> lip_classes;
  std::vector<LipBandInfo> lip_bands;
  std::optional<FixedPointAnalysis> analysis;
  std::optional<PeriodTwoAnalysis> period_two;

  const SpectralSet& sigma_k(int k) const { return sigma_i.at(static_cast<std::size_t>(k - 1)); }
};

}  // namespace spectra
