#pragma once

#include "spectra/funcmodel.hpp"
#include "spectra/report.hpp"
#include "spectra/scenario.hpp"

namespace spectra {

/// Builds and validates phi and w for a scenario.
struct ScenarioModels {
  HomeoModel phi;
  WeightModel w;
};
ScenarioModels build_models(const Scenario& scn);

/// Dispatches on family, orientation and the structure of phi.
SpectrumReport compute_spectra(const Scenario& scn);

SpectrumReport spectra_C1(const Scenario& scn);
SpectrumReport spectra_Cn(const Scenario& scn);
SpectrumReport spectra_reversing(const Scenario& scn);
SpectrumReport spectra_Lip(const Scenario& scn);
SpectrumReport spectra_Sobolev(const Scenario& scn);

/// Checks the structural identities every report must satisfy; returns a
/// description of each violation.
std::vector<std::string> report_violations(const SpectrumReport& r);

}  // namespace spectra
