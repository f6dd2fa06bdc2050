#pragma once

#include <string>
#include <vector>

#include "spectra/report.hpp"

namespace spectra {

struct PlotOptions {
  int size = 640;
  bool show_sigma_A = true;
};

/// Complex-plane picture of sigma(T): annuli as shaded rings, circles as
/// strokes, eigenvalues as markers and an optional advisory cloud as faint dots.
std::string render_svg(const SpectrumReport& r, const std::vector<Complex>& cloud = {}, const PlotOptions& opts = {});

}  // namespace spectra
