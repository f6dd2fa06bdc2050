#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace spectra {

struct CatalogEntry {
  std::string name;
  nlohmann::ordered_json scenario;  ///< scenario file contents, name and description included
};

/// Bundled scenarios in a fixed order.
const std::vector<CatalogEntry>& list_examples();

}  // namespace spectra
