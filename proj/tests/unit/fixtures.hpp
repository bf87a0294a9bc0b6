#pragma once

#include <fstream>
#include <iterator>
#include <string>

#include "spdc/dispersion.hpp"

namespace fixtures {

// The bundled database, loaded once.
inline const spdc::CoefficientDatabase& db() {
  static const spdc::CoefficientDatabase instance = spdc::load_database(SPDC_DEFAULT_DB);
  return instance;
}

inline std::string bundled_text() {
  static const std::string text = [] {
    std::ifstream in(SPDC_DEFAULT_DB, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }();
  return text;
}

}  // namespace fixtures
