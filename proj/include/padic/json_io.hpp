#pragma once

#include <string>

#include "padic/height.hpp"

namespace padic {

/// {"p", "valuation", "precision", "digits", "text", "diagnostics"} where
/// precision is absolute and digits start at the valuation.
std::string height_to_json(const HeightResult& r, bool with_diagnostics = true);

/// Inverse of height_to_json for the value part.
PadicNumber padic_number_from_json(const std::string& text);

}  // namespace padic
