#ifndef WEYLBEC_PRESETS_HPP
#define WEYLBEC_PRESETS_HPP

#include <optional>
#include <string>

#include "weylbec/correspondence.hpp"
#include "weylbec/expr.hpp"

namespace weylbec {

/// A named model: the surface expressions plus the documented basis
/// choices (base point and ordering of the projected Weyl points).
struct ModelPreset {
  std::string name;
  std::string a_text;
  std::string b_text;
  BasisOverrides basis;

  SurfacePair surfaces() const { return SurfacePair::parse(a_text, b_text); }
};

/// Presets: example1, example1-alt (same surfaces, the second documented
/// base point), example2, example3, and qwz:<n>:<u>.
std::optional<ModelPreset> find_preset(const std::string& name);

}  // namespace weylbec

#endif
