#include "weylbec/presets.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

namespace weylbec {

namespace {

using std::numbers::pi;

std::optional<ModelPreset> parse_qwz(const std::string& name) {
  // qwz:<n>:<u>
  const auto p1 = name.find(':');
  const auto p2 = name.find(':', p1 + 1);
  if (p2 == std::string::npos) return std::nullopt;
  int n = 0;
  double u = 0.0;
  const char* s1 = name.data() + p1 + 1;
  const char* e1 = name.data() + p2;
  if (std::from_chars(s1, e1, n).ptr != e1) return std::nullopt;
  const char* s2 = name.data() + p2 + 1;
  const char* e2 = name.data() + name.size();
  if (std::from_chars(s2, e2, u).ptr != e2) return std::nullopt;

  ModelPreset m;
  m.name = name;
  m.a_text = std::to_string(u) + " + cos(" + std::to_string(n) + "*kx)";
  m.b_text = "sin(" + std::to_string(n) + "*kx)";
  return m;
}

}  // namespace

std::optional<ModelPreset> find_preset(const std::string& name) {
  if (name == "example1") {
    ModelPreset m;
    m.name = name;
    m.a_text = "2 + cos(kx) + cos(ky)";
    m.b_text = "sin(ky)";
    m.basis.base_point = {{0.0, 0.0}};
    return m;
  }
  if (name == "example1-alt") {
    // second documented base point, 'kx0 in (pi/2, 3pi/2) \ {pi}
    ModelPreset m;
    m.name = name;
    m.a_text = "2 + cos(kx) + cos(ky)";
    m.b_text = "sin(ky)";
    m.basis.base_point = {{3.0 * pi / 4.0, 0.0}};
    return m;
  }
  if (name == "example2") {
    ModelPreset m;
    m.name = name;
    m.a_text = "cos(kx) + cos(ky)";
    m.b_text = "sin(ky)";
    m.basis.base_point = {{pi / 4.0, 7.0 * pi / 4.0}};
    m.basis.wbar_order = {{{pi / 2.0, 0.0}, {3.0 * pi / 2.0, 0.0}, {pi / 2.0, pi},
                           {3.0 * pi / 2.0, pi}}};
    return m;
  }
  if (name == "example3") {
    ModelPreset m;
    m.name = name;
    m.a_text = "2 + cos(kx) + cos(ky)";
    m.b_text = "sin(ky) - cos(kx)";
    m.basis.base_point = {{0.0, 0.0}};
    return m;
  }
  if (name.rfind("qwz:", 0) == 0) return parse_qwz(name);
  return std::nullopt;
}

}  // namespace weylbec
