// weylbec: bulk topological data, edge spectra and the homological
// bulk-edge correspondence for local-form Weyl semimetal models.
//
// Subcommands:
//   weyl           Weyl points, charges and the assumption report
//   arcs           Fermi-arc components with orientation signs
//   edge-spectrum  midgap spectrum of the truncated edge operator on a loop
//   verify         the three homology coefficient vectors and the verdict

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "weylbec/correspondence.hpp"
#include "weylbec/errors.hpp"
#include "weylbec/presets.hpp"
#include "weylbec/report_io.hpp"
#include "weylbec/torus.hpp"

namespace {

using namespace weylbec;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitAssumption = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitConfig = 4;

struct RunConfig {
  std::string model;  // preset name
  std::string a_text, b_text;
  std::string config_file;
  std::string model_name = "custom";
  int grid = 512;
  int sites = 64;
  int samples = 720;
  std::string base;    // "kx0,ky0" as expressions, e.g. "pi/4,7*pi/4"
  double radius = -1;  // disc radius override
  std::string flow = "analytic";
  std::string out = ".";
  std::string loop;  // edge-spectrum only

  BasisOverrides basis;
  SurfacePair surfaces;
};

double parse_angle(const std::string& text) {
  Expr e = parse_expr(text);
  return e.eval(0.0, 0.0);
}

std::array<double, 2> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("expected two comma-separated values, got '" + text + "'");
  return {parse_angle(text.substr(0, comma)), parse_angle(text.substr(comma + 1))};
}

void load_config_file(RunConfig& cfg) {
  std::ifstream in(cfg.config_file);
  if (!in) throw ConfigError("cannot open config file " + cfg.config_file);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad config file: " + std::string(e.what()));
  }
  if (j.contains("name")) cfg.model_name = j["name"].get<std::string>();
  if (j.contains("a")) cfg.a_text = j["a"].get<std::string>();
  if (j.contains("b")) cfg.b_text = j["b"].get<std::string>();
  if (j.contains("grid")) cfg.grid = j["grid"].get<int>();
  if (j.contains("sites")) cfg.sites = j["sites"].get<int>();
  if (j.contains("samples")) cfg.samples = j["samples"].get<int>();
  if (j.contains("flow")) cfg.flow = j["flow"].get<std::string>();
  if (j.contains("base")) {
    auto b = j["base"];
    cfg.basis.base_point = {{b.at(0).get<double>(), b.at(1).get<double>()}};
  }
  if (j.contains("radius")) cfg.basis.disc_radius = j["radius"].get<double>();
}

void resolve_model(RunConfig& cfg) {
  if (!cfg.config_file.empty()) load_config_file(cfg);
  if (!cfg.model.empty()) {
    auto preset = find_preset(cfg.model);
    if (!preset) throw ConfigError("unknown model preset '" + cfg.model + "'");
    cfg.model_name = preset->name;
    cfg.a_text = preset->a_text;
    cfg.b_text = preset->b_text;
    if (!cfg.basis.base_point && preset->basis.base_point)
      cfg.basis.base_point = preset->basis.base_point;
    if (!cfg.basis.wbar_order && preset->basis.wbar_order)
      cfg.basis.wbar_order = preset->basis.wbar_order;
  }
  if (cfg.a_text.empty() || cfg.b_text.empty())
    throw ConfigError("no model: give --model, --config, or both --a and --b");
  if (!cfg.base.empty()) cfg.basis.base_point = parse_pair(cfg.base);
  if (cfg.radius > 0) cfg.basis.disc_radius = cfg.radius;
  if (cfg.flow != "analytic" && cfg.flow != "numeric")
    throw ConfigError("--flow must be 'analytic' or 'numeric'");
  if (cfg.grid < 64 || cfg.sites < 2 || cfg.samples < 8)
    throw ConfigError("grid, sites and samples must be at least 64, 2 and 8");
  cfg.surfaces = SurfacePair::parse(cfg.a_text, cfg.b_text);
}

void write_file(const std::string& dir, const std::string& name, const std::string& content) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << content;
}

double sphere_radius_for(const WeylSet& w) {
  double min_3d = std::numbers::pi;
  for (std::size_t i = 0; i < w.points.size(); ++i)
    for (std::size_t j = i + 1; j < w.points.size(); ++j) {
      const auto& p = w.points[i];
      const auto& q = w.points[j];
      min_3d = std::min(min_3d,
                        std::hypot(torus_dist(p.kx, p.ky, q.kx, q.ky), wrap_diff(p.kz, q.kz)));
    }
  return std::min(0.2, 0.45 * min_3d);
}

int cmd_weyl(RunConfig& cfg) {
  resolve_model(cfg);
  AssumptionReport report = check_assumptions(cfg.surfaces, cfg.grid);
  WeylSet w = report.weyl;
  if (report.all_passed() && !w.points.empty()) {
    const BulkModel model = BulkModel::local_form(cfg.surfaces);
    const double rho = sphere_radius_for(w);
    for (auto& p : w.points) p.charge = chern_sphere(model, p, rho);
  }
  write_file(cfg.out, "weyl.json", weyl_json(w, report));
  if (!report.all_passed()) {
    std::cerr << "assumption (" << report.failed_clause() << ") failed\n";
    return kExitAssumption;
  }
  std::cout << w.points.size() << " Weyl points, " << w.groups.size()
            << " projected; report written to " << cfg.out << "/weyl.json\n";
  return kExitPass;
}

int cmd_arcs(RunConfig& cfg) {
  resolve_model(cfg);
  WeylSet w = detect_weyl_points(cfg.surfaces, cfg.grid);
  auto arcs = extract_fermi_arcs(cfg.surfaces, w, cfg.grid);
  write_file(cfg.out, "arcs.csv", arcs_csv(arcs));
  write_file(cfg.out, "arcs.json", arcs_json(arcs));
  std::cout << arcs.size() << " components written to " << cfg.out << "/arcs.{csv,json}\n";
  return kExitPass;
}

int cmd_edge_spectrum(RunConfig& cfg) {
  resolve_model(cfg);
  Loop loop = [&]() {
    const std::string& spec = cfg.loop;
    if (spec.empty() || spec.rfind("x:", 0) == 0)
      return Loop::horizontal(cfg.surfaces, spec.empty() ? 0.0 : parse_angle(spec.substr(2)),
                              cfg.samples);
    if (spec.rfind("y:", 0) == 0)
      return Loop::vertical(cfg.surfaces, parse_angle(spec.substr(2)), cfg.samples);
    if (spec.rfind("circle:", 0) == 0) {
      const std::string rest = spec.substr(7);
      const auto c1 = rest.find(',');
      const auto c2 = rest.find(',', c1 + 1);
      if (c1 == std::string::npos || c2 == std::string::npos)
        throw ConfigError("--loop circle:<cx>,<cy>,<r>");
      return Loop::circle(cfg.surfaces, parse_angle(rest.substr(0, c1)),
                          parse_angle(rest.substr(c1 + 1, c2 - c1 - 1)),
                          parse_angle(rest.substr(c2 + 1)), cfg.samples);
    }
    throw ConfigError("--loop must be x:<ky0>, y:<kx0> or circle:<cx>,<cy>,<r>");
  }();
  write_file(cfg.out, "spectrum.csv", spectrum_csv(loop, cfg.sites));
  std::cout << "spectrum along " << loop.label << " written to " << cfg.out << "/spectrum.csv\n";
  return kExitPass;
}

int cmd_verify(RunConfig& cfg) {
  resolve_model(cfg);
  VerifyOptions opt;
  opt.grid_n = cfg.grid;
  opt.n_sites = cfg.sites;
  opt.loop_samples = cfg.samples;
  opt.flow = cfg.flow == "numeric" ? FlowMethod::Numeric : FlowMethod::Analytic;
  opt.basis = cfg.basis;
  BecReport rep = verify_bec(cfg.surfaces, opt);
  write_file(cfg.out, "bec_report.json", bec_report_json(rep, cfg.model_name));
  std::cout << "bulk  " << rep.bulk.str() << "\n"
            << "edge  " << rep.edge.str() << "\n"
            << "fermi " << rep.fermi.str() << "\n"
            << "verdict: " << rep.verdict() << " (report in " << cfg.out << "/bec_report.json)\n";
  return rep.passed ? kExitPass : kExitFail;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--model", cfg.model, "preset: example1|example1-alt|example2|example3|qwz:<n>:<u>");
  cmd->add_option("--a", cfg.a_text, "expression a(kx, ky)");
  cmd->add_option("--b", cfg.b_text, "expression b(kx, ky)");
  cmd->add_option("--config", cfg.config_file, "JSON config with fields name, a, b, ...");
  cmd->add_option("--grid", cfg.grid, "torus grid resolution");
  cmd->add_option("--sites", cfg.sites, "edge chain length");
  cmd->add_option("--samples", cfg.samples, "loop samples");
  cmd->add_option("--base", cfg.base, "base point override 'kx0,ky0' (pi allowed)");
  cmd->add_option("--radius", cfg.radius, "disc radius override");
  cmd->add_option("--flow", cfg.flow, "spectral flow method: analytic|numeric");
  cmd->add_option("--out", cfg.out, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bulk-edge correspondence toolkit for local-form Weyl semimetals"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* weyl = app.add_subcommand("weyl", "locate Weyl points and check the model assumptions");
  add_common_flags(weyl, cfg);
  auto* arcs = app.add_subcommand("arcs", "extract Fermi-arc components");
  add_common_flags(arcs, cfg);
  auto* spectrum = app.add_subcommand("edge-spectrum", "midgap edge spectrum along a loop");
  add_common_flags(spectrum, cfg);
  spectrum->add_option("--loop", cfg.loop, "x:<ky0> | y:<kx0> | circle:<cx>,<cy>,<r>");
  auto* verify = app.add_subcommand("verify", "verify the bulk-edge correspondence");
  add_common_flags(verify, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (weyl->parsed()) return cmd_weyl(cfg);
    if (arcs->parsed()) return cmd_arcs(cfg);
    if (spectrum->parsed()) return cmd_edge_spectrum(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const AssumptionViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitAssumption;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitConfig;
}
