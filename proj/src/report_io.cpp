#include "weylbec/report_io.hpp"

#include <charconv>

#include <json.hpp>

#include "weylbec/model.hpp"
#include "weylbec/parallel.hpp"

namespace weylbec {

namespace {

using json = nlohmann::ordered_json;

json point2(double x, double y) { return json::array({x, y}); }

json clause_json(const ClauseResult& c) {
  json j;
  j["passed"] = c.passed;
  if (!c.detail.empty()) j["detail"] = c.detail;
  if (!c.witnesses.empty()) {
    json w = json::array();
    for (const auto& p : c.witnesses) w.push_back(point2(p[0], p[1]));
    j["witnesses"] = w;
  }
  return j;
}

json weyl_points_json(const WeylSet& w) {
  json pts = json::array();
  for (const auto& p : w.points) {
    json jp;
    jp["kx"] = p.kx;
    jp["ky"] = p.ky;
    jp["kz"] = p.kz;
    jp["charge"] = p.charge;
    pts.push_back(jp);
  }
  return pts;
}

json groups_json(const WeylSet& w) {
  json gs = json::array();
  for (const auto& g : w.groups) {
    json jg;
    jg["kx"] = g.kx;
    jg["ky"] = g.ky;
    jg["members"] = g.members;
    gs.push_back(jg);
  }
  return gs;
}

json vector_json(const HomologyVector& v) {
  json j = json::array();
  j.push_back(v.qx);
  j.push_back(v.qy);
  for (int q : v.qi) j.push_back(q);
  return j;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string weyl_json(const WeylSet& w, const AssumptionReport& report) {
  json j;
  j["points"] = weyl_points_json(w);
  j["projected_groups"] = groups_json(w);
  json a;
  a["finiteness"] = clause_json(report.finiteness);
  a["jacobian_near_w"] = clause_json(report.jacobian_near_w);
  a["regular_value"] = clause_json(report.regular_value);
  a["base_point_found"] = clause_json(report.base_point_found);
  a["base_point"] = point2(report.base_point[0], report.base_point[1]);
  a["grid_n"] = report.grid_n;
  a["neighbourhood_radius"] = report.neighbourhood_radius;
  a["tolerance"] = report.tolerance;
  a["all_passed"] = report.all_passed();
  j["assumptions"] = a;
  return j.dump(2) + "\n";
}

std::string arcs_json(const std::vector<FermiArcComponent>& arcs) {
  json j = json::array();
  for (const auto& c : arcs) {
    json jc;
    jc["kind"] = c.kind == FermiArcComponent::Kind::Arc ? "arc" : "circle";
    jc["epsilon"] = c.epsilon;
    json poly = json::array();
    for (const auto& p : c.polyline) poly.push_back(point2(p[0], p[1]));
    jc["polyline"] = poly;
    j.push_back(jc);
  }
  return json{{"components", j}}.dump(2) + "\n";
}

std::string arcs_csv(const std::vector<FermiArcComponent>& arcs) {
  std::string out = "component_id,kind,epsilon,kx,ky\n";
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const char* kind = arcs[i].kind == FermiArcComponent::Kind::Arc ? "arc" : "circle";
    for (const auto& p : arcs[i].polyline) {
      out += std::to_string(i);
      out += ',';
      out += kind;
      out += ',';
      out += std::to_string(arcs[i].epsilon);
      out += ',';
      out += format_double(p[0]);
      out += ',';
      out += format_double(p[1]);
      out += '\n';
    }
  }
  return out;
}

std::string spectrum_csv(const Loop& loop, int n_sites) {
  const int m = loop.loop_samples();
  std::vector<std::string> rows(m);
  detail::parallel_for(static_cast<std::size_t>(m), [&](std::size_t i) {
    const auto& p = loop.pts[i];
    EdgeEigenSystem sys = edge_spectrum(build_edge_chain(p.a, p.b, n_sites));
    std::string r;
    for (int k = 0; k < sys.dim; ++k) {
      if (std::abs(sys.eigenvalues[k]) >= p.gap) continue;
      r += std::to_string(i);
      r += ',';
      r += format_double(static_cast<double>(i) / m);
      r += ',';
      r += format_double(sys.eigenvalues[k]);
      r += ',';
      r += format_double(sys.left_weight[k]);
      r += '\n';
    }
    rows[i] = std::move(r);
  });
  std::string out = "sample_index,s,eigenvalue,left_weight\n";
  for (auto& r : rows) out += r;
  return out;
}

std::string bec_report_json(const BecReport& rep, const std::string& model_name) {
  json j;
  j["model"] = model_name;
  j["verdict"] = rep.verdict();
  json basis;
  basis["base_point"] = point2(rep.basis.base_point[0], rep.basis.base_point[1]);
  json wb = json::array();
  for (const auto& p : rep.basis.wbar) wb.push_back(point2(p[0], p[1]));
  basis["wbar"] = wb;
  basis["disc_radii"] = rep.basis.radii;
  basis["loop_samples"] = rep.basis.loop_samples;
  j["basis"] = basis;

  json vectors;
  vectors["bulk"] = vector_json(rep.bulk);
  vectors["edge"] = vector_json(rep.edge);
  vectors["fermi"] = vector_json(rep.fermi);
  j["vectors"] = vectors;

  json verdicts;
  verdicts["bulk_equals_edge"] = rep.bulk_edge_equal;
  verdicts["edge_equals_fermi"] = rep.edge_fermi_equal;
  verdicts["charge_sum_zero"] = rep.charge_sum_zero;
  verdicts["fiber_sums_match"] = rep.fiber_sums_match;
  verdicts["fermi_arc_recovered"] = rep.fermi_arc_recovered;
  j["verdicts"] = verdicts;

  json diag;
  diag["tube_chern"] = rep.tube_chern;
  diag["sphere_radius"] = rep.sphere_radius;
  diag["hausdorff"] = rep.hausdorff;
  diag["hausdorff_bound"] = rep.hausdorff_bound;
  j["diagnostics"] = diag;

  j["weyl_points"] = weyl_points_json(rep.weyl);
  json arcs = json::array();
  for (const auto& c : rep.arcs) {
    json jc;
    jc["kind"] = c.kind == FermiArcComponent::Kind::Arc ? "arc" : "circle";
    jc["epsilon"] = c.epsilon;
    json poly = json::array();
    for (const auto& p : c.polyline) poly.push_back(point2(p[0], p[1]));
    jc["polyline"] = poly;
    arcs.push_back(jc);
  }
  j["arcs"] = arcs;
  return j.dump(2) + "\n";
}

}  // namespace weylbec
