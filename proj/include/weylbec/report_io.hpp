#ifndef WEYLBEC_REPORT_IO_HPP
#define WEYLBEC_REPORT_IO_HPP

#include <string>

#include "weylbec/correspondence.hpp"
#include "weylbec/edge.hpp"
#include "weylbec/weyl.hpp"

namespace weylbec {

/// Shortest round-trip decimal form of a double; used everywhere a float
/// reaches a report so identical runs produce byte-identical files.
std::string format_double(double v);

/// weyl.json: points with charges, projected groups, assumption report.
std::string weyl_json(const WeylSet& w, const AssumptionReport& report);

/// arcs.json and arcs.csv (component_id, kind, epsilon, kx, ky).
std::string arcs_json(const std::vector<FermiArcComponent>& arcs);
std::string arcs_csv(const std::vector<FermiArcComponent>& arcs);

/// spectrum.csv rows (sample_index, s, eigenvalue, left_weight) for the
/// midgap states along a loop.
std::string spectrum_csv(const Loop& loop, int n_sites);

/// bec_report.json.
std::string bec_report_json(const BecReport& rep, const std::string& model_name);

}  // namespace weylbec

#endif
