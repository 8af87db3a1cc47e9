#ifndef WEYLBEC_FERMIARC_HPP
#define WEYLBEC_FERMIARC_HPP

#include <array>
#include <vector>

#include "weylbec/edge.hpp"
#include "weylbec/expr.hpp"
#include "weylbec/weyl.hpp"

namespace weylbec {

/// One connected component of F \ pi(W) = b^{-1}(0) restricted to |a| < 1,
/// as an oriented polyline. Arc components start and end at points of
/// pi(W); Circle components close up on themselves (last vertex joins the
/// first). Vertices are wrapped to [0, 2pi); consumers take minimal-image
/// differences.
struct FermiArcComponent {
  enum class Kind { Arc, Circle };
  Kind kind = Kind::Arc;
  std::vector<std::array<double, 2>> polyline;
  int epsilon = 0;  // sign of c_f along the component
};

/// Marching-squares contour of b = 0 on a grid_n^2 torus grid, masked to
/// |a| < 1, chained into components. Open ends snap to the nearest point of
/// pi(W) within 3 grid cells; an unsnappable end raises DanglingEndpoint.
std::vector<FermiArcComponent> extract_fermi_arcs(const SurfacePair& s, const WeylSet& w,
                                                  int grid_n = 512);

/// Sign of c_f(t) = (-db/dkx f_y' + db/dky f_x') / |grad b|^2 evaluated at
/// interior samples of the component; all samples must agree.
int component_sign(const SurfacePair& s, const FermiArcComponent& comp);

/// Signed transversal intersection count of the component with a loop; a
/// crossing counts +1 when (component tangent, loop tangent) is a
/// positively oriented frame of T^2.
int intersection_number(const FermiArcComponent& comp, const Loop& loop);

}  // namespace weylbec

#endif
