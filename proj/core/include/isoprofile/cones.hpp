#ifndef ISOPROFILE_CONES_HPP
#define ISOPROFILE_CONES_HPP

#include <optional>

#include "isoprofile/convex_body.hpp"

namespace isoprofile {

/// Polyhedral convex cone with apex p, described by the active half-spaces
/// at p (offsets equal <normal, p>, so the apex is on every wall).
struct Cone {
  int dim = 0;
  Vector apex;
  std::vector<Halfspace> halfspaces;
  /// H^n measure of ∂B(apex,1) ∩ int(cone), once computed.
  std::optional<double> solid_angle;
};

enum class AngleMethod { Exact2D, Exact3D, MonteCarlo };

/// Tangent cone of a polytope at a boundary point: exactly the constraints
/// active at p (tolerance 1e-9 scaled by the circumradius).  At a facet
/// interior point this is a half-space; at a vertex, the full vertex cone.
/// Throws InteriorPoint if nothing is active.
Cone tangent_cone(const ConvexBody& body, const Vector& p);

/// Exact2D: wedge angle.  Exact3D: spherical polygon area by angular excess
/// (falls back to Monte Carlo for degenerate normal configurations).
/// MonteCarlo: sphere-sampling fraction times the sphere area.
ValueWithError solid_angle(const Cone& cone, AngleMethod method,
                           const MonteCarloParams& mc = {});

/// Exact solid angle when available in this dimension, Monte Carlo otherwise.
double solid_angle_auto(const Cone& cone, const MonteCarloParams& mc = {});

/// I_K(v) = alpha^{1/(n+1)} (n+1)^{n/(n+1)} v^{n/(n+1)} for a cone of solid
/// angle alpha in R^{n+1}.
double cone_profile(double alpha, int n, double v);

struct GeodesicBall {
  double radius = 0.0;
  double perimeter = 0.0;
};

/// Geodesic ball about the apex with volume v: radius solves
/// alpha * rho^{n+1} / (n+1) = v and the perimeter is alpha * rho^n.
GeodesicBall geodesic_ball_in_cone(const Cone& cone, double v,
                                   const MonteCarloParams& mc = {});

struct VertexAngle {
  int vertex_index = -1;
  Vector vertex;
  double alpha = 0.0;
  bool is_min = false;
};

struct MinAngleResult {
  int n = 1;  // ambient dimension is n + 1
  int vertex_index = -1;
  Vector vertex;
  double alpha_min = 0.0;
  std::vector<VertexAngle> table;
  /// I_{C_min}(v) for the minimal tangent cone.
  double profile(double v) const { return cone_profile(alpha_min, n, v); }
};

/// Enumerates vertex tangent cones, returns the argmin of the solid angle
/// (lexicographic vertex order breaks ties).  Facet- and edge-interior cones
/// of a polytope have strictly larger angle; this is asserted at runtime
/// against 32 boundary probes rather than assumed.
MinAngleResult min_solid_angle_vertex(const ConvexBody& body,
                                      const MonteCarloParams& mc = {},
                                      int workers = 1);

struct SemicontinuityReport {
  double alpha_at_p = 0.0;
  std::vector<double> alpha_sequence;
  bool pass = false;
};

/// Checks alpha(p) <= min_i alpha(p_i) + 1e-9 along boundary points
/// approaching p.
SemicontinuityReport semicontinuity_probe(const ConvexBody& body,
                                          const Vector& p,
                                          const std::vector<Vector>& approach,
                                          const MonteCarloParams& mc = {});

}  // namespace isoprofile

#endif
