#ifndef ISOPROFILE_TRANSPORT_MAP_HPP
#define ISOPROFILE_TRANSPORT_MAP_HPP

#include <cstdint>

#include "isoprofile/convex_body.hpp"

namespace isoprofile {

/// Radial bilipschitz map between two bodies sharing the interior ball
/// B(0, 2*r_core).  Both bodies are stored re-centered at their Chebyshev
/// centers; apply/apply_inverse work in those centered coordinates.
///
/// The map fixes B(0, r_core) pointwise and interpolates radially outside:
///   f(x) = [r + (|x| - r) * (rho_t(u) - r)/(rho_s(u) - r)] * u,  u = x/|x|.
struct TransportMap {
  TransportMap(ConvexBody src, ConvexBody tgt, double r, double R)
      : source(std::move(src)), target(std::move(tgt)), r_core(r),
        outer_radius(R) {}

  ConvexBody source;
  ConvexBody target;
  double r_core = 0.0;
  /// Radius of a ball about the origin containing both bodies.
  double outer_radius = 0.0;
  /// Diagnostic table of sampled (angle, rho_source, rho_target); not used
  /// for evaluation, which is exact.
  std::vector<std::array<double, 3>> direction_cache;
};

/// r_core = half the smaller inradius after centering both bodies.
/// Throws NoCommonCore if that is <= 1e-9.
TransportMap build_map(const ConvexBody& source, const ConvexBody& target);

Vector apply(const TransportMap& map, const Vector& x);
Vector apply_inverse(const TransportMap& map, const Vector& y);

/// 1 + (R/r)(R/r - 1)((R/r)^2 + 1): upper bound for Lip(f) and Lip(f^{-1})
/// when B(0,2r) lies in both bodies and both lie in B(0,R).
double analytic_lip_bound(double r, double R);

struct DilatationEstimate {
  double lip_forward = 1.0;
  double lip_inverse = 1.0;
};

/// Sampled sup of |f(x)-f(y)|/|x-y| over uniform pairs and near-coincident
/// clusters (separations 1e-6..1e-3 of the source scale).
DilatationEstimate empirical_lip(const TransportMap& map, int n_pairs,
                                 std::uint64_t seed, int workers = 1);

/// log(max dilatation) of the constructed map: an upper bound for the
/// Lipschitz distance between the two bodies.
double lipschitz_distance_upper(const ConvexBody& source,
                                const ConvexBody& target, int n_pairs,
                                std::uint64_t seed, int workers = 1);

struct PushforwardResult {
  std::vector<Vector> polygon;  // image boundary, densified
  double volume = 0.0;
  double perimeter = 0.0;
};

/// Image of a polygonal region (2D, CCW boundary in centered source
/// coordinates) under the map.  Edges are densified before mapping since the
/// map is only piecewise-smooth radially.
PushforwardResult pushforward_region(const TransportMap& map,
                                     const std::vector<Vector>& polygon,
                                     int points_per_edge = 256);

struct MapDiagnostics {
  double r_core = 0.0;
  double outer_radius = 0.0;
  double analytic_bound = 0.0;
  double lip_forward = 0.0;
  double lip_inverse = 0.0;
  double dl_upper = 0.0;
};

MapDiagnostics map_diagnostics(const ConvexBody& source,
                               const ConvexBody& target, int n_pairs,
                               std::uint64_t seed, int workers = 1);

}  // namespace isoprofile

#endif
