#ifndef ISOPROFILE_CONVEX_BODY_HPP
#define ISOPROFILE_CONVEX_BODY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isoprofile/errors.hpp"
#include "isoprofile/geometry.hpp"

namespace isoprofile {

enum class BodyKind { Polytope, Ball };

/// One constraint {x : <normal, x> <= offset} with |normal| = 1.
struct Halfspace {
  Vector normal;
  double offset;
};

enum class VolumeMethod { Exact2D, Triangulate3D, MonteCarlo };

struct MonteCarloParams {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 1;
};

struct ValueWithError {
  double value = 0.0;
  double error = 0.0;  // 3-sigma estimate; 0 for exact methods
};

/// A compact convex set with nonempty interior, as a polytope (dual vertex +
/// half-space data) or a Euclidean ball.  Immutable after construction and
/// safe to share across threads.
class ConvexBody {
 public:
  /// Convex hull of the given points.  Throws DegenerateInput if the points
  /// are affinely dependent (flat body) or the hull is numerically flat
  /// (inradius < 1e-6 * circumradius).  Supports dim 2 and 3.
  static ConvexBody polytope_from_points(const std::vector<Vector>& points);

  static ConvexBody make_ball(const Vector& center, double radius);

  int dim() const { return dim_; }
  BodyKind kind() const { return kind_; }
  bool is_polytope() const { return kind_ == BodyKind::Polytope; }

  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  /// Triangulated facets, 3D polytopes only (vertex indices).
  const std::vector<std::array<int, 3>>& facet_triangles() const {
    return facet_triangles_;
  }

  const Vector& ball_center() const { return center_; }
  double ball_radius() const { return radius_; }

  const Vector& chebyshev_center() const { return chebyshev_center_; }
  /// Radius of a largest inscribed ball about the Chebyshev center.
  double inradius() const { return inradius_; }
  /// Max distance from the Chebyshev center to the body.
  double circumradius() const { return circumradius_; }

  /// min_i (offset_i - <normal_i, x>) for polytopes, radius - |x - c| for
  /// balls; positive inside, negative outside.
  double margin(const Vector& x) const;
  bool contains(const Vector& x, double tol = 0.0) const {
    return margin(x) >= -tol;
  }
  /// Euclidean distance from x to the body (0 inside).
  double distance_to(const Vector& x) const;
  /// Nearest point of the body.
  Vector project(const Vector& x) const;

  ConvexBody translated(const Vector& t) const;
  /// Dilation about the origin, lambda > 0.  Field-exact: vertices, offsets
  /// and radii are scaled directly, no hull recomputation.
  ConvexBody scaled(double lambda) const;
  /// Translated so the Chebyshev center sits at the origin.
  ConvexBody centered() const { return translated(-chebyshev_center_); }

  void bounding_box(Vector& lo, Vector& hi) const;

  /// Largest r with B(0,r) inside the body (min half-space margin at 0);
  /// negative if the origin is outside.
  double origin_inradius() const;
  /// Smallest R with the body inside B(0,R).
  double origin_circumradius() const;

 private:
  ConvexBody() = default;
  void finish_polytope();

  int dim_ = 0;
  BodyKind kind_ = BodyKind::Polytope;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vector> vertices_;
  std::vector<std::array<int, 3>> facet_triangles_;
  Vector center_;
  double radius_ = 0.0;
  Vector chebyshev_center_;
  double inradius_ = 0.0;
  double circumradius_ = 0.0;
};

/// B_C(x, rho) = B(x, rho) ∩ C.  Holds a reference to the body.
struct MetricBall {
  MetricBall(const ConvexBody& b, Vector x, double rho);
  const ConvexBody& body;
  Vector center;
  double radius;
};

ConvexBody make_polytope(const std::vector<Vector>& points);

/// max_{x in body} <u, x>.
double support_function(const ConvexBody& body, const Vector& u);

/// rho(body, u) = max{lambda >= 0 : lambda*u in body}; origin must be
/// strictly interior.
double radial_function(const ConvexBody& body, const Vector& u);

ConvexBody polar_body(const ConvexBody& body);

/// R^2/r with r, R the in/circum-radius about the origin; a Lipschitz
/// constant for the radial function on the sphere.
double radial_lipschitz_bound(const ConvexBody& body);

ValueWithError volume(const ConvexBody& body, VolumeMethod method,
                      const MonteCarloParams& mc = {});
/// Dimension-appropriate exact volume (Exact2D / Triangulate3D dispatch).
double exact_volume(const ConvexBody& body);

ValueWithError metric_ball_volume(const MetricBall& mb, VolumeMethod method,
                                  const MonteCarloParams& mc = {});
ValueWithError metric_ball_volume(const ConvexBody& body, const Vector& x,
                                  double rho, const MonteCarloParams& mc = {});
/// H^n(∂B(x,rho) ∩ int C): the free boundary a geodesic ball would have.
/// Exact in 2D, Monte Carlo on the sphere otherwise.
double metric_ball_free_boundary(const ConvexBody& body, const Vector& x,
                                 double rho, const MonteCarloParams& mc = {});

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b);

/// Deterministic, roughly arclength/area-uniform boundary samples.
std::vector<Vector> boundary_sample_points(const ConvexBody& body, int count);

// --- JSON body files: {"dim":2,"kind":"polytope","vertices":[[x,y],...]} or
// {"kind":"ball","center":[...],"radius":r}.  Half-spaces are derived, never
// read.
ConvexBody body_from_json_string(const std::string& text);
std::string body_to_json_string(const ConvexBody& body);
ConvexBody load_body(const std::string& path);
void save_body(const ConvexBody& body, const std::string& path);

}  // namespace isoprofile

#endif
