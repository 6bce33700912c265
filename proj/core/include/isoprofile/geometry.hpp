#ifndef ISOPROFILE_GEOMETRY_HPP
#define ISOPROFILE_GEOMETRY_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace isoprofile {

using Vector = Eigen::VectorXd;

constexpr double kPi = std::numbers::pi;

/// Volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
  // omega_d = pi^{d/2} / Gamma(d/2 + 1)
  return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

/// Surface measure of the unit sphere S^{d-1} in R^d.
inline double unit_sphere_area(int d) { return d * unit_ball_volume(d); }

/// Fixed 12-significant-digit formatting used for all CSV/JSON numeric output.
std::string format12(double x);

inline Vector make_vec2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

inline Vector make_vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

inline double cross2(const Vector& a, const Vector& b) {
  return a[0] * b[1] - a[1] * b[0];
}

/// Signed area of a polygon given by ordered 2D vertices (shoelace).
double polygon_area(const std::vector<Vector>& verts);

/// Perimeter of a closed polygon.
double polygon_perimeter(const std::vector<Vector>& verts);

/// Clips a convex polygon to the half-plane {x : <n,x> <= b}.
std::vector<Vector> clip_polygon_halfplane(const std::vector<Vector>& poly,
                                           const Vector& n, double b);

Vector closest_point_segment(const Vector& p, const Vector& a, const Vector& b);
Vector closest_point_triangle(const Vector& p, const Vector& a, const Vector& b,
                              const Vector& c);

double point_segment_distance(const Vector& p, const Vector& a, const Vector& b);

double point_triangle_distance(const Vector& p, const Vector& a, const Vector& b,
                               const Vector& c);

/// Area of the intersection of triangle (0, a, b) with the disk of radius rho
/// about the origin. Vertices must be ordered so that cross2(a, b) >= 0.
double circle_triangle_area(const Vector& a, const Vector& b, double rho);

/// Arcs on the unit circle, kept as a sorted disjoint union of angle
/// intervals.  Used to clip circles against half-planes.
class ArcSet {
 public:
  /// Starts as the full circle [0, 2*pi).
  ArcSet();
  /// Intersect with {theta : cos(theta - phi) <= c}.
  void intersect_cos_constraint(double phi, double c);
  double total_length() const;
  bool empty() const;
  const std::vector<std::pair<double, double>>& intervals() const { return ivs_; }

 private:
  void intersect_with(const std::vector<std::pair<double, double>>& other);
  std::vector<std::pair<double, double>> ivs_;  // subintervals of [0, 2*pi)
};

}  // namespace isoprofile

#endif
