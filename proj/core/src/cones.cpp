#include "isoprofile/cones.hpp"

#include <algorithm>
#include <cmath>

#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"

namespace isoprofile {

Cone tangent_cone(const ConvexBody& body, const Vector& p) {
  if (!body.is_polytope())
    throw InvalidArgument("tangent cones are computed for polytopes");
  const double tol = 1e-9 * std::max(1.0, body.circumradius());
  if (body.margin(p) < -tol)
    throw InvalidArgument("tangent cone point lies outside the body");
  Cone cone;
  cone.dim = body.dim();
  cone.apex = p;
  for (const auto& h : body.halfspaces()) {
    if (std::abs(h.offset - h.normal.dot(p)) <= tol)
      cone.halfspaces.push_back({h.normal, h.normal.dot(p)});
  }
  if (cone.halfspaces.empty())
    throw InteriorPoint("no active constraint: point is interior");
  return cone;
}

namespace {

double mc_solid_angle(const Cone& cone, const MonteCarloParams& mc,
                      double* error3s) {
  Rng rng(mc.seed);
  const std::int64_t samples = std::max<std::int64_t>(mc.samples, 1);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    Vector d = rng.unit_vector(cone.dim);
    bool inside = true;
    for (const auto& h : cone.halfspaces) {
      if (h.normal.dot(d) > 0.0) {
        inside = false;
        break;
      }
    }
    if (inside) ++hits;
  }
  const double sphere = unit_sphere_area(cone.dim);
  const double p = static_cast<double>(hits) / samples;
  if (error3s)
    *error3s = 3.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) / samples) * sphere;
  return p * sphere;
}

double exact_angle_2d(const Cone& cone) {
  ArcSet arcs;
  for (const auto& h : cone.halfspaces)
    arcs.intersect_cos_constraint(std::atan2(h.normal[1], h.normal[0]), 0.0);
  return arcs.total_length();
}

// Spherical polygon area of the cone's unit cross-section, by angular excess.
// Returns nullopt for configurations the closed form does not cover
// (near-coplanar normals, sliver edges); callers fall back to Monte Carlo.
std::optional<double> exact_angle_3d(const Cone& cone) {
  const auto& hs = cone.halfspaces;
  const int m = static_cast<int>(hs.size());
  if (m == 1) return 0.5 * unit_sphere_area(3);
  const double eps = 1e-9;
  if (m == 2) {
    const double c = std::clamp(hs[0].normal.dot(hs[1].normal), -1.0, 1.0);
    if (1.0 - std::abs(c) < eps) return std::nullopt;  // coplanar pair
    return 2.0 * (kPi - std::acos(c));
  }
  // Edge rays: pairwise plane intersections feasible for all constraints.
  std::vector<Vector> rays;
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      Eigen::Vector3d ni = hs[i].normal.head<3>(), nj = hs[j].normal.head<3>();
      Eigen::Vector3d cr = ni.cross(nj);
      if (cr.norm() < eps) continue;
      cr.normalize();
      for (int sgn : {+1, -1}) {
        Eigen::Vector3d d = sgn * cr;
        bool ok = true;
        for (int k = 0; k < m; ++k) {
          if (hs[k].normal.head<3>().dot(d) > eps) {
            ok = false;
            break;
          }
        }
        if (ok) {
          bool dup = false;
          for (const auto& r : rays) {
            if ((r.head<3>() - d).norm() < 1e-7) {
              dup = true;
              break;
            }
          }
          if (!dup) {
            Vector v(3);
            v << d[0], d[1], d[2];
            rays.push_back(v);
          }
        }
      }
    }
  }
  const int k = static_cast<int>(rays.size());
  if (k < 3) return std::nullopt;
  // Order rays around an interior axis.
  Eigen::Vector3d axis = Eigen::Vector3d::Zero();
  for (const auto& r : rays) axis += r.head<3>();
  if (axis.norm() < eps) return std::nullopt;
  axis.normalize();
  Eigen::Vector3d e1 = rays[0].head<3>() - rays[0].head<3>().dot(axis) * axis;
  if (e1.norm() < eps) return std::nullopt;
  e1.normalize();
  const Eigen::Vector3d e2 = axis.cross(e1);
  std::vector<std::pair<double, int>> order;
  for (int i = 0; i < k; ++i) {
    const Eigen::Vector3d r = rays[i].head<3>();
    order.push_back({std::atan2(r.dot(e2), r.dot(e1)), i});
  }
  std::sort(order.begin(), order.end());
  // Facet normal between consecutive rays.
  auto facet_between = [&](const Vector& a, const Vector& b) -> int {
    for (int i = 0; i < m; ++i) {
      if (std::abs(hs[i].normal.dot(a)) <= 1e-7 &&
          std::abs(hs[i].normal.dot(b)) <= 1e-7)
        return i;
    }
    return -1;
  };
  std::vector<int> facets(k);
  for (int i = 0; i < k; ++i) {
    facets[i] = facet_between(rays[order[i].second],
                              rays[order[(i + 1) % k].second]);
    if (facets[i] < 0) return std::nullopt;
  }
  double excess = -(k - 2) * kPi;
  for (int i = 0; i < k; ++i) {
    const int fa = facets[(i + k - 1) % k];
    const int fb = facets[i];
    const double c =
        std::clamp(hs[fa].normal.dot(hs[fb].normal), -1.0, 1.0);
    excess += kPi - std::acos(c);
  }
  return excess;
}

}  // namespace

ValueWithError solid_angle(const Cone& cone, AngleMethod method,
                           const MonteCarloParams& mc) {
  switch (method) {
    case AngleMethod::Exact2D:
      if (cone.dim != 2)
        throw MethodDimensionMismatch("Exact2D requires dimension 2");
      return {exact_angle_2d(cone), 0.0};
    case AngleMethod::Exact3D: {
      if (cone.dim != 3)
        throw MethodDimensionMismatch("Exact3D requires dimension 3");
      if (auto a = exact_angle_3d(cone)) return {*a, 0.0};
      double err = 0.0;
      const double a = mc_solid_angle(cone, mc, &err);
      return {a, err};
    }
    case AngleMethod::MonteCarlo: {
      double err = 0.0;
      const double a = mc_solid_angle(cone, mc, &err);
      return {a, err};
    }
  }
  throw InvalidArgument("unknown solid angle method");
}

double solid_angle_auto(const Cone& cone, const MonteCarloParams& mc) {
  if (cone.solid_angle) return *cone.solid_angle;
  if (cone.dim == 2) return solid_angle(cone, AngleMethod::Exact2D).value;
  if (cone.dim == 3) return solid_angle(cone, AngleMethod::Exact3D, mc).value;
  return solid_angle(cone, AngleMethod::MonteCarlo, mc).value;
}

double cone_profile(double alpha, int n, double v) {
  if (!(alpha > 0.0)) throw NonpositiveAngle("solid angle must be positive");
  if (v < 0.0) throw InvalidVolume("volume must be nonnegative");
  if (v == 0.0) return 0.0;
  return std::pow(alpha, 1.0 / (n + 1)) *
         std::pow(static_cast<double>(n + 1), static_cast<double>(n) / (n + 1)) *
         std::pow(v, static_cast<double>(n) / (n + 1));
}

GeodesicBall geodesic_ball_in_cone(const Cone& cone, double v,
                                   const MonteCarloParams& mc) {
  if (!(v > 0.0)) throw NonpositiveVolume("volume must be positive");
  const double alpha = solid_angle_auto(cone, mc);
  const int n = cone.dim - 1;
  GeodesicBall ball;
  ball.radius = std::pow((n + 1) * v / alpha, 1.0 / (n + 1));
  ball.perimeter = alpha * std::pow(ball.radius, n);
  return ball;
}

namespace {
bool lex_less(const Vector& a, const Vector& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (a[i] > b[i]) return false;
  }
  return false;
}
}  // namespace

MinAngleResult min_solid_angle_vertex(const ConvexBody& body,
                                      const MonteCarloParams& mc,
                                      int workers) {
  if (!body.is_polytope())
    throw InvalidArgument("vertex enumeration needs a polytope");
  const int nv = static_cast<int>(body.vertices().size());
  MinAngleResult result;
  result.n = body.dim() - 1;
  result.table.resize(nv);
  parallel_for_index(nv, workers, [&](std::size_t i) {
    VertexAngle va;
    va.vertex_index = static_cast<int>(i);
    va.vertex = body.vertices()[i];
    va.alpha = solid_angle_auto(tangent_cone(body, va.vertex), mc);
    result.table[i] = va;
  });
  int best = 0;
  for (int i = 1; i < nv; ++i) {
    const double a = result.table[i].alpha;
    const double b = result.table[best].alpha;
    if (a < b - 1e-12 ||
        (std::abs(a - b) <= 1e-12 &&
         lex_less(result.table[i].vertex, result.table[best].vertex))) {
      best = i;
    }
  }
  result.vertex_index = best;
  result.vertex = result.table[best].vertex;
  result.alpha_min = result.table[best].alpha;
  for (auto& va : result.table)
    va.is_min = va.alpha <= result.alpha_min + 1e-12;

  // Checked assumption: facet/edge-interior tangent cones do not undercut the
  // vertex minimum.
  for (const auto& p : boundary_sample_points(body, 32)) {
    bool at_vertex = false;
    for (const auto& v : body.vertices()) {
      if ((p - v).norm() <= 1e-9 * std::max(1.0, body.circumradius())) {
        at_vertex = true;
        break;
      }
    }
    if (at_vertex) continue;
    const double a = solid_angle_auto(tangent_cone(body, p), mc);
    if (a < result.alpha_min - 1e-9)
      throw Error("non-vertex tangent cone undercuts the vertex minimum");
  }
  return result;
}

SemicontinuityReport semicontinuity_probe(const ConvexBody& body,
                                          const Vector& p,
                                          const std::vector<Vector>& approach,
                                          const MonteCarloParams& mc) {
  SemicontinuityReport report;
  report.alpha_at_p = solid_angle_auto(tangent_cone(body, p), mc);
  double min_tail = std::numeric_limits<double>::infinity();
  for (const auto& q : approach) {
    const double a = solid_angle_auto(tangent_cone(body, q), mc);
    report.alpha_sequence.push_back(a);
    min_tail = std::min(min_tail, a);
  }
  report.pass = report.alpha_at_p <= min_tail + 1e-9;
  return report;
}

}  // namespace isoprofile
