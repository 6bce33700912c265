#include "isoprofile/convex_body.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"

namespace isoprofile {

namespace {

double coordinate_scale(const std::vector<Vector>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, p.lpNorm<Eigen::Infinity>());
  return std::max(s, 1.0);
}

// ---------------------------------------------------------------------------
// 2D convex hull: Andrew's monotone chain, CCW output.
// ---------------------------------------------------------------------------
std::vector<Vector> hull_2d(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vector& a, const Vector& b) {
                          return a[0] == b[0] && a[1] == b[1];
                        }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) throw DegenerateInput("fewer than 3 distinct points");
  const double s = coordinate_scale(pts);
  const double eps = 1e-12 * s * s;
  auto cross = [](const Vector& o, const Vector& a, const Vector& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Vector> h(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  for (int i = n - 2, lower = k + 1; i >= 0; --i) {  // upper chain
    while (k >= lower && cross(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw DegenerateInput("points are collinear");
  return h;
}

// ---------------------------------------------------------------------------
// 3D convex hull: incremental with triangle facets.
// ---------------------------------------------------------------------------
struct HullFace {
  int a, b, c;
  Vector normal;  // outward unit normal
  double offset;
};

Vector triangle_normal(const Vector& a, const Vector& b, const Vector& c) {
  Eigen::Vector3d u = (b - a).head<3>(), v = (c - a).head<3>();
  Eigen::Vector3d n = u.cross(v);
  Vector out(3);
  out << n[0], n[1], n[2];
  return out;
}

std::vector<HullFace> hull_3d(const std::vector<Vector>& pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 4) throw DegenerateInput("fewer than 4 points in 3D");
  const double s = coordinate_scale(pts);
  const double eps = 1e-9 * s;

  // Initial simplex: spread-out extremes.
  int i0 = 0;
  for (int i = 1; i < n; ++i) {
    if (std::lexicographical_compare(pts[i].data(), pts[i].data() + 3,
                                     pts[i0].data(), pts[i0].data() + 3))
      i0 = i;
  }
  int i1 = -1;
  double best = eps;
  for (int i = 0; i < n; ++i) {
    const double d = (pts[i] - pts[i0]).norm();
    if (d > best) best = d, i1 = i;
  }
  if (i1 < 0) throw DegenerateInput("all points coincide");
  int i2 = -1;
  best = eps * (pts[i1] - pts[i0]).norm();
  for (int i = 0; i < n; ++i) {
    Eigen::Vector3d u = (pts[i1] - pts[i0]).head<3>(),
                    v = (pts[i] - pts[i0]).head<3>();
    const double d = u.cross(v).norm();
    if (d > best) best = d, i2 = i;
  }
  if (i2 < 0) throw DegenerateInput("points are collinear");
  Vector n012 = triangle_normal(pts[i0], pts[i1], pts[i2]);
  int i3 = -1;
  best = eps * n012.norm();
  for (int i = 0; i < n; ++i) {
    const double d = std::abs(n012.dot(pts[i] - pts[i0]));
    if (d > best) best = d, i3 = i;
  }
  if (i3 < 0) throw DegenerateInput("points are coplanar");

  Vector interior = 0.25 * (pts[i0] + pts[i1] + pts[i2] + pts[i3]);
  auto make_face = [&](int a, int b, int c) -> HullFace {
    Vector nn = triangle_normal(pts[a], pts[b], pts[c]);
    const double len = nn.norm();
    nn /= len;
    double off = nn.dot(pts[a]);
    if (nn.dot(interior) > off) {  // flip to outward
      std::swap(b, c);
      nn = -nn;
      off = -off;
    }
    return HullFace{a, b, c, nn, off};
  };

  std::vector<HullFace> faces = {make_face(i0, i1, i2), make_face(i0, i1, i3),
                                 make_face(i0, i2, i3), make_face(i1, i2, i3)};

  for (int p = 0; p < n; ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (faces[f].normal.dot(pts[p]) > faces[f].offset + eps)
        visible.push_back(f);
    }
    if (visible.empty()) continue;
    // Horizon = directed edges of visible faces whose reverse never appears
    // within the visible patch.
    std::map<std::pair<int, int>, int> edge_count;
    for (int f : visible) {
      const HullFace& F = faces[f];
      for (auto [u, v] : {std::pair{F.a, F.b}, std::pair{F.b, F.c},
                          std::pair{F.c, F.a}}) {
        edge_count[{std::min(u, v), std::max(u, v)}]++;
      }
    }
    std::vector<std::pair<int, int>> horizon;
    for (int f : visible) {
      const HullFace& F = faces[f];
      for (auto [u, v] : {std::pair{F.a, F.b}, std::pair{F.b, F.c},
                          std::pair{F.c, F.a}}) {
        if (edge_count[{std::min(u, v), std::max(u, v)}] == 1)
          horizon.push_back({u, v});
      }
    }
    std::vector<HullFace> next;
    next.reserve(faces.size());
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!std::binary_search(visible.begin(), visible.end(), f))
        next.push_back(faces[f]);
    }
    for (auto [u, v] : horizon) {
      Vector nn = triangle_normal(pts[u], pts[v], pts[p]);
      if (nn.norm() <= eps * (pts[v] - pts[u]).norm()) continue;  // sliver
      next.push_back(make_face(u, v, p));
    }
    faces = std::move(next);
  }
  return faces;
}

// ---------------------------------------------------------------------------
// Chebyshev center: max t s.t. <a_i, x> + t <= b_i, via a dense simplex.
// ---------------------------------------------------------------------------

// max c.z s.t. Az <= b, z >= 0, with b >= 0 so the slack basis is feasible.
// Bland's rule; returns the optimal z.
std::vector<double> simplex_maximize(const std::vector<std::vector<double>>& A,
                                     const std::vector<double>& b,
                                     const std::vector<double>& c) {
  const int m = static_cast<int>(A.size());
  const int n = static_cast<int>(c.size());
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(n + m + 1, 0.0));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1.0;
    T[i][n + m] = b[i];
  }
  for (int j = 0; j < n; ++j) T[m][j] = -c[j];
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const double eps = 1e-11;
  for (int iter = 0; iter < 20000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j) {
      if (T[m][j] < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best_ratio = 0.0;
    for (int i = 0; i < m; ++i) {
      if (T[i][enter] > eps) {
        const double ratio = T[i][n + m] / T[i][enter];
        if (leave < 0 || ratio < best_ratio - 1e-15 ||
            (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
    }
    if (leave < 0) throw Error("margin LP unbounded");
    const double piv = T[leave][enter];
    for (auto& x : T[leave]) x /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = T[i][enter];
      if (f == 0.0) continue;
      for (int j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  std::vector<double> z(n, 0.0);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) z[basis[i]] = T[i][n + m];
  }
  return z;
}

// Returns (center, inradius) of the largest inscribed ball.
std::pair<Vector, double> chebyshev_lp(const std::vector<Halfspace>& hs,
                                       const Vector& interior_guess) {
  const int d = static_cast<int>(interior_guess.size());
  const int m = static_cast<int>(hs.size());
  const int nvars = 2 * d + 1;  // x = x0 + u - w, plus the margin t
  std::vector<std::vector<double>> A(m, std::vector<double>(nvars, 0.0));
  std::vector<double> b(m), c(nvars, 0.0);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < d; ++j) {
      A[i][j] = hs[i].normal[j];
      A[i][d + j] = -hs[i].normal[j];
    }
    A[i][2 * d] = 1.0;
    b[i] = hs[i].offset - hs[i].normal.dot(interior_guess);
  }
  c[2 * d] = 1.0;
  const auto z = simplex_maximize(A, b, c);
  Vector center = interior_guess;
  for (int j = 0; j < d; ++j) center[j] += z[j] - z[d + j];
  return {center, z[2 * d]};
}

}  // namespace

// ---------------------------------------------------------------------------
// ConvexBody
// ---------------------------------------------------------------------------

void ConvexBody::finish_polytope() {
  Vector centroid = Vector::Zero(dim_);
  for (const auto& v : vertices_) centroid += v;
  centroid /= static_cast<double>(vertices_.size());

  auto [center, t] = chebyshev_lp(halfspaces_, centroid);
  chebyshev_center_ = center;
  inradius_ = t;
  circumradius_ = 0.0;
  for (const auto& v : vertices_)
    circumradius_ = std::max(circumradius_, (v - center).norm());
  if (!(inradius_ > 1e-6 * circumradius_))
    throw DegenerateInput("flat body: inradius < 1e-6 * circumradius");
}

ConvexBody ConvexBody::polytope_from_points(const std::vector<Vector>& points) {
  if (points.empty()) throw DegenerateInput("no points");
  const int d = static_cast<int>(points[0].size());
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != d)
      throw DimensionMismatch("inconsistent point dimensions");
  }
  ConvexBody body;
  body.dim_ = d;
  body.kind_ = BodyKind::Polytope;
  if (d == 2) {
    body.vertices_ = hull_2d(points);
    const int n = static_cast<int>(body.vertices_.size());
    body.halfspaces_.reserve(n);
    for (int i = 0; i < n; ++i) {
      const Vector& p = body.vertices_[i];
      const Vector& q = body.vertices_[(i + 1) % n];
      Vector e = q - p;
      Vector nrm = make_vec2(e[1], -e[0]);  // outward for CCW order
      nrm /= nrm.norm();
      body.halfspaces_.push_back({nrm, nrm.dot(p)});
    }
  } else if (d == 3) {
    auto faces = hull_3d(points);
    std::vector<int> used;
    for (const auto& f : faces) {
      used.push_back(f.a);
      used.push_back(f.b);
      used.push_back(f.c);
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    std::map<int, int> remap;
    for (int i = 0; i < static_cast<int>(used.size()); ++i) {
      remap[used[i]] = i;
      body.vertices_.push_back(points[used[i]]);
    }
    const double s = coordinate_scale(points);
    for (const auto& f : faces) {
      body.facet_triangles_.push_back(
          {remap[f.a], remap[f.b], remap[f.c]});
      bool merged = false;
      for (const auto& h : body.halfspaces_) {
        if ((h.normal - f.normal).norm() <= 1e-7 &&
            std::abs(h.offset - f.offset) <= 1e-7 * s) {
          merged = true;
          break;
        }
      }
      if (!merged) body.halfspaces_.push_back({f.normal, f.offset});
    }
  } else {
    throw MethodDimensionMismatch("polytopes supported in dimension 2 and 3");
  }
  body.finish_polytope();
  return body;
}

ConvexBody ConvexBody::make_ball(const Vector& center, double radius) {
  if (!(radius > 0.0)) throw DegenerateInput("ball radius must be positive");
  ConvexBody body;
  body.dim_ = static_cast<int>(center.size());
  body.kind_ = BodyKind::Ball;
  body.center_ = center;
  body.radius_ = radius;
  body.chebyshev_center_ = center;
  body.inradius_ = radius;
  body.circumradius_ = radius;
  return body;
}

double ConvexBody::margin(const Vector& x) const {
  if (kind_ == BodyKind::Ball) return radius_ - (x - center_).norm();
  double m = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) m = std::min(m, h.offset - h.normal.dot(x));
  return m;
}

double ConvexBody::distance_to(const Vector& x) const {
  if (kind_ == BodyKind::Ball) return std::max(0.0, (x - center_).norm() - radius_);
  if (margin(x) >= 0.0) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  if (dim_ == 2) {
    const int n = static_cast<int>(vertices_.size());
    for (int i = 0; i < n; ++i)
      d = std::min(d, point_segment_distance(x, vertices_[i],
                                             vertices_[(i + 1) % n]));
  } else {
    for (const auto& t : facet_triangles_)
      d = std::min(d, point_triangle_distance(x, vertices_[t[0]],
                                              vertices_[t[1]], vertices_[t[2]]));
  }
  return d;
}

Vector ConvexBody::project(const Vector& x) const {
  if (kind_ == BodyKind::Ball) {
    const Vector r = x - center_;
    const double len = r.norm();
    if (len <= radius_) return x;
    return center_ + (radius_ / len) * r;
  }
  if (margin(x) >= 0.0) return x;
  Vector best;
  double bestd = std::numeric_limits<double>::infinity();
  if (dim_ == 2) {
    const int n = static_cast<int>(vertices_.size());
    for (int i = 0; i < n; ++i) {
      Vector q = closest_point_segment(x, vertices_[i], vertices_[(i + 1) % n]);
      const double d = (x - q).norm();
      if (d < bestd) bestd = d, best = q;
    }
  } else {
    for (const auto& t : facet_triangles_) {
      Vector q = closest_point_triangle(x, vertices_[t[0]], vertices_[t[1]],
                                        vertices_[t[2]]);
      const double d = (x - q).norm();
      if (d < bestd) bestd = d, best = q;
    }
  }
  return best;
}

ConvexBody ConvexBody::translated(const Vector& t) const {
  ConvexBody out = *this;
  for (auto& v : out.vertices_) v += t;
  for (auto& h : out.halfspaces_) h.offset += h.normal.dot(t);
  if (kind_ == BodyKind::Ball) out.center_ += t;
  out.chebyshev_center_ += t;
  return out;
}

ConvexBody ConvexBody::scaled(double lambda) const {
  if (!(lambda > 0.0)) throw InvalidArgument("scale factor must be positive");
  ConvexBody out = *this;
  for (auto& v : out.vertices_) v *= lambda;
  for (auto& h : out.halfspaces_) h.offset *= lambda;
  if (kind_ == BodyKind::Ball) out.center_ *= lambda;
  out.radius_ *= lambda;
  out.chebyshev_center_ *= lambda;
  out.inradius_ *= lambda;
  out.circumradius_ *= lambda;
  return out;
}

void ConvexBody::bounding_box(Vector& lo, Vector& hi) const {
  if (kind_ == BodyKind::Ball) {
    lo = center_.array() - radius_;
    hi = center_.array() + radius_;
    return;
  }
  lo = vertices_[0];
  hi = vertices_[0];
  for (const auto& v : vertices_) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
}

double ConvexBody::origin_inradius() const {
  if (kind_ == BodyKind::Ball) return radius_ - center_.norm();
  double r = std::numeric_limits<double>::infinity();
  for (const auto& h : halfspaces_) r = std::min(r, h.offset);
  return r;
}

double ConvexBody::origin_circumradius() const {
  if (kind_ == BodyKind::Ball) return radius_ + center_.norm();
  double r = 0.0;
  for (const auto& v : vertices_) r = std::max(r, v.norm());
  return r;
}

MetricBall::MetricBall(const ConvexBody& b, Vector x, double rho)
    : body(b), center(std::move(x)), radius(rho) {
  if (!(rho > 0.0)) throw InvalidArgument("metric ball radius must be positive");
  if (!body.contains(center, 1e-9 * std::max(1.0, body.circumradius())))
    throw CenterOutsideBody("metric ball center not in body");
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

ConvexBody make_polytope(const std::vector<Vector>& points) {
  return ConvexBody::polytope_from_points(points);
}

double support_function(const ConvexBody& body, const Vector& u) {
  if (body.kind() == BodyKind::Ball)
    return u.dot(body.ball_center()) + body.ball_radius() * u.norm();
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& v : body.vertices()) s = std::max(s, u.dot(v));
  return s;
}

namespace {
void require_origin_interior(const ConvexBody& body) {
  if (body.origin_inradius() <= 1e-12 * std::max(1.0, body.circumradius()))
    throw OriginNotInterior("origin is not strictly interior");
}
}  // namespace

double radial_function(const ConvexBody& body, const Vector& u) {
  require_origin_interior(body);
  if (body.kind() == BodyKind::Ball) {
    const Vector& c = body.ball_center();
    const double uc = u.dot(c) / u.squaredNorm();
    const double disc = uc * uc + (body.ball_radius() * body.ball_radius() -
                                   c.squaredNorm()) /
                                      u.squaredNorm();
    return uc + std::sqrt(disc);
  }
  double rho = std::numeric_limits<double>::infinity();
  for (const auto& h : body.halfspaces()) {
    const double den = h.normal.dot(u);
    if (den > 0.0) rho = std::min(rho, h.offset / den);
  }
  return rho;
}

ConvexBody polar_body(const ConvexBody& body) {
  require_origin_interior(body);
  if (body.kind() == BodyKind::Ball) {
    if (body.ball_center().norm() >
        1e-12 * std::max(1.0, body.ball_radius()))
      throw InvalidArgument("polar of an off-center ball is not a ball");
    return ConvexBody::make_ball(Vector::Zero(body.dim()),
                                 1.0 / body.ball_radius());
  }
  std::vector<Vector> polar_vertices;
  polar_vertices.reserve(body.halfspaces().size());
  for (const auto& h : body.halfspaces())
    polar_vertices.push_back(h.normal / h.offset);
  return make_polytope(polar_vertices);
}

double radial_lipschitz_bound(const ConvexBody& body) {
  const double r = body.origin_inradius();
  if (r <= 0.0) throw OriginNotInterior("origin is not strictly interior");
  const double R = body.origin_circumradius();
  return R * R / r;
}

ValueWithError volume(const ConvexBody& body, VolumeMethod method,
                      const MonteCarloParams& mc) {
  switch (method) {
    case VolumeMethod::Exact2D: {
      if (body.dim() != 2)
        throw MethodDimensionMismatch("Exact2D requires dimension 2");
      if (body.kind() == BodyKind::Ball)
        return {kPi * body.ball_radius() * body.ball_radius(), 0.0};
      return {polygon_area(body.vertices()), 0.0};
    }
    case VolumeMethod::Triangulate3D: {
      if (body.dim() != 3)
        throw MethodDimensionMismatch("Triangulate3D requires dimension 3");
      if (body.kind() == BodyKind::Ball) {
        const double r = body.ball_radius();
        return {unit_ball_volume(3) * r * r * r, 0.0};
      }
      const Vector& c = body.chebyshev_center();
      double vol = 0.0;
      for (const auto& t : body.facet_triangles()) {
        const Vector a = body.vertices()[t[0]] - c;
        const Vector b = body.vertices()[t[1]] - c;
        const Vector d = body.vertices()[t[2]] - c;
        Eigen::Vector3d av = a.head<3>(), bv = b.head<3>(), dv = d.head<3>();
        vol += std::abs(av.dot(bv.cross(dv))) / 6.0;
      }
      return {vol, 0.0};
    }
    case VolumeMethod::MonteCarlo: {
      Vector lo, hi;
      body.bounding_box(lo, hi);
      double boxvol = 1.0;
      for (int i = 0; i < body.dim(); ++i) boxvol *= hi[i] - lo[i];
      const int workers = std::max(1, mc.workers);
      std::vector<std::int64_t> hits(workers, 0);
      const std::int64_t per = (mc.samples + workers - 1) / workers;
      parallel_for_index(workers, workers, [&](std::size_t w) {
        Rng rng(derive_seed(mc.seed, w));
        Vector p(body.dim());
        std::int64_t h = 0;
        const std::int64_t count =
            std::min<std::int64_t>(per, mc.samples - w * per);
        for (std::int64_t i = 0; i < count; ++i) {
          for (int k = 0; k < body.dim(); ++k) p[k] = rng.uniform(lo[k], hi[k]);
          if (body.contains(p)) ++h;
        }
        hits[w] = h;
      });
      std::int64_t total = 0;
      for (auto h : hits) total += h;
      const double p = static_cast<double>(total) / mc.samples;
      const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / mc.samples);
      return {p * boxvol, 3.0 * sigma * boxvol};
    }
  }
  throw InvalidArgument("unknown volume method");
}

double exact_volume(const ConvexBody& body) {
  if (body.dim() == 2) return volume(body, VolumeMethod::Exact2D).value;
  if (body.dim() == 3) return volume(body, VolumeMethod::Triangulate3D).value;
  throw MethodDimensionMismatch("exact volume only in dimension 2 and 3");
}

namespace {

double disk_lens_area(double r1, double r2, double d) {
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double a1 = std::acos(std::clamp(
      (d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1), -1.0, 1.0));
  const double a2 = std::acos(std::clamp(
      (d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2), -1.0, 1.0));
  const double tri = 0.5 * std::sqrt(std::max(
      (-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2), 0.0));
  return r1 * r1 * a1 + r2 * r2 * a2 - tri;
}

ValueWithError metric_ball_volume_impl(const ConvexBody& body, const Vector& x,
                                       double rho, const MonteCarloParams& mc) {
  if (body.dim() == 2) {
    if (body.kind() == BodyKind::Ball) {
      return {disk_lens_area(body.ball_radius(), rho,
                             (x - body.ball_center()).norm()),
              0.0};
    }
    const auto& verts = body.vertices();
    const int n = static_cast<int>(verts.size());
    double area = 0.0;
    for (int i = 0; i < n; ++i)
      area += circle_triangle_area(verts[i] - x, verts[(i + 1) % n] - x, rho);
    return {area, 0.0};
  }
  // Monte Carlo over B(x, rho).
  const int d = body.dim();
  const double ballvol = unit_ball_volume(d) * std::pow(rho, d);
  const int workers = std::max(1, mc.workers);
  std::vector<std::int64_t> hits(workers, 0);
  const std::int64_t per = (mc.samples + workers - 1) / workers;
  parallel_for_index(workers, workers, [&](std::size_t w) {
    Rng rng(derive_seed(mc.seed, w));
    std::int64_t h = 0;
    const std::int64_t count = std::min<std::int64_t>(per, mc.samples - w * per);
    for (std::int64_t i = 0; i < count; ++i) {
      Vector p = x + rho * std::pow(rng.uniform01(), 1.0 / d) * rng.unit_vector(d);
      if (body.contains(p)) ++h;
    }
    hits[w] = h;
  });
  std::int64_t total = 0;
  for (auto h : hits) total += h;
  const double p = static_cast<double>(total) / mc.samples;
  const double sigma = std::sqrt(std::max(p * (1.0 - p), 0.0) / mc.samples);
  return {p * ballvol, 3.0 * sigma * ballvol};
}

}  // namespace

ValueWithError metric_ball_volume(const MetricBall& mb, VolumeMethod method,
                                  const MonteCarloParams& mc) {
  if (method == VolumeMethod::Exact2D && mb.body.dim() != 2)
    throw MethodDimensionMismatch("Exact2D requires dimension 2");
  return metric_ball_volume_impl(mb.body, mb.center, mb.radius, mc);
}

ValueWithError metric_ball_volume(const ConvexBody& body, const Vector& x,
                                  double rho, const MonteCarloParams& mc) {
  MetricBall mb(body, x, rho);
  return metric_ball_volume_impl(body, x, rho, mc);
}

double metric_ball_free_boundary(const ConvexBody& body, const Vector& x,
                                 double rho, const MonteCarloParams& mc) {
  if (body.dim() == 2) {
    ArcSet arcs;
    if (body.kind() == BodyKind::Ball) {
      const Vector p = x - body.ball_center();
      const double pn = p.norm();
      const double rb = body.ball_radius();
      if (pn <= 1e-15 * rb) return rho < rb ? 2.0 * kPi * rho : 0.0;
      arcs.intersect_cos_constraint(
          std::atan2(p[1], p[0]),
          (rb * rb - pn * pn - rho * rho) / (2.0 * rho * pn));
    } else {
      for (const auto& h : body.halfspaces()) {
        arcs.intersect_cos_constraint(std::atan2(h.normal[1], h.normal[0]),
                                      (h.offset - h.normal.dot(x)) / rho);
      }
    }
    return rho * arcs.total_length();
  }
  // Monte Carlo over the sphere of radius rho.
  const int d = body.dim();
  Rng rng(mc.seed);
  std::int64_t hits = 0;
  const std::int64_t samples = std::max<std::int64_t>(mc.samples, 1);
  for (std::int64_t i = 0; i < samples; ++i) {
    Vector p = x + rho * rng.unit_vector(d);
    if (body.contains(p)) ++hits;
  }
  const double frac = static_cast<double>(hits) / samples;
  return frac * unit_sphere_area(d) * std::pow(rho, d - 1);
}

namespace {

std::vector<Vector> sphere_directions(int d, int count) {
  std::vector<Vector> dirs;
  dirs.reserve(count);
  if (d == 2) {
    for (int k = 0; k < count; ++k) {
      const double t = 2.0 * kPi * k / count;
      dirs.push_back(make_vec2(std::cos(t), std::sin(t)));
    }
  } else {
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < count; ++k) {
      const double z = 1.0 - 2.0 * (k + 0.5) / count;
      const double r = std::sqrt(std::max(1.0 - z * z, 0.0));
      dirs.push_back(make_vec3(r * std::cos(golden * k),
                               r * std::sin(golden * k), z));
    }
  }
  return dirs;
}

double directed_hausdorff_vertices(const ConvexBody& from, const ConvexBody& to) {
  double d = 0.0;
  for (const auto& v : from.vertices()) d = std::max(d, to.distance_to(v));
  return d;
}

}  // namespace

double hausdorff_distance(const ConvexBody& a, const ConvexBody& b) {
  if (a.dim() != b.dim())
    throw DimensionMismatch("bodies of different ambient dimension");
  const bool pa = a.is_polytope(), pb = b.is_polytope();
  if (!pa && !pb) {
    const double dc = (a.ball_center() - b.ball_center()).norm();
    return std::max({0.0, dc + a.ball_radius() - b.ball_radius(),
                     dc + b.ball_radius() - a.ball_radius()});
  }
  if (pa && pb) {
    return std::max(directed_hausdorff_vertices(a, b),
                    directed_hausdorff_vertices(b, a));
  }
  const ConvexBody& poly = pa ? a : b;
  const ConvexBody& ball = pa ? b : a;
  double d = 0.0;
  for (const auto& v : poly.vertices())
    d = std::max(d, ball.distance_to(v));
  for (const auto& u : sphere_directions(ball.dim(), 4096)) {
    const Vector p = ball.ball_center() + ball.ball_radius() * u;
    d = std::max(d, poly.distance_to(p));
  }
  return d;
}

std::vector<Vector> boundary_sample_points(const ConvexBody& body, int count) {
  std::vector<Vector> out;
  out.reserve(count);
  if (body.dim() == 2) {
    if (body.kind() == BodyKind::Ball) {
      for (int k = 0; k < count; ++k) {
        const double t = 2.0 * kPi * (k + 0.5) / count;
        out.push_back(body.ball_center() +
                      body.ball_radius() * make_vec2(std::cos(t), std::sin(t)));
      }
      return out;
    }
    const auto& verts = body.vertices();
    const int n = static_cast<int>(verts.size());
    std::vector<double> cum(n + 1, 0.0);
    for (int i = 0; i < n; ++i)
      cum[i + 1] = cum[i] + (verts[(i + 1) % n] - verts[i]).norm();
    const double total = cum[n];
    int edge = 0;
    for (int k = 0; k < count; ++k) {
      const double s = total * (k + 0.5) / count;
      while (edge + 1 < n && cum[edge + 1] < s) ++edge;
      const double t = (s - cum[edge]) / (cum[edge + 1] - cum[edge]);
      out.push_back(verts[edge] + t * (verts[(edge + 1) % n] - verts[edge]));
    }
    return out;
  }
  if (body.kind() == BodyKind::Ball) {
    for (const auto& u : sphere_directions(3, count))
      out.push_back(body.ball_center() + body.ball_radius() * u);
    return out;
  }
  // 3D polytope: vertices, facet centroids and edge midpoints, cycled.
  std::vector<Vector> pool = body.vertices();
  for (const auto& t : body.facet_triangles()) {
    pool.push_back((body.vertices()[t[0]] + body.vertices()[t[1]] +
                    body.vertices()[t[2]]) /
                   3.0);
    for (int e = 0; e < 3; ++e)
      pool.push_back(0.5 *
                     (body.vertices()[t[e]] + body.vertices()[t[(e + 1) % 3]]));
  }
  for (int k = 0; k < count; ++k) out.push_back(pool[k % pool.size()]);
  return out;
}

// ---------------------------------------------------------------------------
// JSON I/O
// ---------------------------------------------------------------------------

ConvexBody body_from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "polytope") {
    std::vector<Vector> pts;
    for (const auto& row : j.at("vertices")) {
      Vector p(row.size());
      for (std::size_t i = 0; i < row.size(); ++i) p[i] = row[i].get<double>();
      pts.push_back(std::move(p));
    }
    return make_polytope(pts);
  }
  if (kind == "ball") {
    const auto& c = j.at("center");
    Vector center(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) center[i] = c[i].get<double>();
    return ConvexBody::make_ball(center, j.at("radius").get<double>());
  }
  throw IoError("unknown body kind '" + kind + "'");
}

std::string body_to_json_string(const ConvexBody& body) {
  nlohmann::json j;
  j["dim"] = body.dim();
  if (body.is_polytope()) {
    j["kind"] = "polytope";
    auto verts = nlohmann::json::array();
    for (const auto& v : body.vertices()) {
      auto row = nlohmann::json::array();
      for (int i = 0; i < v.size(); ++i) row.push_back(v[i]);
      verts.push_back(row);
    }
    j["vertices"] = verts;
  } else {
    j["kind"] = "ball";
    auto c = nlohmann::json::array();
    for (int i = 0; i < body.ball_center().size(); ++i)
      c.push_back(body.ball_center()[i]);
    j["center"] = c;
    j["radius"] = body.ball_radius();
  }
  return j.dump(2);
}

ConvexBody load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open body file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return body_from_json_string(ss.str());
}

void save_body(const ConvexBody& body, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write body file " + path);
  out << body_to_json_string(body) << "\n";
}

}  // namespace isoprofile
