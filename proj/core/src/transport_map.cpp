#include "isoprofile/transport_map.hpp"

#include <algorithm>
#include <cmath>

#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"

namespace isoprofile {

namespace {

// Radial interpolation factor applied beyond the identity core.
double stretched_radius(double len, double r, double rho_from, double rho_to) {
  return r + (len - r) * (rho_to - r) / (rho_from - r);
}

Vector map_point(const ConvexBody& from, const ConvexBody& to, double r,
                 const Vector& x) {
  const double tol = 1e-9 * std::max(1.0, from.circumradius());
  Vector p = x;
  const double m = from.margin(p);
  if (m < -tol) throw PointOutsideSource("point not in the map's domain");
  if (m < 0.0) p = from.project(p);
  const double len = p.norm();
  if (len <= r) return p;
  const Vector u = p / len;
  const double rho_from = radial_function(from, u);
  const double rho_to = radial_function(to, u);
  if (rho_from == rho_to) return p;  // identity ray, keep it exact
  return stretched_radius(len, r, rho_from, rho_to) * u;
}

Vector sample_in_body(const ConvexBody& body, const Vector& lo,
                      const Vector& hi, Rng& rng) {
  for (;;) {
    Vector p = rng.point_in_box(lo, hi);
    if (body.contains(p)) return p;
  }
}

}  // namespace

TransportMap build_map(const ConvexBody& source, const ConvexBody& target) {
  if (source.dim() != target.dim())
    throw DimensionMismatch("source and target dimension differ");
  ConvexBody src = source.centered();
  ConvexBody tgt = target.centered();
  const double rmin = std::min(src.inradius(), tgt.inradius());
  if (rmin <= 2e-9) throw NoCommonCore("no interior ball after centering");
  const double r_core = 0.5 * rmin;
  const double outer = std::max(src.origin_circumradius(),
                                tgt.origin_circumradius());
  TransportMap map(std::move(src), std::move(tgt), r_core, outer);
  // B(0, 2 r_core) must sit inside both bodies; exact for polytopes via the
  // half-space offsets, sampled for balls.
  for (const ConvexBody* b : {&map.source, &map.target}) {
    if (b->origin_inradius() < 2.0 * map.r_core - 1e-12 * map.outer_radius)
      throw NoCommonCore("common core ball not contained in both bodies");
  }
  if (source.dim() == 2) {
    map.direction_cache.reserve(256);
    for (int k = 0; k < 256; ++k) {
      const double t = 2.0 * kPi * k / 256;
      const Vector u = make_vec2(std::cos(t), std::sin(t));
      map.direction_cache.push_back(
          {t, radial_function(map.source, u), radial_function(map.target, u)});
    }
  }
  return map;
}

Vector apply(const TransportMap& map, const Vector& x) {
  return map_point(map.source, map.target, map.r_core, x);
}

Vector apply_inverse(const TransportMap& map, const Vector& y) {
  return map_point(map.target, map.source, map.r_core, y);
}

double analytic_lip_bound(double r, double R) {
  if (!(r > 0.0) || !(r < R)) throw InvalidRadii("need 0 < r < R");
  const double q = R / r;
  return 1.0 + q * (q - 1.0) * (q * q + 1.0);
}

namespace {

double sup_dilatation(const ConvexBody& from, const ConvexBody& to, double r,
                      int n_pairs, std::uint64_t seed, int workers) {
  Vector lo, hi;
  from.bounding_box(lo, hi);
  const double scale = from.circumradius();
  const int chunks = std::max(1, workers);
  std::vector<double> sups(chunks, 1.0);
  const int per = (n_pairs + chunks - 1) / chunks;
  parallel_for_index(chunks, workers, [&](std::size_t w) {
    Rng rng(derive_seed(seed, w));
    double sup = 1.0;
    const int count = std::min<int>(per, n_pairs - static_cast<int>(w) * per);
    for (int i = 0; i < count; ++i) {
      const Vector x = sample_in_body(from, lo, hi, rng);
      Vector y;
      if (i % 2 == 0) {
        y = sample_in_body(from, lo, hi, rng);
      } else {
        // Near-coincident pair: log-uniform separation, relative to scale.
        const double delta =
            scale * std::pow(10.0, rng.uniform(-6.0, -3.0));
        int tries = 0;
        do {
          y = x + delta * rng.unit_vector(from.dim());
        } while (!from.contains(y) && ++tries < 64);
        if (!from.contains(y)) y = sample_in_body(from, lo, hi, rng);
      }
      const double d = (x - y).norm();
      if (d < 1e-300) continue;
      const double img =
          (map_point(from, to, r, x) - map_point(from, to, r, y)).norm();
      sup = std::max(sup, img / d);
    }
    sups[w] = sup;
  });
  return *std::max_element(sups.begin(), sups.end());
}

}  // namespace

DilatationEstimate empirical_lip(const TransportMap& map, int n_pairs,
                                 std::uint64_t seed, int workers) {
  if (n_pairs < 1000)
    throw InvalidArgument("empirical_lip needs at least 1000 pairs");
  DilatationEstimate est;
  est.lip_forward = sup_dilatation(map.source, map.target, map.r_core, n_pairs,
                                   seed, workers);
  est.lip_inverse = sup_dilatation(map.target, map.source, map.r_core, n_pairs,
                                   derive_seed(seed, 0x10f), workers);
  return est;
}

double lipschitz_distance_upper(const ConvexBody& source,
                                const ConvexBody& target, int n_pairs,
                                std::uint64_t seed, int workers) {
  const TransportMap map = build_map(source, target);
  const DilatationEstimate est = empirical_lip(map, n_pairs, seed, workers);
  return std::log(std::max(est.lip_forward, est.lip_inverse));
}

PushforwardResult pushforward_region(const TransportMap& map,
                                     const std::vector<Vector>& polygon,
                                     int points_per_edge) {
  if (map.source.dim() != 2)
    throw MethodDimensionMismatch("pushforward_region is 2D");
  PushforwardResult out;
  const int n = static_cast<int>(polygon.size());
  out.polygon.reserve(static_cast<std::size_t>(n) * points_per_edge);
  for (int i = 0; i < n; ++i) {
    const Vector& p = polygon[i];
    const Vector& q = polygon[(i + 1) % n];
    for (int k = 0; k < points_per_edge; ++k) {
      const double t = static_cast<double>(k) / points_per_edge;
      out.polygon.push_back(apply(map, p + t * (q - p)));
    }
  }
  out.volume = polygon_area(out.polygon);
  out.perimeter = polygon_perimeter(out.polygon);
  return out;
}

MapDiagnostics map_diagnostics(const ConvexBody& source,
                               const ConvexBody& target, int n_pairs,
                               std::uint64_t seed, int workers) {
  const TransportMap map = build_map(source, target);
  const DilatationEstimate est = empirical_lip(map, n_pairs, seed, workers);
  MapDiagnostics d;
  d.r_core = map.r_core;
  d.outer_radius = map.outer_radius;
  d.analytic_bound = analytic_lip_bound(map.r_core, map.outer_radius);
  d.lip_forward = est.lip_forward;
  d.lip_inverse = est.lip_inverse;
  d.dl_upper = std::log(std::max(est.lip_forward, est.lip_inverse));
  return d;
}

}  // namespace isoprofile
