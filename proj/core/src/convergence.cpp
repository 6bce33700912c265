#include "isoprofile/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isoprofile/density.hpp"
#include "isoprofile/oracle.hpp"
#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"
#include "isoprofile/transport_map.hpp"

namespace isoprofile {

std::vector<ConvexBody> inscribed_polygon_sequence(double disk_radius,
                                                   const std::vector<int>& k_list) {
  std::vector<ConvexBody> out;
  out.reserve(k_list.size());
  for (int k : k_list) {
    if (k < 3) throw InvalidArgument("polygon needs k >= 3");
    std::vector<Vector> pts;
    pts.reserve(k);
    for (int i = 0; i < k; ++i) {
      const double t = 2.0 * kPi * i / k;
      pts.push_back(
          make_vec2(disk_radius * std::cos(t), disk_radius * std::sin(t)));
    }
    out.push_back(make_polytope(pts));
  }
  return out;
}

namespace {

void add_trend_checks(ExperimentResult& result, const std::string& metric,
                      const std::vector<double>& values, double final_tol,
                      double slack) {
  const int m = static_cast<int>(values.size());
  bool monotone = true;
  for (int i = std::max(1, m - 2); i < m; ++i)
    monotone = monotone && values[i] <= values[i - 1] + slack;
  result.add_check({metric + ":nonincreasing_last3", monotone,
                    m >= 2 ? values[m - 1] - values[m - 2] : 0.0, slack});
  if (final_tol > 0.0) {
    result.add_check(
        {metric + ":final", values.back() <= final_tol, values.back(), final_tol});
  }
}

double upper_J(const ConvexBody& body, double lambda, double total) {
  return upper_bound(body, lambda * total).value;
}

}  // namespace

ExperimentResult profile_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    const std::vector<double>& lambda_grid, const ExperimentParams& params) {
  ExperimentResult result;
  result.name = "profile_convergence";
  result.columns = {"k", "sup_J_deviation", "J_half_oracle"};
  const double limit_total = exact_volume(limit);

  std::vector<double> sups(sequence.size());
  parallel_for_index(sequence.size(), params.workers, [&](std::size_t i) {
    const double total = exact_volume(sequence[i]);
    double sup = 0.0;
    for (double lam : lambda_grid) {
      sup = std::max(sup, std::abs(upper_J(sequence[i], lam, total) -
                                   upper_J(limit, lam, limit_total)));
    }
    sups[i] = sup;
  });

  // Oracle spot check at the final body, lambda = 1/2.
  AnnealParams anneal;
  anneal.seed = params.seed;
  anneal.workers = params.workers;
  const ConvexBody& last = sequence.back();
  auto oracle = grid_oracle(last, exact_volume(last) / 2, params.resolution,
                            OracleStrategy::Anneal, anneal);

  for (std::size_t i = 0; i < sequence.size(); ++i) {
    result.rows.push_back(
        {static_cast<double>(sequence[i].vertices().size()), sups[i],
         i + 1 == sequence.size() ? oracle.perimeter : 0.0});
  }
  add_trend_checks(result, "sup_J_deviation", sups, params.profile_tol, 1e-12);
  return result;
}

ExperimentResult dilatation_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    const ExperimentParams& params) {
  ExperimentResult result;
  result.name = "dilatation_convergence";
  result.columns = {"k", "lip_forward", "lip_inverse"};
  std::vector<DilatationEstimate> estimates(sequence.size());
  parallel_for_index(sequence.size(), params.workers, [&](std::size_t i) {
    const TransportMap map = build_map(limit, sequence[i]);
    estimates[i] =
        empirical_lip(map, params.map_pairs, derive_seed(params.seed, i), 1);
  });
  std::vector<double> fwd, inv;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    result.rows.push_back(
        {static_cast<double>(sequence[i].vertices().size()),
         estimates[i].lip_forward, estimates[i].lip_inverse});
    fwd.push_back(estimates[i].lip_forward);
    inv.push_back(estimates[i].lip_inverse);
  }
  add_trend_checks(result, "lip_forward", fwd, 1.0 + params.dilatation_tol,
                   1e-9);
  add_trend_checks(result, "lip_inverse", inv, 1.0 + params.dilatation_tol,
                   1e-9);
  return result;
}

namespace {

struct CanonicalRegion {
  std::vector<Vector> cells;     // canonicalized occupied cell centers
  std::vector<Vector> free_bnd;  // canonicalized free-boundary centers
  const GridRegion* region = nullptr;
  Vector body_center;
  double cos_t = 1.0, sin_t = 0.0;
  bool reflect = false;

  Vector forward(const Vector& p) const {
    const Vector q = p - body_center;
    Vector r = make_vec2(cos_t * q[0] + sin_t * q[1],
                         -sin_t * q[0] + cos_t * q[1]);
    if (reflect) r[1] = -r[1];
    return r;
  }
  Vector backward(const Vector& r0) const {
    Vector r = r0;
    if (reflect) r[1] = -r[1];
    return body_center +
           make_vec2(cos_t * r[0] - sin_t * r[1], sin_t * r[0] + cos_t * r[1]);
  }
  bool occupied_at(const Vector& p_canonical) const {
    const Grid& g = *region->grid;
    const Vector q = backward(p_canonical);
    std::vector<int> c(g.dim);
    for (int a = 0; a < g.dim; ++a) {
      const double t = (q[a] - g.origin[a]) / g.h;
      c[a] = static_cast<int>(std::floor(t));
      if (c[a] < 0 || c[a] >= g.dims[a]) return false;
    }
    return region->occupied[g.flat(c)] != 0;
  }
};

// Rotation aligning the region's centroid direction with +x, then a
// reflection making the transverse third moment nonnegative.  Minimizers are
// unique only up to the body's symmetries; this picks one representative.
CanonicalRegion canonicalize(const GridRegion& region, const Vector& center) {
  CanonicalRegion canon;
  canon.region = &region;
  canon.body_center = center;
  const Grid& g = *region.grid;
  Vector centroid = Vector::Zero(2);
  for (int c : g.in_body_cells)
    if (region.occupied[c]) centroid += g.cell_center(c);
  centroid /= std::max(1, region.cell_count);
  const Vector d = centroid - center;
  const double len = d.norm();
  if (len > 1e-12) {
    canon.cos_t = d[0] / len;
    canon.sin_t = d[1] / len;
  }
  double skew = 0.0;
  for (int c : g.in_body_cells) {
    if (!region.occupied[c]) continue;
    Vector r = canon.forward(g.cell_center(c));
    skew += r[1] * r[1] * r[1];
  }
  if (skew < 0.0) canon.reflect = true;
  for (int c : g.in_body_cells)
    if (region.occupied[c]) canon.cells.push_back(canon.forward(g.cell_center(c)));
  for (int c : free_boundary_cells(region))
    canon.free_bnd.push_back(canon.forward(g.cell_center(c)));
  return canon;
}

double directed_hausdorff(const std::vector<Vector>& from,
                          const std::vector<Vector>& to) {
  double worst = 0.0;
  for (const auto& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : to) best = std::min(best, (p - q).norm());
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff_points(const std::vector<Vector>& a,
                        const std::vector<Vector>& b) {
  if (a.empty() || b.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double symmetric_difference(const CanonicalRegion& a, const CanonicalRegion& b,
                            const ConvexBody& cover, double spacing) {
  Vector lo, hi;
  cover.bounding_box(lo, hi);
  const double pad = 2 * spacing;
  long differ = 0;
  for (double x = lo[0] - pad; x <= hi[0] + pad; x += spacing) {
    for (double y = lo[1] - pad; y <= hi[1] + pad; y += spacing) {
      const Vector p = make_vec2(x, y);
      if (a.occupied_at(p) != b.occupied_at(p)) ++differ;
    }
  }
  return differ * spacing * spacing;
}

}  // namespace

ExperimentResult region_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    double lambda, const ExperimentParams& params) {
  ExperimentResult result;
  result.name = "region_convergence";
  result.columns = {"k", "sym_diff_volume", "hausdorff_regions",
                    "hausdorff_free_boundaries"};
  AnnealParams anneal;
  anneal.seed = params.seed;
  anneal.workers = params.workers;

  auto limit_oracle = grid_oracle(limit, lambda * exact_volume(limit),
                                  params.resolution, OracleStrategy::Anneal,
                                  anneal);
  const auto limit_canon =
      canonicalize(limit_oracle.region, limit.chebyshev_center());
  const double h = limit_oracle.region.grid->h;

  std::vector<double> sym, hreg, hfb;
  for (const auto& body : sequence) {
    auto oracle =
        grid_oracle(body, lambda * exact_volume(body), params.resolution,
                    OracleStrategy::Anneal, anneal);
    const auto canon = canonicalize(oracle.region, body.chebyshev_center());
    sym.push_back(symmetric_difference(canon, limit_canon, limit, h / 2));
    hreg.push_back(hausdorff_points(canon.cells, limit_canon.cells));
    hfb.push_back(hausdorff_points(canon.free_bnd, limit_canon.free_bnd));
    result.rows.push_back({static_cast<double>(body.vertices().size()),
                           sym.back(), hreg.back(), hfb.back()});
  }
  // Discrete witnesses wobble by a cell; allow that much slack in the trend.
  add_trend_checks(result, "sym_diff_volume", sym, -1.0, h);
  add_trend_checks(result, "hausdorff_regions", hreg, 4 * h, h);
  add_trend_checks(result, "hausdorff_free_boundaries", hfb, 4 * h, h);
  result.add_check({"sym_diff_volume:final", sym.back() <= 4 * h, sym.back(),
                    4 * h});
  return result;
}

ExperimentResult small_volume_experiment(const ConvexBody& body,
                                         const std::vector<double>& v_list,
                                         const ExperimentParams& params) {
  ExperimentResult result;
  result.name = "small_volume";
  result.columns = {"v", "upper_ratio", "oracle_ratio",
                    "nearest_vertex_is_min", "rescaled_hausdorff"};
  const auto min_cone = min_solid_angle_vertex(body);
  const int n = body.dim() - 1;

  AnnealParams anneal;
  anneal.seed = params.seed;
  anneal.workers = params.workers;
  auto grid = make_grid(body, params.resolution);

  for (double v : v_list) {
    const double target = min_cone.profile(v);
    const double upper_ratio = upper_bound(body, v).value / target;
    auto oracle = grid_oracle_on_grid(grid, v, OracleStrategy::Anneal, anneal);
    const double oracle_ratio = oracle.perimeter / target;

    // Witness centroid -> nearest vertex; does it attain the minimum angle?
    Vector centroid = Vector::Zero(body.dim());
    for (int c : oracle.region.cells()) centroid += grid->cell_center(c);
    centroid /= std::max(1, oracle.region.cell_count);
    int nearest = 0;
    for (int i = 1; i < static_cast<int>(body.vertices().size()); ++i) {
      if ((body.vertices()[i] - centroid).norm() <
          (body.vertices()[nearest] - centroid).norm())
        nearest = i;
    }
    const bool at_min = min_cone.table[nearest].is_min;

    // Rescale to unit volume about the vertex and compare against the
    // geodesic ball of the tangent cone.
    const double scale = std::pow(v, -1.0 / (n + 1));
    const Vector vertex = body.vertices()[nearest];
    const Cone cone = tangent_cone(body, vertex);
    const double alpha = solid_angle_auto(cone);
    const double rho1 = std::pow((n + 1) / alpha, 1.0 / (n + 1));

    std::vector<Vector> witness;
    for (int c : oracle.region.cells())
      witness.push_back(scale * (grid->cell_center(c) - vertex));

    // Distances to the sector region {|y| <= rho1} ∩ cone (2D).
    const auto sector_distance = [&](const Vector& p) {
      bool inside = p.norm() <= rho1;
      for (const auto& hs : cone.halfspaces)
        inside = inside && hs.normal.dot(p + vertex) <= hs.normal.dot(vertex) + 1e-12;
      if (inside) return 0.0;
      double best = std::numeric_limits<double>::infinity();
      // clamp to the arc
      Vector dir = p;
      if (dir.norm() > 1e-15) {
        dir.normalize();
        bool dir_ok = true;
        for (const auto& hs : cone.halfspaces)
          if (hs.normal.dot(dir) > 0.0) dir_ok = false;
        if (dir_ok) best = std::min(best, std::abs(p.norm() - rho1));
      }
      // edge rays of the wedge
      for (const auto& hs : cone.halfspaces) {
        Vector e = make_vec2(-hs.normal[1], hs.normal[0]);
        for (double sgn : {1.0, -1.0}) {
          Vector ray = sgn * e;
          bool ok = true;
          for (const auto& other : cone.halfspaces)
            if (other.normal.dot(ray) > 1e-12) ok = false;
          if (!ok) continue;
          best = std::min(best, point_segment_distance(p, Vector::Zero(2),
                                                       rho1 * ray));
        }
      }
      return best;
    };
    double d_witness_to_ball = 0.0;
    for (const auto& p : witness)
      d_witness_to_ball = std::max(d_witness_to_ball, sector_distance(p));
    // ball side: polar raster of the sector
    double d_ball_to_witness = 0.0;
    const double h_resc = grid->h * scale;
    ArcSet arcs;
    for (const auto& hs : cone.halfspaces)
      arcs.intersect_cos_constraint(std::atan2(hs.normal[1], hs.normal[0]), 0.0);
    for (const auto& [t0, t1] : arcs.intervals()) {
      const int mt = std::max(3, static_cast<int>((t1 - t0) / 0.05));
      const int mr = std::max(3, static_cast<int>(rho1 / (h_resc / 2)));
      for (int i = 0; i < mt; ++i) {
        for (int j = 0; j < mr; ++j) {
          const double t = t0 + (t1 - t0) * (i + 0.5) / mt;
          const double r = rho1 * (j + 0.5) / mr;
          const Vector p = make_vec2(r * std::cos(t), r * std::sin(t));
          double best = std::numeric_limits<double>::infinity();
          for (const auto& w : witness) best = std::min(best, (p - w).norm());
          d_ball_to_witness = std::max(d_ball_to_witness, best);
        }
      }
    }
    const double hd = std::max(d_witness_to_ball, d_ball_to_witness);

    result.rows.push_back({v, upper_ratio, oracle_ratio,
                           at_min ? 1.0 : 0.0, hd});
    result.add_check({"nearest_vertex_is_min@v=" + format12(v), at_min,
                      at_min ? 1.0 : 0.0, 1.0});
    result.add_check({"rescaled_hausdorff@v=" + format12(v), hd <= 4 * h_resc,
                      hd, 4 * h_resc});
    result.add_check({"oracle_ratio@v=" + format12(v),
                      oracle_ratio >= 0.95 && oracle_ratio <= 1.10,
                      oracle_ratio, 1.10});
  }
  return result;
}

ExperimentResult semicontinuity_experiment(const ConvexBody& body,
                                           int vertex_index, int steps) {
  if (!body.is_polytope() || vertex_index < 0 ||
      vertex_index >= static_cast<int>(body.vertices().size()))
    throw InvalidArgument("semicontinuity needs a polytope vertex");
  const Vector v = body.vertices()[vertex_index];
  // approach along the incident facets, at dyadic distances
  std::vector<Vector> approach;
  const int nv = static_cast<int>(body.vertices().size());
  for (int j = 1; j <= steps; ++j) {
    const double t = std::pow(2.0, -j);
    for (int dir : {-1, +1}) {
      const Vector w =
          body.vertices()[(vertex_index + dir + nv) % nv];
      approach.push_back(v + t * (w - v));
    }
  }
  auto probe = semicontinuity_probe(body, v, approach);
  ExperimentResult result;
  result.name = "semicontinuity";
  result.columns = {"i", "alpha"};
  result.rows.push_back({-1.0, probe.alpha_at_p});
  for (std::size_t i = 0; i < probe.alpha_sequence.size(); ++i)
    result.rows.push_back({static_cast<double>(i), probe.alpha_sequence[i]});
  result.add_check({"alpha_lower_semicontinuous", probe.pass, probe.alpha_at_p,
                    probe.alpha_sequence.empty()
                        ? probe.alpha_at_p
                        : *std::min_element(probe.alpha_sequence.begin(),
                                            probe.alpha_sequence.end())});
  return result;
}

ExperimentSpec experiment_from_json_string(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  ExperimentSpec spec;
  spec.name = j.at("name").get<std::string>();
  if (j.contains("generator")) {
    const auto& g = j.at("generator");
    spec.generator_kind = g.at("kind").get<std::string>();
    if (g.contains("disk_radius"))
      spec.disk_radius = g.at("disk_radius").get<double>();
    if (g.contains("k_list"))
      spec.k_list = g.at("k_list").get<std::vector<int>>();
  }
  if (j.contains("lambda_grid"))
    spec.lambda_grid = j.at("lambda_grid").get<std::vector<double>>();
  if (j.contains("lambda")) spec.lambda = j.at("lambda").get<double>();
  if (j.contains("v_list"))
    spec.v_list = j.at("v_list").get<std::vector<double>>();
  if (j.contains("body")) spec.body_path = j.at("body").get<std::string>();
  if (j.contains("vertex_index"))
    spec.vertex_index = j.at("vertex_index").get<int>();
  if (j.contains("steps")) spec.steps = j.at("steps").get<int>();
  if (j.contains("resolution")) spec.resolution = j.at("resolution").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("tolerances")) {
    for (const auto& [key, val] : j.at("tolerances").items())
      spec.tolerances[key] = val.get<double>();
  }
  return spec;
}

ExperimentSpec load_experiment(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open experiment file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return experiment_from_json_string(ss.str());
}

ExperimentResult run_experiment(const ExperimentSpec& spec, int workers) {
  ExperimentParams params;
  params.seed = spec.seed;
  params.workers = workers;
  params.resolution = spec.resolution;
  for (const auto& [key, val] : spec.tolerances) {
    if (key == "profile_tol")
      params.profile_tol = val;
    else if (key == "dilatation_tol")
      params.dilatation_tol = val;
    else
      throw InvalidArgument("unknown tolerance '" + key + "'");
  }

  const bool needs_generator = spec.name == "profile_convergence" ||
                               spec.name == "dilatation_convergence" ||
                               spec.name == "region_convergence";
  std::vector<ConvexBody> sequence;
  ConvexBody limit = ConvexBody::make_ball(Vector::Zero(2), spec.disk_radius);
  if (needs_generator) {
    if (spec.generator_kind != "inscribed_polygons")
      throw InvalidArgument("unknown generator '" + spec.generator_kind + "'");
    sequence = inscribed_polygon_sequence(spec.disk_radius, spec.k_list);
  }

  if (spec.name == "profile_convergence")
    return profile_convergence_experiment(sequence, limit, spec.lambda_grid,
                                          params);
  if (spec.name == "dilatation_convergence")
    return dilatation_convergence_experiment(sequence, limit, params);
  if (spec.name == "region_convergence")
    return region_convergence_experiment(sequence, limit, spec.lambda, params);
  if (spec.name == "small_volume")
    return small_volume_experiment(load_body(spec.body_path), spec.v_list,
                                   params);
  if (spec.name == "semicontinuity")
    return semicontinuity_experiment(load_body(spec.body_path),
                                     spec.vertex_index, spec.steps);
  throw InvalidArgument("unknown experiment '" + spec.name + "'");
}

std::string experiment_table_csv(const ExperimentResult& result) {
  std::ostringstream os;
  for (std::size_t i = 0; i < result.columns.size(); ++i)
    os << (i ? "," : "") << result.columns[i];
  os << "\n";
  for (const auto& row : result.rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format12(row[i]);
    os << "\n";
  }
  return os.str();
}

std::string experiment_verdict_json(const ExperimentResult& result) {
  nlohmann::json j;
  j["name"] = result.name;
  j["pass"] = result.pass;
  auto checks = nlohmann::json::array();
  for (const auto& c : result.checks) {
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"value", c.value},
                      {"threshold", c.threshold}});
  }
  j["checks"] = checks;
  return j.dump(2);
}

}  // namespace isoprofile
