#include "isoprofile/profile.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "isoprofile/cones.hpp"
#include "isoprofile/parallel.hpp"
#include "isoprofile/rng.hpp"
#include "isoprofile/transport_map.hpp"

namespace isoprofile {

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Analytic: return "analytic";
    case Provenance::UpperBound: return "upper";
    case Provenance::LowerBound: return "lower";
    case Provenance::Oracle: return "oracle";
  }
  return "?";
}

Provenance provenance_from_name(const std::string& name) {
  if (name == "analytic") return Provenance::Analytic;
  if (name == "upper") return Provenance::UpperBound;
  if (name == "lower") return Provenance::LowerBound;
  if (name == "oracle") return Provenance::Oracle;
  throw InvalidArgument("unknown provenance '" + name + "'");
}

std::vector<ProfileSample> ProfileCurve::with_provenance(Provenance p) const {
  std::vector<ProfileSample> out;
  for (const auto& s : samples)
    if (s.provenance == p) out.push_back(s);
  return out;
}

void ProfileCurve::insert(ProfileSample s) {
  if (!(s.v > 0.0) || !(s.v < total_volume))
    throw VolumeOutOfRange("sample volume outside (0, |C|)");
  if (!(s.value > 0.0)) throw InvalidArgument("profile values must be positive");
  auto at = std::lower_bound(
      samples.begin(), samples.end(), s, [](const auto& a, const auto& b) {
        return a.v < b.v || (a.v == b.v && a.provenance < b.provenance);
      });
  samples.insert(at, std::move(s));
}

double ProfileCurve::interpolate(double v, Provenance p) const {
  const auto pts = with_provenance(p);
  if (pts.empty()) throw InvalidArgument("no samples with that provenance");
  if (v <= pts.front().v) {
    // extend linearly through (0,0): the profile vanishes at volume 0
    return pts.front().value * v / pts.front().v;
  }
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    if (v <= pts[i + 1].v) {
      const double t = (v - pts[i].v) / (pts[i + 1].v - pts[i].v);
      return pts[i].value + t * (pts[i + 1].value - pts[i].value);
    }
  }
  // extend toward (|C|, 0)
  const auto& last = pts.back();
  const double span = total_volume - last.v;
  if (span <= 0.0) return last.value;
  return last.value * (total_volume - v) / span;
}

NormalizedCurves normalizations(const ProfileCurve& curve, Provenance p) {
  NormalizedCurves out;
  const double expo = static_cast<double>(curve.n + 1) / curve.n;
  for (const auto& s : curve.with_provenance(p)) {
    const double y = std::pow(s.value, expo);
    out.Y.push_back({s.v, y});
    out.J.push_back({s.v / curve.total_volume, s.value});
    out.y.push_back({s.v / curve.total_volume, y});
  }
  return out;
}

std::string Witness::describe() const {
  std::ostringstream os;
  if (is_complement) os << "complement:";
  os << kind;
  if (is_ball) os << " r=" << format12(radius);
  if (anchor.size() > 0) {
    os << " @(";
    for (int i = 0; i < anchor.size(); ++i)
      os << (i ? "," : "") << format12(anchor[i]);
    os << ")";
  }
  return os.str();
}

namespace {

double bisect(double lo, double hi, double target, int max_iter, double tol,
              const std::function<double(double)>& f) {
  // f increasing; find x with f(x) = target.
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double val = f(mid);
    if (std::abs(val - target) <= tol) return mid;
    if (val < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Geodesic ball at a boundary point.  Inside the wedge-exact radius the
// tangent-cone formulas apply verbatim; beyond it (2D) the radius is solved
// against the exact metric-ball area and the free boundary is the exact
// clipped arc.
std::optional<BoundResult> wedge_ball_candidate(const ConvexBody& body,
                                                const Vector& p, double w,
                                                const std::string& kind,
                                                const MonteCarloParams& mc,
                                                const UpperBoundParams& params) {
  const Cone cone = tangent_cone(body, p);
  const double alpha = solid_angle_auto(cone, mc);
  const int n = body.dim() - 1;
  const double tol = 1e-9 * std::max(1.0, body.circumradius());
  double r_wedge = std::numeric_limits<double>::infinity();
  for (const auto& h : body.halfspaces()) {
    const double margin = h.offset - h.normal.dot(p);
    if (margin > tol) r_wedge = std::min(r_wedge, margin);
  }
  BoundResult res;
  res.witness.kind = kind;
  res.witness.is_ball = true;
  res.witness.anchor = p;
  const double capacity = alpha * std::pow(r_wedge, n + 1) / (n + 1);
  if (w <= capacity) {
    const double r = std::pow((n + 1) * w / alpha, 1.0 / (n + 1));
    res.value = alpha * std::pow(r, n);
    res.witness.radius = r;
    return res;
  }
  if (body.dim() != 2) return std::nullopt;  // clipped balls: 2D only
  const double r_hi = 2.0 * body.circumradius();
  const auto vol = [&](double r) {
    return metric_ball_volume(body, p, r).value;
  };
  if (vol(r_hi) <= w) return std::nullopt;
  const double r = bisect(r_wedge, r_hi, w, params.bisect_max_iter,
                          params.bisect_tol, vol);
  res.value = metric_ball_free_boundary(body, p, r);
  res.witness.radius = r;
  if (!(res.value > 0.0)) return std::nullopt;
  res.witness.is_ball = false;  // clipped: no longer a cone ball
  res.witness.kind += "_clipped";
  return res;
}

std::vector<Vector> chord_directions(const ConvexBody& body) {
  std::vector<Vector> dirs;
  for (const auto& h : body.halfspaces()) {
    bool dup = false;
    for (const auto& d : dirs) {
      if ((d - h.normal).norm() < 1e-9 || (d + h.normal).norm() < 1e-9)
        dup = true;
    }
    if (!dup) dirs.push_back(h.normal);
  }
  return dirs;
}

std::optional<BoundResult> chord_candidate_2d(const ConvexBody& body,
                                              const Vector& nrm, double w,
                                              const UpperBoundParams& params) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& vtx : body.vertices()) {
    lo = std::min(lo, nrm.dot(vtx));
    hi = std::max(hi, nrm.dot(vtx));
  }
  const auto area_at = [&](double c) {
    return polygon_area(clip_polygon_halfplane(body.vertices(), nrm, c));
  };
  const double c = bisect(lo, hi, w, params.bisect_max_iter, params.bisect_tol,
                          area_at);
  // Chord length: boundary edges of the clipped polygon lying on the cut.
  const auto clipped = clip_polygon_halfplane(body.vertices(), nrm, c);
  if (clipped.size() < 3) return std::nullopt;
  const double tol = 1e-9 * std::max(1.0, body.circumradius());
  double len = 0.0;
  const int m = static_cast<int>(clipped.size());
  for (int i = 0; i < m; ++i) {
    const Vector& a = clipped[i];
    const Vector& b = clipped[(i + 1) % m];
    if (std::abs(nrm.dot(a) - c) <= tol && std::abs(nrm.dot(b) - c) <= tol)
      len += (b - a).norm();
  }
  if (len <= 0.0) return std::nullopt;
  BoundResult res;
  res.value = len;
  res.witness.kind = "chord";
  res.witness.anchor = nrm;
  return res;
}

// Exact minimizers of a disk: circular arcs meeting the rim orthogonally.
// For the unit disk and arc radius s: volume atan(s) + s^2 atan(1/s) - s,
// free boundary length 2 s atan(1/s); both scale by L^2 and L.
std::optional<BoundResult> ortho_arc_candidate(const ConvexBody& body, double w,
                                               const UpperBoundParams& params) {
  const double L = body.ball_radius();
  const double v_rel = w / (L * L);
  if (v_rel >= kPi / 2 - 1e-12) return std::nullopt;  // chord takes over
  const auto vol = [](double s) {
    return std::atan(s) + s * s * std::atan(1.0 / s) - s;
  };
  double hi = 1.0;
  while (vol(hi) < v_rel && hi < 1e8) hi *= 2.0;
  const double s = bisect(1e-12, hi, v_rel, params.bisect_max_iter,
                          params.bisect_tol, vol);
  BoundResult res;
  res.value = 2.0 * L * s * std::atan(1.0 / s);
  res.witness.kind = "ortho_arc";
  res.witness.anchor = body.ball_center();
  res.witness.radius = L * s;
  return res;
}

std::optional<BoundResult> disk_chord_candidate(const ConvexBody& body, double w,
                                                const UpperBoundParams& params) {
  const double L = body.ball_radius();
  // Segment {x <= c} of the disk; area decreasing in c, so flip sign.
  const auto area = [&](double c) {
    return L * L * std::acos(std::clamp(c / L, -1.0, 1.0)) -
           c * std::sqrt(std::max(L * L - c * c, 0.0));
  };
  const auto increasing = [&](double t) { return area(-t); };
  const double t = bisect(-L, L, w, params.bisect_max_iter, params.bisect_tol,
                          increasing);
  const double c = -t;
  BoundResult res;
  res.value = 2.0 * std::sqrt(std::max(L * L - c * c, 0.0));
  if (res.value <= 0.0) return std::nullopt;
  res.witness.kind = "chord";
  res.witness.anchor = body.ball_center();
  return res;
}

std::optional<BoundResult> rim_ball_candidate(const ConvexBody& body,
                                              const Vector& p, double w,
                                              const UpperBoundParams& params) {
  MonteCarloParams mc;
  mc.seed = params.mc_seed;
  mc.samples = params.mc_samples;
  const double cap = exact_volume(body);
  if (w >= cap) return std::nullopt;
  const auto vol = [&](double r) {
    return metric_ball_volume(body, p, r, mc).value;
  };
  const double rmax = 2.0 * body.circumradius();
  const double r = bisect(1e-12, rmax, w, params.bisect_max_iter,
                          params.bisect_tol, vol);
  BoundResult res;
  res.value = metric_ball_free_boundary(body, p, r, mc);
  res.witness.kind = "boundary_ball";
  res.witness.is_ball = true;
  res.witness.anchor = p;
  res.witness.radius = r;
  return res;
}

bool is_axis_box(const ConvexBody& body) {
  if (!body.is_polytope()) return false;
  for (const auto& h : body.halfspaces()) {
    int nonzero = 0;
    for (int i = 0; i < h.normal.size(); ++i)
      if (std::abs(h.normal[i]) > 1e-12) ++nonzero;
    if (nonzero != 1) return false;
  }
  return true;
}

std::optional<BoundResult> box_slab_candidate(const ConvexBody& body, int axis,
                                              double w) {
  Vector lo, hi;
  body.bounding_box(lo, hi);
  double base = 1.0;
  for (int i = 0; i < body.dim(); ++i)
    if (i != axis) base *= hi[i] - lo[i];
  const double depth = w / base;
  if (depth <= 0.0 || depth >= hi[axis] - lo[axis]) return std::nullopt;
  BoundResult res;
  res.value = base;
  res.witness.kind = "slab";
  Vector n = Vector::Zero(body.dim());
  n[axis] = 1.0;
  res.witness.anchor = n;
  return res;
}

// Best candidate at raw volume w (no complements).
std::optional<BoundResult> raw_upper(const ConvexBody& body, double w,
                                     const UpperBoundParams& params) {
  std::optional<BoundResult> best;
  auto consider = [&](std::optional<BoundResult> cand) {
    if (!cand) return;
    if (!best || cand->value < best->value) best = std::move(cand);
  };
  MonteCarloParams mc;
  mc.seed = params.mc_seed;
  mc.samples = params.mc_samples;

  if (body.is_polytope()) {
    for (const auto& p : body.vertices())
      consider(wedge_ball_candidate(body, p, w, "vertex_ball", mc, params));
    for (const auto& p : boundary_sample_points(body, params.boundary_samples))
      consider(wedge_ball_candidate(body, p, w, "boundary_ball", mc, params));
    if (body.dim() == 2) {
      for (const auto& nrm : chord_directions(body))
        consider(chord_candidate_2d(body, nrm, w, params));
    } else if (is_axis_box(body)) {
      for (int a = 0; a < body.dim(); ++a)
        consider(box_slab_candidate(body, a, w));
    }
  } else if (body.dim() == 2) {
    consider(ortho_arc_candidate(body, w, params));
    consider(disk_chord_candidate(body, w, params));
    consider(rim_ball_candidate(
        body, body.ball_center() + body.ball_radius() * make_vec2(1, 0), w,
        params));
  } else {
    // 3D ball: rim balls only (Monte Carlo measures).
    consider(rim_ball_candidate(
        body, body.ball_center() + body.ball_radius() * make_vec3(1, 0, 0), w,
        params));
  }
  return best;
}

}  // namespace

BoundResult upper_bound(const ConvexBody& body, double v,
                        const UpperBoundParams& params) {
  const double total = exact_volume(body);
  if (!(v > 0.0) || !(v < total))
    throw VolumeOutOfRange("volume must lie in (0, |C|)");
  auto direct = raw_upper(body, v, params);
  auto mirrored = raw_upper(body, total - v, params);
  if (mirrored) mirrored->witness.is_complement = true;
  std::optional<BoundResult> best;
  if (direct) best = *direct;
  if (mirrored && (!best || mirrored->value < best->value)) best = *mirrored;
  if (!best)
    throw Error("empty candidate family at v=" + format12(v));
  return *best;
}

double ball_half_volume_profile_constant(int n) {
  return unit_ball_volume(n) /
         std::pow(0.5 * unit_ball_volume(n + 1),
                  static_cast<double>(n) / (n + 1));
}

double lower_bound_ball_transfer(const ConvexBody& body, double v, int n_pairs,
                                 std::uint64_t seed, int workers) {
  const double total = exact_volume(body);
  if (!(v > 0.0) || !(v < total))
    throw VolumeOutOfRange("volume must lie in (0, |C|)");
  const int n = body.dim() - 1;
  const ConvexBody centered = body.centered();
  const ConvexBody ball =
      ConvexBody::make_ball(Vector::Zero(body.dim()), centered.circumradius());
  const TransportMap map = build_map(centered, ball);
  const DilatationEstimate est = empirical_lip(map, n_pairs, seed, workers);
  const double M = ball_half_volume_profile_constant(n) /
                   std::pow(est.lip_forward * est.lip_inverse, n);
  return M * std::pow(std::min(v, total - v),
                      static_cast<double>(n) / (n + 1));
}

double lower_bound_half_profile(const ConvexBody& body, double v,
                                double I_half) {
  const double total = exact_volume(body);
  if (!(v > 0.0) || !(v < total))
    throw VolumeOutOfRange("volume must lie in (0, |C|)");
  const int n = body.dim() - 1;
  const double expo = static_cast<double>(n) / (n + 1);
  return I_half * std::pow(std::min(v, total - v) / (0.5 * total), expo);
}

ProfileCurve profile_curve(const ConvexBody& body,
                           const std::vector<double>& v_grid,
                           const ProfileMethods& methods,
                           const ProfileParams& params) {
  ProfileCurve curve;
  curve.n = body.dim() - 1;
  curve.total_volume = exact_volume(body);
  for (double v : v_grid) {
    if (!(v > 0.0) || !(v < curve.total_volume))
      throw VolumeOutOfRange("curve volume grid must lie inside (0, |C|)");
  }

  if (methods.upper) {
    std::vector<ProfileSample> rows(v_grid.size());
    parallel_for_index(v_grid.size(), params.workers, [&](std::size_t i) {
      const auto b = upper_bound(body, v_grid[i], params.upper);
      rows[i] = {v_grid[i], b.value, Provenance::UpperBound, 0.0,
                 b.witness.describe()};
    });
    for (auto& s : rows) curve.insert(std::move(s));
  }
  if (methods.lower) {
    // One transfer map serves the whole grid: M does not depend on v.
    const double probe = lower_bound_ball_transfer(
        body, curve.total_volume / 2, params.lower_pairs, params.seed,
        params.workers);
    const int n = curve.n;
    const double M = probe / std::pow(curve.total_volume / 2,
                                      static_cast<double>(n) / (n + 1));
    for (double v : v_grid) {
      curve.insert({v,
                    M * std::pow(std::min(v, curve.total_volume - v),
                                 static_cast<double>(n) / (n + 1)),
                    Provenance::LowerBound, 0.0, "ball_transfer"});
    }
  }
  if (methods.oracle) {
    auto grid = make_grid(body, params.resolution);
    AnnealParams anneal;
    anneal.seed = params.seed;
    anneal.workers = params.workers;
    for (double v : v_grid) {
      auto res = grid_oracle_on_grid(grid, v, params.oracle_strategy, anneal);
      curve.insert({v, res.perimeter, Provenance::Oracle, res.uncertainty,
                    "grid_region n=" + std::to_string(res.region.cell_count)});
    }
  }
  return curve;
}

namespace {
double y_uncertainty(int n, double value, double uncertainty) {
  if (uncertainty <= 0.0) return 0.0;
  const double expo = static_cast<double>(n + 1) / n;
  return expo * std::pow(value, 1.0 / n) * uncertainty;
}
}  // namespace

AuditReport concavity_audit(const ProfileCurve& curve, double tol,
                            Provenance p) {
  const auto pts = curve.with_provenance(p);
  AuditReport report;
  if (pts.size() < 3) {
    report.add({"concavity:samples", false, static_cast<double>(pts.size()), 3});
    return report;
  }
  const double total = curve.total_volume;
  const double expo = static_cast<double>(curve.n + 1) / curve.n;

  double worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
    const double l0 = pts[i - 1].v / total, l1 = pts[i].v / total,
                 l2 = pts[i + 1].v / total;
    const double y0 = std::pow(pts[i - 1].value, expo),
                 y1 = std::pow(pts[i].value, expo),
                 y2 = std::pow(pts[i + 1].value, expo);
    const double d1 = l1 - l0, d2 = l2 - l1;
    const double second = (y2 - y1) / d2 - (y1 - y0) / d1;
    const double slack =
        3.0 * (y_uncertainty(curve.n, pts[i - 1].value, pts[i - 1].uncertainty) / d1 +
               y_uncertainty(curve.n, pts[i].value, pts[i].uncertainty) *
                   (1.0 / d1 + 1.0 / d2) +
               y_uncertainty(curve.n, pts[i + 1].value, pts[i + 1].uncertainty) / d2);
    worst_excess = std::max(worst_excess, second - slack);
  }
  report.add({"concavity:max_positive_second_difference", worst_excess <= tol,
              worst_excess, tol});

  double sym_defect = 0.0, sym_slack = 0.0;
  for (const auto& s : pts) {
    const double mirror_v = total - s.v;
    for (const auto& t : pts) {
      if (std::abs(t.v - mirror_v) <= 1e-9 * total) {
        if (std::abs(s.value - t.value) > sym_defect) {
          sym_defect = std::abs(s.value - t.value);
          sym_slack = 3.0 * (s.uncertainty + t.uncertainty);
        }
      }
    }
  }
  report.add({"symmetry:max_defect", sym_defect <= tol + sym_slack, sym_defect,
              tol + sym_slack});

  double mono_violation = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double slack = tol + 3.0 * (pts[i].uncertainty + pts[i + 1].uncertainty);
    if (pts[i + 1].v <= total / 2 + 1e-12) {
      mono_violation =
          std::max(mono_violation, pts[i].value - pts[i + 1].value - slack);
    }
    if (pts[i].v >= total / 2 - 1e-12) {
      mono_violation =
          std::max(mono_violation, pts[i + 1].value - pts[i].value - slack);
    }
  }
  report.add({"monotone_to_midpoint:max_violation", mono_violation <= 0.0,
              mono_violation, 0.0});
  return report;
}

AuditReport scaling_audit(const ConvexBody& body, double lambda,
                          const std::vector<double>& v_grid,
                          const UpperBoundParams& params) {
  if (!(lambda > 0.0)) throw InvalidArgument("lambda must be positive");
  AuditReport report;
  const int n = body.dim() - 1;
  const ConvexBody scaled = body.scaled(lambda);
  const double pow_vol = std::pow(lambda, n + 1);
  const double pow_per = std::pow(lambda, n);

  double eq_defect = 0.0;
  for (double v : v_grid) {
    const double u1 = upper_bound(body, v, params).value;
    const double u2 = upper_bound(scaled, pow_vol * v, params).value;
    eq_defect = std::max(eq_defect, std::abs(u2 - pow_per * u1));
  }
  report.add({"scaling:equality_defect", eq_defect <= 1e-9, eq_defect, 1e-9});

  const ConvexBody& big = lambda >= 1.0 ? scaled : body;
  const ConvexBody& small = lambda >= 1.0 ? body : scaled;
  const double small_total = exact_volume(small);
  double one_sided = std::numeric_limits<double>::infinity();
  for (double v : v_grid) {
    if (!(v > 0.0) || !(v < small_total)) continue;
    one_sided = std::min(one_sided, upper_bound(big, v, params).value -
                                        upper_bound(small, v, params).value);
  }
  report.add({"scaling:one_sided_defect", one_sided >= -1e-9, one_sided, -1e-9});
  return report;
}

AuditReport strict_subadditivity_probe(
    const ProfileCurve& curve,
    const std::vector<std::pair<double, double>>& pairs, Provenance p) {
  AuditReport report;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool all_positive = true;
  for (const auto& [v1, v2] : pairs) {
    if (!(v1 > 0.0) || !(v2 > 0.0) || !(v1 + v2 < curve.total_volume))
      throw VolumeOutOfRange("pair volumes must satisfy v1+v2 < |C|");
    const double m = curve.interpolate(v1, p) + curve.interpolate(v2, p) -
                     curve.interpolate(v1 + v2, p);
    // conservative uncertainty: largest sample bar, three evaluation points
    double u = 0.0;
    for (const auto& s : curve.with_provenance(p)) u = std::max(u, s.uncertainty);
    const double need = 3.0 * 3.0 * u;
    worst_margin = std::min(worst_margin, m - need);
    all_positive = all_positive && (m > need);
  }
  report.add({"strict_subadditivity:min_margin_beyond_uncertainty",
              all_positive, worst_margin, 0.0});
  return report;
}

CurvatureReport curvature_audit(const ProfileCurve& curve,
                                const ConvexBody& body, double v, double tol,
                                const UpperBoundParams& params) {
  const double total = exact_volume(body);
  if (!(v > 0.0) || !(v < total))
    throw VolumeOutOfRange("volume must lie in (0, |C|)");
  const int n = body.dim() - 1;
  const auto bound = upper_bound(body, v, params);
  if (!bound.witness.is_ball || bound.witness.is_complement)
    throw WitnessNotBall("upper-bound witness at v is " +
                         bound.witness.describe());
  CurvatureReport rep;
  rep.v = v;
  rep.witness_curvature = n / bound.witness.radius;
  const double delta = 1e-3 * std::min(v, total - v);
  rep.derivative = (upper_bound(body, v + delta, params).value -
                    upper_bound(body, v - delta, params).value) /
                   (2.0 * delta);

  // m from half volume, M = sup Y(v)/v over the curve (upper samples if
  // present, otherwise a fresh evaluation grid).
  double I_half;
  try {
    I_half = curve.interpolate(total / 2, Provenance::UpperBound);
  } catch (const InvalidArgument&) {
    I_half = upper_bound(body, total / 2, params).value;
  }
  const double m = I_half / std::pow(total / 2, static_cast<double>(n) / (n + 1));
  double M = 0.0;
  auto pts = curve.with_provenance(Provenance::UpperBound);
  if (pts.empty()) {
    for (int i = 1; i <= 16; ++i) {
      const double w = total * i / 17.0;
      pts.push_back({w, upper_bound(body, w, params).value,
                     Provenance::UpperBound, 0.0, ""});
    }
  }
  const double expo = static_cast<double>(n + 1) / n;
  for (const auto& s : pts) M = std::max(M, std::pow(s.value, expo) / s.v);
  rep.scale_invariant_lhs = std::pow(v, 1.0 / (n + 1)) * rep.witness_curvature;
  rep.scale_invariant_rhs = M * n / ((n + 1) * std::pow(m, 1.0 / n));
  rep.pass = std::abs(rep.derivative - rep.witness_curvature) <= tol &&
             rep.scale_invariant_lhs <= rep.scale_invariant_rhs + 1e-9;
  return rep;
}

std::string curve_to_csv(const ProfileCurve& curve) {
  std::ostringstream os;
  os << "v,method,value,uncertainty,witness\n";
  for (const auto& s : curve.samples) {
    std::string witness = s.witness;
    std::replace(witness.begin(), witness.end(), ',', ';');
    os << format12(s.v) << "," << provenance_name(s.provenance) << ","
       << format12(s.value) << "," << format12(s.uncertainty) << "," << witness
       << "\n";
  }
  return os.str();
}

ProfileCurve curve_from_csv(const std::string& text, const std::string& body_id,
                            int n, double total_volume) {
  ProfileCurve curve;
  curve.body_id = body_id;
  curve.n = n;
  curve.total_volume = total_volume;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("v,", 0) == 0) continue;
    std::istringstream ls(line);
    std::string field;
    ProfileSample s;
    std::getline(ls, field, ',');
    s.v = std::stod(field);
    std::getline(ls, field, ',');
    s.provenance = provenance_from_name(field);
    std::getline(ls, field, ',');
    s.value = std::stod(field);
    if (std::getline(ls, field, ',')) s.uncertainty = std::stod(field);
    std::getline(ls, s.witness);
    curve.insert(std::move(s));
  }
  return curve;
}

}  // namespace isoprofile
