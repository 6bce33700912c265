#ifndef ISOPROFILE_CONVERGENCE_HPP
#define ISOPROFILE_CONVERGENCE_HPP

#include <cstdint>
#include <map>
#include <string>

#include "isoprofile/cones.hpp"
#include "isoprofile/profile.hpp"

namespace isoprofile {

/// Regular k-gons inscribed in a disk; Hausdorff distance to the disk is
/// radius * (1 - cos(pi/k)).
std::vector<ConvexBody> inscribed_polygon_sequence(double disk_radius,
                                                   const std::vector<int>& k_list);

/// Per-k metrics table plus trend checks.
struct ExperimentResult {
  std::string name;
  std::vector<std::string> columns;  // first column is k (or v)
  std::vector<std::vector<double>> rows;
  std::vector<CheckResult> checks;
  bool pass = true;

  void add_check(CheckResult c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
};

struct ExperimentParams {
  std::uint64_t seed = 0;
  int workers = 1;
  int resolution = 64;
  int map_pairs = 20000;
  double profile_tol = 0.05;   // final sup deviation of J
  double dilatation_tol = 1e-2;
};

/// sup over the lambda grid of |J_{C_k} - J_limit| from upper-bound curves;
/// requires the deviation to be nonincreasing over the last three k and below
/// profile_tol at the final k.  Adds a grid-oracle spot value of
/// J(1/2) for the final body.
ExperimentResult profile_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    const std::vector<double>& lambda_grid, const ExperimentParams& params);

/// Dilatations of the radial maps limit -> C_k; both must approach 1.
ExperimentResult dilatation_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    const ExperimentParams& params);

/// Grid-oracle minimizers at fixed lambda: symmetric-difference volume,
/// Hausdorff distance of the cell unions, and of the discrete free
/// boundaries, after canonicalization (rotation aligning the region centroid
/// direction, reflection making the transverse skew nonnegative).
ExperimentResult region_convergence_experiment(
    const std::vector<ConvexBody>& sequence, const ConvexBody& limit,
    double lambda, const ExperimentParams& params);

/// Small-volume behavior against the minimal tangent cone: upper-bound and
/// oracle ratios to I_{C_min}, the witness's nearest vertex, and the
/// Hausdorff distance of the rescaled witness to the unit-volume geodesic
/// ball at that vertex.
ExperimentResult small_volume_experiment(const ConvexBody& body,
                                         const std::vector<double>& v_list,
                                         const ExperimentParams& params);

/// Wraps semicontinuity_probe with approach points on the facets incident to
/// a vertex at dyadic distances.
ExperimentResult semicontinuity_experiment(const ConvexBody& body,
                                           int vertex_index, int steps);

/// Experiment spec files:
/// {"name":..., "generator":{"kind":"inscribed_polygons","disk_radius":r,
///  "k_list":[...]}, "lambda_grid":[...] or "lambda":l or "v_list":[...],
///  "resolution":N, "seed":S, "tolerances":{...}, "body":"path", ...}
struct ExperimentSpec {
  std::string name;
  std::string generator_kind;
  double disk_radius = 1.0;
  std::vector<int> k_list;
  std::vector<double> lambda_grid;
  double lambda = 0.5;
  std::vector<double> v_list;
  std::string body_path;
  int vertex_index = 0;
  int steps = 6;
  int resolution = 64;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;
};

ExperimentSpec experiment_from_json_string(const std::string& text);
ExperimentSpec load_experiment(const std::string& path);

/// Dispatches on spec.name: profile_convergence, dilatation_convergence,
/// region_convergence, small_volume, semicontinuity.
ExperimentResult run_experiment(const ExperimentSpec& spec, int workers);

std::string experiment_table_csv(const ExperimentResult& result);
std::string experiment_verdict_json(const ExperimentResult& result);

}  // namespace isoprofile

#endif
