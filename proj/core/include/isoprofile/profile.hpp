#ifndef ISOPROFILE_PROFILE_HPP
#define ISOPROFILE_PROFILE_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "isoprofile/convex_body.hpp"
#include "isoprofile/oracle.hpp"

namespace isoprofile {

enum class Provenance { Analytic, UpperBound, LowerBound, Oracle };

std::string provenance_name(Provenance p);
Provenance provenance_from_name(const std::string& name);

struct ProfileSample {
  double v = 0.0;
  double value = 0.0;
  Provenance provenance = Provenance::UpperBound;
  double uncertainty = 0.0;
  std::string witness;
};

/// Sampled (v, I(v)) data for one body, with provenance per sample.
struct ProfileCurve {
  std::string body_id;
  int n = 1;  // ambient dimension is n + 1
  double total_volume = 0.0;
  std::vector<ProfileSample> samples;  // sorted by (v, provenance)

  std::vector<ProfileSample> with_provenance(Provenance p) const;
  void insert(ProfileSample s);
  /// Piecewise-linear interpolation within one provenance.
  double interpolate(double v, Provenance p) const;
};

/// v -> Y = I^{(n+1)/n}, lambda -> J = I(lambda |C|), lambda -> y = J^{(n+1)/n}.
struct NormalizedCurves {
  std::vector<std::pair<double, double>> Y;
  std::vector<std::pair<double, double>> J;
  std::vector<std::pair<double, double>> y;
};
NormalizedCurves normalizations(const ProfileCurve& curve,
                                Provenance p = Provenance::UpperBound);

struct Witness {
  std::string kind;  // "vertex_ball", "boundary_ball", "chord", "ortho_arc",
                     // "slab"; complements carry is_complement
  bool is_ball = false;
  bool is_complement = false;
  Vector anchor;       // ball center or cut direction
  double radius = 0.0; // ball radius (meaningful when is_ball)
  std::string describe() const;
};

struct BoundResult {
  double value = 0.0;
  Witness witness;
};

struct UpperBoundParams {
  int boundary_samples = 64;
  double bisect_tol = 1e-10;  // on volume
  int bisect_max_iter = 200;
  std::uint64_t mc_seed = 0;      // 3D ball measures
  std::int64_t mc_samples = 200000;
};

/// Least relative perimeter over the candidate family: geodesic balls at
/// vertices and boundary samples (within their wedge-exact radius), straight
/// chords orthogonal to edge normals (2D polytopes), boundary-orthogonal
/// arcs and chords for 2D balls, axis slabs for 3D boxes, and complements of
/// all of these for v > |C|/2.
BoundResult upper_bound(const ConvexBody& body, double v,
                        const UpperBoundParams& params = {});

/// Constant of the flat cut at half volume for the unit ball of R^{n+1}:
/// omega_n / (omega_{n+1}/2)^{n/(n+1)}.  Scale-invariant.
double ball_half_volume_profile_constant(int n);

/// I_C(v) >= M * min{v, |C|-v}^{n/(n+1)} with
/// M = M_ball(n) / (Lip(f) Lip(f^{-1}))^n for the radial map onto the
/// circumscribed ball; dilatations are estimated empirically.
double lower_bound_ball_transfer(const ConvexBody& body, double v,
                                 int n_pairs = 20000, std::uint64_t seed = 0,
                                 int workers = 1);

/// I_C(v) >= I_half * (min{v,|C|-v} / (|C|/2))^{n/(n+1)} from a trusted value
/// at half volume.
double lower_bound_half_profile(const ConvexBody& body, double v,
                                double I_half);

struct ProfileMethods {
  bool upper = true;
  bool lower = false;
  bool oracle = false;
};

struct ProfileParams {
  UpperBoundParams upper;
  int resolution = 64;
  std::uint64_t seed = 0;
  int lower_pairs = 20000;
  int workers = 1;
  OracleStrategy oracle_strategy = OracleStrategy::Anneal;
};

ProfileCurve profile_curve(const ConvexBody& body,
                           const std::vector<double>& v_grid,
                           const ProfileMethods& methods,
                           const ProfileParams& params = {});

struct CheckResult {
  std::string name;
  bool pass = true;
  double value = 0.0;      // measured defect / margin
  double threshold = 0.0;  // allowed
};

struct AuditReport {
  std::vector<CheckResult> checks;
  bool pass = true;
  void add(CheckResult c) {
    pass = pass && c.pass;
    checks.push_back(std::move(c));
  }
};

/// Concavity of y = J^{(n+1)/n} (max positive second divided difference),
/// symmetry about |C|/2, and monotonicity toward the midpoint, for the given
/// provenance.  Sample uncertainties widen the concavity threshold by their
/// propagated 3-sigma combination.
AuditReport concavity_audit(const ProfileCurve& curve, double tol,
                            Provenance p = Provenance::UpperBound);

/// I_{lambda C}(lambda^{n+1} v) = lambda^n I_C(v) (equality defect) and, for
/// the dilating direction, I_{lambda C}(v) >= I_C(v) (one-sided defect), on
/// upper-bound curves.
AuditReport scaling_audit(const ConvexBody& body, double lambda,
                          const std::vector<double>& v_grid,
                          const UpperBoundParams& params = {});

/// Margins I(v1) + I(v2) - I(v1+v2), which must stay positive beyond the
/// combined uncertainty.
AuditReport strict_subadditivity_probe(
    const ProfileCurve& curve, const std::vector<std::pair<double, double>>& pairs,
    Provenance p = Provenance::UpperBound);

struct CurvatureReport {
  double v = 0.0;
  double derivative = 0.0;     // central difference of the upper-bound curve
  double witness_curvature = 0.0;  // n / rho for the ball witness
  double scale_invariant_lhs = 0.0;   // v^{1/(n+1)} H
  double scale_invariant_rhs = 0.0;   // M n / ((n+1) m^{1/n})
  std::string convention = "H = sum of principal curvatures (1/rho in 2D)";
  bool pass = true;
};

/// Compares dI/dv at v with the witness ball curvature; throws WitnessNotBall
/// when the upper-bound witness at v is not a geodesic ball.
CurvatureReport curvature_audit(const ProfileCurve& curve,
                                const ConvexBody& body, double v,
                                double tol = 1e-3,
                                const UpperBoundParams& params = {});

// Profile CSV rows: v,method,value,uncertainty,witness (12 significant
// digits; '#'-prefixed metadata lines are ignored on read).
std::string curve_to_csv(const ProfileCurve& curve);
ProfileCurve curve_from_csv(const std::string& text, const std::string& body_id,
                            int n, double total_volume);

}  // namespace isoprofile

#endif
