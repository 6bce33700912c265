#ifndef ISOPROFILE_DENSITY_HPP
#define ISOPROFILE_DENSITY_HPP

#include <cstdint>
#include <string>

#include "isoprofile/grid_region.hpp"

namespace isoprofile {

enum class DensityVerdict { Vacuous, Pass, Fail };

struct DensityProbe {
  Vector x;
  double R = 0.0;
  double h_R = 0.0;
  double h_halfR = 0.0;
  double grid_tol = 0.0;
  DensityVerdict verdict = DensityVerdict::Vacuous;
};

struct LowerDensityProbe {
  Vector x;
  double r = 0.0;
  double perimeter_in_ball = 0.0;
  double threshold = 0.0;  // M r^n
  bool pass = true;
  bool skipped = false;
};

struct DensityReport {
  std::string body_id;
  std::string region_id;
  double epsilon = 0.0;
  std::vector<DensityProbe> probes;
  std::vector<LowerDensityProbe> lower_density;
  int vacuous = 0, passes = 0, fails = 0;
  bool pass = true;  // no Fail verdicts
};

/// h(E,C,x,R) = min(|E ∩ B_C(x,R)|, |B_C(x,R) \ E|) / |B_C(x,R)|, measured
/// in cells against the exact metric-ball volume and clamped to [0, 1/2].
double h_value(const GridRegion& region, const ConvexBody& body,
               const Vector& x, double R);

/// Largest c2 in (0,1) with s^{-n/(n+1)}((1-s)^{n/(n+1)} - 1) >= -1/2 on
/// [0, c2], via bisection on the decreasing profile (tolerance 1e-10).
double c2_constant(int n);

/// 0.99 times the six-term minimum
/// min{v/l2, (V-v)/l2, c2 v, c2 (V-v), I^{n+1}/(l2 8^{n+1} v^n),
///     I^{n+1}/(l2 8^{n+1} (V-v)^n)}.
double epsilon_threshold(int n, double v, double total_volume, double I_v,
                         double ell2);

/// Sampled Ahlfors lower constant: min over boundary points of
/// |B_C(x, r0)| / r0^{n+1} at r0 = min(1, inradius).
double ahlfors_lower_constant(const ConvexBody& body, int samples = 256);

struct DensityParams {
  int probe_count = 512;
  std::uint64_t seed = 0;
  /// <= 0 selects the per-probe default (2 + R/(8h)) cells over the ball
  /// volume; a discrete zero cannot be exact.
  double grid_tol = -1.0;
  int workers = 1;
};

/// For each probe (x, R): Vacuous when h(x,R) > eps, otherwise Pass iff
/// h(x, R/2) <= grid_tol.  Probes are drawn half uniformly in the body and
/// half near the region's discrete boundary; R is uniform in (4h, R_max]
/// with R_max = min(1, circumradius).
DensityReport dichotomy_check(const GridRegion& region, const ConvexBody& body,
                              double epsilon, const DensityParams& params);

/// P(E, B_C(x,r)) >= M r^n on free-boundary probes, with
/// M = (l1 eps)^{n/(n+1)} times the relative isoperimetric constant obtained
/// from the transfer-map bound for metric balls.
std::vector<LowerDensityProbe> lower_density_check(const GridRegion& region,
                                                   const ConvexBody& body,
                                                   double epsilon,
                                                   const DensityParams& params);

std::string density_report_to_json(const DensityReport& report);

}  // namespace isoprofile

#endif
