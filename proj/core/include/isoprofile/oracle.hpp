#ifndef ISOPROFILE_ORACLE_HPP
#define ISOPROFILE_ORACLE_HPP

#include <cstdint>

#include "isoprofile/grid_region.hpp"

namespace isoprofile {

enum class OracleStrategy { Exhaustive, Anneal };

struct AnnealParams {
  std::uint64_t seed = 0;
  int restarts = 8;
  int sweeps = 400;
  double cooling = 0.995;  // per sweep; T0 = 2 h^n
  int workers = 1;
};

struct OracleResult {
  GridRegion region;
  /// Minimized objective: boundary_length_estimate of the witness.
  double perimeter = 0.0;
  /// Face-count relative perimeter of the same witness.
  double face_perimeter = 0.0;
  /// Heuristic error bar: h times the witness perimeter.
  double uncertainty = 0.0;
};

/// Discrete perimeter minimizer at fixed cell count round(v_target / h^{n+1}).
///
/// Exhaustive enumerates all subsets of that cardinality (in-body cell count
/// must be <= 24) and returns the true discrete minimum.  Anneal runs seeded
/// restarts of fixed-cardinality swap annealing (remove a boundary cell, add
/// a frontier cell; one sweep = max(64, k) proposals) followed by a greedy
/// boundary-smoothing pass, and returns the best restart; deterministic for a
/// fixed (seed, restart count).
OracleResult grid_oracle(const ConvexBody& body, double v_target,
                         int resolution, OracleStrategy strategy,
                         const AnnealParams& params = {});

/// Same, on a prebuilt grid (shared across volumes).
OracleResult grid_oracle_on_grid(std::shared_ptr<const Grid> grid,
                                 double v_target, OracleStrategy strategy,
                                 const AnnealParams& params = {});

}  // namespace isoprofile

#endif
