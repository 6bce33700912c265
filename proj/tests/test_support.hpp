#ifndef ISOPROFILE_TEST_SUPPORT_HPP
#define ISOPROFILE_TEST_SUPPORT_HPP

#include <cmath>
#include <memory>
#include <vector>

#include "isoprofile/convex_body.hpp"
#include "isoprofile/grid_region.hpp"

namespace isoprofile::testsupport {

inline ConvexBody unit_square() {
  return make_polytope({make_vec2(0, 0), make_vec2(1, 0), make_vec2(1, 1),
                        make_vec2(0, 1)});
}

inline ConvexBody triangle_345() {
  return make_polytope({make_vec2(0, 0), make_vec2(4, 0), make_vec2(0, 3)});
}

inline ConvexBody unit_disk() {
  return ConvexBody::make_ball(make_vec2(0, 0), 1.0);
}

inline ConvexBody regular_ngon(int k, double radius = 1.0) {
  std::vector<Vector> pts;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * kPi * i / k;
    pts.push_back(make_vec2(radius * std::cos(t), radius * std::sin(t)));
  }
  return make_polytope(pts);
}

/// Non-minimizer for density audits: a small solid lump in the middle of the
/// grid plus two checkerboard patches tucked into opposite corners.  Probes
/// near the lump see an epsilon-sparse big ball whose half ball still holds
/// the lump, which a genuine minimizer cannot produce.
inline GridRegion dichotomy_negative_control(std::shared_ptr<const Grid> grid) {
  const Grid& g = *grid;
  std::vector<int> cells;
  auto add_if_in_body = [&](int ix, int iy) {
    if (ix < 0 || iy < 0 || ix >= g.dims[0] || iy >= g.dims[1]) return;
    const int c = g.flat({ix, iy});
    if (g.in_body[c]) cells.push_back(c);
  };
  const int cx = g.dims[0] / 2, cy = g.dims[1] / 2;
  for (int i = -1; i <= 1; ++i)
    for (int j = -1; j <= 1; ++j) add_if_in_body(cx + i, cy + j);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) {
      add_if_in_body(1 + 2 * i, 1 + 2 * j);
      add_if_in_body(g.dims[0] - 2 - 2 * i, g.dims[1] - 2 - 2 * j);
    }
  }
  return make_region(grid, cells);
}

}  // namespace isoprofile::testsupport

#endif
