#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoprofile/density.hpp"
#include "isoprofile/oracle.hpp"
#include "isoprofile/profile.hpp"
#include "test_support.hpp"

using namespace isoprofile;
using namespace isoprofile::testsupport;

TEST_CASE("h function") {
  auto sq = unit_square();
  auto grid = make_grid(sq, 32);

  SUBCASE("half split at the center") {
    std::vector<int> lower;
    for (int c : grid->in_body_cells)
      if (grid->cell_center(c)[1] < 0.5) lower.push_back(c);
    auto region = make_region(grid, lower);
    CHECK(h_value(region, sq, make_vec2(0.5, 0.5), 0.2) ==
          doctest::Approx(0.5).epsilon(0.02));
  }

  SUBCASE("empty region probes to zero") {
    auto region = make_region(grid, {});
    CHECK(h_value(region, sq, make_vec2(0.5, 0.5), 0.2) == 0.0);
    CHECK(h_value(region, sq, make_vec2(0.1, 0.9), 0.3) == 0.0);
  }

  SUBCASE("region disjoint from the probe ball") {
    // small blob at the lower-left corner
    std::vector<int> blob;
    for (int c : grid->in_body_cells)
      if (grid->cell_center(c).norm() < 0.25) blob.push_back(c);
    auto region = make_region(grid, blob);
    CHECK(h_value(region, sq, make_vec2(1.0, 1.0), 0.1) == 0.0);
  }
}

TEST_CASE("c2 constant") {
  CHECK(c2_constant(1) == doctest::Approx(16.0 / 25.0).epsilon(1e-10));
  for (int n : {1, 2, 3, 4}) {
    const double c2 = c2_constant(n);
    CHECK(c2 > 0.0);
    CHECK(c2 < 1.0);
    const double expo = static_cast<double>(n) / (n + 1);
    const double f1 = std::pow(c2, -expo) * (std::pow(1 - c2, expo) - 1.0);
    CHECK(f1 == doctest::Approx(-0.5).epsilon(1e-9));
  }
}

TEST_CASE("epsilon threshold") {
  // Worked arithmetic for the unit square at v = 0.1 with I = sqrt(0.1 pi):
  // the last term binds and equals 0.1*pi / (pi * 64 * 0.9).
  const double I = std::sqrt(0.1 * kPi);
  const double eps = epsilon_threshold(1, 0.1, 1.0, I, kPi);
  CHECK(eps == doctest::Approx(0.99 * 0.1 / (64.0 * 0.9)).epsilon(1e-12));

  SUBCASE("symmetric volume pairs terms up") {
    const double at_half = epsilon_threshold(1, 0.5, 1.0, 1.0, kPi);
    const double t1 = 0.5 / kPi;
    const double t3 = c2_constant(1) * 0.5;
    const double t5 = 1.0 / (kPi * 64.0 * 0.5);
    CHECK(at_half ==
          doctest::Approx(0.99 * std::min({t1, t3, t5})).epsilon(1e-12));
  }

  SUBCASE("vanishing profile value forces epsilon to zero") {
    CHECK(epsilon_threshold(1, 0.1, 1.0, 1e-6, kPi) <= 1e-11);
    CHECK_THROWS_AS(epsilon_threshold(1, 0.0, 1.0, 1.0, kPi), InvalidVolume);
    CHECK_THROWS_AS(epsilon_threshold(1, 0.1, 1.0, 0.0, kPi), InvalidVolume);
  }
}

TEST_CASE("ahlfors lower constant") {
  auto sq = unit_square();
  const double ell1 = ahlfors_lower_constant(sq);
  // Worst boundary points are corners: quarter disks, |B| = pi r^2 / 4.
  CHECK(ell1 <= kPi / 4 + 1e-9);
  CHECK(ell1 >= kPi / 4 - 0.05);
}

TEST_CASE("dichotomy on an oracle minimizer: no failures") {
  auto sq = unit_square();
  AnnealParams anneal;
  anneal.seed = 5;
  anneal.workers = 2;
  auto oracle = grid_oracle(sq, 0.25, 64, OracleStrategy::Anneal, anneal);
  const double eps =
      epsilon_threshold(1, 0.25, 1.0, oracle.perimeter, kPi);
  DensityParams params;
  params.probe_count = 256;
  params.seed = 42;
  params.workers = 2;
  auto report = dichotomy_check(oracle.region, sq, eps, params);
  CHECK(report.fails == 0);
  CHECK(report.passes > 0);  // some probes genuinely in the vacuum zone

  SUBCASE("lower density bound holds on the free boundary") {
    auto lows = lower_density_check(oracle.region, sq, eps, params);
    int checked = 0;
    for (const auto& p : lows) {
      if (p.skipped) continue;
      ++checked;
      CHECK(p.pass);
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("checkerboard negative control fails somewhere") {
  auto sq = unit_square();
  auto grid = make_grid(sq, 64);
  auto control = dichotomy_negative_control(grid);
  const double eps = epsilon_threshold(
      1, control.volume(), 1.0, boundary_length_estimate(control), kPi);
  DensityParams params;
  params.probe_count = 512;
  params.seed = 42;
  params.workers = 2;
  auto report = dichotomy_check(control, sq, eps, params);
  CHECK(report.fails >= 1);
}

TEST_CASE("density report serializes") {
  auto sq = unit_square();
  auto grid = make_grid(sq, 16);
  std::vector<int> blob;
  for (int c : grid->in_body_cells)
    if (grid->cell_center(c).norm() < 0.4) blob.push_back(c);
  auto region = make_region(grid, blob);
  DensityParams params;
  params.probe_count = 16;
  params.seed = 1;
  auto report = dichotomy_check(region, sq, 0.01, params);
  auto text = density_report_to_json(report);
  CHECK(text.find("\"probes\"") != std::string::npos);
  CHECK(text.find("\"epsilon\"") != std::string::npos);
}
