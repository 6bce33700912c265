#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoprofile/convergence.hpp"
#include "test_support.hpp"

using namespace isoprofile;
using namespace isoprofile::testsupport;

TEST_CASE("inscribed polygon sequence") {
  auto seq = inscribed_polygon_sequence(1.0, {3, 4, 8, 16});
  CHECK(seq.size() == 4);
  CHECK(seq[0].vertices().size() == 3);
  CHECK(seq[1].vertices().size() == 4);
  auto disk = unit_disk();
  double prev = 1e18;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const int k = static_cast<int>(seq[i].vertices().size());
    const double d = hausdorff_distance(seq[i], disk);
    CHECK(d == doctest::Approx(1.0 - std::cos(kPi / k)).epsilon(1e-9));
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("profile convergence toward the disk") {
  auto seq = inscribed_polygon_sequence(1.0, {8, 16, 32});
  auto disk = unit_disk();
  std::vector<double> lambda_grid;
  for (double lam = 0.1; lam < 0.95; lam += 0.1) lambda_grid.push_back(lam);
  ExperimentParams params;
  params.seed = 3;
  params.workers = 2;
  params.resolution = 48;
  auto res = profile_convergence_experiment(seq, disk, lambda_grid, params);
  CHECK(res.pass);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[2][1] <= 0.05);
  CHECK(res.rows[0][1] >= res.rows[2][1]);
  // oracle spot value at lambda=1/2 near the diameter chord of the 32-gon
  CHECK(std::abs(res.rows[2][2] - 2.0) <= 0.12);

  SUBCASE("constant sequence has zero deviation") {
    std::vector<ConvexBody> constant = {disk, disk};
    auto zero = profile_convergence_experiment(constant, disk, lambda_grid,
                                               params);
    CHECK(zero.rows[0][1] == doctest::Approx(0.0));
    CHECK(zero.rows[1][1] == doctest::Approx(0.0));
  }
}

TEST_CASE("dilatation convergence toward the disk") {
  // The map's dilatation behaves like 1 + tan(pi/k)/2, so the 1% gate needs
  // k beyond ~160; the op itself is checked on a longer tail.
  auto seq = inscribed_polygon_sequence(1.0, {64, 128, 256});
  auto disk = unit_disk();
  ExperimentParams params;
  params.seed = 5;
  params.workers = 2;
  params.map_pairs = 8000;
  auto res = dilatation_convergence_experiment(seq, disk, params);
  CHECK(res.pass);
  CHECK(res.rows[2][1] <= 1.01);
  CHECK(res.rows[2][2] <= 1.01);
  for (const auto& row : res.rows) {
    CHECK(row[1] >= 1.0);
    CHECK(row[2] >= 1.0);
  }
  // k = 64 sits near the analytic level 1 + tan(pi/64)/2, well above 1.01.
  CHECK(res.rows[0][1] == doctest::Approx(1.0245).epsilon(0.01));
}

TEST_CASE("region convergence at half volume") {
  auto seq = inscribed_polygon_sequence(1.0, {16, 32});
  auto disk = unit_disk();
  ExperimentParams params;
  params.seed = 9;
  params.workers = 2;
  params.resolution = 48;
  auto res = region_convergence_experiment(seq, disk, 0.5, params);
  REQUIRE(res.rows.size() == 2);
  const double h = 2.0 / 48;
  // final distances within a few cells of the limit witness
  CHECK(res.rows[1][2] <= 4 * h);
  CHECK(res.rows[1][3] <= 4 * h + h);
  CHECK(res.rows[1][1] <= 4 * h);
}

TEST_CASE("small volume experiment on the 3-4-5 triangle") {
  auto tri = triangle_345();
  ExperimentParams params;
  params.seed = 13;
  params.workers = 2;
  params.resolution = 96;
  auto res = small_volume_experiment(tri, {0.06}, params);
  REQUIRE(res.rows.size() == 1);
  CHECK(res.rows[0][3] == 1.0);  // witness sits at the minimal-angle vertex
  CHECK(res.rows[0][2] >= 0.95);
  CHECK(res.rows[0][2] <= 1.10);
  CHECK(res.pass);

  SUBCASE("square upper ratio is exactly 1 for small v") {
    auto sq = unit_square();
    ExperimentParams p2;
    p2.seed = 1;
    p2.resolution = 64;
    auto r2 = small_volume_experiment(sq, {0.05, 0.02}, p2);
    CHECK(r2.rows[0][1] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(r2.rows[1][1] == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("semicontinuity experiment") {
  auto sq = unit_square();
  auto res = semicontinuity_experiment(sq, 0, 5);
  CHECK(res.pass);
  CHECK(res.rows[0][1] == doctest::Approx(kPi / 2));

  auto tri = triangle_345();
  // vertex (4,0) is the sharpest: strict gap against its edge approaches
  int sharpest = 0;
  for (int i = 0; i < 3; ++i)
    if (tri.vertices()[i][0] == 4.0) sharpest = i;
  auto res2 = semicontinuity_experiment(tri, sharpest, 5);
  CHECK(res2.pass);
}

TEST_CASE("experiment spec JSON") {
  const std::string text = R"({
    "name": "profile_convergence",
    "generator": {"kind": "inscribed_polygons", "disk_radius": 1.0,
                  "k_list": [8, 16]},
    "lambda_grid": [0.3, 0.5],
    "resolution": 32,
    "seed": 7,
    "tolerances": {"profile_tol": 0.1}
  })";
  auto spec = experiment_from_json_string(text);
  CHECK(spec.name == "profile_convergence");
  CHECK(spec.k_list == std::vector<int>{8, 16});
  CHECK(spec.tolerances.at("profile_tol") == 0.1);

  auto result = run_experiment(spec, 2);
  CHECK(result.rows.size() == 2);
  auto csv = experiment_table_csv(result);
  CHECK(csv.find("sup_J_deviation") != std::string::npos);
  auto verdict = experiment_verdict_json(result);
  CHECK(verdict.find("\"pass\"") != std::string::npos);

  SUBCASE("unknown tolerance name is rejected") {
    auto bad = spec;
    bad.tolerances["no_such_tol"] = 1.0;
    CHECK_THROWS_AS(run_experiment(bad, 1), InvalidArgument);
  }
}
