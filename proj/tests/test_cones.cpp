#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoprofile/cones.hpp"
#include "isoprofile/rng.hpp"

using namespace isoprofile;

namespace {

ConvexBody unit_square() {
  return make_polytope({make_vec2(0, 0), make_vec2(1, 0), make_vec2(1, 1),
                        make_vec2(0, 1)});
}

ConvexBody unit_cube() {
  std::vector<Vector> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back(make_vec3(i & 1, (i >> 1) & 1, (i >> 2) & 1));
  return make_polytope(pts);
}

}  // namespace

TEST_CASE("tangent cones of the unit square") {
  auto sq = unit_square();
  auto corner = tangent_cone(sq, make_vec2(0, 0));
  CHECK(corner.halfspaces.size() == 2);
  CHECK(solid_angle(corner, AngleMethod::Exact2D).value ==
        doctest::Approx(kPi / 2).epsilon(1e-12));

  auto edge = tangent_cone(sq, make_vec2(0.5, 0));
  CHECK(edge.halfspaces.size() == 1);
  CHECK(solid_angle(edge, AngleMethod::Exact2D).value ==
        doctest::Approx(kPi).epsilon(1e-12));

  CHECK_THROWS_AS(tangent_cone(sq, make_vec2(0.5, 0.5)), InteriorPoint);
}

TEST_CASE("3D solid angles") {
  auto cube = unit_cube();
  auto corner = tangent_cone(cube, make_vec3(0, 0, 0));
  CHECK(corner.halfspaces.size() == 3);
  CHECK(solid_angle(corner, AngleMethod::Exact3D).value ==
        doctest::Approx(kPi / 2).epsilon(1e-12));  // octant: 1/8 of 4*pi

  auto facet = tangent_cone(cube, make_vec3(0.5, 0.5, 0));
  CHECK(solid_angle(facet, AngleMethod::Exact3D).value ==
        doctest::Approx(2 * kPi).epsilon(1e-12));

  auto edge = tangent_cone(cube, make_vec3(0.5, 0, 0));
  CHECK(edge.halfspaces.size() == 2);
  CHECK(solid_angle(edge, AngleMethod::Exact3D).value ==
        doctest::Approx(kPi).epsilon(1e-12));  // quarter of the sphere

  // Simplex corner at the origin: intersection of three coordinate
  // half-spaces with the diagonal one is not active at the right-angle
  // corner, so we still get the octant.
  auto tetra = make_polytope({make_vec3(0, 0, 0), make_vec3(1, 0, 0),
                              make_vec3(0, 1, 0), make_vec3(0, 0, 1)});
  auto octant = tangent_cone(tetra, make_vec3(0, 0, 0));
  CHECK(solid_angle(octant, AngleMethod::Exact3D).value ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
}

TEST_CASE("Monte Carlo solid angle agrees with exact") {
  auto sq = unit_square();
  auto corner2d = tangent_cone(sq, make_vec2(0, 0));
  auto cube = unit_cube();
  auto corner3d = tangent_cone(cube, make_vec3(0, 0, 0));
  int ok2 = 0, ok3 = 0;
  for (int run = 0; run < 100; ++run) {
    MonteCarloParams mc;
    mc.samples = 20000;
    mc.seed = derive_seed(2024, run);
    auto est2 = solid_angle(corner2d, AngleMethod::MonteCarlo, mc);
    if (std::abs(est2.value - kPi / 2) <= est2.error) ++ok2;
    auto est3 = solid_angle(corner3d, AngleMethod::MonteCarlo, mc);
    if (std::abs(est3.value - kPi / 2) <= est3.error) ++ok3;
  }
  CHECK(ok2 >= 99);
  CHECK(ok3 >= 99);
}

TEST_CASE("cone profile formula") {
  // Half-plane, v=1: a half-disk of area 1 has free boundary sqrt(2*pi).
  CHECK(cone_profile(kPi, 1, 1.0) ==
        doctest::Approx(std::sqrt(2 * kPi)).epsilon(1e-12));
  // Quarter disk of radius 1: area pi/4, arc pi/2.
  CHECK(cone_profile(kPi / 2, 1, kPi / 4) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(cone_profile(kPi, 1, 0.0) == 0.0);
  CHECK_THROWS_AS(cone_profile(0.0, 1, 1.0), NonpositiveAngle);

  SUBCASE("homogeneity") {
    Rng rng(5);
    for (int n : {1, 2, 3}) {
      for (int i = 0; i < 200; ++i) {
        const double alpha = rng.uniform(0.1, unit_sphere_area(n + 1));
        const double v = rng.uniform(1e-3, 10.0);
        const double lam = rng.uniform(0.2, 5.0);
        CHECK(cone_profile(alpha, n, std::pow(lam, n + 1) * v) ==
              doctest::Approx(std::pow(lam, n) * cone_profile(alpha, n, v))
                  .epsilon(1e-12));
      }
    }
  }

  SUBCASE("monotone in the angle, half-space dominates") {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
      const double a1 = rng.uniform(0.05, kPi);
      const double a2 = a1 + rng.uniform(1e-6, kPi - a1 + 1e-6);
      const double v = rng.uniform(1e-3, 5.0);
      CHECK(cone_profile(a1, 1, v) < cone_profile(a2, 1, v));
      CHECK(cone_profile(a1, 1, v) <=
            cone_profile(unit_sphere_area(2) / 2, 1, v));
    }
  }
}

TEST_CASE("geodesic balls in cones") {
  auto sq = unit_square();
  auto quadrant = tangent_cone(sq, make_vec2(0, 0));
  auto ball = geodesic_ball_in_cone(quadrant, kPi / 4);
  CHECK(ball.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ball.perimeter == doctest::Approx(kPi / 2).epsilon(1e-12));

  auto edge = tangent_cone(sq, make_vec2(0.5, 0));
  auto half = geodesic_ball_in_cone(edge, kPi / 2);
  CHECK(half.radius == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(half.perimeter == doctest::Approx(kPi).epsilon(1e-12));

  CHECK_THROWS_AS(geodesic_ball_in_cone(quadrant, 0.0), NonpositiveVolume);

  SUBCASE("perimeter equals the profile formula") {
    Rng rng(9);
    Cone cone;
    cone.dim = 2;
    cone.apex = make_vec2(0, 0);
    for (int i = 0; i < 1000; ++i) {
      cone.solid_angle = rng.uniform(0.05, 2 * kPi);
      const double v = rng.uniform(1e-4, 10.0);
      auto b = geodesic_ball_in_cone(cone, v);
      CHECK(b.perimeter ==
            doctest::Approx(cone_profile(*cone.solid_angle, 1, v))
                .epsilon(1e-12));
    }
  }
}

TEST_CASE("minimal solid angle vertex") {
  SUBCASE("square: four-way tie broken lexicographically") {
    auto r = min_solid_angle_vertex(unit_square());
    CHECK(r.alpha_min == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(r.vertex[0] == doctest::Approx(0.0));
    CHECK(r.vertex[1] == doctest::Approx(0.0));
    int mins = 0;
    for (const auto& va : r.table) mins += va.is_min ? 1 : 0;
    CHECK(mins == 4);
  }

  SUBCASE("3-4-5 triangle: sharpest corner wins") {
    auto tri =
        make_polytope({make_vec2(0, 0), make_vec2(4, 0), make_vec2(0, 3)});
    auto r = min_solid_angle_vertex(tri);
    CHECK(r.vertex[0] == doctest::Approx(4.0));
    CHECK(r.vertex[1] == doctest::Approx(0.0));
    CHECK(r.alpha_min == doctest::Approx(std::atan2(3.0, 4.0)).epsilon(1e-12));
    CHECK(r.profile(0.05) ==
          doctest::Approx(std::sqrt(2 * std::atan2(3.0, 4.0) * 0.05))
              .epsilon(1e-12));
  }

  SUBCASE("regular hexagon: interior angle 2*pi/3") {
    std::vector<Vector> pts;
    for (int i = 0; i < 6; ++i) {
      const double t = 2 * kPi * i / 6;
      pts.push_back(make_vec2(std::cos(t), std::sin(t)));
    }
    auto r = min_solid_angle_vertex(make_polytope(pts));
    CHECK(r.alpha_min == doctest::Approx(2 * kPi / 3).epsilon(1e-9));
  }

  SUBCASE("cube corners") {
    auto r = min_solid_angle_vertex(unit_cube());
    CHECK(r.alpha_min == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(r.table.size() == 8);
  }
}

TEST_CASE("dilation invariance of tangent cone angles") {
  auto tri = make_polytope({make_vec2(0, 0), make_vec2(4, 0), make_vec2(0, 3)});
  auto big = tri.scaled(3.0);
  for (std::size_t i = 0; i < tri.vertices().size(); ++i) {
    const double a =
        solid_angle(tangent_cone(tri, tri.vertices()[i]), AngleMethod::Exact2D)
            .value;
    const double b =
        solid_angle(tangent_cone(big, big.vertices()[i]), AngleMethod::Exact2D)
            .value;
    CHECK(a == b);  // same active normals, bit for bit
  }
}

TEST_CASE("semicontinuity probes") {
  auto sq = unit_square();
  SUBCASE("corner approached along an edge") {
    std::vector<Vector> approach;
    for (int j = 1; j <= 6; ++j) approach.push_back(make_vec2(std::pow(2.0, -j), 0));
    auto rep = semicontinuity_probe(sq, make_vec2(0, 0), approach);
    CHECK(rep.pass);
    CHECK(rep.alpha_at_p == doctest::Approx(kPi / 2));
    for (double a : rep.alpha_sequence) CHECK(a == doctest::Approx(kPi));
  }
  SUBCASE("facet interior limit: equality throughout") {
    std::vector<Vector> approach;
    for (int j = 1; j <= 6; ++j)
      approach.push_back(make_vec2(0.5 + std::pow(2.0, -j - 2), 0));
    auto rep = semicontinuity_probe(sq, make_vec2(0.5, 0), approach);
    CHECK(rep.pass);
  }
  SUBCASE("constant corner sequence") {
    std::vector<Vector> approach(4, make_vec2(0, 0));
    auto rep = semicontinuity_probe(sq, make_vec2(0, 0), approach);
    CHECK(rep.pass);
  }
}
