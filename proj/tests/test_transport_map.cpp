#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoprofile/transport_map.hpp"
#include "isoprofile/rng.hpp"

using namespace isoprofile;

namespace {

ConvexBody sym_square(double half = 1.0) {
  return make_polytope({make_vec2(-half, -half), make_vec2(half, -half),
                        make_vec2(half, half), make_vec2(-half, half)});
}

ConvexBody regular_ngon(int k, double radius = 1.0) {
  std::vector<Vector> pts;
  for (int i = 0; i < k; ++i) {
    const double t = 2.0 * kPi * i / k;
    pts.push_back(make_vec2(radius * std::cos(t), radius * std::sin(t)));
  }
  return make_polytope(pts);
}

ConvexBody random_polygon(Rng& rng) {
  const int k = 4 + static_cast<int>(rng.uniform_index(7));
  std::vector<double> angles;
  for (int i = 0; i < k; ++i) angles.push_back(rng.uniform(0.0, 2.0 * kPi));
  std::sort(angles.begin(), angles.end());
  std::vector<Vector> pts;
  for (double t : angles) {
    const double r = rng.uniform(0.5, 1.5);
    pts.push_back(make_vec2(r * std::cos(t), r * std::sin(t)));
  }
  for (;;) {
    try {
      return make_polytope(pts);
    } catch (const DegenerateInput&) {
      pts.push_back(make_vec2(rng.uniform(-1, 1), rng.uniform(-1, 1)));
    }
  }
}

}  // namespace

TEST_CASE("identity map on a ball") {
  auto ball = ConvexBody::make_ball(make_vec2(0, 0), 1.0);
  auto map = build_map(ball, ball);
  Rng rng(2);
  for (int i = 0; i < 100; ++i) {
    Vector x = 0.99 * rng.uniform01() * rng.unit_vector(2);
    Vector y = apply(map, x);
    CHECK((x - y).norm() <= 1e-15);
  }
  auto est = empirical_lip(map, 2000, 31);
  CHECK(est.lip_forward == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(est.lip_inverse == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("square to double square: worked points") {
  auto map = build_map(sym_square(1.0), sym_square(2.0));
  CHECK(map.r_core == doctest::Approx(0.5));

  // Axis point (1,0): rho_s = 1, rho_t = 2, so f = 1/2 + (1/2)(3/1) ... = 2.
  Vector img = apply(map, make_vec2(1, 0));
  CHECK(img[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(img[1] == doctest::Approx(0.0));

  // Identity zone.
  Vector core = make_vec2(0.3, 0.1);
  CHECK((apply(map, core) - core).norm() == doctest::Approx(0.0));

  auto est = empirical_lip(map, 20000, 7);
  CHECK(est.lip_forward >= 2.0 - 1e-3);
  const double bound =
      analytic_lip_bound(map.r_core, map.outer_radius);
  CHECK(est.lip_forward <= bound + 1e-6);
  CHECK(est.lip_inverse <= bound + 1e-6);
}

TEST_CASE("analytic lipschitz bound") {
  CHECK(analytic_lip_bound(1.0, 2.0) == doctest::Approx(11.0));
  CHECK(analytic_lip_bound(1.0, 3.0) == doctest::Approx(61.0));
  CHECK_THROWS_AS(analytic_lip_bound(2.0, 1.0), InvalidRadii);
  CHECK_THROWS_AS(analytic_lip_bound(0.0, 1.0), InvalidRadii);

  // Degenerate ratio limit.
  CHECK(analytic_lip_bound(1.0, 1.0 + 1e-9) == doctest::Approx(1.0));

  SUBCASE("depends only on R/r") {
    for (double lam : {0.1, 10.0}) {
      CHECK(analytic_lip_bound(lam * 1.0, lam * 2.5) ==
            analytic_lip_bound(1.0, 2.5));
    }
  }

  SUBCASE("statement form equals the proof's closing form") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      const double q = 1.0 + rng.uniform(1e-6, 9.0);
      const double statement = 1.0 + q * (q - 1.0) * (q * q + 1.0);
      const double proof = 1.0 + (q - 1.0) * (q * q * q + q);
      CHECK(statement == doctest::Approx(proof).epsilon(1e-13));
    }
  }
}

TEST_CASE("identity zone is exact on sampled points") {
  auto map = build_map(regular_ngon(5), sym_square(1.0));
  Rng rng(4);
  for (int i = 0; i < 10000; ++i) {
    Vector x = map.r_core * std::sqrt(rng.uniform01()) * rng.unit_vector(2);
    if (x.norm() > map.r_core) continue;
    CHECK((apply(map, x) - x).norm() == 0.0);
  }
}

TEST_CASE("boundary maps to boundary") {
  auto map = build_map(regular_ngon(7), sym_square(1.2));
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    Vector u = rng.unit_vector(2);
    Vector x = radial_function(map.source, u) * u;
    Vector y = apply(map, x);
    // One target constraint should be active within 1e-7.
    double closest = 1e18;
    for (const auto& h : map.target.halfspaces())
      closest = std::min(closest, std::abs(h.offset - h.normal.dot(y)));
    CHECK(closest <= 1e-7);
    CHECK(y.norm() ==
          doctest::Approx(radial_function(map.target, u)).epsilon(1e-10));
  }
}

TEST_CASE("round trip inversion") {
  Rng gen(55);
  auto map = build_map(regular_ngon(6), random_polygon(gen));
  Rng rng(21);
  Vector lo, hi;
  map.source.bounding_box(lo, hi);
  int tested = 0;
  while (tested < 10000) {
    Vector x = rng.point_in_box(lo, hi);
    if (!map.source.contains(x)) continue;
    ++tested;
    Vector back = apply_inverse(map, apply(map, x));
    CHECK((back - x).norm() <= 1e-8);
  }
}

TEST_CASE("dilatation ceiling on a random fleet") {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = random_polygon(rng);
    auto b = random_polygon(rng);
    auto map = build_map(a, b);
    auto est = empirical_lip(map, 4000, derive_seed(1234, trial));
    const double bound = analytic_lip_bound(map.r_core, map.outer_radius);
    CHECK(est.lip_forward <= bound + 1e-6);
    CHECK(est.lip_inverse <= bound + 1e-6);
    CHECK(est.lip_forward >= 1.0);
    CHECK(est.lip_inverse >= 1.0);
  }
}

TEST_CASE("lipschitz distance upper bound") {
  auto sq = sym_square(1.0);
  CHECK(lipschitz_distance_upper(sq, sq, 2000, 5) ==
        doctest::Approx(0.0).epsilon(1e-9));

  SUBCASE("invariant under joint scaling") {
    auto gon = regular_ngon(5);
    const double base = lipschitz_distance_upper(sq, gon, 4000, 77);
    const double scaled =
        lipschitz_distance_upper(sq.scaled(3.0), gon.scaled(3.0), 4000, 77);
    CHECK(std::abs(base - scaled) <= 1e-9);
  }

  SUBCASE("k-gon approximants approach the disk") {
    auto disk = ConvexBody::make_ball(make_vec2(0, 0), 1.0);
    const double d8 = lipschitz_distance_upper(disk, regular_ngon(8), 4000, 3);
    const double d16 = lipschitz_distance_upper(disk, regular_ngon(16), 4000, 3);
    const double d32 = lipschitz_distance_upper(disk, regular_ngon(32), 4000, 3);
    CHECK(d8 > 0.0);
    CHECK(d8 > d16);
    CHECK(d16 > d32);
  }
}

TEST_CASE("pushforward of a polygonal region") {
  auto sq = sym_square(1.0);
  auto map_id = build_map(sq, sq);
  std::vector<Vector> tri = {make_vec2(-0.5, -0.5), make_vec2(0.5, -0.5),
                             make_vec2(0.0, 0.6)};
  auto res = pushforward_region(map_id, tri);
  CHECK(res.volume == doctest::Approx(polygon_area(tri)).epsilon(1e-12));
  CHECK(res.perimeter ==
        doctest::Approx(polygon_perimeter(tri)).epsilon(1e-12));

  SUBCASE("measure sandwich under empirical dilatations") {
    auto map = build_map(sq, regular_ngon(6, 1.4));
    auto est = empirical_lip(map, 8000, 11);
    auto out = pushforward_region(map, tri, 512);
    const double v = polygon_area(tri);
    const double p = polygon_perimeter(tri);
    const int n = 1;  // ambient dimension 2 = n + 1
    CHECK(out.volume >= v / std::pow(est.lip_inverse, n + 1) - 1e-6);
    CHECK(out.volume <= v * std::pow(est.lip_forward, n + 1) + 1e-6);
    CHECK(out.perimeter >= p / std::pow(est.lip_inverse, n) - 1e-6);
    CHECK(out.perimeter <= p * std::pow(est.lip_forward, n) + 1e-6);
  }
}

TEST_CASE("map errors") {
  auto sq = sym_square(1.0);
  auto map = build_map(sq, regular_ngon(8));
  CHECK_THROWS_AS(apply(map, make_vec2(5, 5)), PointOutsideSource);
}
