#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "isoprofile/profile.hpp"

using namespace isoprofile;

namespace {

ConvexBody unit_square() {
  return make_polytope({make_vec2(0, 0), make_vec2(1, 0), make_vec2(1, 1),
                        make_vec2(0, 1)});
}

double square_profile(double v) {
  return std::min({std::sqrt(kPi * v), 1.0, std::sqrt(kPi * (1.0 - v))});
}

ProfileCurve analytic_square_curve(double step = 0.02) {
  ProfileCurve curve;
  curve.body_id = "square";
  curve.n = 1;
  curve.total_volume = 1.0;
  for (double v = step; v < 1.0 - step / 2; v += step)
    curve.insert({v, square_profile(v), Provenance::Analytic, 0.0, "formula"});
  return curve;
}

}  // namespace

TEST_CASE("upper bound on the unit square matches the closed form") {
  auto sq = unit_square();
  for (int i = 1; i <= 49; ++i) {
    const double v = 0.02 * i;
    const auto b = upper_bound(sq, v);
    CHECK(b.value == doctest::Approx(square_profile(v)).epsilon(1e-6));
  }

  SUBCASE("witness identification") {
    auto low = upper_bound(sq, 0.1);
    CHECK(low.witness.is_ball);
    CHECK(low.witness.radius ==
          doctest::Approx(std::sqrt(4 * 0.1 / kPi)).epsilon(1e-9));
    auto mid = upper_bound(sq, 0.5);
    CHECK(mid.witness.kind == "chord");
    auto high = upper_bound(sq, 0.95);
    CHECK(high.witness.is_complement);
    CHECK(high.value == doctest::Approx(std::sqrt(kPi * 0.05)).epsilon(1e-6));
  }

  SUBCASE("volume range errors") {
    CHECK_THROWS_AS(upper_bound(sq, 0.0), VolumeOutOfRange);
    CHECK_THROWS_AS(upper_bound(sq, 1.0), VolumeOutOfRange);
  }
}

TEST_CASE("upper bound on the disk") {
  auto disk = ConvexBody::make_ball(make_vec2(0, 0), 1.0);
  // Exact symmetric values from the orthogonal-arc family.
  for (double lam : {0.1, 0.25, 0.4}) {
    const double v = lam * kPi;
    const auto a = upper_bound(disk, v);
    const auto b = upper_bound(disk, kPi - v);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-9));
  }
  // Half volume: the diameter chord.
  CHECK(upper_bound(disk, kPi / 2).value == doctest::Approx(2.0).epsilon(1e-6));
  // Orthogonal arcs undercut both the rim-ball and the chord at small volume.
  const auto small = upper_bound(disk, 0.05);
  CHECK(small.witness.kind == "ortho_arc");
  CHECK(small.value < std::sqrt(2 * kPi * 0.05));
}

TEST_CASE("ball half-volume profile constant") {
  CHECK(ball_half_volume_profile_constant(1) ==
        doctest::Approx(2.0 * std::sqrt(2.0 / kPi)).epsilon(1e-12));
  // 3D: flat disk of area pi over (half ball volume)^{2/3}
  CHECK(ball_half_volume_profile_constant(2) ==
        doctest::Approx(kPi / std::pow(2.0 * kPi / 3.0, 2.0 / 3.0))
            .epsilon(1e-12));
}

TEST_CASE("transfer lower bound") {
  auto disk = ConvexBody::make_ball(make_vec2(0, 0), 1.0);
  // Identity transfer: exact flat-chord value 2R at half volume.
  CHECK(lower_bound_ball_transfer(disk, kPi / 2, 2000, 4) ==
        doctest::Approx(2.0).epsilon(1e-9));

  auto sq = unit_square();
  for (double v : {0.1, 0.3, 0.5, 0.8}) {
    const double lo = lower_bound_ball_transfer(sq, v, 4000, 9);
    CHECK(lo > 0.0);
    CHECK(lo <= upper_bound(sq, v).value + 1e-12);
  }

  SUBCASE("symmetric in v by construction") {
    const double a = lower_bound_ball_transfer(sq, 0.2, 2000, 5);
    const double b = lower_bound_ball_transfer(sq, 0.8, 2000, 5);
    CHECK(a == b);
  }
}

TEST_CASE("half-profile lower bound") {
  auto sq = unit_square();
  CHECK(lower_bound_half_profile(sq, 1.0 / kPi, 1.0) ==
        doctest::Approx(std::sqrt(2.0 / kPi)).epsilon(1e-12));
  CHECK(lower_bound_half_profile(sq, 0.5, 1.0) == doctest::Approx(1.0));
  CHECK(lower_bound_half_profile(sq, 1e-9, 1.0) ==
        doctest::Approx(std::sqrt(2e-9)).epsilon(1e-9));
  // stays below the true profile
  for (double v : {0.05, 0.2, 0.35, 0.5, 0.75}) {
    CHECK(lower_bound_half_profile(sq, v, 1.0) <=
          square_profile(v) + 1e-12);
  }
}

TEST_CASE("normalizations") {
  ProfileCurve curve;
  curve.n = 1;
  curve.total_volume = 2.0;
  curve.insert({1.0, 2.0, Provenance::UpperBound, 0.0, ""});
  auto norms = normalizations(curve);
  CHECK(norms.Y[0].second == doctest::Approx(4.0));  // I^2
  CHECK(norms.J[0].first == doctest::Approx(0.5));   // lambda = v/|C|
  CHECK(norms.y[0].second == doctest::Approx(4.0));

  ProfileCurve unit;
  unit.n = 1;
  unit.total_volume = 1.0;
  unit.insert({0.25, 0.75, Provenance::UpperBound, 0.0, ""});
  auto nn = normalizations(unit);
  CHECK(nn.J[0].first == doctest::Approx(0.25));
  CHECK(nn.J[0].second == doctest::Approx(0.75));
  CHECK(nn.y[0].second == doctest::Approx(0.75 * 0.75));
}

TEST_CASE("profile curve with bound ordering") {
  auto sq = unit_square();
  ProfileMethods methods;
  methods.upper = methods.lower = methods.oracle = true;
  ProfileParams params;
  params.resolution = 32;
  params.seed = 7;
  params.workers = 2;
  params.lower_pairs = 2000;
  auto curve = profile_curve(sq, {0.1, 0.3, 0.5, 0.7, 0.9}, methods, params);
  for (double v : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double lo = curve.interpolate(v, Provenance::LowerBound);
    const double up = curve.interpolate(v, Provenance::UpperBound);
    const double orc = curve.interpolate(v, Provenance::Oracle);
    double u = 0.0;
    for (const auto& s : curve.with_provenance(Provenance::Oracle))
      if (s.v == v) u = s.uncertainty;
    CHECK(lo <= orc + 3 * u);
    CHECK(orc <= up + 3 * u);
  }
}

TEST_CASE("concavity audit") {
  auto curve = analytic_square_curve();
  auto report = concavity_audit(curve, 1e-9, Provenance::Analytic);
  CHECK(report.pass);

  SUBCASE("corrupted sample flags FAIL") {
    auto bad = curve;
    for (auto& s : bad.samples) {
      if (std::abs(s.v - 0.5) < 1e-12) s.value *= 1.10;
    }
    auto rep = concavity_audit(bad, 1e-9, Provenance::Analytic);
    CHECK(!rep.pass);
  }

  SUBCASE("upper-bound curves of square and disk pass at 1e-9") {
    auto sq = unit_square();
    std::vector<double> grid;
    for (double v = 0.05; v < 0.96; v += 0.05) grid.push_back(v);
    auto up = profile_curve(sq, grid, {true, false, false});
    CHECK(concavity_audit(up, 1e-9).pass);

    auto disk = ConvexBody::make_ball(make_vec2(0, 0), 1.0);
    std::vector<double> dgrid;
    for (double lam = 0.05; lam < 0.96; lam += 0.05)
      dgrid.push_back(lam * kPi);
    auto dup = profile_curve(disk, dgrid, {true, false, false});
    CHECK(concavity_audit(dup, 1e-9).pass);
  }
}

TEST_CASE("scaling audit") {
  auto sq = unit_square();
  std::vector<double> grid = {0.1, 0.25, 0.4};
  for (double lam : {0.5, 2.0, 3.0}) {
    auto rep = scaling_audit(sq, lam, grid);
    CHECK(rep.pass);
    CHECK(rep.checks[0].value <= 1e-9);   // equality defect
    CHECK(rep.checks[1].value >= -1e-9);  // one-sided defect
  }
  auto identity = scaling_audit(sq, 1.0, grid);
  CHECK(identity.checks[0].value == doctest::Approx(0.0));
}

TEST_CASE("strict subadditivity probe") {
  auto curve = analytic_square_curve();
  auto rep = strict_subadditivity_probe(curve, {{0.1, 0.1}, {0.04, 0.04}},
                                        Provenance::Analytic);
  CHECK(rep.pass);
  // hand value: 2 sqrt(0.1 pi) - sqrt(0.2 pi) = (2 - sqrt 2) sqrt(0.1 pi)
  const double margin =
      2 * std::sqrt(0.1 * kPi) - std::sqrt(0.2 * kPi);
  CHECK(margin == doctest::Approx((2 - std::sqrt(2.0)) * std::sqrt(0.1 * kPi))
                      .epsilon(1e-12));

  SUBCASE("linear profile fails") {
    ProfileCurve linear;
    linear.n = 1;
    linear.total_volume = 1.0;
    for (double v = 0.05; v < 0.96; v += 0.05)
      linear.insert({v, v, Provenance::Analytic, 0.0, ""});
    auto bad = strict_subadditivity_probe(linear, {{0.2, 0.3}},
                                          Provenance::Analytic);
    CHECK(!bad.pass);
  }
}

TEST_CASE("curvature audit") {
  auto sq = unit_square();
  ProfileCurve empty;
  empty.n = 1;
  empty.total_volume = 1.0;
  auto rep = curvature_audit(empty, sq, 0.1);
  // I'(0.1) = sqrt(pi/0.1)/2 and the witness quarter-disk has 1/rho equal.
  CHECK(rep.witness_curvature ==
        doctest::Approx(0.5 * std::sqrt(kPi / 0.1)).epsilon(1e-9));
  CHECK(std::abs(rep.derivative - rep.witness_curvature) <= 1e-3);
  CHECK(rep.pass);

  SUBCASE("chord witness raises WitnessNotBall") {
    CHECK_THROWS_AS(curvature_audit(empty, sq, 0.5), WitnessNotBall);
  }

  SUBCASE("scale invariance of the reported bound") {
    ProfileCurve e2;
    e2.n = 1;
    e2.total_volume = 4.0;
    auto rep2 = curvature_audit(e2, sq.scaled(2.0), 0.4);  // lambda^2 * 0.1
    CHECK(rep2.scale_invariant_lhs ==
          doctest::Approx(rep.scale_invariant_lhs).epsilon(1e-9));
    CHECK(rep2.scale_invariant_rhs ==
          doctest::Approx(rep.scale_invariant_rhs).epsilon(1e-9));
  }
}

TEST_CASE("curve CSV round trip") {
  auto sq = unit_square();
  auto curve = profile_curve(sq, {0.1, 0.5, 0.9}, {true, false, false});
  curve.body_id = "square";
  const auto text = curve_to_csv(curve);
  auto back = curve_from_csv(text, "square", 1, 1.0);
  REQUIRE(back.samples.size() == curve.samples.size());
  for (std::size_t i = 0; i < back.samples.size(); ++i) {
    CHECK(back.samples[i].v == doctest::Approx(curve.samples[i].v));
    CHECK(back.samples[i].value ==
          doctest::Approx(curve.samples[i].value).epsilon(1e-11));
  }
}
