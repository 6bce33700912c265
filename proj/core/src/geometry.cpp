#include "isoprofile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace isoprofile {

std::string format12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double polygon_area(const std::vector<Vector>& verts) {
  double a = 0.0;
  const int n = static_cast<int>(verts.size());
  for (int i = 0; i < n; ++i) {
    const Vector& p = verts[i];
    const Vector& q = verts[(i + 1) % n];
    a += p[0] * q[1] - q[0] * p[1];
  }
  return 0.5 * a;
}

double polygon_perimeter(const std::vector<Vector>& verts) {
  double len = 0.0;
  const int n = static_cast<int>(verts.size());
  for (int i = 0; i < n; ++i) len += (verts[(i + 1) % n] - verts[i]).norm();
  return len;
}

std::vector<Vector> clip_polygon_halfplane(const std::vector<Vector>& poly,
                                           const Vector& n, double b) {
  std::vector<Vector> out;
  const int m = static_cast<int>(poly.size());
  if (m == 0) return out;
  out.reserve(m + 2);
  for (int i = 0; i < m; ++i) {
    const Vector& p = poly[i];
    const Vector& q = poly[(i + 1) % m];
    const double dp = n.dot(p) - b;
    const double dq = n.dot(q) - b;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
      const double t = dp / (dp - dq);
      out.push_back(p + t * (q - p));
    }
  }
  return out;
}

Vector closest_point_segment(const Vector& p, const Vector& a, const Vector& b) {
  const Vector ab = b - a;
  const double len2 = ab.squaredNorm();
  if (len2 == 0.0) return a;
  const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
  return a + t * ab;
}

Vector closest_point_triangle(const Vector& p, const Vector& a, const Vector& b,
                              const Vector& c) {
  // Ericson-style case analysis via barycentric regions.
  const Vector ab = b - a, ac = c - a, ap = p - a;
  const double d1 = ab.dot(ap), d2 = ac.dot(ap);
  if (d1 <= 0.0 && d2 <= 0.0) return a;

  const Vector bp = p - b;
  const double d3 = ab.dot(bp), d4 = ac.dot(bp);
  if (d3 >= 0.0 && d4 <= d3) return b;

  const double vc = d1 * d4 - d3 * d2;
  if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) return a + (d1 / (d1 - d3)) * ab;

  const Vector cp = p - c;
  const double d5 = ab.dot(cp), d6 = ac.dot(cp);
  if (d6 >= 0.0 && d5 <= d6) return c;

  const double vb = d5 * d2 - d1 * d6;
  if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) return a + (d2 / (d2 - d6)) * ac;

  const double va = d3 * d6 - d5 * d4;
  if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
    const double t = (d4 - d3) / ((d4 - d3) + (d5 - d6));
    return b + t * (c - b);
  }

  const double denom = 1.0 / (va + vb + vc);
  return a + (vb * denom) * ab + (vc * denom) * ac;
}

double point_segment_distance(const Vector& p, const Vector& a, const Vector& b) {
  return (p - closest_point_segment(p, a, b)).norm();
}

double point_triangle_distance(const Vector& p, const Vector& a, const Vector& b,
                               const Vector& c) {
  return (p - closest_point_triangle(p, a, b, c)).norm();
}

double circle_triangle_area(const Vector& a, const Vector& b, double rho) {
  // Split [a,b] at its circle crossings; inside pieces contribute plain
  // triangle area, outside pieces contribute circular sectors.
  const Vector d = b - a;
  const double A = d.squaredNorm();
  double ts[4] = {0.0, 1.0, 1.0, 1.0};
  int nt = 2;
  if (A > 0.0) {
    const double B = 2.0 * a.dot(d);
    const double C = a.squaredNorm() - rho * rho;
    const double disc = B * B - 4.0 * A * C;
    if (disc > 0.0) {
      const double sq = std::sqrt(disc);
      for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
        if (t > 0.0 && t < 1.0) ts[nt++] = t;
      }
    }
  }
  std::sort(ts, ts + nt);
  double area = 0.0;
  for (int i = 0; i + 1 < nt; ++i) {
    const double t0 = ts[i], t1 = ts[i + 1];
    if (t1 - t0 <= 0.0) continue;
    const Vector p0 = a + t0 * d;
    const Vector p1 = a + t1 * d;
    const Vector pm = a + 0.5 * (t0 + t1) * d;
    if (pm.norm() <= rho) {
      area += 0.5 * cross2(p0, p1);
    } else {
      double dphi = std::atan2(p1[1], p1[0]) - std::atan2(p0[1], p0[0]);
      while (dphi > kPi) dphi -= 2.0 * kPi;
      while (dphi < -kPi) dphi += 2.0 * kPi;
      area += 0.5 * rho * rho * dphi;
    }
  }
  return area;
}

namespace {
constexpr double kTwoPi = 2.0 * kPi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  return t;
}
}  // namespace

ArcSet::ArcSet() { ivs_.push_back({0.0, kTwoPi}); }

bool ArcSet::empty() const { return ivs_.empty(); }

double ArcSet::total_length() const {
  double len = 0.0;
  for (const auto& [a, b] : ivs_) len += b - a;
  return len;
}

void ArcSet::intersect_with(const std::vector<std::pair<double, double>>& other) {
  std::vector<std::pair<double, double>> out;
  for (const auto& [a1, b1] : ivs_) {
    for (const auto& [a2, b2] : other) {
      const double lo = std::max(a1, a2);
      const double hi = std::min(b1, b2);
      if (hi > lo) out.push_back({lo, hi});
    }
  }
  ivs_ = std::move(out);
}

void ArcSet::intersect_cos_constraint(double phi, double c) {
  // Allowed set {theta : cos(theta - phi) <= c}.
  if (c >= 1.0) return;  // whole circle allowed
  if (c <= -1.0) {
    // Only the single point theta = phi + pi; measure zero.
    ivs_.clear();
    return;
  }
  // Disallowed arc is (phi - acos(c), phi + acos(c)); allowed is its complement
  // [phi + w, phi + 2*pi - w] with w = acos(c), then split at the 0/2*pi seam.
  const double w = std::acos(c);
  const double lo = wrap_angle(phi + w);
  const double hi = wrap_angle(phi - w);
  std::vector<std::pair<double, double>> allowed;
  if (lo <= hi) {
    allowed.push_back({lo, hi});
  } else {
    allowed.push_back({0.0, hi});
    allowed.push_back({lo, kTwoPi});
  }
  intersect_with(allowed);
}

}  // namespace isoprofile
