#ifndef ISOPROFILE_RNG_HPP
#define ISOPROFILE_RNG_HPP

#include <cstdint>
#include <cmath>

#include "isoprofile/geometry.hpp"

namespace isoprofile {

/// splitmix64 step, used for seeding and for deriving per-worker streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic derived seed for stream `index` of a master seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL * (index + 1));
  splitmix64(s);
  return splitmix64(s);
}

/// xoshiro256++ generator.  Small, fast, and identical on every platform,
/// which keeps seeded runs byte-for-byte reproducible.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1).
  double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n) { return next_u64() % n; }

  /// Standard normal via Marsaglia polar method.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  /// Uniform direction on the unit sphere of R^d.
  Vector unit_vector(int d) {
    Vector u(d);
    double norm2;
    do {
      for (int i = 0; i < d; ++i) u[i] = normal();
      norm2 = u.squaredNorm();
    } while (norm2 == 0.0);
    return u / std::sqrt(norm2);
  }

  /// Uniform point in the axis-aligned box [lo, hi].
  Vector point_in_box(const Vector& lo, const Vector& hi) {
    Vector p(lo.size());
    for (int i = 0; i < lo.size(); ++i) p[i] = uniform(lo[i], hi[i]);
    return p;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace isoprofile

#endif
