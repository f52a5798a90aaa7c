#ifndef CLOUDBURST_RNG_HPP
#define CLOUDBURST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace cloudburst {

/**
 * Deterministic PRNG used by every simulation path.
 *
 * SplitMix64 core with hand-rolled distributions. The standard library
 * distributions are implementation-defined, so they cannot back the
 * byte-identical-output contract; everything here is pinned arithmetic.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [lo, hi], inclusive on both ends.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double mean) {
    double u = uniform();
    if (u >= 1.0) u = 0.9999999999999999;
    return -mean * std::log1p(-u);
  }

  /// Poisson draw via product-of-uniforms; chunked so large means stay exact.
  int poisson(double mean) {
    int count = 0;
    while (mean > 30.0) {
      count += poisson_small(30.0);
      mean -= 30.0;
    }
    return count + poisson_small(mean);
  }

  double normal(double mean, double sd) {
    if (have_spare_) {
      have_spare_ = false;
      return mean + sd * spare_;
    }
    double u1 = uniform();
    if (u1 < 1e-300) u1 = 1e-300;
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return mean + sd * radius * std::cos(angle);
  }

 private:
  int poisson_small(double mean) {
    if (mean <= 0.0) return 0;
    const double limit = std::exp(-mean);
    int k = 0;
    double product = uniform();
    while (product > limit) {
      ++k;
      product *= uniform();
    }
    return k;
  }

  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

/**
 * Combines a master seed with task coordinates into an independent child
 * seed. Results do not depend on scheduling order, which is what makes
 * parallel and serial experiment runs byte-identical.
 */
inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = master ^ 0xD6E8FEB86659FD93ULL;
  for (std::uint64_t part : parts) {
    h ^= part + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    h *= 0xFF51AFD7ED558CCDULL;
    h ^= h >> 33;
  }
  return h;
}

}  // namespace cloudburst

#endif  // CLOUDBURST_RNG_HPP
