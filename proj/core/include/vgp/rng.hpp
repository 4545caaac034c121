#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vgp {

// splitmix64 step; used to expand a (seed, stream) pair into well mixed
// seed material for the per-stream engines.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic random stream.  Streams are identified by (seed, stream);
// the same pair always yields the same sequence regardless of how many
// other streams exist or which thread consumes it.  Normal deviates use an
// explicit Box-Muller transform so the byte stream does not depend on the
// standard library's distribution implementation.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (0x6a09e667f3bcc909ULL + stream * 0x9e3779b97f4a7c15ULL);
    std::uint64_t material[4];
    for (auto& m : material) m = splitmix64(s);
    std::seed_seq seq{
        static_cast<std::uint32_t>(material[0]), static_cast<std::uint32_t>(material[0] >> 32),
        static_cast<std::uint32_t>(material[1]), static_cast<std::uint32_t>(material[1] >> 32),
        static_cast<std::uint32_t>(material[2]), static_cast<std::uint32_t>(material[2] >> 32),
        static_cast<std::uint32_t>(material[3]), static_cast<std::uint32_t>(material[3] >> 32)};
    engine_.seed(seq);
  }

  // Uniform on [0, 1).
  double uniform() {
    // 53 random bits scaled; avoids the closed upper endpoint.
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller; caches the second deviate.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();  // log(0) guard
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection sampling keeps the draw unbiased.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace vgp
