#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace errp {

// Deterministic RNG wrapper. mt19937_64 is bit-stable across platforms; the
// std:: distributions are not, so the mappings below are hand-rolled to keep
// the seed -> output contract byte-identical everywhere.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed), seed_mix_(seed) {}

  uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n), n > 0. Rejection sampling, no modulo bias.
  uint64_t uniform_int(uint64_t n) {
    const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % n);
    uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return x % n;
  }

  // Standard normal via polar Box-Muller with a cached spare.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // Normal truncated to [lo, hi] by rejection.
  double truncated_normal(double mean, double sd, double lo, double hi) {
    double x;
    do {
      x = normal(mean, sd);
    } while (x < lo || x > hi);
    return x;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(uniform_int(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Independent child stream, a pure function of (seed, stream): forks are
  // reproducible and unaffected by how much the parent has drawn.
  Rng fork(uint64_t stream) const {
    uint64_t z = seed_mix_ ^ (stream + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return Rng(z ^ (z >> 31));
  }

 private:
  std::mt19937_64 gen_;
  uint64_t seed_mix_{0};
  double spare_{0.0};
  bool has_spare_{false};
};

}  // namespace errp
