#ifndef FLEXRIDE_RNG_HPP
#define FLEXRIDE_RNG_HPP

#include <cstdint>
#include <random>
#include <stdexcept>

namespace flexride {

/// Seeded random source. Bounded draws use explicit rejection sampling on
/// top of mt19937_64 so a given seed produces the same stream on every
/// platform; std::uniform_int_distribution makes no such promise.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi], both inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    if (lo > hi) throw std::invalid_argument("Rng::uniform: empty range");
    std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    if (span == 0) return static_cast<std::int64_t>(engine_());
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t draw;
    do { draw = engine_(); } while (draw >= limit);
    return lo + static_cast<std::int64_t>(draw % span);
  }

  /// Bernoulli with probability num/den.
  bool chance(std::int64_t num, std::int64_t den) {
    return uniform(1, den) <= num;
  }

 private:
  std::mt19937_64 engine_;
};

} // namespace flexride

#endif
