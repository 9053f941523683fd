#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace pirl {

// A 64-bit Mersenne Twister with distribution helpers whose output depends
// only on the engine bits, so results do not vary across standard libraries.
class Rng {
 public:
  using Engine = std::mt19937_64;

  Rng() : engine_(Engine::default_seed) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for one concern ("env", "advisor", ...) of a run.
  static Rng substream(std::uint64_t master_seed, std::string_view name);

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). Rejection sampling removes modulo bias.
  std::size_t below(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

  Engine& engine() noexcept { return engine_; }

 private:
  Engine engine_;
};

}  // namespace pirl
