#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>

namespace cutlim {

/// Counter-based random stream keyed by (master_seed, stream_id).
///
/// Draw i of a stream is a pure function of (master_seed, stream_id, i), so
/// experiments that key repetition r to stream r are reproducible bit for bit
/// regardless of how the repetitions are scheduled. Satisfies
/// UniformRandomBitGenerator, but the helpers below avoid the
/// implementation-defined std distributions so results do not depend on the
/// standard library.
class SeededRng {
 public:
  using result_type = std::uint64_t;

  explicit SeededRng(std::uint64_t master_seed, std::uint64_t stream_id = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  bool bernoulli(double p) { return uniform() < p; }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal via Box-Muller (consumes two draws).
  double normal();

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  /// Independent stream derived from this one's key; does not advance *this.
  SeededRng derive(std::uint64_t sub_id) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key0_;
  std::uint64_t key1_;
  std::uint64_t counter_ = 0;
};

/// SplitMix64 finalizer; exposed for hashing seeds.
std::uint64_t mix64(std::uint64_t z);

}  // namespace cutlim
