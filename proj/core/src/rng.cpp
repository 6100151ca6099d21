#include "cutlim/rng.hpp"

#include <cmath>
#include <numbers>

#include "cutlim/errors.hpp"
#include "cutlim/limits.hpp"

namespace cutlim {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void check_guard(const Limits& limits, const std::string& guard, double value,
                 double limit) {
  if (limits.enforce && value > limit) {
    throw ResourceError(guard, "enumeration guard '" + guard + "' exceeded: " +
                                   std::to_string(value) + " > " +
                                   std::to_string(limit) +
                                   " (lift with guards off at your own risk)");
  }
}

SeededRng::SeededRng(std::uint64_t master_seed, std::uint64_t stream_id)
    : seed_(master_seed),
      stream_(stream_id),
      key0_(mix64(master_seed + kGolden)),
      key1_(mix64(mix64(stream_id ^ 0xD1B54A32D192ED03ULL) + key0_)) {}

SeededRng::result_type SeededRng::operator()() {
  std::uint64_t z = (counter_++) * kGolden + key0_;
  z = mix64(z) ^ key1_;
  return mix64(z + kGolden);
}

double SeededRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t SeededRng::below(std::uint64_t n) {
  if (n == 0) throw InputError("SeededRng::below: n must be positive");
  // Rejection sampling to avoid modulo bias.
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v >= limit);
  return v % n;
}

double SeededRng::normal() {
  double u1 = uniform();
  const double u2 = uniform();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SeededRng SeededRng::derive(std::uint64_t sub_id) const {
  return SeededRng(mix64(seed_ ^ mix64(stream_ + 1)), sub_id);
}

}  // namespace cutlim
