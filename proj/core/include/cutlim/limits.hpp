#pragma once

#include <cstdint>
#include <string>

namespace cutlim {

// Enumeration guards. Every exhaustive routine checks its guard before doing
// any work and throws ResourceError naming the guard. Setting `enforce` to
// false lifts all of them.
struct Limits {
  bool enforce = true;

  int hom_max_k = 8;
  int hom_max_n = 32;
  double hom_max_maps = 1e9;

  int sample_distribution_max_k = 6;
  double sample_distribution_max_work = 5e8;

  int cutnorm_max_steps = 22;
  int cut_distance_max_n = 8;

  // q^n labeled assignments.
  double partition_max_assignments = 2e7;

  int eigen_max_n = 512;
  int kronecker_direct_max = 256;

  static Limits unlimited() {
    Limits l;
    l.enforce = false;
    return l;
  }
};

// Throws ResourceError(guard, ...) when `enforce` is set and value > limit.
void check_guard(const Limits& limits, const std::string& guard, double value,
                 double limit);

}  // namespace cutlim
