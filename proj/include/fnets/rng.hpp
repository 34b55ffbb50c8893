#pragma once

#include <cstdint>
#include <random>

namespace fnets {

/// Seedable generator built on std::mt19937_64. The distributions are
/// implemented here rather than taken from <random> so that draws do not
/// depend on the standard library vendor.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  bool bernoulli(double prob) { return uniform() < prob; }

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Student t with `dof` degrees of freedom, Z / sqrt(chi2 / dof).
  double student_t(int dof);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace fnets
