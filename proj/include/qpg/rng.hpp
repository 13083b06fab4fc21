#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace qpg {

/// Seedable generator with a fixed, documented algorithm so that every
/// stochastic report is reproducible across platforms and standard libraries:
///
///   raw bits   : std::mt19937_64 (output sequence fixed by the C++ standard)
///   uniform    : (bits >> 11) * 2^-53, in [0, 1)
///   normal     : Box-Muller on two uniforms, both outputs used in order
///   complex    : (n1 + i n2) / sqrt(2), unit variance
///
/// Not thread-safe; give each task its own instance.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  double uniform();
  double normal();
  std::complex<double> complex_normal();
  /// exp(2 pi i u) with u uniform.
  std::complex<double> unit_phase();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qpg
