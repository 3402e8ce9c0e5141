#pragma once

#include <cstdint>
#include <random>

namespace eemx {

/// Standard normal draws keyed by (seed, trial). The engine is mt19937_64,
/// whose output sequence is fixed by the C++ standard, and the transform is
/// our own Box-Muller, so the stream is identical on every conforming
/// toolchain.
class NormalStream {
 public:
  NormalStream(std::uint64_t seed, std::uint64_t trial);

  double next();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace eemx
