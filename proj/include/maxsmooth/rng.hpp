#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace maxsmooth {

// Draws from a 64-bit Mersenne twister mapped to doubles by hand, so a seed
// gives the same numbers on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double normal();   // Box-Muller
  std::complex<double> complex_normal();  // unit variance, independent parts

 private:
  std::mt19937_64 engine_;
};

}  // namespace maxsmooth
