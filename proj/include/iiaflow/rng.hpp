#pragma once

#include <cstdint>
#include <random>

#include "iiaflow/forms.hpp"

namespace iiaflow {

// Deterministic uniform/normal draws built directly on mt19937_64 bits, so a
// fixed seed produces identical streams on every platform (the standard
// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  double normal() {
    // Box-Muller; one fresh pair per call keeps the stream seed-stable
    double u1 = uniform(1e-300, 1.0);
    double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  Endo symmetric() {
    Endo m;
    for (int i = 0; i < 6; ++i)
      for (int j = i; j < 6; ++j) m(i, j) = m(j, i) = uniform(-1.0, 1.0);
    return m;
  }

  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace iiaflow
