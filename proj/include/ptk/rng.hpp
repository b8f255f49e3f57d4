#pragma once

#include <cstdint>
#include <random>

#include "ptk/scalar.hpp"

namespace ptk {

// mt19937_64 with hand-written reductions so streams are identical across
// standard libraries (std::uniform_*_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform on [lo, hi].
  long uniform(long lo, long hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + static_cast<long>(x % span);
  }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * unit(); }
  bool coin() { return (next() >> 63) != 0; }

  // Small Gaussian rational a/b + c/d i with |a|,|c| <= r, 1 <= b,d <= den.
  Gq small_gq(long r = 3, long den = 2, bool complex = true) {
    Rational re(uniform(-r, r), uniform(1, den));
    re.canonicalize();
    Rational im(0);
    if (complex && coin()) {
      im = Rational(uniform(-r, r), uniform(1, den));
      im.canonicalize();
    }
    return Gq(re, im);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace ptk
