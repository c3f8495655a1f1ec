#pragma once

#include <cstdint>
#include <vector>

#include "linfty/rational.hpp"

namespace linfty {

// splitmix64.  Hand-rolled so that seeded runs are byte-identical across
// platforms and standard-library versions; reports embed the seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n); n >= 1.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Uniform in [lo, hi] inclusive.
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin(double p_num = 1, double p_den = 2) {
    return below(static_cast<std::uint64_t>(p_den)) < p_num;
  }

  // Small rational with numerator in [-3,3], denominator in {1,2,3}.
  Rat rat() {
    Rat q(range(-3, 3), range(1, 3));
    q.canonicalize();
    return q;
  }

  // Nonzero variant of rat().
  Rat rat_nonzero() {
    for (;;) {
      Rat q = rat();
      if (!rat_is_zero(q)) return q;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace linfty
