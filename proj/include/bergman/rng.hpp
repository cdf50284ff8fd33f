// bergman: seeded random numbers with reproducible output.
//
// std::mt19937_64 is fully specified by the standard; the uniform conversion
// below avoids std::uniform_real_distribution, whose output is
// implementation-defined.  Given a seed, every stream drawn here is
// bit-stable run to run.
#ifndef BERGMAN_RNG_HPP
#define BERGMAN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

#include "bergman/types.hpp"

namespace bergman {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via polar Box-Muller (one value per call, spare cached).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = uniform(-1.0, 1.0);
      v = uniform(-1.0, 1.0);
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    have_spare_ = true;
    return u * f;
  }

  Complex unit_complex() {
    const double phi = 2.0 * M_PI * uniform();
    return {std::cos(phi), std::sin(phi)};
  }

  std::uint64_t next() { return gen_(); }

  /// Uniform point in the open unit ball of C^m (rejection from the cube).
  VectorXc ball_point(int m) {
    VectorXc z(m);
    for (;;) {
      double r2 = 0.0;
      for (int i = 0; i < m; ++i) {
        const double x = uniform(-1.0, 1.0);
        const double y = uniform(-1.0, 1.0);
        z(i) = Complex(x, y);
        r2 += x * x + y * y;
      }
      if (r2 < 1.0) return z;
    }
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace bergman

#endif
