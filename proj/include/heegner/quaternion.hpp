#pragma once

#include <array>
#include <cstdint>

#include "heegner/errors.hpp"
#include "heegner/rational.hpp"

namespace heegner {

/// Coordinates on {1, i, j, k}.
using Quaternion = std::array<Rational, 4>;

/// The quaternion algebra (a, b) over Q: i² = a, j² = b, k = ij = −ji.
class QuaternionAlgebra {
 public:
  QuaternionAlgebra(std::int64_t a, std::int64_t b) : a_(a), b_(b) {
    if (a == 0 || b == 0) throw InvalidInput("quaternion algebra parameters must be nonzero");
  }

  std::int64_t a() const { return a_; }
  std::int64_t b() const { return b_; }

  Quaternion multiply(const Quaternion& x, const Quaternion& y) const {
    const Rational a(a_), b(b_);
    return {x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3],
            x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2],
            x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1],
            x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1]};
  }

  static Quaternion conjugate(const Quaternion& x) { return {x[0], -x[1], -x[2], -x[3]}; }

  Rational norm(const Quaternion& x) const {
    const Rational a(a_), b(b_);
    return x[0] * x[0] - a * x[1] * x[1] - b * x[2] * x[2] + a * b * x[3] * x[3];
  }

  static Rational trace(const Quaternion& x) { return 2 * x[0]; }

  /// Tr(x·conj(y)) = Nr(x + y) − Nr(x) − Nr(y).
  Rational trace_pairing(const Quaternion& x, const Quaternion& y) const {
    return trace(multiply(x, conjugate(y)));
  }

 private:
  std::int64_t a_, b_;
};

}  // namespace heegner
