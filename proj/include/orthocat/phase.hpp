#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace orthocat {

template <typename Scalar>
inline constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;

// Reduce an angle to the canonical interval [0, 2*pi).  floor-based reduction
// keeps values that are already in range untouched and maps tiny negatives to
// just below 2*pi, which is the correct circular behaviour.
template <typename Scalar>
Scalar reduce_phase(Scalar phi) {
  const Scalar tp = two_pi<Scalar>;
  Scalar r = phi - tp * std::floor(phi / tp);
  if (r >= tp) r -= tp;  // floor rounding can land exactly on 2*pi
  if (r < Scalar(0)) r = Scalar(0);
  return r;
}

// Distance between two angles on the circle, in [0, pi].
template <typename Scalar>
Scalar circular_distance(Scalar a, Scalar b) {
  Scalar d = std::abs(reduce_phase(a) - reduce_phase(b));
  const Scalar tp = two_pi<Scalar>;
  return d > tp / Scalar(2) ? tp - d : d;
}

// exp(i*phi) with exact lattice values at the quarter points.  Plain
// cos/sin of the double closest to pi leaves a ~1e-16 imaginary part; pinning
// the four exact phases makes parity cancellations in cat inner products and
// Fock expansions bit-exact instead of merely small.
template <typename Scalar>
std::complex<Scalar> unit_phase(Scalar phi) {
  using C = std::complex<Scalar>;
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (phi == Scalar(0)) return C(1, 0);
  if (phi == pi) return C(-1, 0);
  if (phi == pi / 2) return C(0, 1);
  if (phi == 3 * (pi / 2)) return C(0, -1);
  return C(std::cos(phi), std::sin(phi));
}

}  // namespace orthocat
