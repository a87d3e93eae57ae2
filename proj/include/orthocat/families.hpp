#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "orthocat/errors.hpp"
#include "orthocat/types.hpp"

// Closed-form orthogonal partners for the classic cat pairs, plus the
// equal-photon-number radii generated by the quantization lattices.

namespace orthocat {

namespace detail {

// When a partner lands on the imaginary axis the two amplitudes +/-beta
// describe the same cat; report the representative with Im(beta) >= 0.
template <typename Scalar>
complex_t<Scalar> canonical_axis_sign(complex_t<Scalar> beta) {
  if (beta.real() == Scalar(0) && beta.imag() < Scalar(0)) return -beta;
  return beta;
}

}  // namespace detail

// beta_n = i pi (2n+1) / (2 conj(alpha)): K_0(beta_n) is orthogonal to
// K_0(alpha) for every natural n.  Im(alpha conj(beta_n)) = -(n+1/2) pi, the
// half-integer lattice with omega = 0.
template <typename Scalar>
complex_t<Scalar> even_cat_partner(complex_t<Scalar> alpha, long n) {
  if (!is_finite(alpha))
    throw solver_error(errc::invalid_argument, "alpha must be finite");
  if (alpha == complex_t<Scalar>(0))
    throw solver_error(errc::zero_alpha, "alpha must be nonzero");
  if (n < 0) throw solver_error(errc::invalid_argument, "n must be >= 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const complex_t<Scalar> beta =
      complex_t<Scalar>(0, pi * Scalar(2 * n + 1) / 2) / std::conj(alpha);
  return detail::canonical_axis_sign(beta);
}

// beta_n = i n pi / conj(alpha), n >= 1: K_pi(beta_n) is orthogonal to
// K_pi(alpha).  n = 0 would return beta = 0, i.e. the state K_pi(0) that has
// zero norm, so it is rejected.
template <typename Scalar>
complex_t<Scalar> odd_cat_partner(complex_t<Scalar> alpha, long n) {
  if (!is_finite(alpha))
    throw solver_error(errc::invalid_argument, "alpha must be finite");
  if (alpha == complex_t<Scalar>(0))
    throw solver_error(errc::zero_alpha, "alpha must be nonzero");
  if (n == 0)
    throw solver_error(errc::zero_index,
                       "n = 0 gives the zero-norm state K_pi(0)");
  if (n < 0) throw solver_error(errc::invalid_argument, "n must be >= 1");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const complex_t<Scalar> beta =
      complex_t<Scalar>(0, pi * Scalar(n)) / std::conj(alpha);
  return detail::canonical_axis_sign(beta);
}

// For real alpha != 0, the coherent state |beta_n> with
// beta_n = i pi (n + 1/2) / alpha is orthogonal to the even cat K_0(alpha).
template <typename Scalar>
complex_t<Scalar> coherent_vs_cat_partner(Scalar alpha, long n) {
  if (!std::isfinite(alpha))
    throw solver_error(errc::invalid_argument, "alpha must be finite");
  if (alpha == Scalar(0))
    throw solver_error(errc::zero_alpha, "alpha must be nonzero");
  if (n < 0) throw solver_error(errc::invalid_argument, "n must be >= 0");
  const complex_t<Scalar> beta(
      Scalar(0),
      std::numbers::pi_v<Scalar> * ((Scalar(n) + Scalar(0.5)) / alpha));
  return detail::canonical_axis_sign(beta);
}

// Two-component superposition |d + i delta> + |-d + i delta> orthogonal to
// the even cat K_0(d) on the real axis: its overlap is proportional to
// cos(delta d) cosh(d^2), which vanishes at delta_k = pi (2k+1) / (2d).
template <typename Scalar = double>
struct j_vector {
  Scalar d;
  Scalar delta;
  complex_t<Scalar> gamma_plus;   // d + i delta
  complex_t<Scalar> gamma_minus;  // -d + i delta
};

template <typename Scalar>
j_vector<Scalar> j_vector_partner(Scalar d, long k) {
  if (!std::isfinite(d))
    throw solver_error(errc::invalid_argument, "d must be finite");
  if (d == Scalar(0)) throw solver_error(errc::zero_d, "d must be nonzero");
  if (k < 0) throw solver_error(errc::invalid_argument, "k must be >= 0");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar delta = pi * Scalar(2 * k + 1) / (2 * d);
  return {d, delta, complex_t<Scalar>(d, delta), complex_t<Scalar>(-d, delta)};
}

template <typename Scalar>
two_term_superposition<Scalar> as_superposition(const j_vector<Scalar>& j) {
  return {complex_t<Scalar>(1), j.gamma_plus, complex_t<Scalar>(1),
          j.gamma_minus};
}

// Radius |alpha| at which a cat pair in the given quantization class and
// with real part omega = Re(alpha conj(beta)) has its mean photon number
// pinned: |alpha|^2 = sqrt(omega^2 + lambda^2), lambda the lattice value.
template <typename Scalar>
Scalar equal_photon_radius(const quantization_class& cls, Scalar omega) {
  if (!std::isfinite(omega))
    throw solver_error(errc::invalid_argument, "omega must be finite");
  return std::sqrt(std::hypot(omega, static_cast<Scalar>(cls.value())));
}

// Areas pi (r_{n+1}^2 - r_n^2) of the annular bands between consecutive
// equal-photon radii of one lattice, n = 0 .. n_max-1.  At omega = 0 every
// band is exactly pi^2; for omega != 0 the areas increase monotonically
// toward pi^2.
template <typename Scalar>
std::vector<Scalar> band_areas(lattice_kind kind, long n_max,
                               Scalar omega = Scalar(0)) {
  if (!std::isfinite(omega))
    throw solver_error(errc::invalid_argument, "omega must be finite");
  if (n_max < 1)
    throw solver_error(errc::invalid_argument, "n_max must be >= 1");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(n_max));
  Scalar prev =
      std::hypot(omega, static_cast<Scalar>(quantization_class{kind, 0}.value()));
  for (long n = 1; n <= n_max; ++n) {
    const Scalar next = std::hypot(
        omega, static_cast<Scalar>(quantization_class{kind, n}.value()));
    out.push_back(pi * (next - prev));
    prev = next;
  }
  return out;
}

}  // namespace orthocat
