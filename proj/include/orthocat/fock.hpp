#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "orthocat/errors.hpp"
#include "orthocat/phase.hpp"
#include "orthocat/types.hpp"

// Ground-truth verifier: number-basis expansions and direct summation.
// Everything here is derived from the basis expansion alone and never calls
// the closed-form overlap code it is used to check.

namespace orthocat {

template <typename Scalar>
using fock_coeffs = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
struct fock_state {
  fock_coeffs<Scalar> coeffs;  // c_0 .. c_N
  Scalar tail_bound;           // upper bound on the norm^2 beyond N

  Eigen::Index truncation() const { return coeffs.size() - 1; }
};

// Largest truncation error accepted by the expansion routines.
inline constexpr double fock_max_tail = 1e-3;

namespace detail {

// Accumulate |c_m|^2 in extended precision; the deficit against the exact
// norm^2 is the stored tail bound and must not drown in summation round-off.
template <typename Scalar>
Scalar squared_norm_kahan(const fock_coeffs<Scalar>& c) {
  long double sum = 0.0L;
  for (Eigen::Index m = 0; m < c.size(); ++m)
    sum += static_cast<long double>(std::norm(c[m]));
  return static_cast<Scalar>(sum);
}

template <typename Scalar>
fock_coeffs<Scalar> coherent_coeffs(complex_t<Scalar> alpha,
                                    Eigen::Index truncation) {
  fock_coeffs<Scalar> c(truncation + 1);
  c[0] = std::exp(-std::norm(alpha) / Scalar(2));
  for (Eigen::Index m = 0; m < truncation; ++m)
    c[m + 1] = c[m] * alpha / std::sqrt(Scalar(m + 1));
  return c;
}

template <typename Scalar>
void check_tail(Scalar tail, const char* what) {
  if (!(tail <= Scalar(fock_max_tail)))
    throw solver_error(errc::truncation_too_small, what);
}

}  // namespace detail

// c_m = e^{-|alpha|^2/2} alpha^m / sqrt(m!) via the stable multiplicative
// recurrence c_{m+1} = c_m * alpha / sqrt(m+1).
template <typename Scalar>
fock_state<Scalar> fock_expand_coherent(complex_t<Scalar> alpha,
                                        Eigen::Index truncation) {
  fock_state<Scalar> st;
  st.coeffs = detail::coherent_coeffs(alpha, truncation);
  st.tail_bound =
      std::max(Scalar(0), Scalar(1) - detail::squared_norm_kahan(st.coeffs));
  detail::check_tail(st.tail_bound, "coherent expansion truncated too early");
  return st;
}

// K_phi(alpha) coefficients c_m(alpha) * (1 + e^{i phi} (-1)^m).  The parity
// factor is applied exactly, so K_0 has bit-exact zero odd coefficients and
// K_pi bit-exact zero even ones (including the vacuum).
//
// The exact unnormalised norm^2 used for the tail is
//   2 + 2 cos(phi) e^{-2|alpha|^2},
// which follows from sum_m (-1)^m e^{-A} A^m/m! = e^{-2A} applied to the
// expansion term by term.
template <typename Scalar>
fock_state<Scalar> fock_expand_cat(const cat_vector<Scalar>& v,
                                   Eigen::Index truncation) {
  const fock_coeffs<Scalar> base = detail::coherent_coeffs(v.alpha, truncation);
  const complex_t<Scalar> p = unit_phase(v.phi);

  fock_state<Scalar> st;
  st.coeffs.resize(truncation + 1);
  for (Eigen::Index m = 0; m <= truncation; ++m) {
    const complex_t<Scalar> factor =
        (m % 2 == 0) ? complex_t<Scalar>(1) + p : complex_t<Scalar>(1) - p;
    st.coeffs[m] = base[m] * factor;
  }

  const Scalar exact = Scalar(2) + Scalar(2) * std::cos(v.phi) *
                                       std::exp(Scalar(-2) * std::norm(v.alpha));
  st.tail_bound =
      std::max(Scalar(0), exact - detail::squared_norm_kahan(st.coeffs));
  detail::check_tail(st.tail_bound, "cat expansion truncated too early");
  return st;
}

// c1|g1> + c2|g2>; the tail uses the triangle inequality on the two
// coherent tails, (|c1| sqrt(t1) + |c2| sqrt(t2))^2.
template <typename Scalar>
fock_state<Scalar> fock_expand_superposition(
    const two_term_superposition<Scalar>& s, Eigen::Index truncation) {
  const fock_state<Scalar> a = fock_expand_coherent(s.gamma1, truncation);
  const fock_state<Scalar> b = fock_expand_coherent(s.gamma2, truncation);

  fock_state<Scalar> st;
  st.coeffs = s.c1 * a.coeffs + s.c2 * b.coeffs;
  const Scalar amp = std::abs(s.c1) * std::sqrt(a.tail_bound) +
                     std::abs(s.c2) * std::sqrt(b.tail_bound);
  st.tail_bound = amp * amp;
  detail::check_tail(st.tail_bound,
                     "superposition expansion truncated too early");
  return st;
}

template <typename Scalar = double>
struct fock_inner_result {
  complex_t<Scalar> value;
  Scalar error_bound;  // rigorous bound on the truncated remainder
};

// <a|b> = sum_m conj(a_m) b_m over the common head (the shorter state is
// implicitly zero-padded); the bra is the first argument.  The error bound
// sqrt(tail_a)*||b|| + sqrt(tail_b)*||a|| covers everything beyond the
// stored coefficients via Cauchy-Schwarz.
template <typename Scalar>
fock_inner_result<Scalar> fock_inner_product(const fock_state<Scalar>& a,
                                             const fock_state<Scalar>& b) {
  const Eigen::Index n = std::min(a.coeffs.size(), b.coeffs.size());
  fock_inner_result<Scalar> r;
  r.value = a.coeffs.head(n).dot(b.coeffs.head(n));

  const Scalar na =
      std::sqrt(detail::squared_norm_kahan(a.coeffs) + a.tail_bound);
  const Scalar nb =
      std::sqrt(detail::squared_norm_kahan(b.coeffs) + b.tail_bound);
  r.error_bound = std::sqrt(a.tail_bound) * nb + std::sqrt(b.tail_bound) * na;
  return r;
}

// N large enough that the Poisson tail beyond it stays below ~1e-12 for any
// amplitude up to max_amplitude.
inline Eigen::Index recommended_truncation(double max_amplitude) {
  const double a2 = max_amplitude * max_amplitude;
  return static_cast<Eigen::Index>(
      std::ceil(a2 + 12.0 * std::sqrt(a2 + 1.0) + 20.0));
}

// Rigorous geometric-series bound on the Poisson tail sum_{m>N} e^-A A^m/m!,
//   <= e^-A A^{N+1}/(N+1)! * 1/(1 - A/(N+2))      for N+2 > A,
// evaluated through logs so large N and A are safe.  Returns +inf when the
// geometric argument is not < 1 (no bound available at this truncation).
inline double poisson_tail_bound(double amp_squared, Eigen::Index truncation) {
  if (amp_squared == 0.0) return 0.0;
  const double np2 = static_cast<double>(truncation) + 2.0;
  if (!(np2 > amp_squared)) return std::numeric_limits<double>::infinity();
  const double log_term = -amp_squared +
                          (np2 - 1.0) * std::log(amp_squared) -
                          std::lgamma(np2);
  return std::exp(log_term) / (1.0 - amp_squared / np2);
}

}  // namespace orthocat
