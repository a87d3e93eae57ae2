#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

#include "orthocat/phase.hpp"
#include "orthocat/types.hpp"

namespace orthocat {

// <beta|alpha> = exp(conj(beta)*alpha - (|alpha|^2 + |beta|^2)/2), with the
// bra first, as in every inner product in this library.
// The real part of the exponent is always <= 0, so this never overflows and
// |result|^2 = exp(-|alpha-beta|^2) holds to round-off.
template <typename Scalar>
complex_t<Scalar> coherent_overlap(complex_t<Scalar> beta,
                                   complex_t<Scalar> alpha) {
  const Scalar s = (std::norm(alpha) + std::norm(beta)) / Scalar(2);
  return std::exp(std::conj(beta) * alpha - s);
}

namespace detail {

// Shared four-term evaluation for <K_{phi2}(beta)|K_{phi1}(alpha)>, factored
// as exp(-s) * [ e^v (1 + p1 conj(p2)) + e^-v (p1 + conj(p2)) ] with
// v = conj(beta)*alpha, p_i = exp(i phi_i).  The phase sums are formed first
// so opposite-parity pairs cancel bit-exactly; the exponents are combined
// after subtracting M = |Re v| so nothing overflows for amplitudes up to the
// ~exp(700) representability wall (|alpha| ~ 25).
template <typename Scalar>
struct cat_bracket {
  complex_t<Scalar> rescaled_sum;  // bracket in units of the largest term
  Scalar log_scale;                // inner = exp(log_scale) * rescaled_sum
};

template <typename Scalar>
cat_bracket<Scalar> eval_cat_bracket(const cat_vector<Scalar>& bra,
                                     const cat_vector<Scalar>& ket) {
  const complex_t<Scalar> v = std::conj(bra.alpha) * ket.alpha;
  const Scalar s = (std::norm(bra.alpha) + std::norm(ket.alpha)) / Scalar(2);
  const Scalar m = std::abs(v.real());
  const complex_t<Scalar> p1 = unit_phase(ket.phi);
  const complex_t<Scalar> p2c = std::conj(unit_phase(bra.phi));
  const complex_t<Scalar> sum = std::exp(v - m) * (Scalar(1) + p1 * p2c) +
                                std::exp(-v - m) * (p1 + p2c);
  return {sum, m - s};
}

}  // namespace detail

// <K_{phi2}(beta)|K_{phi1}(alpha)> with bra = K_{phi2}(beta).
template <typename Scalar>
complex_t<Scalar> cat_inner_product(const cat_vector<Scalar>& bra,
                                    const cat_vector<Scalar>& ket) {
  const auto b = detail::eval_cat_bracket(bra, ket);
  return std::exp(b.log_scale) * b.rescaled_sum;
}

// |<K_{phi2}(beta)|K_{phi1}(alpha)>| measured in units of the largest of the
// four coherent overlap terms.  This is the scale-free cancellation residual:
// ~1e-15 on a true orthogonal pair, O(1) off it, independent of how small the
// absolute inner product is for well-separated amplitudes.  It also bounds
// the absolute inner product from above, since the overall scale is <= 1.
template <typename Scalar>
Scalar orthogonality_residual(const cat_vector<Scalar>& bra,
                              const cat_vector<Scalar>& ket) {
  return std::abs(detail::eval_cat_bracket(bra, ket).rescaled_sum);
}

// ||K_phi(alpha)||^2 = 2 + 2 cos(phi) exp(-2|alpha|^2); exactly 0 for the
// degenerate K_pi(0).
template <typename Scalar>
Scalar cat_norm_squared(const cat_vector<Scalar>& v) {
  return Scalar(2) +
         Scalar(2) * std::cos(v.phi) * std::exp(Scalar(-2) * std::norm(v.alpha));
}

// <bra|ket> for general two-term superpositions c1|g1> + c2|g2>.
template <typename Scalar>
complex_t<Scalar> superposition_inner(const two_term_superposition<Scalar>& bra,
                                      const two_term_superposition<Scalar>& ket) {
  const complex_t<Scalar> wc[2] = {std::conj(bra.c1), std::conj(bra.c2)};
  const complex_t<Scalar> bg[2] = {bra.gamma1, bra.gamma2};
  const complex_t<Scalar> kc[2] = {ket.c1, ket.c2};
  const complex_t<Scalar> kg[2] = {ket.gamma1, ket.gamma2};

  complex_t<Scalar> z[2][2];
  Scalar m = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Scalar s = (std::norm(bg[i]) + std::norm(kg[j])) / Scalar(2);
      z[i][j] = std::conj(bg[i]) * kg[j] - s;
      if (wc[i] * kc[j] != complex_t<Scalar>(0))
        m = std::max(m, z[i][j].real());
    }
  if (m == -std::numeric_limits<Scalar>::infinity()) return {};

  complex_t<Scalar> sum = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const complex_t<Scalar> w = wc[i] * kc[j];
      if (w != complex_t<Scalar>(0)) sum += w * std::exp(z[i][j] - m);
    }
  return std::exp(m) * sum;
}

// Scale-free residual for general superpositions, in units of the largest
// coefficient-weighted overlap term (same semantics as the cat overload).
template <typename Scalar>
Scalar superposition_residual(const two_term_superposition<Scalar>& bra,
                              const two_term_superposition<Scalar>& ket) {
  const complex_t<Scalar> wc[2] = {std::conj(bra.c1), std::conj(bra.c2)};
  const complex_t<Scalar> bg[2] = {bra.gamma1, bra.gamma2};
  const complex_t<Scalar> kc[2] = {ket.c1, ket.c2};
  const complex_t<Scalar> kg[2] = {ket.gamma1, ket.gamma2};

  Scalar m = -std::numeric_limits<Scalar>::infinity();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (wc[i] * kc[j] != complex_t<Scalar>(0)) {
        const Scalar s = (std::norm(bg[i]) + std::norm(kg[j])) / Scalar(2);
        m = std::max(m, (std::conj(bg[i]) * kg[j]).real() - s);
      }
  if (m == -std::numeric_limits<Scalar>::infinity()) return Scalar(0);

  complex_t<Scalar> sum = 0;
  Scalar largest = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const complex_t<Scalar> w = wc[i] * kc[j];
      if (w == complex_t<Scalar>(0)) continue;
      const Scalar s = (std::norm(bg[i]) + std::norm(kg[j])) / Scalar(2);
      const complex_t<Scalar> term =
          w * std::exp(std::conj(bg[i]) * kg[j] - s - m);
      sum += term;
      largest = std::max(largest, std::abs(term));
    }
  return std::abs(sum) / largest;
}

// Real bilinear forms on amplitude space: g is the symmetric (metric) pairing,
// h the antisymmetric (symplectic) one.  Quantisation constraints act on h.
template <typename Scalar>
Scalar metric_form(complex_t<Scalar> alpha, complex_t<Scalar> beta) {
  return (alpha * std::conj(beta)).real();
}

template <typename Scalar>
Scalar symplectic_form(complex_t<Scalar> alpha, complex_t<Scalar> beta) {
  return (alpha * std::conj(beta)).imag();
}

}  // namespace orthocat
