#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "orthocat/coherent.hpp"
#include "orthocat/errors.hpp"
#include "orthocat/phase.hpp"
#include "orthocat/types.hpp"

// Phase-pair classification on the [0,2pi)^2 torus and the quantized
// orthogonal-partner solvers built on top of it.
//
// The governing condition for <K_{phi2}(beta)|K_{phi1}(alpha)> = 0 splits
// into a real-part equation
//     exp(2 omega) = -/+ cos((phi1+phi2)/2) / cos((phi1-phi2)/2)
// with omega = Re(alpha conj(beta)), and a lattice constraint
//     Im(alpha conj(beta)) = k pi          (integer lattice, '-' sign)
//     Im(alpha conj(beta)) = (k+1/2) pi    (half-integer lattice, '+' sign).

namespace orthocat {

template <typename Scalar>
phase_region<Scalar> classify_phase_pair(Scalar phi1, Scalar phi2,
                                         const tolerances<Scalar>& tol = {}) {
  if (!std::isfinite(phi1) || !std::isfinite(phi2))
    throw solver_error(errc::invalid_argument, "phases must be finite");
  const Scalar p1 = reduce_phase(phi1);
  const Scalar p2 = reduce_phase(phi2);
  const Scalar pi = std::numbers::pi_v<Scalar>;

  const Scalar cos_diff = std::cos((p1 - p2) / 2);
  const Scalar cos_sum = std::cos((p1 + p2) / 2);
  const bool diff_zero = std::abs(cos_diff) < tol.region_cosine_zero;
  const bool sum_zero = std::abs(cos_sum) < tol.region_cosine_zero;

  if (diff_zero && sum_zero)
    return {region_kind::always_orthogonal, std::nullopt};
  if (diff_zero != sum_zero) return {region_kind::no_solution, std::nullopt};

  // Lines with exactly one phase pinned to pi (or 0): partners exist only
  // with omega = 0, on the integer (resp. half-integer) lattice.  When both
  // phases sit on the same pin the pair is an ordinary omega = 0 member of
  // its open class, so it falls through to the ratio test.
  const bool p1_zero = circular_distance(p1, Scalar(0)) < tol.special_phase;
  const bool p2_zero = circular_distance(p2, Scalar(0)) < tol.special_phase;
  const bool p1_pi = circular_distance(p1, pi) < tol.special_phase;
  const bool p2_pi = circular_distance(p2, pi) < tol.special_phase;
  const bool p1_special = p1_zero || p1_pi;
  const bool p2_special = p2_zero || p2_pi;
  if (p1_special != p2_special) {
    const bool on_pi = p1_special ? p1_pi : p2_pi;
    return {on_pi ? region_kind::pi_line : region_kind::zero_line,
            std::nullopt};
  }

  const Scalar ratio = cos_sum / cos_diff;
  if (ratio < 0)
    return {region_kind::integer_class, std::log(-ratio) / 2};
  return {region_kind::half_integer_class, std::log(ratio) / 2};
}

// Nearest lattice point of either kind to h = Im(alpha conj(beta)).
template <typename Scalar>
struct lattice_fit {
  quantization_class cls;
  Scalar residual;
};

template <typename Scalar>
lattice_fit<Scalar> nearest_lattice(Scalar h) {
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const long k_int = std::lround(h / pi);
  const Scalar r_int = std::abs(h - Scalar(k_int) * pi);
  const long k_half = std::lround(h / pi - Scalar(0.5));
  const Scalar r_half = std::abs(h - (Scalar(k_half) + Scalar(0.5)) * pi);
  if (r_int <= r_half)
    return {{lattice_kind::integer, k_int}, r_int};
  return {{lattice_kind::half_integer, k_half}, r_half};
}

// beta_k = (omega - i lambda_k)/conj(alpha) for k in [k_min, k_max], with
// lambda_k = k pi or (k+1/2) pi as dictated by the class of (phi1, phi2).
// Every returned partner is re-verified against the inner product before the
// list is handed back.
template <typename Scalar>
std::vector<std::pair<long, complex_t<Scalar>>> solve_beta_family(
    complex_t<Scalar> alpha, Scalar phi1, Scalar phi2, long k_min, long k_max,
    const tolerances<Scalar>& tol = {}) {
  if (!is_finite(alpha))
    throw solver_error(errc::invalid_argument, "alpha must be finite");
  if (alpha == complex_t<Scalar>(0))
    throw solver_error(errc::zero_alpha, "alpha must be nonzero");
  if (k_min > k_max)
    throw solver_error(errc::invalid_argument, "empty k range");

  const phase_region<Scalar> region = classify_phase_pair(phi1, phi2, tol);
  if (region.kind != region_kind::integer_class &&
      region.kind != region_kind::half_integer_class)
    throw solver_error(
        errc::wrong_region,
        std::string("phase pair classifies as ") + region_name(region.kind) +
            "; no one-parameter family here");

  const Scalar omega = *region.omega;
  const Scalar half =
      region.kind == region_kind::half_integer_class ? Scalar(0.5) : Scalar(0);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const cat_vector<Scalar> ket(alpha, phi1);

  std::vector<std::pair<long, complex_t<Scalar>>> out;
  out.reserve(static_cast<std::size_t>(k_max - k_min + 1));
  for (long k = k_min; k <= k_max; ++k) {
    const Scalar lambda = (Scalar(k) + half) * pi;
    const complex_t<Scalar> beta =
        complex_t<Scalar>(omega, -lambda) / std::conj(alpha);
    const Scalar r = orthogonality_residual(cat_vector<Scalar>(beta, phi2), ket);
    if (!(r < tol.verification))
      throw solver_error(errc::verification_failed,
                         "family member failed the orthogonality check");
    out.emplace_back(k, beta);
  }
  return out;
}

template <typename Scalar = double>
struct phi2_solution {
  Scalar phi2;
  quantization_class lattice;  // which constraint Im(alpha conj(beta)) sits on
  Scalar residual;             // orthogonality residual of the returned pair
};

// Unique phi2 in [0,2pi)\{0,pi} making K_{phi2}(beta) orthogonal to
// K_{phi1}(alpha).  Solved through the quarter-angle substitution
// b = tan(phi2/4): with a = tan(phi1/4) and E = exp(2 omega), the real-part
// equation becomes U b^2 - 2 W b - U = 0 where
//     W = 2a(1+E),  U = (1-E)(a^2-1)     (half-integer lattice)
//     W' = 2a(1-E), U' = (1+E)(a^2-1)    (integer lattice).
// Both quadratic roots reduce to the same phi2 mod 2pi (their product is -1,
// and tan(x - pi/2) = -1/tan(x) shifts phi2 = 4x by a full turn), so the
// root is chosen purely to avoid cancellation.  The coefficients are scaled
// by 1/(1+E) so large |omega| cannot overflow, and the reconstruction
// phi2 = 4 atan(b) is validated by substitution before returning.
template <typename Scalar>
phi2_solution<Scalar> solve_phi2(complex_t<Scalar> alpha,
                                 complex_t<Scalar> beta, Scalar phi1,
                                 const tolerances<Scalar>& tol = {}) {
  if (!is_finite(alpha) || !is_finite(beta) || !std::isfinite(phi1))
    throw solver_error(errc::invalid_argument, "inputs must be finite");

  const complex_t<Scalar> u = alpha * std::conj(beta);
  const Scalar omega = u.real();
  if (std::abs(omega) < tol.omega_zero)
    throw solver_error(errc::degenerate_real_part,
                       "Re(alpha conj(beta)) = 0: phases are constrained to "
                       "the special lines, not a unique phi2");

  const Scalar p1 = reduce_phase(phi1);
  const Scalar pi = std::numbers::pi_v<Scalar>;
  if (circular_distance(p1, Scalar(0)) < tol.special_phase ||
      circular_distance(p1, pi) < tol.special_phase)
    throw solver_error(errc::degenerate_phi1,
                       "phi1 on {0, pi} forces phi2 to pi or 0 and is only "
                       "consistent with Re(alpha conj(beta)) = 0");

  const lattice_fit<Scalar> fit = nearest_lattice(u.imag());
  if (fit.residual > 10 * tol.quantization)
    throw solver_error(errc::not_quantized,
                       "Im(alpha conj(beta)) is not on either lattice; no "
                       "orthogonal phase pair exists");
  if (fit.residual > tol.quantization)
    throw solver_error(errc::ambiguous_quantization,
                       "Im(alpha conj(beta)) is close to, but not within, the "
                       "lattice snap tolerance");

  const Scalar a = std::tan(p1 / 4);
  const Scalar th = std::tanh(omega);  // (1-E)/(1+E) = -th, scale-free in E
  Scalar w, us;
  if (fit.cls.kind == lattice_kind::half_integer) {
    w = 2 * a;            // W/(1+E)
    us = th * (1 - a * a);  // U/(1+E)
  } else {
    w = -2 * a * th;      // W'/(1+E)
    us = a * a - 1;       // U'/(1+E)
  }
  const Scalar hyp = std::hypot(w, us);
  const Scalar root = (w + std::copysign(hyp, w)) / us;
  const Scalar phi2 = reduce_phase(4 * std::atan(root));

  const Scalar residual = orthogonality_residual(
      cat_vector<Scalar>(beta, phi2), cat_vector<Scalar>(alpha, p1));
  if (!(residual < tol.phi2_validation))
    throw solver_error(errc::verification_failed,
                       "reconstructed phi2 failed substitution back into the "
                       "orthogonality condition");
  return {phi2, fit.cls, residual};
}

}  // namespace orthocat
