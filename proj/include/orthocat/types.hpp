#pragma once

#include <cmath>
#include <complex>
#include <optional>

#include "orthocat/errors.hpp"
#include "orthocat/phase.hpp"

namespace orthocat {

template <typename Scalar>
using complex_t = std::complex<Scalar>;

template <typename Scalar>
bool is_finite(const complex_t<Scalar>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

// Unnormalised two-component vector |alpha> + exp(i*phi)|-alpha>.
// phi is reduced to [0, 2*pi) on construction; alpha = 0 with phi = pi is the
// zero vector, which is representable (inner products with it evaluate to 0)
// but cannot be normalised.
template <typename Scalar = double>
struct cat_vector {
  complex_t<Scalar> alpha;
  Scalar phi;

  cat_vector(complex_t<Scalar> a, Scalar relative_phase)
      : alpha(a), phi(reduce_phase(relative_phase)) {
    if (!is_finite(a) || !std::isfinite(relative_phase))
      throw solver_error(errc::invalid_argument,
                         "cat_vector requires finite amplitude and phase");
  }
};

// General c1|gamma1> + c2|gamma2>; the common ground covering cat vectors,
// plain coherent states (c2 = 0) and displaced two-component superpositions.
template <typename Scalar = double>
struct two_term_superposition {
  complex_t<Scalar> c1, gamma1;
  complex_t<Scalar> c2, gamma2;
};

template <typename Scalar>
two_term_superposition<Scalar> as_superposition(const cat_vector<Scalar>& v) {
  return {complex_t<Scalar>(1), v.alpha, unit_phase(v.phi), -v.alpha};
}

template <typename Scalar>
two_term_superposition<Scalar> coherent_term(complex_t<Scalar> gamma) {
  return {complex_t<Scalar>(1), gamma, complex_t<Scalar>(0),
          complex_t<Scalar>(0)};
}

// The two interleaved lattices Im(alpha*conj(beta)) can live on.
enum class lattice_kind { integer, half_integer };

inline const char* lattice_name(lattice_kind k) {
  return k == lattice_kind::integer ? "Integer" : "HalfInteger";
}

// A lattice together with a concrete index: the constraint value is
// k*pi (integer) or (k + 1/2)*pi (half-integer).
struct quantization_class {
  lattice_kind kind;
  long k;

  double value() const {
    const double half = kind == lattice_kind::half_integer ? 0.5 : 0.0;
    return (static_cast<double>(k) + half) * std::numbers::pi_v<double>;
  }
};

// Classification of an ordered phase pair (phi1, phi2) on the torus.
//  - integer_class / half_integer_class: open regions with a one-parameter
//    family of orthogonal partners for every alpha != 0;
//  - always_orthogonal: both region cosines vanish, any beta works;
//  - no_solution: exactly one cosine vanishes, no partner exists;
//  - pi_line / zero_line: exactly one phase equals pi (resp. 0); partners
//    exist only with Re(alpha*conj(beta)) = 0, on the integer (resp.
//    half-integer) lattice.
enum class region_kind {
  integer_class,
  half_integer_class,
  always_orthogonal,
  no_solution,
  pi_line,
  zero_line,
};

inline const char* region_name(region_kind k) {
  switch (k) {
    case region_kind::integer_class: return "IntegerClass";
    case region_kind::half_integer_class: return "HalfIntegerClass";
    case region_kind::always_orthogonal: return "AlwaysOrthogonal";
    case region_kind::no_solution: return "NoSolution";
    case region_kind::pi_line: return "PiLineSpecial";
    case region_kind::zero_line: return "ZeroLineSpecial";
  }
  return "Unknown";
}

template <typename Scalar = double>
struct phase_region {
  region_kind kind;
  // Forced value of Re(alpha*conj(beta)); present only for the open classes.
  std::optional<Scalar> omega;

  // Lattice the partner family lives on, when one exists.  The special lines
  // are the omega = 0 members of their class, so they map onto a lattice too.
  std::optional<lattice_kind> lattice() const {
    switch (kind) {
      case region_kind::integer_class:
      case region_kind::pi_line: return lattice_kind::integer;
      case region_kind::half_integer_class:
      case region_kind::zero_line: return lattice_kind::half_integer;
      default: return std::nullopt;
    }
  }
};

// Numerical policy shared by the solvers.  All thresholds are absolute.
template <typename Scalar = double>
struct tolerances {
  // Lattice snap for Im(alpha*conj(beta)): residual <= quantization is
  // accepted, (quantization, 10*quantization] is reported as ambiguous,
  // beyond that the pair is simply not on a lattice.
  Scalar quantization = Scalar(1e-9);
  // Orthogonality residual every solver output must pass before returning.
  Scalar verification = Scalar(1e-10);
  // A region cosine counts as zero below this (edge / corner detection).
  Scalar region_cosine_zero = Scalar(1e-12);
  // Circular distance under which a phase counts as exactly 0 or pi.
  Scalar special_phase = Scalar(1e-9);
  // Residual of the defining ratio equation accepted from the closed-form
  // phi2 before it is handed back to the caller.
  Scalar phi2_validation = Scalar(1e-8);
  // |Re(alpha*conj(beta))| below this is the degenerate special-line case.
  Scalar omega_zero = Scalar(1e-12);
};

}  // namespace orthocat
