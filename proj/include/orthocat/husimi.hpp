#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <numbers>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "orthocat/coherent.hpp"
#include "orthocat/errors.hpp"
#include "orthocat/types.hpp"

// Sampled Husimi-style distribution Q(gamma) = |<gamma|psi>|^2 / <psi|psi>
// for two-term superpositions of coherent states.  The conventional 1/pi
// is left out of the stored samples; the quadrature check divides by pi so
// a normalized state still integrates to one.

namespace orthocat {

template <typename Scalar = double>
struct grid_geometry {
  Scalar re_min, re_max;
  Scalar im_min, im_max;
  int nx, ny;

  Scalar dx() const { return (re_max - re_min) / Scalar(nx); }
  Scalar dy() const { return (im_max - im_min) / Scalar(ny); }
  Scalar cell_area() const { return dx() * dy(); }
  // Cell-center sampling keeps the midpoint quadrature second order.
  complex_t<Scalar> point(int i, int j) const {
    return {re_min + (Scalar(i) + Scalar(0.5)) * dx(),
            im_min + (Scalar(j) + Scalar(0.5)) * dy()};
  }
  bool valid() const {
    return nx > 0 && ny > 0 && re_min < re_max && im_min < im_max &&
           std::isfinite(re_min) && std::isfinite(re_max) &&
           std::isfinite(im_min) && std::isfinite(im_max);
  }
};

template <typename Scalar = double>
using q_grid =
    Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
Scalar superposition_norm_squared(const two_term_superposition<Scalar>& s) {
  const complex_t<Scalar> cross =
      std::conj(s.c1) * s.c2 * coherent_overlap(s.gamma1, s.gamma2);
  return std::norm(s.c1) + std::norm(s.c2) + 2 * cross.real();
}

namespace detail {

// Runs f(j) for j = 0..count-1, fanned out over `jobs` workers.  Each j is
// claimed exactly once, so disjoint row writes need no synchronization and
// the result is identical for any worker count.
template <typename F>
void partition_rows(int count, int jobs, F&& f) {
  if (jobs <= 1 || count <= 1) {
    for (int j = 0; j < count; ++j) f(j);
    return;
  }
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int j = next.fetch_add(1); j < count; j = next.fetch_add(1)) f(j);
  };
  std::vector<std::thread> pool;
  const int n = std::min(jobs, count);
  pool.reserve(static_cast<std::size_t>(n - 1));
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

}  // namespace detail

// Q samples on the grid, row r holding Im fixed at point(.,r).  With
// normalize = true the samples are divided by <psi|psi>; a zero-norm input
// (e.g. the odd cat at alpha = 0) cannot be normalized.  Rows are
// independent, so `jobs` > 1 fans the evaluation out without changing the
// result.
template <typename Scalar>
q_grid<Scalar> husimi(const two_term_superposition<Scalar>& s,
                      const grid_geometry<Scalar>& g, bool normalize = true,
                      int jobs = 1) {
  if (!g.valid())
    throw solver_error(errc::invalid_argument, "grid geometry is invalid");
  if (!is_finite(s.c1) || !is_finite(s.c2) || !is_finite(s.gamma1) ||
      !is_finite(s.gamma2))
    throw solver_error(errc::invalid_argument, "state must be finite");

  Scalar scale = Scalar(1);
  if (normalize) {
    const Scalar nsq = superposition_norm_squared(s);
    if (!(nsq > Scalar(0)))
      throw solver_error(errc::degenerate_state,
                         "state has zero norm and cannot be normalized");
    scale = Scalar(1) / nsq;
  }

  q_grid<Scalar> out(g.ny, g.nx);
  detail::partition_rows(g.ny, jobs, [&](int j) {
    for (int i = 0; i < g.nx; ++i) {
      const complex_t<Scalar> gamma = g.point(i, j);
      const complex_t<Scalar> amp =
          s.c1 * coherent_overlap(gamma, s.gamma1) +
          s.c2 * coherent_overlap(gamma, s.gamma2);
      out(j, i) = scale * std::norm(amp);
    }
  });
  return out;
}

template <typename Scalar>
q_grid<Scalar> husimi(const cat_vector<Scalar>& v,
                      const grid_geometry<Scalar>& g, bool normalize = true,
                      int jobs = 1) {
  return husimi(as_superposition(v), g, normalize, jobs);
}

// Midpoint estimate of (1/pi) integral Q: approaches 1 for a normalized
// state once the grid covers the support.
template <typename Scalar>
Scalar husimi_quadrature_check(const q_grid<Scalar>& q,
                               const grid_geometry<Scalar>& g) {
  if (q.rows() != g.ny || q.cols() != g.nx)
    throw solver_error(errc::invalid_argument, "grid/geometry mismatch");
  return g.cell_area() * q.template cast<long double>().sum() /
         std::numbers::pi_v<long double>;
}

}  // namespace orthocat
