#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "orthocat/errors.hpp"
#include "orthocat/families.hpp"
#include "orthocat/husimi.hpp"

// Plain-text exporters: CSV with full round-trip precision and ASCII PGM
// for quick visual inspection of Q grids.

namespace orthocat {

namespace detail {

inline std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace detail

// One row per sample: re,im,q with the cell-center coordinates.
template <typename Scalar>
void write_q_csv(std::ostream& os, const q_grid<Scalar>& q,
                 const grid_geometry<Scalar>& g) {
  if (q.rows() != g.ny || q.cols() != g.nx)
    throw solver_error(errc::invalid_argument, "grid/geometry mismatch");
  os << "re,im,q\n";
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      const auto p = g.point(i, j);
      os << detail::format_g17(double(p.real())) << ','
         << detail::format_g17(double(p.imag())) << ','
         << detail::format_g17(double(q(j, i))) << '\n';
    }
  }
}

// ASCII PGM (P2), 0..255 scaled by the grid maximum; the first pixel row is
// the top of the picture, i.e. the largest Im value.
template <typename Scalar>
void write_q_pgm(std::ostream& os, const q_grid<Scalar>& q) {
  if (q.rows() < 1 || q.cols() < 1)
    throw solver_error(errc::invalid_argument, "empty grid");
  const Scalar peak = q.maxCoeff();
  os << "P2\n" << q.cols() << ' ' << q.rows() << "\n255\n";
  for (Eigen::Index j = q.rows() - 1; j >= 0; --j) {
    for (Eigen::Index i = 0; i < q.cols(); ++i) {
      int v = peak > Scalar(0)
                  ? int(std::lround(double(q(j, i) / peak) * 255.0))
                  : 0;
      v = std::clamp(v, 0, 255);
      os << v << (i + 1 == q.cols() ? '\n' : ' ');
    }
  }
}

// One row per band: index, inner radius, outer radius, area.
template <typename Scalar>
void write_band_csv(std::ostream& os, lattice_kind kind,
                    const std::vector<Scalar>& areas, Scalar omega) {
  os << "n,r_inner,r_outer,area\n";
  for (std::size_t n = 0; n < areas.size(); ++n) {
    const Scalar r_in =
        equal_photon_radius(quantization_class{kind, long(n)}, omega);
    const Scalar r_out =
        equal_photon_radius(quantization_class{kind, long(n) + 1}, omega);
    os << n << ',' << detail::format_g17(double(r_in)) << ','
       << detail::format_g17(double(r_out)) << ','
       << detail::format_g17(double(areas[n])) << '\n';
  }
}

}  // namespace orthocat
