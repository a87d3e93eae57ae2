#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "orthocat/coherent.hpp"
#include "orthocat/families.hpp"
#include "orthocat/fock.hpp"
#include "orthocat/sampling.hpp"

using namespace orthocat;
using complexd = complex_t<double>;
namespace nums = std::numbers;

TEST_CASE("even-parity partner family") {
  const complexd b0 = even_cat_partner(complexd(1, 0), 0);
  CHECK(b0.real() == 0.0);
  CHECK(b0.imag() == doctest::Approx(nums::pi / 2).epsilon(1e-15));
  const complexd b1 = even_cat_partner(complexd(1, 0), 1);
  CHECK(b1.imag() == doctest::Approx(3 * nums::pi / 2).epsilon(1e-15));

  sample_stream rng(41);
  for (int i = 0; i < 50; ++i) {
    const complexd alpha = rng.annulus(0.3, 5.0);
    for (long n = 0; n < 6; ++n) {
      const complexd beta = even_cat_partner(alpha, n);
      CHECK(orthogonality_residual(cat_vector<double>(beta, 0.0),
                                   cat_vector<double>(alpha, 0.0)) < 1e-13);
      // the partner sits on the half-integer lattice with omega = 0
      CHECK(std::abs(metric_form(alpha, beta)) < 1e-13);
      CHECK(std::abs(symplectic_form(alpha, beta) + (n + 0.5) * nums::pi) <
            1e-12);
    }
  }
}

TEST_CASE("odd-parity partner family") {
  // alpha = i, n = 2: the partner lands on the real axis at -2 pi.
  const complexd b = odd_cat_partner(complexd(0, 1), 2);
  CHECK(b.real() == doctest::Approx(-2 * nums::pi).epsilon(1e-15));
  CHECK(b.imag() == 0.0);

  sample_stream rng(42);
  for (int i = 0; i < 50; ++i) {
    const complexd alpha = rng.annulus(0.3, 5.0);
    for (long n = 1; n < 7; ++n) {
      const complexd beta = odd_cat_partner(alpha, n);
      CHECK(orthogonality_residual(cat_vector<double>(beta, nums::pi),
                                   cat_vector<double>(alpha, nums::pi)) <
            1e-13);
      CHECK(std::abs(metric_form(alpha, beta)) < 1e-13);
      CHECK(std::abs(symplectic_form(alpha, beta) + n * nums::pi) < 1e-12);
    }
  }
}

TEST_CASE("partners are rotated a quarter turn from the cat axis") {
  sample_stream rng(43);
  for (int i = 0; i < 50; ++i) {
    const complexd alpha = rng.annulus(0.3, 5.0);
    for (long n = 0; n < 5; ++n) {
      for (const complexd beta : {even_cat_partner(alpha, n),
                                  odd_cat_partner(alpha, n + 1)}) {
        double dev = std::fmod(std::arg(beta) - std::arg(alpha), nums::pi);
        if (dev < 0) dev += nums::pi;
        CHECK(std::abs(dev - nums::pi / 2) < 1e-12);
      }
    }
  }
}

TEST_CASE("coherent-state partner of the even cat is exact") {
  const complexd b4 = coherent_vs_cat_partner(5.0, 4);
  CHECK(b4.real() == 0.0);
  CHECK(b4.imag() == 0.9 * nums::pi);  // bit-exact by construction
  const complexd b15 = coherent_vs_cat_partner(5.0, 15);
  CHECK(b15.imag() == 3.1 * nums::pi);

  sample_stream rng(44);
  for (int i = 0; i < 40; ++i) {
    const double a = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.3, 5.0);
    for (long n = 0; n < 6; ++n) {
      const complexd beta = coherent_vs_cat_partner(a, n);
      const double r = superposition_residual(
          coherent_term<double>(beta),
          as_superposition(cat_vector<double>(complexd(a, 0), 0.0)));
      CHECK(r < 1e-13);
    }
  }
}

TEST_CASE("two-component displaced partner of the even cat") {
  const auto j = j_vector_partner(2.0, 0);
  CHECK(j.delta == doctest::Approx(nums::pi / 4).epsilon(1e-15));
  CHECK(j.gamma_plus == complexd(2.0, j.delta));
  CHECK(j.gamma_minus == complexd(-2.0, j.delta));

  sample_stream rng(45);
  for (int i = 0; i < 40; ++i) {
    const double d = (rng.uniform() < 0.5 ? -1 : 1) * rng.uniform(0.4, 4.0);
    for (long k = 0; k < 5; ++k) {
      const auto jv = j_vector_partner(d, k);
      const auto bra = as_superposition(jv);
      const auto ket = as_superposition(cat_vector<double>({d, 0.0}, 0.0));
      CHECK(superposition_residual(bra, ket) < 1e-13);
      // closed form: the overlap carries a factor cos(delta d), which the
      // index choice pins to a zero of the cosine up to the rounding of
      // (k + 1/2) pi itself
      CHECK(std::abs(std::cos(jv.delta * jv.d)) < 1e-14);
    }
  }
}

TEST_CASE("axis partners report the upper half-plane representative") {
  // A negative real amplitude would naively give Im(beta) < 0; the +-beta
  // symmetry of the construction lets the canonical sign win.
  const complexd b = even_cat_partner(complexd(-1, 0), 0);
  CHECK(b.real() == 0.0);
  CHECK(b.imag() > 0.0);
  const complexd c = coherent_vs_cat_partner(-2.0, 1);
  CHECK(c.imag() > 0.0);
  const complexd o = odd_cat_partner(complexd(-1.5, 0), 2);
  CHECK(o.imag() > 0.0);
}

TEST_CASE("partner constructions reject degenerate inputs") {
  auto expect = [](errc want, auto&& call) {
    try {
      call();
      CHECK(false);
    } catch (const solver_error& e) {
      CHECK(e.code() == want);
    }
  };
  expect(errc::zero_alpha, [] { even_cat_partner(complexd(0, 0), 0); });
  expect(errc::zero_alpha, [] { odd_cat_partner(complexd(0, 0), 1); });
  expect(errc::zero_index, [] { odd_cat_partner(complexd(1, 0), 0); });
  expect(errc::zero_alpha, [] { coherent_vs_cat_partner(0.0, 0); });
  expect(errc::zero_d, [] { j_vector_partner(0.0, 0); });
  expect(errc::invalid_argument, [] { even_cat_partner(complexd(1, 0), -1); });
}

TEST_CASE("equal-photon radii at zero metric form") {
  CHECK(equal_photon_radius(quantization_class{lattice_kind::half_integer, 0},
                            0.0) ==
        doctest::Approx(std::sqrt(nums::pi / 2)).epsilon(1e-15));
  CHECK(equal_photon_radius(quantization_class{lattice_kind::integer, 3},
                            0.0) ==
        doctest::Approx(std::sqrt(3 * nums::pi)).epsilon(1e-15));
  CHECK(equal_photon_radius(quantization_class{lattice_kind::integer, 0},
                            0.0) == 0.0);
  // negative indices square away the sign
  CHECK(equal_photon_radius(quantization_class{lattice_kind::integer, -2},
                            0.0) ==
        doctest::Approx(std::sqrt(2 * nums::pi)).epsilon(1e-15));
}

TEST_CASE("annulus bands are exactly uniform at zero metric form") {
  const double pi2 = nums::pi * nums::pi;
  for (const auto kind : {lattice_kind::integer, lattice_kind::half_integer}) {
    const auto areas = band_areas(kind, 60, 0.0);
    REQUIRE(areas.size() == 60);
    for (double a : areas) CHECK(std::abs(a - pi2) <= 1e-12);
  }
}

TEST_CASE("nonzero metric form shrinks the inner bands monotonically") {
  const double pi2 = nums::pi * nums::pi;
  const auto areas = band_areas(lattice_kind::integer, 51, two_pi<double>);
  for (std::size_t i = 0; i + 1 < areas.size(); ++i)
    CHECK(areas[i] < areas[i + 1]);
  CHECK(areas[0] < pi2);
  CHECK(std::abs(areas[50] - pi2) < 0.01);
}

TEST_CASE("band areas validate their arguments") {
  CHECK_THROWS_AS(band_areas(lattice_kind::integer, 0, 0.0), solver_error);
  CHECK_THROWS_AS(band_areas(lattice_kind::integer, 5, 1.0 / 0.0),
                  solver_error);
}

TEST_CASE("quantization class values") {
  CHECK(quantization_class{lattice_kind::integer, -2}.value() ==
        doctest::Approx(-2 * nums::pi).epsilon(1e-15));
  CHECK(quantization_class{lattice_kind::half_integer, -1}.value() ==
        doctest::Approx(-nums::pi / 2).epsilon(1e-15));
  CHECK(std::string(lattice_name(lattice_kind::integer)) == "Integer");
  CHECK(std::string(lattice_name(lattice_kind::half_integer)) ==
        "HalfInteger");
}
