#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "orthocat/coherent.hpp"
#include "orthocat/fock.hpp"
#include "orthocat/sampling.hpp"

using namespace orthocat;
using complexd = complex_t<double>;
namespace nums = std::numbers;

namespace {

// Independent coefficient route: c_m = e^{-|a|^2/2} a^m / sqrt(m!) through
// logarithms, for cross-checking the recurrence.
complexd direct_coefficient(complexd alpha, int m) {
  if (alpha == complexd(0, 0)) return m == 0 ? complexd(1, 0) : complexd(0, 0);
  const double mag = std::exp(-0.5 * std::norm(alpha) +
                              m * std::log(std::abs(alpha)) -
                              0.5 * std::lgamma(double(m) + 1.0));
  const double arg = double(m) * std::arg(alpha);
  return mag * complexd(std::cos(arg), std::sin(arg));
}

}  // namespace

TEST_CASE("recurrence coefficients match the log-factorial route") {
  sample_stream rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const complexd alpha = rng.disc(6.0);
    const auto st = fock_expand_coherent(alpha, 120);
    double worst = 0;
    for (int m = 0; m <= 120; ++m)
      worst = std::max(worst,
                       std::abs(st.coeffs[m] - direct_coefficient(alpha, m)));
    CHECK(worst < 1e-13);
  }
}

TEST_CASE("coherent expansion stores its own norm deficit") {
  const auto st = fock_expand_coherent(complexd(2, 1), 80);
  long double sum = 0;
  for (int m = 0; m <= 80; ++m) sum += std::norm(st.coeffs[m]);
  CHECK(st.tail_bound == doctest::Approx(std::max(0.0, 1.0 - double(sum)))
                             .epsilon(1e-10));
  CHECK(st.tail_bound < 1e-12);
  CHECK(st.truncation() == 80);
}

TEST_CASE("too-shallow truncation is rejected") {
  CHECK_THROWS_AS(fock_expand_coherent(complexd(5, 0), 10), solver_error);
  try {
    fock_expand_coherent(complexd(5, 0), 10);
  } catch (const solver_error& e) {
    CHECK(e.code() == errc::truncation_too_small);
  }
}

TEST_CASE("cat expansions zero out the wrong parity exactly") {
  sample_stream rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    const complexd alpha = rng.disc(5.0);
    const auto even = fock_expand_cat<double>({alpha, 0.0}, 100);
    const auto odd = fock_expand_cat<double>({alpha, nums::pi}, 100);
    for (int m = 0; m <= 100; ++m) {
      if (m % 2 == 1) CHECK(even.coeffs[m] == complexd(0, 0));
      if (m % 2 == 0) CHECK(odd.coeffs[m] == complexd(0, 0));
    }
  }
}

TEST_CASE("cat expansion norm matches the closed form") {
  sample_stream rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const cat_vector<double> v(rng.disc(4.0), rng.uniform(0, two_pi<double>));
    const auto st = fock_expand_cat(v, recommended_truncation(4.0));
    long double sum = 0;
    for (int m = 0; m <= st.truncation(); ++m) sum += std::norm(st.coeffs[m]);
    CHECK(double(sum) ==
          doctest::Approx(cat_norm_squared(v)).epsilon(1e-11));
  }
}

TEST_CASE("number-basis inner products agree with the closed form") {
  sample_stream rng(24);
  const int n = recommended_truncation(4.0);
  for (int trial = 0; trial < 200; ++trial) {
    const cat_vector<double> ket(rng.disc(4.0), rng.uniform(0, two_pi<double>));
    const cat_vector<double> bra(rng.disc(4.0), rng.uniform(0, two_pi<double>));
    const auto fk = fock_expand_cat(ket, n);
    const auto fb = fock_expand_cat(bra, n);
    const auto got = fock_inner_product(fb, fk);
    const complexd want = cat_inner_product(bra, ket);
    CHECK(std::abs(got.value - want) <= got.error_bound + 1e-11);
  }
}

TEST_CASE("superposition expansion subsumes the cat expansion") {
  const cat_vector<double> v(complexd(1.5, -0.7), 2.1);
  const auto a = fock_expand_cat(v, 60);
  const auto b = fock_expand_superposition(as_superposition(v), 60);
  for (int m = 0; m <= 60; ++m)
    CHECK(std::abs(a.coeffs[m] - b.coeffs[m]) < 1e-14);
  const auto ip = fock_inner_product(a, b);
  CHECK(std::abs(ip.value - complexd(cat_norm_squared(v), 0)) <
        ip.error_bound + 1e-11);
}

TEST_CASE("mismatched truncations zero-pad the shorter state") {
  const auto a = fock_expand_coherent(complexd(1, 0), 40);
  const auto b = fock_expand_coherent(complexd(1, 0), 60);
  const auto ip = fock_inner_product(a, b);
  CHECK(std::abs(ip.value - complexd(1, 0)) < ip.error_bound + 1e-11);
}

TEST_CASE("recommended truncation depths") {
  CHECK(recommended_truncation(0.0) == 32);
  CHECK(recommended_truncation(1.0) == 38);
  CHECK(recommended_truncation(5.0) == 107);
  CHECK(poisson_tail_bound(25.0, 107) < 1e-12);
  CHECK(poisson_tail_bound(1.0, 38) < 1e-12);
}

TEST_CASE("the analytic tail bound dominates the true deficit") {
  for (double amp : {0.5, 1.0, 2.0, 3.5}) {
    const double a2 = amp * amp;
    for (int n : {30, 50}) {
      const auto st = fock_expand_coherent(complexd(amp, 0), n);
      CHECK(st.tail_bound <= poisson_tail_bound(a2, n) + 1e-15);
    }
  }
}

TEST_CASE("inner product error bar reflects both tails") {
  // States cut deliberately close: the bar must still cover the defect.
  const complexd a(2.0, 0.5), b(1.5, -1.0);
  const auto fa = fock_expand_coherent(a, 16);
  const auto fb = fock_expand_coherent(b, 16);
  const auto ip = fock_inner_product(fa, fb);
  const complexd exact = coherent_overlap(a, b);
  CHECK(std::abs(ip.value - exact) <= ip.error_bound);
  CHECK(ip.error_bound > 0.0);
}
