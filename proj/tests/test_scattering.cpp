#include <doctest.h>

#include <cmath>

#include "raman_comb/errors.hpp"
#include "raman_comb/scattering.hpp"
#include "support/series_bessel.hpp"

using namespace raman;
using raman::testing::series_bessel_j;

TEST_CASE("window invariants") {
  CHECK_THROWS_AS(SidebandWindow(1, 3), DomainError);
  CHECK_THROWS_AS(SidebandWindow(-3, -1), DomainError);
  const auto w = SidebandWindow::symmetric(4);
  CHECK(w.width() == 9);
  CHECK(w.contains(-4));
  CHECK_FALSE(w.contains(5));
}

TEST_CASE("identity at kappa_L = 0") {
  const auto u = scattering_matrix(0.0, SidebandWindow::symmetric(3));
  for (int q = -3; q <= 3; ++q)
    for (int p = -3; p <= 3; ++p) CHECK(u(q, p) == Complex(q == p ? 1.0 : 0.0, 0.0));
  CHECK(unitarity_defect(u) == 0.0);
}

TEST_CASE("phase convention and Toeplitz structure") {
  const auto u = scattering_matrix(5.0, SidebandWindow::symmetric(25));
  const double j1 = series_bessel_j(1, 5.0);
  CHECK(std::abs(u(1, 0) - Complex(0.0, j1)) < 1e-14);
  for (int q = -20; q <= 20; q += 5)
    for (int d = -4; d <= 4; ++d) CHECK(std::abs(u(q + d, q) - u(d, 0)) < 1e-15);
}

TEST_CASE("unitarity defect") {
  CHECK(unitarity_defect(scattering_matrix(5.0, SidebandWindow::symmetric(25))) <= 1e-10);
  // truncated carrier row: 1 - sum_{|k| <= 3} J_k(5)^2
  double kept = 0.0;
  for (int k = -3; k <= 3; ++k) kept += std::pow(series_bessel_j(k, 5.0), 2);
  const double defect = unitarity_defect(scattering_matrix(5.0, SidebandWindow::symmetric(3)));
  CHECK(defect == doctest::Approx(1.0 - kept).epsilon(1e-12));
  CHECK(defect > 0.1);
  CHECK(defect < 1.0);
}

TEST_CASE("recommend_window") {
  CHECK(recommend_window(0.0, 1e-12) == SidebandWindow::symmetric(1));
  const auto w5 = recommend_window(5.0, 1e-12);
  CHECK(w5.q_max() >= 5);
  double tail = 0.0;
  for (int k = w5.q_max() + 1; k < 200; ++k) tail += 2.0 * std::pow(series_bessel_j(k, 5.0), 2);
  CHECK(tail < 1e-12);
  CHECK(recommend_window(10.0, 1e-6).q_max() < recommend_window(10.0, 1e-12).q_max());
}

TEST_CASE("compute_kappa_L") {
  PhysicalParameters p{1e25, 3e15, 1e-40, 0.0, 0.1};
  CHECK(compute_kappa_L(p) == 0.0);

  // kappa = 2 hbar N omega d rho / (eps0 c), solved for the length giving kappa_L = 5
  constexpr double hbar = 1.054571817e-34;
  constexpr double eps0 = 8.8541878128e-12;
  constexpr double c = 299792458.0;
  p.raman_coherence = 0.4;
  const double kappa = 2.0 * hbar * p.molecular_density * p.probe_frequency * p.coupling_constant *
                       p.raman_coherence / (eps0 * c);
  p.medium_length = 5.0 / kappa;
  CHECK(compute_kappa_L(p) == doctest::Approx(5.0).epsilon(1e-9));

  auto doubled = p;
  doubled.medium_length *= 2.0;
  CHECK(compute_kappa_L(doubled) == doctest::Approx(2.0 * compute_kappa_L(p)).epsilon(1e-15));

  p.raman_coherence = 0.6;
  CHECK_THROWS_AS(compute_kappa_L(p), DomainError);
}

TEST_CASE("propagate_coherent") {
  const auto w = SidebandWindow::symmetric(20);
  const Complex alpha(0.7, -0.3);
  const auto id = propagate_coherent({{0, alpha}}, scattering_matrix(0.0, w));
  for (const auto& [q, a] : id) CHECK(a == (q == 0 ? alpha : Complex{}));

  const double kl = 3.2;
  const auto out = propagate_coherent({{0, alpha}}, scattering_matrix(kl, w));
  double total = 0.0;
  for (const auto& [q, a] : out) {
    const Complex expected = alpha * series_bessel_j(q, kl) * std::polar(1.0, q * M_PI / 2);
    CHECK(std::abs(a - expected) < 1e-13);
    total += std::norm(a);
  }
  CHECK(total == doctest::Approx(std::norm(alpha)).epsilon(1e-12));
}

TEST_CASE("two coherent inputs against a direct sum") {
  const auto w = SidebandWindow::symmetric(15);
  const double kl = 1.44;
  const Complex a0(0.5, 0.0), a1(0.0, 0.8);
  const auto out = propagate_coherent({{0, a0}, {1, a1}}, scattering_matrix(kl, w));
  for (int q = -10; q <= 10; ++q) {
    const Complex i_q = std::polar(1.0, q * M_PI / 2);
    const Complex i_q1 = std::polar(1.0, (q - 1) * M_PI / 2);
    const Complex expected = i_q * series_bessel_j(q, kl) * a0 + i_q1 * series_bessel_j(q - 1, kl) * a1;
    CHECK(std::abs(out.at(q) - expected) < 1e-14);
  }
}

TEST_CASE("p_representation_preimage") {
  const auto w = SidebandWindow::symmetric(25);
  const AmplitudeMap in{{0, {1.0, 0.5}}, {2, {-0.3, 0.1}}, {-1, {0.2, 0.0}}};
  const auto id = p_representation_preimage(in, scattering_matrix(0.0, w));
  for (const auto& [q, a] : in) CHECK(id.at(q) == a);

  const auto u = scattering_matrix(5.0, w);
  const auto back = p_representation_preimage(propagate_coherent(in, u), u);
  double residual = 0.0;
  for (int q = -5; q <= 5; ++q) {
    const auto it = in.find(q);
    residual = std::max(residual, std::abs(back.at(q) - (it == in.end() ? Complex{} : it->second)));
  }
  CHECK(residual <= 1e-10);

  const Complex alpha(0.9, 0.2);
  const auto pre = p_representation_preimage({{0, alpha}}, u);
  for (int q = -8; q <= 8; ++q)
    CHECK(std::abs(pre.at(q) - alpha * series_bessel_j(q, 5.0) * std::polar(1.0, -q * M_PI / 2)) < 1e-13);
}
