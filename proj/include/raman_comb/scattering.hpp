#pragma once

#include <complex>
#include <map>
#include <vector>

#include "raman_comb/specfun.hpp"

namespace raman {

using Complex = std::complex<double>;

// Contiguous range of sideband orders [q_min, q_max]; always contains the carrier q = 0.
class SidebandWindow {
 public:
  SidebandWindow(int q_min, int q_max);
  static SidebandWindow symmetric(int radius);

  int q_min() const { return q_min_; }
  int q_max() const { return q_max_; }
  int width() const { return q_max_ - q_min_ + 1; }
  bool contains(int q) const { return q >= q_min_ && q <= q_max_; }
  std::size_t offset(int q) const { return static_cast<std::size_t>(q - q_min_); }

  friend bool operator==(const SidebandWindow&, const SidebandWindow&) = default;

 private:
  int q_min_;
  int q_max_;
};

// i^k, exact.
Complex i_power(int k);

// U_{qq'} = i^{q-q'} J_{q-q'}(kappa_L) restricted to a window. Immutable.
class ScatteringMatrix {
 public:
  ScatteringMatrix(double kappa_L, SidebandWindow window);

  double kappa_L() const { return kappa_L_; }
  const SidebandWindow& window() const { return window_; }

  // J_d(kappa_L) for |d| < width.
  double bessel(int d) const { return offsets_[d]; }
  Complex operator()(int q, int q_prime) const;

  // Sum over in-window columns of |U_{qq'}|^2 - 1, one entry per row.
  std::vector<double> row_defects() const;

 private:
  double kappa_L_;
  SidebandWindow window_;
  BesselRow offsets_;
};

// Optional physical parametrisation of the effective medium length (SI units).
struct PhysicalParameters {
  double molecular_density = 0.0;  // number per m^3
  double probe_frequency = 0.0;    // rad/s
  double coupling_constant = 0.0;  // d_0
  double raman_coherence = 0.0;    // |rho_ab|, in [0, 0.5]
  double medium_length = 0.0;      // m
};

// kappa * L with kappa = 2 hbar N omega_0 d_0 rho_0 / (epsilon_0 c).
double compute_kappa_L(const PhysicalParameters& params);

// kappa_L / (omega_0 / omega_m); the limited-bandwidth picture needs this well below 1.
double bandwidth_ratio(double kappa_L, double probe_frequency, double modulation_frequency);

// Default radius ceil(kappa_L) + 15 used when no window is given.
SidebandWindow default_window(double kappa_L);

// Smallest symmetric window (radius >= 1) whose Bessel tail mass outside is below tail_epsilon.
SidebandWindow recommend_window(double kappa_L, double tail_epsilon = 1e-12);

ScatteringMatrix scattering_matrix(double kappa_L, const SidebandWindow& window);

// Row-sum defect over the interior rows, i.e. rows q whose band [q - R, q + R] with
// R = ceil(kappa_L) + 15 fits inside the window; the carrier row q = 0 when none does.
// Edge rows of a finite section always lose Bessel mass and are not counted.
double unitarity_defect(const ScatteringMatrix& matrix);

using AmplitudeMap = std::map<int, Complex>;

// alpha_q(out) = sum_q' U_{qq'} alpha_q'(in), for every q in the window.
AmplitudeMap propagate_coherent(const AmplitudeMap& input, const ScatteringMatrix& matrix);

// alpha'_q = sum_q' (-i)^{q-q'} J_{q-q'} alpha_q': the adjoint map, which undoes
// propagate_coherent and maps output P-function arguments back to input ones.
AmplitudeMap p_representation_preimage(const AmplitudeMap& amplitudes, const ScatteringMatrix& matrix);

}  // namespace raman
