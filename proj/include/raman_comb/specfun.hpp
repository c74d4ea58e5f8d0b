#pragma once

#include <vector>

namespace raman {

// Largest |order| accepted by the Bessel routines.
inline constexpr int kMaxBesselOrder = 1'000'000;

// J_q(x) for every integer order q in [q_min, q_max].
struct BesselRow {
  double x = 0.0;
  int q_min = 0;
  int q_max = 0;
  std::vector<double> values;

  double operator[](int q) const { return values[static_cast<std::size_t>(q - q_min)]; }
  bool contains(int q) const { return q >= q_min && q <= q_max; }
};

// Integer-order Bessel function of the first kind for x >= 0.
//
// Uses the ascending series for x < 2 and Miller's downward recurrence,
// normalised by J_0^2 + 2 sum_k J_k^2 = 1, otherwise. Negative orders are
// obtained through J_{-n} = (-1)^n J_n on the same code path.
double bessel_j(int order, double x);

// All orders of a window in one recurrence pass.
BesselRow bessel_row(double x, int q_min, int q_max);

}  // namespace raman
