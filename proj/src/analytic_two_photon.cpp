#include <cmath>
#include <numbers>

#include "raman_comb/analytic.hpp"
#include "raman_comb/errors.hpp"

namespace raman {
namespace {

constexpr double kScanStep = 0.01;
constexpr double kBisectTolerance = 1e-13;

template <class F>
double bisect(F&& f, double lo, double hi) {
  double f_lo = f(lo);
  while (hi - lo > kBisectTolerance) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

void require_kappa(double kappa_L) {
  if (!std::isfinite(kappa_L) || kappa_L < 0.0) throw DomainError("kappa_L must be finite and non-negative");
}

}  // namespace

TwoPhotonOutput two_photon_output(double kappa_L, const SidebandWindow& window) {
  require_kappa(kappa_L);
  const auto row = bessel_row(kappa_L, window.q_min() - 1, window.q_max());
  const Complex minus_i{0.0, -1.0};
  TwoPhotonOutput out;
  for (int q = window.q_min(); q <= window.q_max(); ++q)
    out.amp2[q] = minus_i * std::sqrt(2.0) * i_power(2 * q) * (row[q] * row[q - 1]);
  for (int k = window.q_min(); k <= window.q_max(); ++k)
    for (int l = k + 1; l <= window.q_max(); ++l)
      out.amp11[{k, l}] = minus_i * i_power(k + l) * (row[k] * row[l - 1] + row[l] * row[k - 1]);
  return out;
}

TwoPhotonProbabilities two_photon_probabilities(double kappa_L, const SidebandWindow& window) {
  require_kappa(kappa_L);
  const auto row = bessel_row(kappa_L, window.q_min() - 1, window.q_max());
  TwoPhotonProbabilities out;
  for (int q = window.q_min(); q <= window.q_max(); ++q) {
    const double a = row[q] * row[q];
    const double b = row[q - 1] * row[q - 1];
    out.w2[q] = 2.0 * a * b;
    out.w1[q] = a + b - 4.0 * a * b;
    out.mean[q] = a + b;
  }
  for (int k = window.q_min(); k <= window.q_max(); ++k)
    for (int l = k + 1; l <= window.q_max(); ++l) {
      const double s = row[k] * row[l - 1] + row[l] * row[k - 1];
      out.w11[{k, l}] = s * s;
    }
  return out;
}

double coincidence_01(double kappa_L) {
  require_kappa(kappa_L);
  const auto row = bessel_row(kappa_L, 0, 1);
  const double d = row[0] * row[0] - row[1] * row[1];
  return d * d;
}

InterferenceZeros find_interference_zeros(double max_kappa_L, int count) {
  if (!(max_kappa_L > 0.0) || !std::isfinite(max_kappa_L)) throw DomainError("max_kappa_L must be positive");
  if (count < 0) throw DomainError("count must be non-negative");
  // J_0^2 - J_1^2 = (J_0 - J_1)(J_0 + J_1); scan both factors for sign changes.
  auto minus = [](double x) { return bessel_j(0, x) - bessel_j(1, x); };
  auto plus = [](double x) { return bessel_j(0, x) + bessel_j(1, x); };
  InterferenceZeros out;
  double lo = 0.0;
  double f_minus = minus(lo);
  double f_plus = plus(lo);
  while (lo < max_kappa_L && static_cast<int>(out.roots.size()) < count) {
    const double hi = std::min(lo + kScanStep, max_kappa_L);
    const double g_minus = minus(hi);
    const double g_plus = plus(hi);
    double root_minus = -1.0;
    double root_plus = -1.0;
    if ((f_minus < 0.0) != (g_minus < 0.0)) root_minus = bisect(minus, lo, hi);
    if ((f_plus < 0.0) != (g_plus < 0.0)) root_plus = bisect(plus, lo, hi);
    if (root_minus >= 0.0 && root_plus >= 0.0 && root_plus < root_minus) std::swap(root_minus, root_plus);
    for (double r : {root_minus, root_plus})
      if (r > 0.0 && static_cast<int>(out.roots.size()) < count) out.roots.push_back(r);
    lo = hi;
    f_minus = g_minus;
    f_plus = g_plus;
  }
  out.shortfall = count - static_cast<int>(out.roots.size());
  return out;
}

double bessel_zero(int n, int k) {
  if (k < 1) throw DomainError("zero index starts at 1");
  auto f = [n](double x) { return bessel_j(n, x); };
  double lo = 0.05;
  double f_lo = f(lo);
  int found = 0;
  for (;;) {
    const double hi = lo + 0.05;
    const double f_hi = f(hi);
    if ((f_lo < 0.0) != (f_hi < 0.0) && ++found == k) return bisect(f, lo, hi);
    lo = hi;
    f_lo = f_hi;
  }
}

}  // namespace raman
