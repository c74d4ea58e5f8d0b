#include "raman_comb/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "raman_comb/errors.hpp"

namespace raman {
namespace {

constexpr double kSeriesCutoff = 2.0;
constexpr int kMillerMargin = 20;
constexpr double kRescaleAbove = 1e100;

void check_argument(int order, double x) {
  if (!std::isfinite(x)) throw DomainError("bessel: argument is not finite");
  if (x < 0.0) throw DomainError("bessel: negative argument " + std::to_string(x));
  if (std::abs(order) > kMaxBesselOrder)
    throw DomainError("bessel: |order| exceeds " + std::to_string(kMaxBesselOrder));
}

// Ascending series, n >= 0, 0 < x < 2.
double series_j(int n, double x) {
  const double half = 0.5 * x;
  double lead = 1.0;
  for (int i = 1; i <= n; ++i) {
    lead *= half / i;
    if (lead == 0.0) return 0.0;
  }
  const double y = -half * half;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= y / (static_cast<double>(k) * static_cast<double>(n + k));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return lead * sum;
}

// J_0 .. J_nmax for x >= 2 by downward recurrence.
std::vector<double> miller_nonnegative(int nmax, double x) {
  const int top = std::max(nmax, static_cast<int>(std::ceil(x)));
  const int start = top + kMillerMargin + static_cast<int>(std::ceil(std::sqrt(10.0 * top)));
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);

  double above = 0.0;     // j_{k+1}
  double current = 1e-30; // j_k, k = start
  double squares = 0.0;   // sum_{k>=1} j_k^2 accumulated so far
  double evens = 0.0;     // sum_{k>=1, k even} j_k
  for (int k = start; k >= 0; --k) {
    if (k <= nmax) out[static_cast<std::size_t>(k)] = current;
    if (k >= 1) {
      squares += current * current;
      if (k % 2 == 0) evens += current;
      const double below = (2.0 * k / x) * current - above;
      above = current;
      current = below;
      if (std::abs(current) > kRescaleAbove) {
        const double s = 1.0 / kRescaleAbove;
        current *= s;
        above *= s;
        squares *= s * s;
        evens *= s;
        for (int i = std::max(k - 1, 0); i <= nmax; ++i) out[static_cast<std::size_t>(i)] *= s;
      }
    }
  }
  // current now holds j_0 (already written to out[0]).
  const double j0 = out[0];
  double norm = std::sqrt(j0 * j0 + 2.0 * squares);
  if (j0 + 2.0 * evens < 0.0) norm = -norm;
  for (double& v : out) v /= norm;
  return out;
}

std::vector<double> nonnegative_orders(int nmax, double x) {
  std::vector<double> out(static_cast<std::size_t>(nmax) + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  if (x < kSeriesCutoff) {
    for (int n = 0; n <= nmax; ++n) out[static_cast<std::size_t>(n)] = series_j(n, x);
    return out;
  }
  return miller_nonnegative(nmax, x);
}

double reflect(int order, double value) {
  return (order < 0 && (-order) % 2 == 1) ? -value : value;
}

}  // namespace

double bessel_j(int order, double x) {
  check_argument(order, x);
  const int n = std::abs(order);
  double value;
  if (x == 0.0) {
    value = n == 0 ? 1.0 : 0.0;
  } else if (x < kSeriesCutoff) {
    value = series_j(n, x);
  } else {
    value = miller_nonnegative(n, x)[static_cast<std::size_t>(n)];
  }
  return reflect(order, value);
}

BesselRow bessel_row(double x, int q_min, int q_max) {
  if (q_min > q_max) throw DomainError("bessel_row: empty window");
  check_argument(q_min, x);
  check_argument(q_max, x);
  const int nmax = std::max(std::abs(q_min), std::abs(q_max));
  const auto base = nonnegative_orders(nmax, x);

  BesselRow row;
  row.x = x;
  row.q_min = q_min;
  row.q_max = q_max;
  row.values.reserve(static_cast<std::size_t>(q_max - q_min + 1));
  for (int q = q_min; q <= q_max; ++q)
    row.values.push_back(reflect(q, base[static_cast<std::size_t>(std::abs(q))]));
  return row;
}

}  // namespace raman
