#include "raman_comb/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "raman_comb/errors.hpp"

namespace raman {
namespace {

constexpr double kHbar = 1.054571817e-34;
constexpr double kEpsilon0 = 8.8541878128e-12;
constexpr double kSpeedOfLight = 299792458.0;
constexpr int kSupportMargin = 15;

void require_non_negative(double kappa_L) {
  if (!std::isfinite(kappa_L) || kappa_L < 0.0)
    throw DomainError("kappa_L must be finite and non-negative, got " + std::to_string(kappa_L));
}

int support_radius(double kappa_L) {
  return static_cast<int>(std::ceil(kappa_L)) + kSupportMargin;
}

}  // namespace

SidebandWindow::SidebandWindow(int q_min, int q_max) : q_min_(q_min), q_max_(q_max) {
  if (q_min > 0 || q_max < 0)
    throw DomainError("sideband window [" + std::to_string(q_min) + ", " + std::to_string(q_max) +
                      "] must contain q = 0");
}

SidebandWindow SidebandWindow::symmetric(int radius) {
  if (radius < 0) throw DomainError("window radius must be non-negative");
  return SidebandWindow(-radius, radius);
}

Complex i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

ScatteringMatrix::ScatteringMatrix(double kappa_L, SidebandWindow window)
    : kappa_L_(kappa_L),
      window_(window),
      offsets_(bessel_row(kappa_L, -(window.width() - 1), window.width() - 1)) {}

Complex ScatteringMatrix::operator()(int q, int q_prime) const {
  if (!window_.contains(q) || !window_.contains(q_prime))
    throw RangeError("scattering matrix index outside window");
  const int d = q - q_prime;
  return i_power(d) * offsets_[d];
}

std::vector<double> ScatteringMatrix::row_defects() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(window_.width()));
  for (int q = window_.q_min(); q <= window_.q_max(); ++q) {
    double sum = 0.0;
    for (int qp = window_.q_min(); qp <= window_.q_max(); ++qp) {
      const double j = offsets_[q - qp];
      sum += j * j;
    }
    out.push_back(sum - 1.0);
  }
  return out;
}

double compute_kappa_L(const PhysicalParameters& p) {
  const double fields[] = {p.molecular_density, p.probe_frequency, p.coupling_constant,
                           p.raman_coherence, p.medium_length};
  for (double v : fields)
    if (!std::isfinite(v) || v < 0.0) throw DomainError("physical parameters must be finite and non-negative");
  if (p.raman_coherence > 0.5) throw DomainError("raman coherence |rho_ab| cannot exceed 0.5");
  const double kappa = 2.0 * kHbar * p.molecular_density * p.probe_frequency * p.coupling_constant *
                       p.raman_coherence / (kEpsilon0 * kSpeedOfLight);
  return kappa * p.medium_length;
}

double bandwidth_ratio(double kappa_L, double probe_frequency, double modulation_frequency) {
  require_non_negative(kappa_L);
  if (!(probe_frequency > 0.0) || !(modulation_frequency > 0.0))
    throw DomainError("frequencies must be positive");
  return kappa_L * modulation_frequency / probe_frequency;
}

SidebandWindow default_window(double kappa_L) {
  require_non_negative(kappa_L);
  return SidebandWindow::symmetric(support_radius(kappa_L));
}

SidebandWindow recommend_window(double kappa_L, double tail_epsilon) {
  require_non_negative(kappa_L);
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) throw DomainError("tail_epsilon must lie in (0, 1)");
  // Far enough out that the remaining mass is below double precision.
  const int reach = static_cast<int>(std::ceil(kappa_L)) + 60 +
                    static_cast<int>(std::ceil(std::sqrt(40.0 * (kappa_L + 1.0))));
  const auto row = bessel_row(kappa_L, 0, reach);
  // tail[r] = 2 sum_{k > r} J_k^2, accumulated from the top.
  double tail = 0.0;
  int radius = reach;
  for (int k = reach; k >= 1; --k) {
    const double next = tail + 2.0 * row[k] * row[k];
    if (next >= tail_epsilon) break;
    tail = next;
    radius = k - 1;
  }
  return SidebandWindow::symmetric(std::max(radius, 1));
}

ScatteringMatrix scattering_matrix(double kappa_L, const SidebandWindow& window) {
  require_non_negative(kappa_L);
  return ScatteringMatrix(kappa_L, window);
}

double unitarity_defect(const ScatteringMatrix& matrix) {
  const auto& w = matrix.window();
  const int reach = support_radius(matrix.kappa_L());
  const auto rows = matrix.row_defects();
  double worst = 0.0;
  bool any = false;
  for (int q = w.q_min() + reach; q <= w.q_max() - reach; ++q) {
    worst = std::max(worst, std::abs(rows[w.offset(q)]));
    any = true;
  }
  if (!any) worst = std::abs(rows[w.offset(0)]);
  return worst;
}

namespace {

AmplitudeMap apply(const AmplitudeMap& input, const ScatteringMatrix& matrix, bool adjoint) {
  const auto& w = matrix.window();
  for (const auto& [q, a] : input)
    if (!w.contains(q)) throw RangeError("amplitude at order " + std::to_string(q) + " is outside the window");
  AmplitudeMap out;
  for (int q = w.q_min(); q <= w.q_max(); ++q) {
    Complex acc{0.0, 0.0};
    for (const auto& [qp, a] : input) {
      const int d = q - qp;
      acc += (adjoint ? i_power(-d) : i_power(d)) * matrix.bessel(d) * a;
    }
    out[q] = acc;
  }
  return out;
}

}  // namespace

AmplitudeMap propagate_coherent(const AmplitudeMap& input, const ScatteringMatrix& matrix) {
  return apply(input, matrix, false);
}

AmplitudeMap p_representation_preimage(const AmplitudeMap& amplitudes, const ScatteringMatrix& matrix) {
  return apply(amplitudes, matrix, true);
}

}  // namespace raman
