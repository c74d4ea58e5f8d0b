#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raman_comb/analytic.hpp"
#include "raman_comb/errors.hpp"

namespace raman {
namespace {

void require_kappa(double kappa_L) {
  if (!std::isfinite(kappa_L) || kappa_L < 0.0) throw DomainError("kappa_L must be finite and non-negative");
}

double ipow(double base, int n) {
  double out = 1.0;
  for (int i = 0; i < n; ++i) out *= base;
  return out;
}

InputProfile checked(InputProfile p) {
  if (p.distribution.empty()) throw DomainError("input profile needs a photon-number distribution");
  p.factorial[0] = 1.0;
  return p;
}

}  // namespace

InputProfile InputProfile::from_state(const ModeState& state, double tail) {
  InputProfile p;
  p.moments = raman::moments(state);
  for (int n = 0; n <= 4; ++n) p.factorial[static_cast<std::size_t>(n)] = factorial_moment(state, n);
  const int support = distribution_support(state, tail);
  p.distribution = photon_number_distribution(state, support);
  p.distribution_tail = raman::distribution_tail(state, support);
  p.state = state;
  return p;
}

double InputProfile::gamma(int n) const {
  if (n < 1 || n > 4) throw DomainError("autocorrelation order must be in 1..4");
  return factorial[static_cast<std::size_t>(n)] - ipow(factorial[1], n);
}

double InputProfile::p(int n) const {
  if (n < 0 || n >= static_cast<int>(distribution.size())) return 0.0;
  return distribution[static_cast<std::size_t>(n)];
}

SingleModeScenario::SingleModeScenario(const ModeState& input, double kappa_L, SidebandWindow window)
    : SingleModeScenario(InputProfile::from_state(input), kappa_L, window) {}

SingleModeScenario::SingleModeScenario(InputProfile input, double kappa_L, SidebandWindow window)
    : input_(checked(std::move(input))),
      kappa_L_((require_kappa(kappa_L), kappa_L)),
      window_(window),
      row_(bessel_row(kappa_L, window.q_min(), window.q_max())) {}

double SingleModeScenario::bessel(int q) const {
  if (!window_.contains(q)) throw RangeError("sideband " + std::to_string(q) + " is outside the window");
  return row_[q];
}

double sideband_moment(const SingleModeScenario& scn, int q, int n) {
  if (n < 1 || n > 4) throw DomainError("moment order must be in 1..4");
  const double j2 = scn.bessel(q) * scn.bessel(q);
  return ipow(j2, n) * scn.input().factorial[static_cast<std::size_t>(n)];
}

double mean_photon(const SingleModeScenario& scn, int q) { return sideband_moment(scn, q, 1); }

double autocorrelation(const SingleModeScenario& scn, int q, int n) {
  const double j2 = scn.bessel(q) * scn.bessel(q);
  return ipow(j2, n) * scn.input().gamma(n);
}

double normalized_autocorrelation_out(const SingleModeScenario& scn, int q, int n) {
  const double moment = sideband_moment(scn, q, n);
  const double mean = mean_photon(scn, q);
  if (mean <= 0.0 || ipow(mean, n) == 0.0)
    throw UndefinedStatistic("g^(n) is undefined: sideband " + std::to_string(q) + " is empty");
  return moment / ipow(mean, n);
}

CrossCorrelation cross_correlation(const SingleModeScenario& scn, int k, int l) {
  const double jk2 = scn.bessel(k) * scn.bessel(k);
  const double jl2 = scn.bessel(l) * scn.bessel(l);
  const double nk = mean_photon(scn, k);
  const double nl = mean_photon(scn, l);
  CrossCorrelation out;
  if (k == l) {
    out.gamma_kl = autocorrelation(scn, k, 2);
    if (nk > 0.0) out.g_kl = sideband_moment(scn, k, 2) / (nk * nk);
    return out;
  }
  // <n_k n_l> = J_k^2 J_l^2 <n(n-1)>_in
  const double joint = jk2 * jl2 * scn.input().factorial[2];
  out.gamma_kl = jk2 * jl2 * scn.input().gamma(2);
  if (nk > 0.0 && nl > 0.0) out.g_kl = joint / (nk * nl);
  return out;
}

std::vector<double> marginal_pnd(const SingleModeScenario& scn, int q, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  const double t = scn.bessel(q) * scn.bessel(q);
  const auto& in = scn.input();
  const int support = static_cast<int>(in.distribution.size()) - 1;
  std::vector<double> out(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int n = 0; n <= std::min(n_max, support); ++n) {
    // sum_k C(n+k, n) t^n (1-t)^k p_in(n+k)
    double weight = ipow(t, n);
    double sum = 0.0;
    for (int k = 0; n + k <= support; ++k) {
      if (k > 0) weight *= (1.0 - t) * static_cast<double>(n + k) / static_cast<double>(k);
      sum += weight * in.p(n + k);
      if (weight == 0.0) break;
    }
    out[static_cast<std::size_t>(n)] = sum;
  }
  return out;
}

double joint_pnd(const SingleModeScenario& scn, const Occupation& occupations) {
  int total = 0;
  double log_ratio = 0.0;  // log N! - sum log n_q!
  double product = 1.0;
  for (const auto& [q, n] : occupations) {
    if (n < 0) throw DomainError("occupation numbers must be non-negative");
    const double j2 = scn.bessel(q) * scn.bessel(q);
    total += n;
    log_ratio -= std::lgamma(n + 1.0);
    product *= ipow(j2, n);
  }
  log_ratio += std::lgamma(total + 1.0);
  return scn.input().p(total) * std::exp(log_ratio) * product;
}

std::vector<std::pair<Occupation, double>> enumerate_joint(const SingleModeScenario& scn, int total) {
  const auto& w = scn.window();
  if (total < 0 || total > 6) throw DomainError("joint enumeration supports 0 <= N <= 6");
  if (w.width() > 13) throw DomainError("joint enumeration supports windows of width <= 13");
  std::vector<std::pair<Occupation, double>> out;
  std::vector<int> counts(static_cast<std::size_t>(w.width()), 0);
  // Recursive composition of total into width parts.
  auto recurse = [&](auto&& self, std::size_t pos, int remaining) -> void {
    if (pos + 1 == counts.size()) {
      counts[pos] = remaining;
      Occupation occ;
      for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] > 0) occ[w.q_min() + static_cast<int>(i)] = counts[i];
      out.emplace_back(occ, joint_pnd(scn, occ));
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      counts[pos] = n;
      self(self, pos + 1, remaining - n);
    }
  };
  recurse(recurse, 0, total);
  return out;
}

double squeezing_factor_out(const SingleModeScenario& scn, int q, double phi) {
  const double j = scn.bessel(q);
  const auto& m = scn.input().moments;
  const Complex b = i_power(q) * j * m.m_b;
  const Complex b2 = i_power(2 * q) * (j * j) * m.m_b2;
  return squeezing_from_moments(j * j * m.n_mean, b, b2, phi);
}

double normalized_squeezing_out(const SingleModeScenario& scn, int q, double phi) {
  const double n = mean_photon(scn, q);
  if (n <= 0.0) throw UndefinedStatistic("normalized squeezing is undefined: sideband " + std::to_string(q) + " is empty");
  return squeezing_factor_out(scn, q, phi) / n;
}

std::vector<double> squeezing_grid(int points) {
  if (points < 1) throw DomainError("squeezing grid needs at least one point");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) out.push_back(std::numbers::pi * i / points);
  return out;
}

double squeezed_vacuum_optimal_phi(double theta, int q) {
  return 0.5 * theta + 0.5 * std::numbers::pi * q;
}

AmplitudeMap coherent_output(const SingleModeScenario& scn) {
  const auto& state = scn.input().state;
  const auto* c = state ? std::get_if<Coherent>(&state->variant()) : nullptr;
  if (c == nullptr) throw DomainError("coherent_output needs a coherent input state");
  return propagate_coherent({{0, c->alpha}}, scattering_matrix(scn.kappa_L(), scn.window()));
}

Complex fock_output_coefficient(int total, const Occupation& occupations, double kappa_L) {
  require_kappa(kappa_L);
  int sum = 0;
  for (const auto& [q, n] : occupations) {
    if (n < 0) throw DomainError("occupation numbers must be non-negative");
    sum += n;
  }
  if (sum != total) return {0.0, 0.0};
  Complex out{std::sqrt(std::exp(std::lgamma(total + 1.0))), 0.0};
  for (const auto& [q, n] : occupations) {
    if (n == 0) continue;
    const double j = bessel_j(q, kappa_L);
    out *= i_power(q * n) * ipow(j, n) / std::sqrt(std::exp(std::lgamma(n + 1.0)));
  }
  return out;
}

double single_photon_concurrence(int k, int l, double kappa_L) {
  require_kappa(kappa_L);
  if (k == l) throw DomainError("concurrence needs two distinct sidebands");
  return 2.0 * std::abs(bessel_j(k, kappa_L) * bessel_j(l, kappa_L));
}

}  // namespace raman
