#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raman_comb/analytic.hpp"
#include "raman_comb/errors.hpp"

namespace raman {
namespace {

int lowest_order(const SidebandWindow& w, int nu) { return std::min(w.q_min(), w.q_min() - nu); }
int highest_order(const SidebandWindow& w, int nu) { return std::max(w.q_max(), w.q_max() - nu); }

int validated_nu(int nu, const SidebandWindow& w) {
  if (nu == 0) throw DomainError("two-mode input needs nu != 0");
  if (!w.contains(nu)) throw DomainError("window must contain the second input sideband nu = " + std::to_string(nu));
  return nu;
}

}  // namespace

TwoModeScenario::TwoModeScenario(const ModeState& input0, const ModeState& input_nu, int nu, double kappa_L,
                                 SidebandWindow window)
    : TwoModeScenario(InputProfile::from_state(input0), InputProfile::from_state(input_nu), nu, kappa_L, window) {}

TwoModeScenario::TwoModeScenario(InputProfile input0, InputProfile input_nu, int nu, double kappa_L,
                                 SidebandWindow window)
    : input0_(std::move(input0)),
      input_nu_(std::move(input_nu)),
      nu_(validated_nu(nu, window)),
      kappa_L_(kappa_L),
      window_(window),
      row_(bessel_row(kappa_L, lowest_order(window, nu), highest_order(window, nu))) {
  if (!std::isfinite(kappa_L) || kappa_L < 0.0) throw DomainError("kappa_L must be finite and non-negative");
}

double TwoModeScenario::bessel(int k) const {
  if (!row_.contains(k)) throw RangeError("Bessel order " + std::to_string(k) + " not tabulated for this scenario");
  return row_[k];
}

void TwoModeScenario::require(int q) const {
  if (!window_.contains(q)) throw RangeError("sideband " + std::to_string(q) + " is outside the window");
}

double two_mode_mean(const TwoModeScenario& scn, int q) {
  scn.require(q);
  const double a = scn.bessel(q);
  const double b = scn.bessel(q - scn.nu());
  const auto& m0 = scn.input0().moments;
  const auto& mn = scn.input_nu().moments;
  const Complex cross = i_power(-scn.nu()) * std::conj(m0.m_b) * mn.m_b;
  return a * a * m0.n_mean + b * b * mn.n_mean + 2.0 * a * b * cross.real();
}

double two_mode_second_moment(const TwoModeScenario& scn, int q) {
  scn.require(q);
  const double a = scn.bessel(q);
  const double b = scn.bessel(q - scn.nu());
  const auto& p0 = scn.input0();
  const auto& pn = scn.input_nu();
  const Complex half_turn = i_power(-scn.nu());
  const Complex full_turn = i_power(-2 * scn.nu());
  const Complex interference = 2.0 * half_turn * (a * a * a * b) * p0.moments.m_b2dag_b * pn.moments.m_b +
                               2.0 * half_turn * (a * b * b * b) * std::conj(p0.moments.m_b) * pn.moments.m_bdag_b2 +
                               full_turn * (a * a * b * b) * std::conj(p0.moments.m_b2) * pn.moments.m_b2;
  return std::pow(a, 4) * p0.factorial[2] + std::pow(b, 4) * pn.factorial[2] +
         4.0 * a * a * b * b * p0.moments.n_mean * pn.moments.n_mean + 2.0 * interference.real();
}

double two_mode_gamma2(const TwoModeScenario& scn, int q) {
  scn.require(q);
  const double a = scn.bessel(q);
  const double b = scn.bessel(q - scn.nu());
  const auto& m0 = scn.input0().moments;
  const auto& mn = scn.input_nu().moments;
  const double delta0 = m0.n_mean * mn.n_mean - std::norm(m0.m_b) * std::norm(mn.m_b);
  const Complex delta1 = std::conj(m0.m_b2) * mn.m_b2 - std::conj(m0.m_b) * std::conj(m0.m_b) * mn.m_b * mn.m_b;
  const Complex delta2 = mn.m_b * (m0.m_b2dag_b - m0.n_mean * std::conj(m0.m_b));
  const Complex delta3 = std::conj(m0.m_b) * (mn.m_bdag_b2 - mn.n_mean * mn.m_b);
  const Complex half_turn = i_power(-scn.nu());
  const Complex full_turn = i_power(-2 * scn.nu());
  const Complex interference = full_turn * (a * a * b * b) * delta1 + 2.0 * half_turn * (a * a * a * b) * delta2 +
                               2.0 * half_turn * (a * b * b * b) * delta3;
  return std::pow(a, 4) * scn.input0().gamma(2) + std::pow(b, 4) * scn.input_nu().gamma(2) +
         2.0 * a * a * b * b * delta0 + 2.0 * interference.real();
}

double two_mode_g2(const TwoModeScenario& scn, int q) {
  const double n = two_mode_mean(scn, q);
  if (n <= 0.0) throw UndefinedStatistic("g^(2) is undefined: sideband " + std::to_string(q) + " is empty");
  return 1.0 + two_mode_gamma2(scn, q) / (n * n);
}

TwoModeAmplitudes two_mode_amplitudes(const TwoModeScenario& scn, int q) {
  scn.require(q);
  const int nu = scn.nu();
  const Complex a = i_power(q) * scn.bessel(q);
  const Complex b = i_power(q - nu) * scn.bessel(q - nu);
  const auto& m0 = scn.input0().moments;
  const auto& mn = scn.input_nu().moments;
  TwoModeAmplitudes out;
  out.mean = a * m0.m_b + b * mn.m_b;
  out.square = a * a * m0.m_b2 + b * b * mn.m_b2 + 2.0 * a * b * m0.m_b * mn.m_b;
  return out;
}

double two_mode_squeezing(const TwoModeScenario& scn, int q, double phi) {
  const auto amp = two_mode_amplitudes(scn, q);
  return squeezing_from_moments(two_mode_mean(scn, q), amp.mean, amp.square, phi);
}

double two_mode_squeezing_superposition(const TwoModeScenario& scn, int q, double phi) {
  scn.require(q);
  const int nu = scn.nu();
  const double a = scn.bessel(q);
  const double b = scn.bessel(q - nu);
  const double quarter = 0.5 * std::numbers::pi;
  const auto& m0 = scn.input0().moments;
  const auto& mn = scn.input_nu().moments;
  const double base = phi - q * quarter;
  const double s0 = squeezing_from_moments(m0.n_mean, m0.m_b, m0.m_b2, base);
  const double sn = squeezing_from_moments(mn.n_mean, mn.m_b, mn.m_b2, base + nu * quarter);
  return a * a * s0 + b * b * sn;
}

}  // namespace raman
