#pragma once

// Closed-form sideband statistics for single-mode, two-mode and two-photon
// inputs scattered by the Bessel transform b_q -> sum_q' i^{q-q'} J_{q-q'} b_q'.

#include <array>
#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "raman_comb/record.hpp"
#include "raman_comb/scattering.hpp"
#include "raman_comb/specfun.hpp"
#include "raman_comb/states.hpp"

namespace raman {

// What the transfer laws need to know about one input mode.
struct InputProfile {
  MomentSet moments;
  std::array<double, 5> factorial{};  // <b^+n b^n>, n = 0..4
  std::vector<double> distribution;   // p_in(0..support)
  double distribution_tail = 0.0;     // mass above the stored support
  std::optional<ModeState> state;     // set when built from a ModeState

  static InputProfile from_state(const ModeState& state, double tail = 1e-13);

  // Gamma_in^(n) = <b^+n b^n> - <n>^n.
  double gamma(int n) const;
  double p(int n) const;
};

class SingleModeScenario {
 public:
  SingleModeScenario(const ModeState& input, double kappa_L, SidebandWindow window);
  SingleModeScenario(InputProfile input, double kappa_L, SidebandWindow window);

  const InputProfile& input() const { return input_; }
  double kappa_L() const { return kappa_L_; }
  const SidebandWindow& window() const { return window_; }
  // J_q(kappa_L); throws RangeError outside the window.
  double bessel(int q) const;

 private:
  InputProfile input_;
  double kappa_L_;
  SidebandWindow window_;
  BesselRow row_;
};

// --- single-mode input -----------------------------------------------------

double sideband_moment(const SingleModeScenario& scn, int q, int n);
double mean_photon(const SingleModeScenario& scn, int q);
double autocorrelation(const SingleModeScenario& scn, int q, int n);
double normalized_autocorrelation_out(const SingleModeScenario& scn, int q, int n);

struct CrossCorrelation {
  double gamma_kl = 0.0;
  std::optional<double> g_kl;  // empty when either sideband is empty
};
CrossCorrelation cross_correlation(const SingleModeScenario& scn, int k, int l);

std::vector<double> marginal_pnd(const SingleModeScenario& scn, int q, int n_max);

using Occupation = std::map<int, int>;
double joint_pnd(const SingleModeScenario& scn, const Occupation& occupations);

// Every occupation of the window with exactly total photons, with its probability.
// Limited to total <= 6 and window width <= 13.
std::vector<std::pair<Occupation, double>> enumerate_joint(const SingleModeScenario& scn, int total);

double squeezing_factor_out(const SingleModeScenario& scn, int q, double phi);
double normalized_squeezing_out(const SingleModeScenario& scn, int q, double phi);

struct SqueezingOptimum {
  double phi = 0.0;
  double value = 0.0;
};
// Samples phi on [0, pi) and returns the most negative squeezing factor.
template <class F>
SqueezingOptimum squeezing_grid_minimum(F&& squeezing_at, int points = 64);
std::vector<double> squeezing_grid(int points = 64);

// Quadrature angle of maximal squeezing of sideband q for a squeezed vacuum (r, theta) at q = 0.
double squeezed_vacuum_optimal_phi(double theta, int q);

// alpha_q = alpha J_q e^{iq pi/2}; requires a Coherent input state.
AmplitudeMap coherent_output(const SingleModeScenario& scn);

// Amplitude of |{n_q}> after Fock(N) enters sideband 0.
Complex fock_output_coefficient(int total, const Occupation& occupations, double kappa_L);

// 2 |J_k J_l| for the single-photon output state.
double single_photon_concurrence(int k, int l, double kappa_L);

// --- two-mode input ----------------------------------------------------------

class TwoModeScenario {
 public:
  TwoModeScenario(const ModeState& input0, const ModeState& input_nu, int nu, double kappa_L,
                  SidebandWindow window);
  TwoModeScenario(InputProfile input0, InputProfile input_nu, int nu, double kappa_L, SidebandWindow window);

  const InputProfile& input0() const { return input0_; }
  const InputProfile& input_nu() const { return input_nu_; }
  int nu() const { return nu_; }
  double kappa_L() const { return kappa_L_; }
  const SidebandWindow& window() const { return window_; }
  // J_k(kappa_L) for any offset k used by the two-mode formulas.
  double bessel(int k) const;
  void require(int q) const;

 private:
  InputProfile input0_;
  InputProfile input_nu_;
  int nu_;
  double kappa_L_;
  SidebandWindow window_;
  BesselRow row_;
};

double two_mode_mean(const TwoModeScenario& scn, int q);
// <b_q^+2 b_q^2> term by term.
double two_mode_second_moment(const TwoModeScenario& scn, int q);
// Gamma_q^(2) from the Delta_0..Delta_3 decomposition.
double two_mode_gamma2(const TwoModeScenario& scn, int q);
double two_mode_g2(const TwoModeScenario& scn, int q);

struct TwoModeAmplitudes {
  Complex mean;    // <b_q>
  Complex square;  // <b_q^2>
};
TwoModeAmplitudes two_mode_amplitudes(const TwoModeScenario& scn, int q);

// S_q(phi) from the two-mode moments.
double two_mode_squeezing(const TwoModeScenario& scn, int q, double phi);
// The same quantity as a weighted superposition of the two input squeezing factors.
double two_mode_squeezing_superposition(const TwoModeScenario& scn, int q, double phi);

// --- two-photon input |1_0 1_1> -----------------------------------------------

struct TwoPhotonOutput {
  std::map<int, Complex> amp2;                    // |2_q>
  std::map<std::pair<int, int>, Complex> amp11;   // |1_k 1_l>, k < l
};
TwoPhotonOutput two_photon_output(double kappa_L, const SidebandWindow& window);

struct TwoPhotonProbabilities {
  std::map<int, double> w2;
  std::map<std::pair<int, int>, double> w11;  // k < l
  std::map<int, double> w1;
  std::map<int, double> mean;
};
TwoPhotonProbabilities two_photon_probabilities(double kappa_L, const SidebandWindow& window);

// W_01 = (J_0^2 - J_1^2)^2.
double coincidence_01(double kappa_L);

struct InterferenceZeros {
  std::vector<double> roots;
  int shortfall = 0;  // requested minus found
};
// Roots of J_0(x)^2 = J_1(x)^2 in (0, max_kappa_L], bisected to 1e-12.
InterferenceZeros find_interference_zeros(double max_kappa_L, int count);

// k-th positive zero of J_n (k >= 1).
double bessel_zero(int n, int k);

// --- records -------------------------------------------------------------------

struct RecordRequest {
  std::vector<std::pair<int, int>> pairs;
  int distribution_n_max = -1;  // < 0: no distributions
  bool amplitudes = false;
  bool concurrence = false;
};

StatisticsRecord analytic_record(const SingleModeScenario& scn, const RecordRequest& request);
StatisticsRecord analytic_record(const TwoModeScenario& scn, const RecordRequest& request);
StatisticsRecord analytic_two_photon_record(double kappa_L, const SidebandWindow& window,
                                            const RecordRequest& request);

// --- template definitions --------------------------------------------------------

template <class F>
SqueezingOptimum squeezing_grid_minimum(F&& squeezing_at, int points) {
  SqueezingOptimum best{0.0, squeezing_at(0.0)};
  for (double phi : squeezing_grid(points)) {
    const double v = squeezing_at(phi);
    if (v < best.value) best = {phi, v};
  }
  return best;
}

}  // namespace raman
