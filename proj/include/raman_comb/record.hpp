#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace raman {

using Complex = std::complex<double>;

struct SidebandStats {
  double mean = 0.0;    // <n_q>
  double gamma2 = 0.0;  // <b^+2 b^2> - <n_q>^2
  std::optional<double> g2;
  std::optional<Complex> amplitude;     // <b_q>
  std::optional<Complex> amplitude_sq;  // <b_q^2>
  std::vector<double> distribution;     // p_q(0..n_max), empty when not requested
  std::optional<double> w2;             // two-photon: both photons in q
  std::optional<double> w1;             // two-photon: exactly one photon in q
};

struct PairStats {
  double gamma_kl = 0.0;
  std::optional<double> g_kl;
  std::optional<double> w11;          // two-photon: one photon in each of k and l
  std::optional<double> concurrence;  // single-photon sector only
};

// Observables of one parameter point, produced by either engine.
struct StatisticsRecord {
  double kappa_L = 0.0;
  double input_total = 0.0;  // total mean photon number fed in
  std::map<int, SidebandStats> sidebands;
  std::map<std::pair<int, int>, PairStats> pairs;

  double total_mean() const;
  // Named scalar view ("mean[1]", "gamma_kl[0,1]", "p[0][3]", ...), stable order.
  std::vector<std::pair<std::string, double>> flatten() const;
};

}  // namespace raman
