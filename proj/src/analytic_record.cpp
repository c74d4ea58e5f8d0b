#include <cmath>

#include "raman_comb/analytic.hpp"
#include "raman_comb/errors.hpp"

namespace raman {
namespace {

// g-type ratios are reported only where the sideband carries at least this many photons.
constexpr double kRatioFloor = 1e-3;

}  // namespace

StatisticsRecord analytic_record(const SingleModeScenario& scn, const RecordRequest& request) {
  const auto& w = scn.window();
  const auto& in = scn.input();
  StatisticsRecord rec;
  rec.kappa_L = scn.kappa_L();
  rec.input_total = in.moments.n_mean;
  for (int q = w.q_min(); q <= w.q_max(); ++q) {
    SidebandStats s;
    s.mean = mean_photon(scn, q);
    s.gamma2 = autocorrelation(scn, q, 2);
    if (s.mean >= kRatioFloor) s.g2 = sideband_moment(scn, q, 2) / (s.mean * s.mean);
    if (request.amplitudes) {
      const double j = scn.bessel(q);
      s.amplitude = i_power(q) * j * in.moments.m_b;
      s.amplitude_sq = i_power(2 * q) * (j * j) * in.moments.m_b2;
    }
    if (request.distribution_n_max >= 0) s.distribution = marginal_pnd(scn, q, request.distribution_n_max);
    rec.sidebands[q] = std::move(s);
  }
  for (const auto& [k, l] : request.pairs) {
    const auto cc = cross_correlation(scn, k, l);
    PairStats p;
    p.gamma_kl = cc.gamma_kl;
    if (cc.g_kl && rec.sidebands.at(k).mean >= kRatioFloor && rec.sidebands.at(l).mean >= kRatioFloor) p.g_kl = cc.g_kl;
    if (request.concurrence && k != l) p.concurrence = single_photon_concurrence(k, l, scn.kappa_L());
    rec.pairs[{k, l}] = p;
  }
  return rec;
}

StatisticsRecord analytic_record(const TwoModeScenario& scn, const RecordRequest& request) {
  const auto& w = scn.window();
  StatisticsRecord rec;
  rec.kappa_L = scn.kappa_L();
  rec.input_total = scn.input0().moments.n_mean + scn.input_nu().moments.n_mean;
  for (int q = w.q_min(); q <= w.q_max(); ++q) {
    SidebandStats s;
    s.mean = two_mode_mean(scn, q);
    s.gamma2 = two_mode_gamma2(scn, q);
    if (s.mean >= kRatioFloor) s.g2 = 1.0 + s.gamma2 / (s.mean * s.mean);
    if (request.amplitudes) {
      const auto amp = two_mode_amplitudes(scn, q);
      s.amplitude = amp.mean;
      s.amplitude_sq = amp.square;
    }
    rec.sidebands[q] = std::move(s);
  }
  return rec;
}

StatisticsRecord analytic_two_photon_record(double kappa_L, const SidebandWindow& window,
                                            const RecordRequest& request) {
  const auto probs = two_photon_probabilities(kappa_L, window);
  StatisticsRecord rec;
  rec.kappa_L = kappa_L;
  rec.input_total = 2.0;
  for (int q = window.q_min(); q <= window.q_max(); ++q) {
    SidebandStats s;
    s.mean = probs.mean.at(q);
    // <n(n-1)> is 2 W2: only |2_q> has two photons in q.
    s.gamma2 = 2.0 * probs.w2.at(q) - s.mean * s.mean;
    s.w2 = probs.w2.at(q);
    s.w1 = probs.w1.at(q);
    if (request.distribution_n_max >= 0) {
      s.distribution.assign(static_cast<std::size_t>(request.distribution_n_max) + 1, 0.0);
      const double by_count[] = {1.0 - probs.w1.at(q) - probs.w2.at(q), probs.w1.at(q), probs.w2.at(q)};
      for (int n = 0; n <= std::min(2, request.distribution_n_max); ++n)
        s.distribution[static_cast<std::size_t>(n)] = by_count[n];
    }
    rec.sidebands[q] = std::move(s);
  }
  for (const auto& [k, l] : request.pairs) {
    if (k == l) continue;
    const auto key = k < l ? std::pair{k, l} : std::pair{l, k};
    PairStats p;
    p.w11 = probs.w11.at(key);
    // <n_k n_l> = W_kl for two photons.
    p.gamma_kl = *p.w11 - probs.mean.at(k) * probs.mean.at(l);
    rec.pairs[{k, l}] = p;
  }
  return rec;
}

}  // namespace raman
