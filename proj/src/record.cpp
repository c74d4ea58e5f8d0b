#include "raman_comb/record.hpp"

namespace raman {

double StatisticsRecord::total_mean() const {
  double total = 0.0;
  for (const auto& [q, s] : sidebands) total += s.mean;
  return total;
}

std::vector<std::pair<std::string, double>> StatisticsRecord::flatten() const {
  std::vector<std::pair<std::string, double>> out;
  out.emplace_back("total_mean", total_mean());
  for (const auto& [q, s] : sidebands) {
    const std::string tag = "[" + std::to_string(q) + "]";
    out.emplace_back("mean" + tag, s.mean);
    out.emplace_back("gamma2" + tag, s.gamma2);
    if (s.g2) out.emplace_back("g2" + tag, *s.g2);
    if (s.amplitude) {
      out.emplace_back("re_b" + tag, s.amplitude->real());
      out.emplace_back("im_b" + tag, s.amplitude->imag());
    }
    if (s.amplitude_sq) {
      out.emplace_back("re_b2" + tag, s.amplitude_sq->real());
      out.emplace_back("im_b2" + tag, s.amplitude_sq->imag());
    }
    for (std::size_t n = 0; n < s.distribution.size(); ++n)
      out.emplace_back("p" + tag + "[" + std::to_string(n) + "]", s.distribution[n]);
    if (s.w2) out.emplace_back("W2" + tag, *s.w2);
    if (s.w1) out.emplace_back("W1" + tag, *s.w1);
  }
  for (const auto& [kl, p] : pairs) {
    const std::string tag = "[" + std::to_string(kl.first) + "," + std::to_string(kl.second) + "]";
    out.emplace_back("gamma_kl" + tag, p.gamma_kl);
    if (p.g_kl) out.emplace_back("g_kl" + tag, *p.g_kl);
    if (p.w11) out.emplace_back("W11" + tag, *p.w11);
    if (p.concurrence) out.emplace_back("concurrence" + tag, *p.concurrence);
  }
  return out;
}

}  // namespace raman
