#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "raman_comb/errors.hpp"
#include "raman_comb/oracle.hpp"

namespace raman {
namespace {

constexpr double kRatioFloor = 1e-3;

void require_members(const Ensemble& e) {
  if (e.members.empty()) throw DomainError("empty ensemble");
}

// sum_w w sum_s conj(c_{s - lower e_q}) c_s f(n_q(s)), i.e. <(b^+)^m b^{m+lower}> shaped terms.
template <class F>
Complex lowered_expectation(const Ensemble& e, int q, int lower, F&& factor) {
  const auto& basis = *e.members.front().second.basis;
  const auto pos = basis.window().offset(q);
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(basis.modes()));
  Complex total{};
  for (const auto& [weight, member] : e.members) {
    Complex acc{};
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const Complex c = member.amplitudes[static_cast<Eigen::Index>(s)];
      if (c == Complex{}) continue;
      const auto src = basis.occupation(s);
      const int n = src[pos];
      if (n < lower) continue;
      const double f = factor(n);
      if (f == 0.0) continue;
      std::copy(src.begin(), src.end(), occ.begin());
      occ[pos] = static_cast<std::uint8_t>(n - lower);
      const auto t = basis.index_of(std::span<const std::uint8_t>(occ));
      acc += std::conj(member.amplitudes[static_cast<Eigen::Index>(t)]) * c * f;
    }
    total += weight * acc;
  }
  return total;
}

}  // namespace

StatisticsRecord measure(const MultimodeFockVector& state, const MeasureRequest& request) {
  Ensemble e;
  e.members.emplace_back(1.0, state);
  return measure(e, request);
}

StatisticsRecord measure(const Ensemble& ensemble, const MeasureRequest& request) {
  require_members(ensemble);
  const auto& basis = *ensemble.members.front().second.basis;
  const auto& w = basis.window();
  const auto modes = static_cast<std::size_t>(basis.modes());
  for (const auto& [k, l] : request.pairs)
    if (!w.contains(k) || !w.contains(l)) throw RangeError("requested pair lies outside the window");

  const int dist_max = std::max(request.distribution_n_max, request.two_photon ? 2 : -1);
  std::vector<double> mean(modes, 0.0), fact2(modes, 0.0);
  std::vector<std::vector<double>> dist(modes, std::vector<double>(static_cast<std::size_t>(dist_max + 1), 0.0));
  std::vector<double> joint(request.pairs.size(), 0.0), both_one(request.pairs.size(), 0.0);

  for (const auto& [weight, member] : ensemble.members) {
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const double p = weight * std::norm(member.amplitudes[static_cast<Eigen::Index>(s)]);
      if (p == 0.0) continue;
      const auto occ = basis.occupation(s);
      for (std::size_t i = 0; i < modes; ++i) {
        const int n = occ[i];
        if (n == 0) {
          if (dist_max >= 0) dist[i][0] += p;
          continue;
        }
        mean[i] += p * n;
        fact2[i] += p * n * (n - 1);
        if (n <= dist_max) dist[i][static_cast<std::size_t>(n)] += p;
      }
      for (std::size_t j = 0; j < request.pairs.size(); ++j) {
        const int nk = occ[w.offset(request.pairs[j].first)];
        const int nl = occ[w.offset(request.pairs[j].second)];
        joint[j] += p * (request.pairs[j].first == request.pairs[j].second ? nk * (nk - 1) : nk * nl);
        if (nk == 1 && nl == 1) both_one[j] += p;
      }
    }
  }

  StatisticsRecord rec;
  for (int q = w.q_min(); q <= w.q_max(); ++q) {
    const auto i = w.offset(q);
    SidebandStats s;
    s.mean = mean[i];
    s.gamma2 = fact2[i] - mean[i] * mean[i];
    if (s.mean >= kRatioFloor) s.g2 = fact2[i] / (mean[i] * mean[i]);
    if (request.amplitudes) {
      s.amplitude = lowered_expectation(ensemble, q, 1, [](int n) { return std::sqrt(static_cast<double>(n)); });
      s.amplitude_sq = lowered_expectation(ensemble, q, 2, [](int n) { return std::sqrt(n * (n - 1.0)); });
    }
    if (request.distribution_n_max >= 0)
      s.distribution.assign(dist[i].begin(), dist[i].begin() + request.distribution_n_max + 1);
    if (request.two_photon) {
      s.w1 = dist[i][1];
      s.w2 = dist[i][2];
    }
    rec.sidebands[q] = std::move(s);
  }
  rec.input_total = rec.total_mean();

  for (std::size_t j = 0; j < request.pairs.size(); ++j) {
    const auto [k, l] = request.pairs[j];
    const double nk = mean[w.offset(k)];
    const double nl = mean[w.offset(l)];
    PairStats p;
    p.gamma_kl = joint[j] - nk * nl;
    if (nk >= kRatioFloor && nl >= kRatioFloor) p.g_kl = joint[j] / (nk * nl);
    if (request.two_photon && k != l) p.w11 = both_one[j];
    if (request.concurrence && k != l) p.concurrence = concurrence(reduced_pair_density(ensemble, k, l));
    rec.pairs[{k, l}] = p;
  }
  return rec;
}

InputProfile measured_input_profile(const Ensemble& ensemble, int q) {
  require_members(ensemble);
  const auto& basis = *ensemble.members.front().second.basis;
  if (!basis.window().contains(q)) throw RangeError("sideband " + std::to_string(q) + " is outside the window");
  const auto pos = basis.window().offset(q);
  InputProfile p;
  p.distribution.assign(static_cast<std::size_t>(basis.photon_cap()) + 1, 0.0);
  for (const auto& [weight, member] : ensemble.members)
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const double prob = weight * std::norm(member.amplitudes[static_cast<Eigen::Index>(s)]);
      if (prob != 0.0) p.distribution[basis.occupation(s)[pos]] += prob;
    }
  for (int k = 0; k <= 4; ++k) {
    double m = 0.0;
    for (std::size_t n = 0; n < p.distribution.size(); ++n) {
      double falling = 1.0;
      for (int j = 0; j < k; ++j) falling *= static_cast<double>(n) - j;
      m += falling * p.distribution[n];
    }
    p.factorial[static_cast<std::size_t>(k)] = m;
  }
  p.moments.n_mean = p.factorial[1];
  p.moments.m_b2dag_b2 = p.factorial[2];
  p.moments.m_b = lowered_expectation(ensemble, q, 1, [](int n) { return std::sqrt(static_cast<double>(n)); });
  p.moments.m_b2 = lowered_expectation(ensemble, q, 2, [](int n) { return std::sqrt(n * (n - 1.0)); });
  // b^+ b^2 |n> = (n - 1) sqrt(n) |n - 1>
  p.moments.m_bdag_b2 = lowered_expectation(ensemble, q, 1, [](int n) { return (n - 1.0) * std::sqrt(static_cast<double>(n)); });
  p.moments.m_b2dag_b = std::conj(p.moments.m_bdag_b2);
  p.distribution_tail = 0.0;
  return p;
}

double occupation_probability(const Ensemble& ensemble, std::span<const int> occupation) {
  require_members(ensemble);
  const auto& basis = *ensemble.members.front().second.basis;
  int total = 0;
  for (int n : occupation) total += n;
  if (total > basis.photon_cap()) return 0.0;
  const auto idx = static_cast<Eigen::Index>(basis.index_of(occupation));
  double p = 0.0;
  for (const auto& [weight, member] : ensemble.members) p += weight * std::norm(member.amplitudes[idx]);
  return p;
}

Eigen::Matrix4cd reduced_pair_density(const Ensemble& ensemble, int k, int l) {
  require_members(ensemble);
  const auto& basis = *ensemble.members.front().second.basis;
  const auto& w = basis.window();
  if (!w.contains(k) || !w.contains(l)) throw RangeError("pair lies outside the window");
  if (k == l) throw DomainError("reduced pair density needs two distinct sidebands");
  const auto pk = w.offset(k);
  const auto pl = w.offset(l);
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(basis.modes()));
  for (const auto& [weight, member] : ensemble.members) {
    // group amplitudes by the occupation of every other mode
    std::unordered_map<std::size_t, Eigen::Vector4cd> groups;
    for (std::size_t s = 0; s < basis.size(); ++s) {
      const Complex c = member.amplitudes[static_cast<Eigen::Index>(s)];
      if (c == Complex{}) continue;
      const auto src = basis.occupation(s);
      const int nk = src[pk];
      const int nl = src[pl];
      if (nk > 1 || nl > 1) continue;
      std::copy(src.begin(), src.end(), occ.begin());
      occ[pk] = 0;
      occ[pl] = 0;
      const auto key = basis.index_of(std::span<const std::uint8_t>(occ));
      auto [it, inserted] = groups.try_emplace(key, Eigen::Vector4cd::Zero());
      it->second[2 * nk + nl] = c;
    }
    for (const auto& [key, v] : groups) rho += weight * (v * v.adjoint());
  }
  return rho;
}

double concurrence(const Eigen::Matrix4cd& rho) {
  // rho = W W^+ with W built from the non-negligible eigenpairs; the lambda_i of
  // Wootters' formula are the singular values of W^T (sigma_y (x) sigma_y) W.
  Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(0.5 * (rho + rho.adjoint()));
  Eigen::Matrix4cd w = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 4; ++i)
    if (eig.eigenvalues()[i] > 1e-14) w.col(i) = std::sqrt(eig.eigenvalues()[i]) * eig.eigenvectors().col(i);
  const Eigen::Matrix4cd tau = w.transpose() * flip * w;
  Eigen::JacobiSVD<Eigen::Matrix4cd> svd(tau);
  const Eigen::Vector4d lambda = svd.singularValues();  // descending
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double fidelity(const MultimodeFockVector& a, const MultimodeFockVector& b) {
  if (a.basis != b.basis) throw DomainError("fidelity needs states on the same basis");
  return std::norm(a.amplitudes.dot(b.amplitudes));
}

// --- comparison ------------------------------------------------------------------

double Tolerances::for_family(const std::string& family) const {
  const auto it = per_family.find(family);
  return it == per_family.end() ? absolute : it->second;
}

bool DeviationReport::pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Deviation& d) { return d.pass; });
}

double DeviationReport::max_deviation() const {
  double worst = 0.0;
  for (const auto& d : entries) worst = std::max(worst, d.deviation);
  return worst;
}

namespace {
std::string family_of(const std::string& name) { return name.substr(0, name.find('[')); }
}  // namespace

std::map<std::string, double> DeviationReport::family_maxima() const {
  std::map<std::string, double> out;
  for (const auto& d : entries) {
    auto& slot = out[family_of(d.name)];
    slot = std::max(slot, d.deviation);
  }
  return out;
}

DeviationReport compare(const StatisticsRecord& analytic, const StatisticsRecord& oracle, const Tolerances& tolerances,
                        std::string scenario) {
  DeviationReport report;
  report.scenario = std::move(scenario);
  report.kappa_L = analytic.kappa_L;
  std::map<std::string, double> oracle_values;
  for (const auto& [name, value] : oracle.flatten()) oracle_values.emplace(name, value);
  for (const auto& [name, value] : analytic.flatten()) {
    const auto it = oracle_values.find(name);
    if (it == oracle_values.end()) continue;
    Deviation d;
    d.name = name;
    d.analytic = value;
    d.oracle = it->second;
    d.tolerance = tolerances.for_family(family_of(name));
    d.deviation = std::abs(value - it->second);
    d.pass = std::isfinite(d.deviation) && d.deviation <= d.tolerance;
    if (!std::isfinite(d.deviation)) d.deviation = std::numeric_limits<double>::infinity();
    report.entries.push_back(d);
  }
  for (const auto* rec : {&analytic, &oracle}) {
    Deviation d;
    d.name = rec == &analytic ? "conservation[analytic]" : "conservation[oracle]";
    d.analytic = rec->total_mean();
    d.oracle = rec->input_total;
    // relative to the photon number once it exceeds one
    d.deviation = std::abs(d.analytic - d.oracle) / std::max(1.0, std::abs(d.oracle));
    d.tolerance = tolerances.conservation;
    d.pass = std::isfinite(d.deviation) && d.deviation <= d.tolerance;
    report.entries.push_back(d);
  }
  return report;
}

}  // namespace raman
