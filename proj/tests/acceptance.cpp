// One line per acceptance criterion; exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"
#include "raman_comb/oracle.hpp"
#include "support/series_bessel.hpp"

using namespace raman;
using raman::testing::series_bessel_j;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Tracker {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && first_failure_.empty()) first_failure_ = what;
    pass_ = pass_ && ok;
  }
  void worst(const std::string& name, double value, double bound) {
    check(value <= bound, name + " = " + fmt(value) + " > " + fmt(bound));
    notes_ << (notes_.tellp() > 0 ? ", " : "") << name << " " << fmt(value);
  }
  void note(const std::string& text) { notes_ << (notes_.tellp() > 0 ? ", " : "") << text; }
  Outcome done() const {
    return {pass_, first_failure_.empty() ? notes_.str() : first_failure_ + " | " + notes_.str()};
  }
  static std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
  }

 private:
  bool pass_ = true;
  std::string first_failure_;
  std::ostringstream notes_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SidebandWindow recommended(double kl, int shift = 0) {
  return SidebandWindow::symmetric(recommend_window(kl, 1e-12).q_max() + std::abs(shift));
}

const ModeState kFock5 = ModeState::fock(5);
const ModeState kThermal1 = ModeState::thermal(1.0);
const ModeState kCoherent2 = ModeState::coherent(2.0);

Outcome interference_zeros() {
  Tracker t;
  const auto t0 = std::chrono::steady_clock::now();
  const auto z = find_interference_zeros(5.0, 3);
  const double elapsed = seconds_since(t0);
  const double paper[] = {1.44, 3.11, 4.68};
  t.check(z.roots.size() == 3, "fewer than three roots");
  for (std::size_t i = 0; i < z.roots.size() && i < 3; ++i) {
    t.check(std::abs(z.roots[i] - paper[i]) < 0.01, "root " + std::to_string(i + 1) + " off by >= 0.01");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.5f (paper %.2f)", z.roots[i], paper[i]);
    t.note(buf);
  }
  t.worst("runtime_s", elapsed, 1.0);
  return t.done();
}

Outcome squeezing_waypoints() {
  Tracker t;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sq = ModeState::squeezed_vacuum(1.0, 0.0);
  auto waypoint = [&](double kl, int q, double degree, double mean) {
    const TwoModeScenario s(sq, ModeState::coherent(20.0), 1, kl, SidebandWindow::symmetric(static_cast<int>(std::ceil(kl)) + 16));
    const double S = two_mode_squeezing(s, q, squeezed_vacuum_optimal_phi(0.0, q));
    const double n = two_mode_mean(s, q);
    t.check(std::abs(-S - degree) <= 0.01, "squeezing degree at q=" + std::to_string(q));
    t.check(std::abs(n - mean) <= 1.0, "mean at q=" + std::to_string(q));
    t.note("q=" + std::to_string(q) + " S=" + Tracker::fmt(S) + " <n>=" + Tracker::fmt(n));
  };
  waypoint(1.84, 1, 0.29, 41.0);
  waypoint(4.2, 3, 0.16, 39.0);
  const double s_in = input_squeezing_factor(sq, 0.0);
  const double n_in = moments(sq).n_mean;
  t.check(std::abs(s_in + 0.8647) <= 5e-4, "S_in(0)");
  t.check(std::abs(n_in - 1.3811) <= 5e-4, "sinh^2 1");
  t.note("S_in=" + Tracker::fmt(s_in) + " sinh^2=" + Tracker::fmt(n_in));
  t.worst("runtime_s", seconds_since(t0), 1.0);
  return t.done();
}

Outcome replication_law() {
  Tracker t;
  double g2_dev = 0.0, gkl_dev = 0.0, s_dev = 0.0;
  const auto grid = squeezing_grid(64);
  for (const auto& state : {kFock5, kThermal1, kCoherent2}) {
    const double g_in = normalized_autocorrelation(state, 2);
    const double n_in = moments(state).n_mean;
    for (double kl : {0.5, 2.0, 5.0, 8.0}) {
      const SingleModeScenario s(state, kl, recommended(kl));
      std::vector<int> live;
      for (int q = s.window().q_min(); q <= s.window().q_max(); ++q)
        if (std::abs(series_bessel_j(q, kl)) > 1e-6) live.push_back(q);
      for (int q : live) {
        g2_dev = std::max(g2_dev, std::abs(normalized_autocorrelation_out(s, q, 2) - g_in));
        for (double phi : grid) {
          const double s_in = input_squeezing_factor(state, phi) / n_in;
          const double s_out = normalized_squeezing_out(s, q, phi + 0.5 * M_PI * q);
          s_dev = std::max(s_dev, std::abs(s_out - s_in));
        }
      }
      for (std::size_t a = 0; a < live.size(); ++a)
        for (std::size_t b = a + 1; b < live.size(); ++b) {
          const auto c = cross_correlation(s, live[a], live[b]);
          gkl_dev = std::max(gkl_dev, c.g_kl ? std::abs(*c.g_kl - g_in) : INFINITY);
        }
    }
  }
  t.worst("max|g2_q-g2_in|", g2_dev, 1e-12);
  t.worst("max|g_kl-g2_in|", gkl_dev, 1e-12);
  t.worst("max|s_q-s_in|", s_dev, 1e-12);
  return t.done();
}

Outcome oracle_equivalence() {
  Tracker t;
  const auto t0 = std::chrono::steady_clock::now();
  cli::SuiteOptions options;
  const auto reports = cli::default_oracle_suite(options);
  double worst = 0.0;
  std::size_t scenarios = 0, entries = 0;
  for (const auto& r : reports) {
    if (r.scenario == "thermal1_boltzmann") continue;
    ++scenarios;
    entries += r.entries.size();
    for (const auto& e : r.entries) {
      if (e.name.rfind("conservation", 0) == 0) continue;
      worst = std::max(worst, e.deviation);
      t.check(e.deviation <= 1e-8, r.scenario + " " + e.name);
    }
  }
  t.check(scenarios == 20, "expected 20 scenario points");
  t.note(std::to_string(scenarios) + " scenario points, " + std::to_string(entries) + " comparisons");
  t.worst("max_deviation", worst, 1e-8);
  t.worst("runtime_s", seconds_since(t0), 300.0);
  return t.done();
}

Outcome conservation() {
  Tracker t;
  double analytic = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double kl = 0.5 * i;
    for (const auto& state : {kFock5, kThermal1, kCoherent2, ModeState::squeezed_vacuum(1.0, 0.0)}) {
      const SingleModeScenario s(state, kl, recommended(kl));
      double total = 0.0;
      for (int q = s.window().q_min(); q <= s.window().q_max(); ++q) total += mean_photon(s, q);
      analytic = std::max(analytic, std::abs(total - moments(state).n_mean));
    }
    const TwoModeScenario s2(ModeState::squeezed_vacuum(1.0, 0.0), ModeState::coherent(20.0), 1, kl, recommended(kl, 1));
    double total2 = 0.0;
    for (int q = s2.window().q_min(); q <= s2.window().q_max(); ++q) total2 += two_mode_mean(s2, q);
    analytic = std::max(analytic, std::abs(total2 - (std::pow(std::sinh(1.0), 2) + 400.0)));

    const auto p = two_photon_probabilities(kl, recommended(kl, 1));
    double total_tp = 0.0;
    for (const auto& [q, m] : p.mean) total_tp += m;
    analytic = std::max(analytic, std::abs(total_tp - 2.0));
  }
  t.worst("analytic_sum_deviation", analytic, 1e-9);

  double drift = 0.0;
  struct Case {
    std::map<int, ModeState> inputs;
    int cap;
  };
  for (const auto& c : {Case{{{0, ModeState::fock(2)}}, 2}, Case{{{0, ModeState::fock(1)}, {1, ModeState::fock(1)}}, 2},
                        Case{{{0, ModeState::coherent(0.5)}}, 4}}) {
    const auto basis = build_basis(SidebandWindow::symmetric(22), c.cap);
    const auto h = build_hamiltonian(basis);
    double leakage = 0.0;
    const auto psi0 = prepare_state(basis, c.inputs, 1e-4, &leakage);
    const double n0 = total_photon_number(psi0);
    for (double kl : {2.5, 5.0, 7.5, 10.0}) {
      EvolveReport report;
      const auto psi = evolve(psi0, h, kl, {}, &report);
      drift = std::max({drift, std::abs(psi.norm() - 1.0), std::abs(total_photon_number(psi) - n0), report.norm_drift,
                        report.photon_number_drift});
    }
  }
  t.worst("oracle_drift", drift, 1e-9);
  return t.done();
}

Outcome distributions() {
  Tracker t;
  double worst = 0.0;
  const double binom[] = {1, 5, 10, 10, 5, 1};
  for (double kl : {0.5, 2.0, 5.0}) {
    const auto w = SidebandWindow::symmetric(std::max(8, recommended(kl).q_max()));
    const SingleModeScenario fock(kFock5, kl, w), thermal(kThermal1, kl, w), coherent(kCoherent2, kl, w);
    for (int q = -8; q <= 8; ++q) {
      const double t2 = std::pow(series_bessel_j(q, kl), 2);
      const auto pf = marginal_pnd(fock, q, 5);
      for (int n = 0; n <= 5; ++n)
        worst = std::max(worst, std::abs(pf[n] - binom[n] * std::pow(t2, n) * std::pow(1.0 - t2, 5 - n)));
      const auto pt = marginal_pnd(thermal, q, 40);
      for (int n = 0; n <= 40; ++n) worst = std::max(worst, std::abs(pt[n] - std::pow(t2, n) / std::pow(1.0 + t2, n + 1)));
      const auto pc = marginal_pnd(coherent, q, 40);
      const double mean = 4.0 * t2;
      double poisson = std::exp(-mean);
      for (int n = 0; n <= 40; ++n) {
        worst = std::max(worst, std::abs(pc[n] - poisson));
        poisson *= mean / (n + 1);
      }
    }
  }
  t.worst("closed_form_deviation", worst, 1e-12);

  // Summing the joint distribution over a window of width 9 at fixed n_q must give
  // C(N, n) t^n (K - t)^(N - n), K being the single-photon mass kept in the window.
  double joint = 0.0;
  for (int total = 1; total <= 3; ++total)
    for (double kl : {0.5, 1.1, 2.0}) {
      const SingleModeScenario s(ModeState::fock(total), kl, SidebandWindow::symmetric(4));
      double kept = 0.0;
      for (int q = -4; q <= 4; ++q) kept += std::pow(series_bessel_j(q, kl), 2);
      const auto states = enumerate_joint(s, total);
      for (int q = -4; q <= 4; ++q) {
        std::vector<double> summed(static_cast<std::size_t>(total) + 1, 0.0);
        for (const auto& [occ, p] : states) {
          const auto it = occ.find(q);
          summed[it == occ.end() ? 0 : it->second] += p;
        }
        const auto marginal = marginal_pnd(s, q, total);
        const double tq = std::pow(series_bessel_j(q, kl), 2);
        for (int n = 0; n <= total; ++n) {
          const double expected = marginal[n] * std::pow((kept - tq) / (1.0 - tq), total - n);
          joint = std::max(joint, std::abs(summed[n] - expected));
        }
      }
    }
  t.worst("joint_marginal_deviation", joint, 1e-12);
  return t.done();
}

Outcome two_mode_reductions() {
  Tracker t;
  double worst = 0.0;
  const auto w = SidebandWindow::symmetric(40);
  const auto grid = squeezing_grid(16);
  for (const auto& state : {kFock5, kThermal1, ModeState::coherent({2.0, 1.0}), ModeState::squeezed_vacuum(1.0, 0.3)}) {
    for (double kl : {0.5, 2.0, 5.0}) {
      const SingleModeScenario s(state, kl, w);
      const int nu = 3;
      const TwoModeScenario at0(state, ModeState::vacuum(), nu, kl, w);
      const TwoModeScenario at_nu(ModeState::vacuum(), state, nu, kl, w);
      for (int q = -10; q <= 10; ++q) {
        for (const auto& [scn, shift] : {std::pair{&at0, 0}, std::pair{&at_nu, nu}}) {
          const int p = q - shift;
          worst = std::max(worst, std::abs(two_mode_mean(*scn, q) - mean_photon(s, p)));
          worst = std::max(worst, std::abs(two_mode_second_moment(*scn, q) - sideband_moment(s, p, 2)));
          worst = std::max(worst, std::abs(two_mode_gamma2(*scn, q) - autocorrelation(s, p, 2)));
          if (mean_photon(s, p) > 1e-6)
            worst = std::max(worst, std::abs(two_mode_g2(*scn, q) - normalized_autocorrelation_out(s, p, 2)));
          const auto a = two_mode_amplitudes(*scn, q);
          const auto& m = s.input().moments;
          const double j = s.bessel(p);
          worst = std::max(worst, std::abs(a.mean - i_power(p) * j * m.m_b));
          worst = std::max(worst, std::abs(a.square - i_power(2 * p) * j * j * m.m_b2));
          for (double phi : grid)
            worst = std::max(worst, std::abs(two_mode_squeezing(*scn, q, phi) - squeezing_factor_out(s, p, phi)));
        }
      }
    }
  }
  t.worst("vacuum_reduction_deviation", worst, 1e-14);

  double limits = 0.0;
  for (int q : {-1, 2})
    for (int k = 1; k <= 3; ++k) {
      const double z = bessel_zero(std::abs(q), k);
      const double z1 = bessel_zero(std::abs(q - 1), k);
      const TwoModeScenario a(kFock5, kThermal1, 1, z, w), b(kFock5, kThermal1, 1, z1, w);
      limits = std::max({limits, std::abs(two_mode_g2(a, q) - 2.0), std::abs(two_mode_g2(b, q) - 0.8)});
    }
  t.worst("fig4_limit_deviation", limits, 1e-10);
  return t.done();
}

Outcome special_functions() {
  Tracker t;
  double worst = 0.0;
  for (int xi = 0; xi <= 500; ++xi) {
    const double x = 0.1 * xi;
    for (int q = -60; q <= 60; ++q) worst = std::max(worst, std::abs(bessel_j(q, x) - series_bessel_j(q, x)));
  }
  t.worst("max|J-series|", worst, 1e-12);
  double completeness = 0.0;
  for (int xi = 0; xi <= 100; ++xi) {
    const double x = 0.5 * xi;
    const auto w = recommend_window(x, 1e-12);
    const auto row = bessel_row(x, w.q_min(), w.q_max());
    double sum = 0.0;
    for (double v : row.values) sum += v * v;
    completeness = std::max(completeness, std::abs(sum - 1.0));
  }
  t.worst("completeness_defect", completeness, 1e-12);
  return t.done();
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 interference zeros", interference_zeros},
      {"2 squeezing transfer waypoints", squeezing_waypoints},
      {"3 replication law", replication_law},
      {"4 oracle equivalence", oracle_equivalence},
      {"5 conservation and unitarity", conservation},
      {"6 distribution closed forms", distributions},
      {"7 two-mode reductions", two_mode_reductions},
      {"8 special functions", special_functions},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("[%s] %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures;
}
