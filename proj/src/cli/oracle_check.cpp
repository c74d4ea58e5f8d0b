#include <cmath>
#include <json.hpp>
#include <ostream>

#include "parallel.hpp"
#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"

namespace raman::cli {

namespace {

struct CheckCase {
  std::string name;
  Mode mode = Mode::single;
  std::map<int, ModeState> inputs;
  int photon_cap = 0;
  double max_leakage = kMaxLeakage;
  SidebandWindow window = SidebandWindow::symmetric(0);
  double kappa_L = 0.0;
  RecordRequest request;
};

InputProfile profile_for(const Ensemble& prepared, int q, const ModeState& state) {
  return prepared.leakage == 0.0 ? InputProfile::from_state(state) : measured_input_profile(prepared, q);
}

DeviationReport run_case(const CheckCase& c, const Tolerances& tolerances) {
  const auto basis = build_basis(c.window, c.photon_cap);
  const auto h = build_hamiltonian(basis);
  const auto prepared = prepare_ensemble(basis, c.inputs, c.max_leakage);

  StatisticsRecord analytic;
  switch (c.mode) {
    case Mode::single: {
      const auto& state = c.inputs.at(0);
      analytic = analytic_record(SingleModeScenario(profile_for(prepared, 0, state), c.kappa_L, c.window), c.request);
      break;
    }
    case Mode::two: {
      const auto& [nu, s_nu] = *std::find_if(c.inputs.begin(), c.inputs.end(), [](const auto& e) { return e.first != 0; });
      analytic = analytic_record(TwoModeScenario(profile_for(prepared, 0, c.inputs.at(0)),
                                                 profile_for(prepared, nu, s_nu), nu, c.kappa_L, c.window),
                                 c.request);
      break;
    }
    case Mode::two_photon:
      analytic = analytic_two_photon_record(c.kappa_L, c.window, c.request);
      break;
  }

  MeasureRequest m{c.request.pairs, c.request.distribution_n_max, c.request.amplitudes, c.request.concurrence,
                   c.mode == Mode::two_photon};
  auto oracle = measure(evolve(prepared, h, c.kappa_L), m);
  oracle.kappa_L = c.kappa_L;
  oracle.input_total = 0.0;
  for (const auto& [w, member] : prepared.members) oracle.input_total += w * total_photon_number(member);
  return compare(analytic, oracle, tolerances, c.name);
}

// Thermal input at q = 0: every output marginal stays Boltzmann with mean J_q^2.
DeviationReport boltzmann_check(const SuiteOptions& options) {
  constexpr double kappa_L = 0.5;
  constexpr int cap = 12;
  constexpr double max_leakage = 1e-3;
  const auto window = SidebandWindow::symmetric(options.window_radius.value_or(4));
  const auto basis = build_basis(window, cap);
  const auto prepared = prepare_ensemble(basis, {{0, ModeState::thermal(1.0)}}, max_leakage);
  MeasureRequest m;
  m.distribution_n_max = cap;
  const auto rec = measure(evolve(prepared, build_hamiltonian(basis), kappa_L), m);

  DeviationReport report;
  report.scenario = "thermal1_boltzmann";
  report.kappa_L = kappa_L;
  const double tolerance = 2.0 * prepared.leakage;
  for (int q = window.q_min(); q <= window.q_max(); ++q) {
    const double jq = bessel_j(q, kappa_L);
    const double nbar = jq * jq;
    const auto& dist = rec.sidebands.at(q).distribution;
    for (int n = 0; n <= cap; ++n) {
      Deviation d;
      d.name = "p[" + std::to_string(q) + "][" + std::to_string(n) + "]";
      d.analytic = std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1);
      d.oracle = dist[static_cast<std::size_t>(n)];
      d.deviation = std::abs(d.analytic - d.oracle);
      d.tolerance = tolerance;
      d.pass = d.deviation <= d.tolerance;
      report.entries.push_back(d);
    }
  }
  return report;
}

std::vector<DeviationReport> run_cases(const std::vector<CheckCase>& cases, const SuiteOptions& options) {
  std::vector<DeviationReport> reports(cases.size());
  parallel_for(cases.size(), options.jobs, [&](std::size_t i) { reports[i] = run_case(cases[i], options.tolerances); });
  return reports;
}

}  // namespace

std::vector<DeviationReport> default_oracle_suite(const SuiteOptions& options) {
  struct Input {
    std::string name;
    Mode mode;
    std::map<int, ModeState> inputs;
    int cap;
  };
  const std::vector<Input> inputs{
      {"fock1", Mode::single, {{0, ModeState::fock(1)}}, 1},
      {"fock2", Mode::single, {{0, ModeState::fock(2)}}, 2},
      {"fock3", Mode::single, {{0, ModeState::fock(3)}}, 3},
      {"coherent0.5", Mode::single, {{0, ModeState::coherent(0.5)}}, 5},
      {"two_photon", Mode::two_photon, {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}}, 2},
  };
  std::vector<CheckCase> cases;
  for (const auto& in : inputs)
    for (double kappa_L : {0.5, 1.44, 2.0, 5.0}) {
      CheckCase c;
      c.name = in.name;
      c.mode = in.mode;
      c.inputs = in.inputs;
      c.photon_cap = in.cap;
      c.kappa_L = kappa_L;
      c.window = SidebandWindow::symmetric(options.window_radius.value_or(static_cast<int>(std::ceil(kappa_L)) + 12));
      c.request.pairs = {{0, 1}, {-1, 1}, {1, 2}, {-2, 3}};
      if (in.mode != Mode::two_photon) c.request.pairs.emplace_back(1, 1);
      std::erase_if(c.request.pairs, [&](const auto& kl) {
        return !c.window.contains(kl.first) || !c.window.contains(kl.second);
      });
      c.request.distribution_n_max = in.cap;
      c.request.concurrence = in.name == "fock1";
      c.request.amplitudes = in.name == "coherent0.5";
      cases.push_back(std::move(c));
    }
  auto reports = run_cases(cases, options);
  reports.push_back(boltzmann_check(options));
  return reports;
}

std::vector<DeviationReport> oracle_check_config(const ScenarioConfig& config, const SuiteOptions& options) {
  if (config.photon_cap < 0) throw ConfigError("photon_cap: required for oracle-check");
  auto scenario = config;
  scenario.engine = Engine::oracle;
  if (options.window_radius) scenario.window_radius = options.window_radius;
  validate(scenario);

  std::vector<CheckCase> cases;
  for (double kappa_L : scenario.kappa_L.points()) {
    CheckCase c;
    c.name = "config";
    c.mode = scenario.mode;
    if (scenario.mode == Mode::two_photon) {
      c.inputs = {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}};
    } else {
      for (const auto& in : scenario.inputs) c.inputs[in.q] = in.state;
    }
    c.photon_cap = scenario.photon_cap;
    c.max_leakage = scenario.max_leakage;
    c.window = scenario.window();
    c.kappa_L = kappa_L;
    c.request.pairs = scenario.reported_pairs();
    c.request.distribution_n_max = scenario.distribution_n_max;
    c.request.amplitudes = true;
    c.request.concurrence = std::find(scenario.observables.begin(), scenario.observables.end(), "concurrence") !=
                            scenario.observables.end();
    cases.push_back(std::move(c));
  }
  return run_cases(cases, options);
}

void write_reports(const std::vector<DeviationReport>& reports, Format format, std::ostream& out) {
  if (format == Format::csv) {
    out << kSchemaLine << '\n' << "scenario,kappa_L,observable,analytic,oracle,deviation,tolerance,pass\n";
    for (const auto& r : reports)
      for (const auto& e : r.entries)
        out << csv_field(r.scenario) << ',' << format_number(r.kappa_L) << ',' << csv_field(e.name) << ',' << format_number(e.analytic) << ','
            << format_number(e.oracle) << ',' << format_number(e.deviation) << ',' << format_number(e.tolerance) << ','
            << (e.pass ? 1 : 0) << '\n';
    return;
  }
  auto finite = [](double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(); };
  nlohmann::ordered_json doc;
  doc["schema"] = "raman-comb schema v1";
  doc["reports"] = nlohmann::ordered_json::array();
  for (const auto& r : reports) {
    nlohmann::ordered_json jr;
    jr["scenario"] = r.scenario;
    jr["kappa_L"] = r.kappa_L;
    jr["pass"] = r.pass();
    jr["max_deviation"] = finite(r.max_deviation());
    jr["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : r.entries)
      jr["entries"].push_back({{"observable", e.name},
                               {"analytic", finite(e.analytic)},
                               {"oracle", finite(e.oracle)},
                               {"deviation", finite(e.deviation)},
                               {"tolerance", e.tolerance},
                               {"pass", e.pass}});
    doc["reports"].push_back(std::move(jr));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace raman::cli
