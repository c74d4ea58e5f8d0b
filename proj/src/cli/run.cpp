#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <limits>
#include <numbers>
#include <ostream>

#include "parallel.hpp"
#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"

namespace raman::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(const ScenarioConfig& c, std::initializer_list<const char*> names) {
  for (const auto& o : c.observables)
    for (const char* n : names)
      if (o == n) return true;
  return false;
}

std::map<int, ModeState> input_map(const ScenarioConfig& c) {
  if (c.mode == Mode::two_photon) return {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}};
  std::map<int, ModeState> out;
  for (const auto& in : c.inputs) out[in.q] = in.state;
  return out;
}

// Input-side baselines for the scaled observables.
struct Baseline {
  double total = 0.0;
  double gamma_in = kNaN;
};

// Produces one StatisticsRecord per kappa_L with whichever engine the config selects.
class Evaluator {
 public:
  explicit Evaluator(const ScenarioConfig& c) : config_(c), window_(c.window()) {
    request_.pairs = c.reported_pairs();
    request_.distribution_n_max = wants(c, {"distribution"}) ? c.distribution_n_max : -1;
    request_.amplitudes = wants(c, {"squeezing", "normalized_squeezing", "squeezing_min", "re_b", "im_b"});
    request_.concurrence = wants(c, {"concurrence"});
    if (c.engine == Engine::oracle) {
      basis_ = build_basis(window_, c.photon_cap);
      hamiltonian_ = build_hamiltonian(basis_);
      initial_ = prepare_ensemble(basis_, input_map(c), c.max_leakage);
      for (const auto& [w, m] : initial_.members) baseline_.total += w * total_photon_number(m);
      if (c.mode == Mode::single) baseline_.gamma_in = measured_input_profile(initial_, 0).gamma(2);
    } else {
      for (const auto& [q, s] : input_map(c)) baseline_.total += factorial_moment(s, 1);
      if (c.mode == Mode::single) {
        const auto& s = c.inputs.front().state;
        baseline_.gamma_in = factorial_moment(s, 2) - std::pow(factorial_moment(s, 1), 2);
      }
    }
  }

  const Baseline& baseline() const { return baseline_; }

  StatisticsRecord at(double kappa_L) const {
    if (config_.engine == Engine::oracle) {
      const auto evolved = evolve(initial_, hamiltonian_, kappa_L);
      MeasureRequest m{request_.pairs, request_.distribution_n_max, request_.amplitudes, request_.concurrence,
                       config_.mode == Mode::two_photon};
      auto rec = measure(evolved, m);
      rec.kappa_L = kappa_L;
      rec.input_total = baseline_.total;
      return rec;
    }
    switch (config_.mode) {
      case Mode::single:
        return analytic_record(SingleModeScenario(config_.inputs.front().state, kappa_L, window_), request_);
      case Mode::two: {
        const ModeState* s0 = nullptr;
        const ModeState* s1 = nullptr;
        for (const auto& in : config_.inputs) (in.q == 0 ? s0 : s1) = &in.state;
        return analytic_record(TwoModeScenario(*s0, *s1, config_.nu(), kappa_L, window_), request_);
      }
      case Mode::two_photon:
        return analytic_two_photon_record(kappa_L, window_, request_);
    }
    return {};
  }

 private:
  const ScenarioConfig& config_;
  SidebandWindow window_;
  RecordRequest request_;
  Baseline baseline_;
  std::shared_ptr<const FockBasis> basis_;
  HamiltonianMatrix hamiltonian_;
  Ensemble initial_;
};

double phase_for(const ScenarioConfig& c, int q) {
  return c.phi + (c.phi_follows_order ? 0.5 * std::numbers::pi * q : 0.0);
}

double sideband_value(const std::string& name, const ScenarioConfig& c, const StatisticsRecord& rec,
                      const Baseline& base, int q) {
  const auto it = rec.sidebands.find(q);
  if (it == rec.sidebands.end()) return kNaN;
  const auto& s = it->second;
  auto squeezing = [&](double phi) {
    if (!s.amplitude || !s.amplitude_sq) return kNaN;
    return squeezing_from_moments(s.mean, *s.amplitude, *s.amplitude_sq, phi);
  };
  if (name == "mean") return s.mean;
  if (name == "mean_ratio") return s.mean / base.total;
  if (name == "gamma2") return s.gamma2;
  if (name == "gamma2_ratio") return s.gamma2 / base.gamma_in;
  if (name == "g2") return s.mean > 0.0 ? 1.0 + s.gamma2 / (s.mean * s.mean) : kNaN;
  if (name == "squeezing") return squeezing(phase_for(c, q));
  if (name == "normalized_squeezing") return s.mean > 0.0 ? squeezing(phase_for(c, q)) / s.mean : kNaN;
  if (name == "squeezing_min") return squeezing_grid_minimum(squeezing).value;
  if (name == "re_b") return s.amplitude ? s.amplitude->real() : kNaN;
  if (name == "im_b") return s.amplitude ? s.amplitude->imag() : kNaN;
  if (name == "W1") return s.w1.value_or(kNaN);
  if (name == "W2") return s.w2.value_or(kNaN);
  return kNaN;
}

double pair_value(const std::string& name, const StatisticsRecord& rec, const Baseline& base, std::pair<int, int> kl) {
  const auto it = rec.pairs.find(kl);
  if (it == rec.pairs.end()) return kNaN;
  const auto& p = it->second;
  if (name == "gamma_kl") return p.gamma_kl;
  if (name == "gamma_kl_ratio") return p.gamma_kl / base.gamma_in;
  if (name == "g_kl") {
    const double nk = rec.sidebands.at(kl.first).mean;
    const double nl = rec.sidebands.at(kl.second).mean;
    return nk > 0.0 && nl > 0.0 ? 1.0 + p.gamma_kl / (nk * nl) : kNaN;
  }
  if (name == "concurrence") return p.concurrence.value_or(kNaN);
  if (name == "W11") return p.w11.value_or(kNaN);
  return kNaN;
}

std::string tag(int q) { return "[" + std::to_string(q) + "]"; }
std::string tag(std::pair<int, int> kl) {
  return "[" + std::to_string(kl.first) + "," + std::to_string(kl.second) + "]";
}

std::vector<std::string> wide_columns(const ScenarioConfig& c) {
  std::vector<std::string> cols{"kappa_L"};
  for (const auto& name : c.observables) {
    if (name == "total_mean") {
      cols.push_back(name);
    } else if (is_pair_observable(name)) {
      for (const auto& kl : c.reported_pairs()) cols.push_back(name + tag(kl));
    } else if (name == "distribution") {
      for (int q : c.reported_sidebands())
        for (int n = 0; n <= c.distribution_n_max; ++n) cols.push_back("p" + tag(q) + tag(n));
    } else {
      for (int q : c.reported_sidebands()) cols.push_back(name + tag(q));
    }
  }
  return cols;
}

std::vector<std::string> long_columns(const ScenarioConfig& c) {
  std::vector<std::string> cols{"kappa_L", "q"};
  for (const auto& name : c.observables) {
    if (name == "distribution") {
      for (int n = 0; n <= c.distribution_n_max; ++n) cols.push_back("p" + tag(n));
    } else {
      cols.push_back(name);
    }
  }
  return cols;
}

void append_sideband(std::vector<double>& row, const std::string& name, const ScenarioConfig& c,
                     const StatisticsRecord& rec, const Baseline& base, int q) {
  if (name == "distribution") {
    const auto& d = rec.sidebands.at(q).distribution;
    for (int n = 0; n <= c.distribution_n_max; ++n)
      row.push_back(n < static_cast<int>(d.size()) ? d[static_cast<std::size_t>(n)] : kNaN);
  } else {
    row.push_back(sideband_value(name, c, rec, base, q));
  }
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // folds -0 into 0
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return out + "\"";
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (format == Format::csv) {
    out << kSchemaLine << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << csv_field(table.columns[i]);
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
      out << '\n';
    }
    return;
  }
  // JSON numbers are written with the same 17-digit text as the CSV; non-finite values become null.
  out << "{\n  \"schema\": \"raman-comb schema v1\",\n  \"columns\": [";
  for (std::size_t i = 0; i < table.columns.size(); ++i)
    out << (i ? ", " : "") << nlohmann::json(table.columns[i]).dump();
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r ? ",\n    [" : "\n    [");
    for (std::size_t i = 0; i < table.rows[r].size(); ++i) {
      const double v = table.rows[r][i];
      out << (i ? ", " : "") << (std::isfinite(v) ? format_number(v) : "null");
    }
    out << "]";
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

Table run_scenario(const ScenarioConfig& config, int jobs) {
  validate(config);
  const Evaluator eval(config);
  const auto points = config.kappa_L.points();
  std::vector<StatisticsRecord> records(points.size());
  parallel_for(points.size(), jobs, [&](std::size_t i) { records[i] = eval.at(points[i]); });

  Table table;
  const auto& base = eval.baseline();
  if (config.layout == Layout::wide) {
    table.columns = wide_columns(config);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& rec = records[i];
      std::vector<double> row{points[i]};
      for (const auto& name : config.observables) {
        if (name == "total_mean") {
          row.push_back(rec.total_mean());
        } else if (is_pair_observable(name)) {
          for (const auto& kl : config.reported_pairs()) row.push_back(pair_value(name, rec, base, kl));
        } else {
          for (int q : config.reported_sidebands()) append_sideband(row, name, config, rec, base, q);
        }
      }
      table.rows.push_back(std::move(row));
    }
  } else {
    table.columns = long_columns(config);
    for (std::size_t i = 0; i < points.size(); ++i) {
      const auto& rec = records[i];
      for (int q : config.reported_sidebands()) {
        std::vector<double> row{points[i], static_cast<double>(q)};
        for (const auto& name : config.observables) {
          if (name == "total_mean")
            row.push_back(rec.total_mean());
          else if (is_pair_observable(name))
            row.push_back(config.pair_with ? pair_value(name, rec, base, {*config.pair_with, q}) : kNaN);
          else
            append_sideband(row, name, config, rec, base, q);
        }
        table.rows.push_back(std::move(row));
      }
    }
  }
  return table;
}

}  // namespace raman::cli
