#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "raman_comb/scattering.hpp"
#include "raman_comb/states.hpp"

namespace raman::cli {

// Bad config file or flag; the message names the field (and line, for JSON syntax errors).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { single, two, two_photon };
enum class Engine { analytic, oracle };
enum class Format { csv, json };
enum class Layout { wide, long_ };

struct InputSpec {
  int q = 0;
  ModeState state;
  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

struct Sweep {
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  std::vector<double> points() const;
  double max() const { return std::max(start, stop); }
  bool single() const { return steps == 1; }
};

struct ScenarioConfig {
  Mode mode = Mode::single;
  Engine engine = Engine::analytic;
  int photon_cap = -1;  // oracle engine only
  double max_leakage = 1e-6;
  std::vector<InputSpec> inputs;
  Sweep kappa_L;
  std::optional<int> window_radius;  // empty: auto
  std::vector<int> sidebands;        // empty: every sideband of the window
  std::vector<std::pair<int, int>> pairs;
  std::optional<int> pair_with;
  std::vector<std::string> observables;
  double phi = 0.0;
  bool phi_follows_order = false;  // use phi + q pi/2 for sideband q
  int distribution_n_max = -1;
  Layout layout = Layout::wide;
  std::string output_path;
  Format format = Format::csv;

  // Window used for every sweep point.
  SidebandWindow window() const;
  // Sidebands reported, in output order.
  std::vector<int> reported_sidebands() const;
  // Pairs reported in wide layout.
  std::vector<std::pair<int, int>> reported_pairs() const;
  int nu() const;  // second input sideband in two-mode runs
};

// Observable names accepted in "observables".
const std::vector<std::string>& known_observables();
bool is_pair_observable(const std::string& name);

ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& config);

// Rejects inconsistent settings (observables that the mode cannot produce, inputs outside
// the window, ...). parse_config calls this; flag overrides should call it again.
void validate(const ScenarioConfig& config);

Format parse_format(const std::string& name);
// "auto" or a non-negative radius.
std::optional<int> parse_window(const std::string& text);

}  // namespace raman::cli
