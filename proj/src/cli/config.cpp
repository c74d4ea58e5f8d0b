#include "raman_comb/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "raman_comb/errors.hpp"

namespace raman::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kSidebandObservables = {
    "mean",     "mean_ratio", "gamma2", "gamma2_ratio", "g2", "squeezing", "normalized_squeezing",
    "squeezing_min", "re_b", "im_b",  "distribution", "W1", "W2"};
const std::vector<std::string> kPairObservables = {"gamma_kl", "gamma_kl_ratio", "g_kl", "concurrence", "W11"};
const std::vector<std::string> kGlobalObservables = {"total_mean"};

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ConfigError(field + ": " + what);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.contains(key)) fail(path + "." + key, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

int integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string text(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

ModeState parse_state(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with a \"type\" field");
  const auto type = text(require(j, "type", path), path + ".type");
  try {
    if (type == "vacuum") return ModeState::vacuum();
    if (type == "fock") return ModeState::fock(integer(require(j, "n", path), path + ".n"));
    if (type == "thermal") return ModeState::thermal(number(require(j, "mean", path), path + ".mean"));
    if (type == "squeezed_vacuum") {
      const double theta = j.contains("theta") ? number(j.at("theta"), path + ".theta") : 0.0;
      return ModeState::squeezed_vacuum(number(require(j, "r", path), path + ".r"), theta);
    }
    if (type == "coherent") {
      const auto& a = require(j, "alpha", path);
      if (a.is_array()) {
        if (a.size() != 2) fail(path + ".alpha", "expected [re, im]");
        return ModeState::coherent({number(a[0], path + ".alpha[0]"), number(a[1], path + ".alpha[1]")});
      }
      return ModeState::coherent({number(a, path + ".alpha"), 0.0});
    }
  } catch (const DomainError& e) {
    fail(path, e.what());
  }
  fail(path + ".type", "unknown state type \"" + type + "\"");
}

json state_json(const ModeState& s) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vacuum>) {
          j["type"] = "vacuum";
        } else if constexpr (std::is_same_v<T, Fock>) {
          j["type"] = "fock";
          j["n"] = v.n;
        } else if constexpr (std::is_same_v<T, Thermal>) {
          j["type"] = "thermal";
          j["mean"] = v.mean;
        } else if constexpr (std::is_same_v<T, SqueezedVacuum>) {
          j["type"] = "squeezed_vacuum";
          j["r"] = v.r;
          j["theta"] = v.theta;
        } else {
          j["type"] = "coherent";
          j["alpha"] = {v.alpha.real(), v.alpha.imag()};
        }
      },
      s.variant());
  return j;
}

template <class E>
E enum_from(const json& j, const std::string& path, std::initializer_list<std::pair<const char*, E>> names) {
  const auto s = text(j, path);
  for (const auto& [name, value] : names)
    if (s == name) return value;
  std::string allowed;
  for (const auto& [name, value] : names) allowed += (allowed.empty() ? "" : "|") + std::string(name);
  fail(path, "expected one of " + allowed + ", got \"" + s + "\"");
}

const char* mode_name(Mode m) {
  switch (m) {
    case Mode::single: return "single";
    case Mode::two: return "two";
    case Mode::two_photon: return "two_photon";
  }
  return "";
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

std::vector<double> Sweep::points() const {
  std::vector<double> out;
  if (steps == 1) return {start};
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) out.push_back(start + (stop - start) * i / (steps - 1));
  return out;
}

const std::vector<std::string>& known_observables() {
  static const std::vector<std::string> all = [] {
    std::vector<std::string> v = kSidebandObservables;
    v.insert(v.end(), kPairObservables.begin(), kPairObservables.end());
    v.insert(v.end(), kGlobalObservables.begin(), kGlobalObservables.end());
    return v;
  }();
  return all;
}

bool is_pair_observable(const std::string& name) { return contains(kPairObservables, name); }

int ScenarioConfig::nu() const {
  for (const auto& in : inputs)
    if (in.q != 0) return in.q;
  return 0;
}

SidebandWindow ScenarioConfig::window() const {
  if (window_radius) return SidebandWindow::symmetric(*window_radius);
  int shift = 0;
  for (const auto& in : inputs) shift = std::max(shift, std::abs(in.q));
  // the usual margin, measured from the outermost input
  int radius = static_cast<int>(std::ceil(kappa_L.max())) + (engine == Engine::oracle ? 12 : 15) + shift;
  for (int q : sidebands) radius = std::max(radius, std::abs(q));
  if (pair_with) radius = std::max(radius, std::abs(*pair_with));
  for (const auto& [k, l] : pairs) radius = std::max({radius, std::abs(k), std::abs(l)});
  return SidebandWindow::symmetric(radius);
}

std::vector<int> ScenarioConfig::reported_sidebands() const {
  if (!sidebands.empty()) return sidebands;
  const auto w = window();
  std::vector<int> out;
  for (int q = w.q_min(); q <= w.q_max(); ++q) out.push_back(q);
  return out;
}

std::vector<std::pair<int, int>> ScenarioConfig::reported_pairs() const {
  auto out = pairs;
  if (pair_with)
    for (int q : reported_sidebands()) out.emplace_back(*pair_with, q);
  return out;
}

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw ConfigError("--format: expected csv or json, got \"" + name + "\"");
}

std::optional<int> parse_window(const std::string& s) {
  if (s == "auto") return std::nullopt;
  try {
    std::size_t used = 0;
    const int r = std::stoi(s, &used);
    if (used == s.size() && r >= 0) return r;
  } catch (const std::exception&) {
  }
  throw ConfigError("--window: expected auto or a non-negative radius, got \"" + s + "\"");
}

ScenarioConfig parse_config(const std::string& source) {
  json j;
  try {
    j = json::parse(source);
  } catch (const json::parse_error& e) {
    const auto upto = source.substr(0, std::min<std::size_t>(e.byte, source.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    throw ConfigError("line " + std::to_string(line) + ": invalid JSON (" + e.what() + ")");
  }
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");

  static const std::set<std::string> known_keys = {
      "mode",   "engine",  "photon_cap", "max_leakage", "inputs", "kappa_L",           "window",
      "sidebands", "pairs", "pair_with", "observables", "phi",   "phi_follows_order", "distribution_n_max",
      "layout", "output"};
  for (const auto& [key, value] : j.items())
    if (!known_keys.count(key)) fail(key, "unknown field");

  ScenarioConfig c;
  if (j.contains("mode"))
    c.mode = enum_from<Mode>(j["mode"], "mode",
                             {{"single", Mode::single}, {"two", Mode::two}, {"two_photon", Mode::two_photon}});
  if (j.contains("engine"))
    c.engine = enum_from<Engine>(j["engine"], "engine", {{"analytic", Engine::analytic}, {"oracle", Engine::oracle}});
  if (j.contains("photon_cap")) c.photon_cap = integer(j["photon_cap"], "photon_cap");
  if (j.contains("max_leakage")) c.max_leakage = number(j["max_leakage"], "max_leakage");

  if (j.contains("inputs")) {
    const auto& arr = j["inputs"];
    if (!arr.is_array()) fail("inputs", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "inputs[" + std::to_string(i) + "]";
      if (!arr[i].is_object()) fail(path, "expected an object");
      InputSpec in;
      in.q = integer(require(arr[i], "q", path), path + ".q");
      in.state = parse_state(require(arr[i], "state", path), path + ".state");
      c.inputs.push_back(in);
    }
  }

  const auto& kl = require(j, "kappa_L", "config");
  if (kl.is_object()) {
    c.kappa_L.start = number(require(kl, "start", "kappa_L"), "kappa_L.start");
    c.kappa_L.stop = number(require(kl, "stop", "kappa_L"), "kappa_L.stop");
    c.kappa_L.steps = integer(require(kl, "steps", "kappa_L"), "kappa_L.steps");
  } else {
    c.kappa_L.start = c.kappa_L.stop = number(kl, "kappa_L");
    c.kappa_L.steps = 1;
  }

  if (j.contains("window")) {
    const auto& w = j["window"];
    if (w.is_string()) {
      if (w.get<std::string>() != "auto") fail("window", "expected \"auto\" or a radius");
    } else {
      c.window_radius = integer(w, "window");
      if (*c.window_radius < 0) fail("window", "radius must be non-negative");
    }
  }
  if (j.contains("sidebands")) {
    if (!j["sidebands"].is_array()) fail("sidebands", "expected an array of integers");
    for (std::size_t i = 0; i < j["sidebands"].size(); ++i)
      c.sidebands.push_back(integer(j["sidebands"][i], "sidebands[" + std::to_string(i) + "]"));
  }
  if (j.contains("pairs")) {
    if (!j["pairs"].is_array()) fail("pairs", "expected an array of [k, l]");
    for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
      const auto& p = j["pairs"][i];
      const std::string path = "pairs[" + std::to_string(i) + "]";
      if (!p.is_array() || p.size() != 2) fail(path, "expected [k, l]");
      c.pairs.emplace_back(integer(p[0], path + "[0]"), integer(p[1], path + "[1]"));
    }
  }
  if (j.contains("pair_with")) c.pair_with = integer(j["pair_with"], "pair_with");
  if (j.contains("observables")) {
    if (!j["observables"].is_array()) fail("observables", "expected an array of names");
    for (std::size_t i = 0; i < j["observables"].size(); ++i) {
      const std::string path = "observables[" + std::to_string(i) + "]";
      const auto name = text(j["observables"][i], path);
      if (!contains(known_observables(), name)) fail(path, "unknown observable \"" + name + "\"");
      c.observables.push_back(name);
    }
  }
  if (j.contains("phi")) c.phi = number(j["phi"], "phi");
  if (j.contains("phi_follows_order")) {
    if (!j["phi_follows_order"].is_boolean()) fail("phi_follows_order", "expected true or false");
    c.phi_follows_order = j["phi_follows_order"].get<bool>();
  }
  if (j.contains("distribution_n_max")) c.distribution_n_max = integer(j["distribution_n_max"], "distribution_n_max");
  if (j.contains("layout"))
    c.layout = enum_from<Layout>(j["layout"], "layout", {{"wide", Layout::wide}, {"long", Layout::long_}});
  if (j.contains("output")) {
    const auto& o = j["output"];
    if (!o.is_object()) fail("output", "expected {\"path\": ..., \"format\": ...}");
    if (o.contains("path")) c.output_path = text(o["path"], "output.path");
    if (o.contains("format"))
      c.format = enum_from<Format>(o["format"], "output.format", {{"csv", Format::csv}, {"json", Format::json}});
  }
  validate(c);
  return c;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void validate(const ScenarioConfig& c) {
  if (c.kappa_L.steps < 1) fail("kappa_L.steps", "must be at least 1");
  if (c.kappa_L.start < 0.0 || c.kappa_L.stop < 0.0) fail("kappa_L", "must be non-negative");
  if (c.observables.empty()) fail("observables", "at least one observable is required");
  if (!(c.max_leakage > 0.0)) fail("max_leakage", "must be positive");

  std::set<int> seen;
  for (std::size_t i = 0; i < c.inputs.size(); ++i)
    if (!seen.insert(c.inputs[i].q).second)
      fail("inputs[" + std::to_string(i) + "].q", "sideband " + std::to_string(c.inputs[i].q) + " listed twice");

  const bool has_zero = seen.count(0) > 0;
  switch (c.mode) {
    case Mode::single:
      if (c.inputs.size() != 1 || !has_zero) fail("inputs", "single mode needs exactly one input at q = 0");
      break;
    case Mode::two:
      if (c.inputs.size() != 2 || !has_zero) fail("inputs", "two-mode runs need one input at q = 0 and one at q = nu");
      break;
    case Mode::two_photon:
      for (const auto& in : c.inputs)
        if (!((in.q == 0 || in.q == 1) && in.state == ModeState::fock(1)))
          fail("inputs", "two_photon mode is fixed to Fock(1) at q = 0 and q = 1");
      break;
  }

  const bool oracle = c.engine == Engine::oracle;
  if (oracle && c.photon_cap < 0) fail("photon_cap", "required for the oracle engine");
  if (!oracle && c.photon_cap >= 0) fail("photon_cap", "only used by the oracle engine");

  const auto input_state = [&](int q) -> const ModeState* {
    for (const auto& in : c.inputs)
      if (in.q == q) return &in.state;
    return nullptr;
  };
  for (const auto& name : c.observables) {
    const std::string path = "observables: \"" + name + "\"";
    const bool two_photon_only = name == "W1" || name == "W2" || name == "W11";
    if (two_photon_only && c.mode != Mode::two_photon) fail(path, "only available in two_photon mode");
    if (c.mode == Mode::two_photon && !two_photon_only &&
        !contains({"mean", "mean_ratio", "gamma2", "g2", "gamma_kl", "g_kl", "distribution", "total_mean"}, name))
      fail(path, "not available in two_photon mode");
    if (c.mode == Mode::two && !oracle && (is_pair_observable(name) || name == "distribution"))
      fail(path, "the analytic two-mode engine has no pair or distribution output");
    if (name == "distribution" && c.distribution_n_max < 0) fail("distribution_n_max", "required for \"distribution\"");
    if (is_pair_observable(name) && c.pairs.empty() && !c.pair_with) fail(path, "needs \"pairs\" or \"pair_with\"");
    if (name == "concurrence" && c.mode == Mode::single && !oracle && !(*input_state(0) == ModeState::fock(1)))
      fail(path, "the closed form covers the single-photon input only");
    if (name == "concurrence" && c.mode == Mode::two && !oracle) fail(path, "not available for two-mode input");
    if ((name == "gamma2_ratio" || name == "gamma_kl_ratio") && c.mode != Mode::single)
      fail(path, "ratios to the input autocorrelation need a single-mode input");
    if ((name == "gamma2_ratio" || name == "gamma_kl_ratio") && c.mode == Mode::single &&
        std::abs(factorial_moment(*input_state(0), 2) - std::pow(factorial_moment(*input_state(0), 1), 2)) == 0.0)
      fail(path, "the input autocorrelation is zero");
    if (name == "mean_ratio") {
      double total = c.mode == Mode::two_photon ? 2.0 : 0.0;
      for (const auto& in : c.inputs) total += c.mode == Mode::two_photon ? 0.0 : factorial_moment(in.state, 1);
      if (total == 0.0) fail(path, "the input carries no photons");
    }
  }

  const auto w = c.window();
  for (const auto& in : c.inputs)
    if (!w.contains(in.q)) fail("inputs", "sideband " + std::to_string(in.q) + " lies outside the window");
  if (c.mode == Mode::two_photon && !w.contains(1)) fail("window", "two_photon mode needs sideband 1 in the window");
  for (int q : c.reported_sidebands())
    if (!w.contains(q)) fail("sidebands", "sideband " + std::to_string(q) + " lies outside the window");
  for (const auto& [k, l] : c.reported_pairs())
    if (!w.contains(k) || !w.contains(l)) fail("pairs", "pair lies outside the window");
  if (c.layout == Layout::long_ && !c.pairs.empty()) fail("pairs", "long layout takes \"pair_with\" instead");
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["mode"] = mode_name(c.mode);
  j["engine"] = c.engine == Engine::analytic ? "analytic" : "oracle";
  if (c.photon_cap >= 0) j["photon_cap"] = c.photon_cap;
  j["max_leakage"] = c.max_leakage;
  j["inputs"] = json::array();
  for (const auto& in : c.inputs) j["inputs"].push_back({{"q", in.q}, {"state", state_json(in.state)}});
  if (c.kappa_L.steps == 1 && c.kappa_L.start == c.kappa_L.stop)
    j["kappa_L"] = c.kappa_L.start;
  else
    j["kappa_L"] = {{"start", c.kappa_L.start}, {"stop", c.kappa_L.stop}, {"steps", c.kappa_L.steps}};
  if (c.window_radius)
    j["window"] = *c.window_radius;
  else
    j["window"] = "auto";
  j["sidebands"] = c.sidebands;
  j["pairs"] = json::array();
  for (const auto& [k, l] : c.pairs) j["pairs"].push_back({k, l});
  if (c.pair_with) j["pair_with"] = *c.pair_with;
  j["observables"] = c.observables;
  j["phi"] = c.phi;
  j["phi_follows_order"] = c.phi_follows_order;
  j["distribution_n_max"] = c.distribution_n_max;
  j["layout"] = c.layout == Layout::wide ? "wide" : "long";
  j["output"] = {{"path", c.output_path}, {"format", c.format == Format::csv ? "csv" : "json"}};
  return j.dump(2) + "\n";
}

}  // namespace raman::cli
