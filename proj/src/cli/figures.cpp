#include <map>

#include "raman_comb/cli/commands.hpp"

namespace raman::cli {

namespace {

constexpr int kSweepSteps = 1001;
constexpr double kProfileKappaL = 5.0;
constexpr int kProfileRadius = 15;

ScenarioConfig sweep(Mode mode, std::vector<InputSpec> inputs, std::vector<std::string> observables) {
  ScenarioConfig c;
  c.mode = mode;
  c.inputs = std::move(inputs);
  c.kappa_L = {0.0, 10.0, kSweepSteps};
  c.observables = std::move(observables);
  return c;
}

// Long-layout q profile at a single kappa_L.
ScenarioConfig profile(ScenarioConfig c) {
  c.kappa_L = {kProfileKappaL, kProfileKappaL, 1};
  c.sidebands.clear();
  for (int q = -kProfileRadius; q <= kProfileRadius; ++q) c.sidebands.push_back(q);
  c.layout = Layout::long_;
  return c;
}

using FigureSet = std::vector<std::pair<std::string, ScenarioConfig>>;

FigureSet fig2() {
  auto c = sweep(Mode::single, {{0, ModeState::fock(5)}}, {"mean_ratio", "gamma2_ratio"});
  c.sidebands = {0, 1, 5};
  return {{"fig2_sweep", c}, {"fig2_profile", profile(c)}};
}

FigureSet fig3() {
  auto c = sweep(Mode::single, {{0, ModeState::fock(5)}}, {"gamma_kl_ratio"});
  c.pairs = {{1, 0}, {1, 2}, {1, 5}};
  auto p = profile(c);
  p.pairs.clear();
  p.pair_with = 1;
  return {{"fig3_sweep", c}, {"fig3_profile", p}};
}

FigureSet fig4() {
  auto c = sweep(Mode::two, {{0, ModeState::fock(5)}, {1, ModeState::thermal(1.0)}}, {"mean", "g2"});
  c.sidebands = {-1, 2};
  return {{"fig4_sweep", c}, {"fig4_profile", profile(c)}};
}

FigureSet fig5() {
  auto c = sweep(Mode::two, {{0, ModeState::squeezed_vacuum(1.0, 0.0)}, {1, ModeState::thermal(1.0)}},
                 {"mean", "normalized_squeezing"});
  c.phi_follows_order = true;
  c.sidebands = {-1, 2};
  return {{"fig5_sweep", c}, {"fig5_profile", profile(c)}};
}

FigureSet fig6() {
  auto c = sweep(Mode::two, {{0, ModeState::squeezed_vacuum(1.0, 0.0)}, {1, ModeState::coherent(20.0)}},
                 {"mean", "squeezing", "squeezing_min"});
  c.phi_follows_order = true;
  c.sidebands = {0, 1, 3};
  return {{"fig6_sweep", c}};
}

FigureSet fig7() {
  auto c = sweep(Mode::two_photon, {}, {"W11", "W2"});
  c.sidebands = {0, 1};
  c.pairs = {{0, 1}};
  return {{"fig7_sweep", c}};
}

const std::map<std::string, FigureSet (*)()>& registry() {
  static const std::map<std::string, FigureSet (*)()> r{{"fig2", fig2}, {"fig3", fig3}, {"fig4", fig4},
                                                          {"fig5", fig5}, {"fig6", fig6}, {"fig7", fig7}};
  return r;
}

}  // namespace

const std::vector<std::string>& figure_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [k, v] : registry()) n.push_back(k);
    return n;
  }();
  return names;
}

std::vector<std::pair<std::string, ScenarioConfig>> figure_configs(const std::string& name) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string known;
    for (const auto& n : figure_names()) known += (known.empty() ? "" : ", ") + n;
    throw ConfigError("unknown figure '" + name + "' (known: " + known + ")");
  }
  auto set = it->second();
  for (auto& [stem, c] : set) validate(c);
  return set;
}

}  // namespace raman::cli
