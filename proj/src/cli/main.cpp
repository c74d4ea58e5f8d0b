#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"
#include "raman_comb/errors.hpp"

namespace raman::cli {

namespace {

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::string format;
  int jobs = 1;
  std::string window;
  std::optional<double> tolerance;
  std::optional<long long> seed;  // reserved
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("--config", f.config_path, "Scenario config (JSON)");
  app->add_option("--out", f.out, "Output path");
  app->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--jobs", f.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app->add_option("--window", f.window, "auto or a sideband radius");
  app->add_option("--tolerance", f.tolerance, "Absolute tolerance for oracle-check")->check(CLI::NonNegativeNumber);
  app->add_option("--seed", f.seed, "Reserved; results are deterministic");
}

void apply_overrides(ScenarioConfig& c, const CommonFlags& f) {
  if (!f.format.empty()) c.format = parse_format(f.format);
  if (!f.window.empty()) c.window_radius = parse_window(f.window);
  if (!f.out.empty()) c.output_path = f.out;
  validate(c);
}

// Writes through the callback to path, or to stdout when path is empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  write(out);
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int run_command(const CommonFlags& f) {
  if (f.config_path.empty()) throw ConfigError("--config is required");
  auto config = load_config(f.config_path);
  apply_overrides(config, f);
  const auto table = run_scenario(config, f.jobs);
  emit(config.output_path, [&](std::ostream& o) { write_table(table, config.format, o); });
  return kOk;
}

int figure_command(const std::string& name, const CommonFlags& f) {
  const auto configs = figure_configs(name);
  const std::filesystem::path dir = f.out.empty() ? "." : f.out;
  std::filesystem::create_directories(dir);
  for (auto [stem, config] : configs) {
    CommonFlags flags = f;
    flags.out.clear();
    apply_overrides(config, flags);
    const auto table = run_scenario(config, f.jobs);
    const auto path = dir / (stem + (config.format == Format::csv ? ".csv" : ".json"));
    emit(path.string(), [&](std::ostream& o) { write_table(table, config.format, o); });
    std::cerr << "wrote " << path.string() << '\n';
  }
  return kOk;
}

int oracle_check_command(const CommonFlags& f) {
  SuiteOptions options;
  options.jobs = f.jobs;
  if (f.tolerance) {
    options.tolerances.absolute = *f.tolerance;
    options.tolerances.conservation = *f.tolerance;
  }
  if (!f.window.empty()) options.window_radius = parse_window(f.window);
  const Format format = f.format.empty() ? Format::csv : parse_format(f.format);

  std::vector<DeviationReport> reports;
  if (f.config_path.empty()) {
    reports = default_oracle_suite(options);
  } else {
    reports = oracle_check_config(load_config(f.config_path), options);
  }
  emit(f.out, [&](std::ostream& o) { write_reports(reports, format, o); });

  int failed = 0;
  for (const auto& r : reports) {
    std::cerr << (r.pass() ? "PASS " : "FAIL ") << r.scenario << " kappa_L=" << format_number(r.kappa_L)
              << " max_deviation=" << format_number(r.max_deviation()) << '\n';
    failed += r.pass() ? 0 : 1;
  }
  std::cerr << (reports.size() - static_cast<std::size_t>(failed)) << '/' << reports.size() << " scenarios pass\n";
  return failed ? kToleranceBreach : kOk;
}

int zeros_command(double max_kappa_L, int count, const CommonFlags& f) {
  const auto zeros = find_interference_zeros(max_kappa_L, count);
  Table table;
  table.columns = {"index", "kappa_L"};
  for (std::size_t i = 0; i < zeros.roots.size(); ++i)
    table.rows.push_back({static_cast<double>(i + 1), zeros.roots[i]});
  const Format format = f.format.empty() ? Format::csv : parse_format(f.format);
  emit(f.out, [&](std::ostream& o) { write_table(table, format, o); });
  if (zeros.shortfall > 0)
    std::cerr << "only " << zeros.roots.size() << " of " << count << " zeros below kappa_L = " << max_kappa_L << '\n';
  return kOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"Quantum statistics of multiorder Raman sidebands"};
  app.require_subcommand(1);

  CommonFlags run_flags, figure_flags, check_flags, zeros_flags;
  auto* run = app.add_subcommand("run", "Evaluate a scenario config over its kappa_L sweep");
  add_common(run, run_flags);

  std::string figure_name;
  auto* figure = app.add_subcommand("figure", "Emit plot data for one of the canned figures");
  figure->add_option("name", figure_name, "fig2 .. fig7")->required();
  add_common(figure, figure_flags);

  auto* check = app.add_subcommand("oracle-check", "Compare the closed form against the Fock-space oracle");
  add_common(check, check_flags);

  double max_kappa_L = 5.0;
  int count = 3;
  auto* zeros = app.add_subcommand("zeros", "Roots of J0^2 = J1^2 (two-photon coincidence zeros)");
  zeros->add_option("--max-kappa-L", max_kappa_L, "Search interval upper end")->check(CLI::PositiveNumber);
  zeros->add_option("--count", count, "Number of roots")->check(CLI::PositiveNumber);
  add_common(zeros, zeros_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return run_command(run_flags);
    if (*figure) return figure_command(figure_name, figure_flags);
    if (*check) return oracle_check_command(check_flags);
    if (*zeros) return zeros_command(max_kappa_L, count, zeros_flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const TruncationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const CapacityError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const WindowTooSmall& e) {
    std::cerr << "window too small: " << e.what() << '\n';
    return kWindowTooSmall;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kFailure;
}

}  // namespace raman::cli
