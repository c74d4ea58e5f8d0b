#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "raman_comb/cli/config.hpp"
#include "raman_comb/oracle.hpp"

namespace raman::cli {

inline constexpr const char* kSchemaLine = "# raman-comb schema v1";

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kToleranceBreach = 3, kWindowTooSmall = 4 };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// %.17g, with nan/inf spelled out.
std::string format_number(double v);
// Quotes a CSV field when it contains a comma or a quote.
std::string csv_field(const std::string& text);
void write_table(const Table& table, Format format, std::ostream& out);

// Evaluates every sweep point; rows come back in sweep order whatever the job count.
Table run_scenario(const ScenarioConfig& config, int jobs = 1);

// Canned configs reproducing each figure's parameter set, keyed by output stem.
std::vector<std::pair<std::string, ScenarioConfig>> figure_configs(const std::string& name);
const std::vector<std::string>& figure_names();

struct SuiteOptions {
  Tolerances tolerances;
  std::optional<int> window_radius;  // overrides every scenario's window
  int jobs = 1;
};

// The default equivalence suite: Fock(1..3), Coherent(0.5) and |1_0 1_1> at
// kappa_L in {0.5, 1.44, 2, 5}, plus a Thermal(1) mixture against the Boltzmann form.
std::vector<DeviationReport> default_oracle_suite(const SuiteOptions& options);
// Both engines on the scenario described by a config (photon_cap required).
std::vector<DeviationReport> oracle_check_config(const ScenarioConfig& config, const SuiteOptions& options);

void write_reports(const std::vector<DeviationReport>& reports, Format format, std::ostream& out);

int cli_main(int argc, char** argv);

}  // namespace raman::cli
