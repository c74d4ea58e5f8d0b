#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"
#include "support/series_bessel.hpp"

using namespace raman;
using namespace raman::cli;
using raman::testing::series_bessel_j;

namespace {

std::string render(const Table& t, Format f = Format::csv) {
  std::ostringstream os;
  write_table(t, f, os);
  return os.str();
}

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.columns.begin(), t.columns.end(), name);
  REQUIRE(it != t.columns.end());
  return static_cast<std::size_t>(it - t.columns.begin());
}

const Table& figure_table(const std::string& fig, const std::string& stem, Table& storage) {
  for (const auto& [s, c] : figure_configs(fig))
    if (s == stem) storage = run_scenario(c);
  return storage;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("raman_cli_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

int invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "raman-comb");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli_main(static_cast<int>(argv.size()), argv.data());
}

const char* kFockConfig = R"({
  "mode": "single",
  "inputs": [{"q": 0, "state": {"type": "fock", "n": 5}}],
  "kappa_L": {"start": 0, "stop": 10, "steps": 21},
  "sidebands": [0, 1, 5],
  "observables": ["mean_ratio", "gamma2_ratio", "g2", "distribution"],
  "distribution_n_max": 5
})";

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(std::nan("")) == "nan");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("config round trip") {
  const auto a = parse_config(kFockConfig);
  const auto text = serialize_config(a);
  const auto b = parse_config(text);
  CHECK(serialize_config(b) == text);
  CHECK(b.inputs == a.inputs);
  CHECK(b.kappa_L.steps == 21);

  const char* rich = R"({
    "mode": "two", "engine": "oracle", "photon_cap": 4, "max_leakage": 1e-5,
    "inputs": [{"q": 0, "state": {"type": "squeezed_vacuum", "r": 0.3, "theta": 0.25}},
               {"q": -2, "state": {"type": "coherent", "alpha": [0.1, -0.2]}}],
    "kappa_L": 1.5, "window": 9, "pairs": [[0, 1]],
    "observables": ["mean", "squeezing", "gamma_kl"], "phi": 0.5, "phi_follows_order": true,
    "output": {"path": "x.json", "format": "json"}
  })";
  const auto c = parse_config(rich);
  const auto d = parse_config(serialize_config(c));
  CHECK(serialize_config(d) == serialize_config(c));
  CHECK(d.window_radius == 9);
  CHECK(d.format == Format::json);
  CHECK(d.inputs == c.inputs);
}

TEST_CASE("config diagnostics") {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message("{\n  \"mode\": \"single\",\n  oops\n}").find("line 3") != std::string::npos);
  CHECK(message(R"({"mode": "single", "inputs": [{"q": 0, "state": {"type": "fock", "n": 1}}],
                    "kappa_L": 1, "observables": ["mean", "bogus"]})")
            .find("observables[1]") != std::string::npos);
  CHECK(message(R"({"mode": "single", "inputs": [{"q": 0, "state": {"type": "fock", "n": -1}}],
                    "kappa_L": 1, "observables": ["mean"]})")
            .find("inputs[0].state") != std::string::npos);
  CHECK(message(R"({"mode": "two", "inputs": [{"q": 0, "state": {"type": "vacuum"}}, {"q": 0, "state": {"type": "vacuum"}}],
                    "kappa_L": 1, "observables": ["mean"]})")
            .find("listed twice") != std::string::npos);
  CHECK(message(R"({"mode": "single", "inputs": [{"q": 0, "state": {"type": "fock", "n": 1}}],
                    "kappa_L": {"start": 0, "stop": 1, "steps": 0}, "observables": ["mean"]})")
            .find("steps") != std::string::npos);
  CHECK(message(R"({"mode": "single", "colour": 1})").find("colour") != std::string::npos);
}

TEST_CASE("single-point sweep at kappa_L = 0 is the identity") {
  auto c = parse_config(R"({"mode": "single", "inputs": [{"q": 0, "state": {"type": "thermal", "mean": 2}}],
                            "kappa_L": 0, "window": 3, "observables": ["mean", "g2"]})");
  const auto t = run_scenario(c);
  REQUIRE(t.rows.size() == 1);
  CHECK(t.rows[0][column(t, "mean[0]")] == 2.0);
  CHECK(t.rows[0][column(t, "mean[1]")] == 0.0);
  CHECK(t.rows[0][column(t, "g2[0]")] == doctest::Approx(2.0));
}

TEST_CASE("Fig. 2 style run") {
  const auto t = run_scenario(parse_config(kFockConfig));
  CHECK(t.rows.size() == 21);
  const auto mean1 = column(t, "mean_ratio[1]");
  const auto gamma1 = column(t, "gamma2_ratio[1]");
  for (const auto& row : t.rows) {
    const double j = series_bessel_j(1, row[0]);
    CHECK(std::abs(row[mean1] - j * j) < 1e-12);
    CHECK(std::abs(row[gamma1] - std::pow(j, 4)) < 1e-12);
  }
  const auto csv = render(t);
  CHECK(csv.rfind("# raman-comb schema v1\nkappa_L,mean_ratio[0],", 0) == 0);
}

TEST_CASE("output is deterministic and independent of the job count") {
  const auto c = parse_config(kFockConfig);
  const auto one = render(run_scenario(c, 1));
  CHECK(render(run_scenario(c, 1)) == one);
  CHECK(render(run_scenario(c, 4)) == one);

  auto oc = parse_config(R"({"mode": "single", "engine": "oracle", "photon_cap": 2,
      "inputs": [{"q": 0, "state": {"type": "fock", "n": 2}}],
      "kappa_L": {"start": 0, "stop": 2, "steps": 5}, "observables": ["mean", "gamma2"]})");
  CHECK(render(run_scenario(oc, 3), Format::json) == render(run_scenario(oc, 1), Format::json));
}

TEST_CASE("Fig. 7: coincidence zeros") {
  Table t;
  figure_table("fig7", "fig7_sweep", t);
  const auto w = column(t, "W11[0,1]");
  std::vector<double> minima;
  for (std::size_t i = 1; i + 1 < t.rows.size(); ++i)
    if (t.rows[i][w] < t.rows[i - 1][w] && t.rows[i][w] <= t.rows[i + 1][w] && t.rows[i][w] < 1e-3)
      minima.push_back(t.rows[i][0]);
  REQUIRE(minima.size() >= 3);
  const double paper[] = {1.44, 3.11, 4.68};
  for (int i = 0; i < 3; ++i) CHECK(std::abs(minima[i] - paper[i]) <= 0.011);
}

TEST_CASE("Fig. 6: squeezing waypoint") {
  Table t;
  figure_table("fig6", "fig6_sweep", t);
  for (const auto& row : t.rows) {
    if (std::abs(row[0] - 1.84) > 1e-9) continue;
    CHECK(std::abs(row[column(t, "squeezing[1]")] + 0.29) <= 0.01);
    CHECK(std::abs(row[column(t, "mean[1]")] - 41.0) <= 1.0);
  }
}

TEST_CASE("Fig. 2 and Fig. 3 profiles") {
  Table t;
  figure_table("fig2", "fig2_profile", t);
  const auto mean = column(t, "mean_ratio");
  int peak = 0;
  double best = -1.0;
  for (const auto& row : t.rows) {
    if (row[1] > 0 && row[mean] > best) best = row[mean], peak = static_cast<int>(row[1]);
  }
  CHECK(std::abs(peak - 5.0) <= 1.0);

  Table p;
  figure_table("fig3", "fig3_profile", p);
  const auto g = column(p, "gamma_kl_ratio");
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    const auto& mirror = p.rows[p.rows.size() - 1 - i];
    CHECK(mirror[1] == -row[1]);
    CHECK(mirror[g] == doctest::Approx(row[g]).epsilon(1e-12));
  }
}

TEST_CASE("every figure runs") {
  for (const auto& name : figure_names())
    for (const auto& [stem, c] : figure_configs(name)) CHECK(!run_scenario(c).rows.empty());
  CHECK_THROWS_AS(figure_configs("fig9"), ConfigError);
}

TEST_CASE("exit codes") {
  TempDir dir;
  const auto good = dir.write("good.json", kFockConfig);
  const auto out = (dir.path / "out.csv").string();
  CHECK(invoke({"run", "--config", good, "--out", out, "--seed", "7"}) == kOk);
  std::ifstream in(out);
  std::string first;
  std::getline(in, first);
  CHECK(first == kSchemaLine);

  CHECK(invoke({"run", "--config", dir.write("bad.json", "{\"mode\": 3}")}) == kConfigError);
  CHECK(invoke({"run", "--config", good, "--format", "xml"}) == kConfigError);
  CHECK(invoke({"run", "--config", (dir.path / "missing.json").string()}) == kConfigError);
  CHECK(invoke({"figure", "fig9"}) == kConfigError);

  const auto fock2 = dir.write("oracle.json", R"({"mode": "single", "engine": "oracle", "photon_cap": 2,
      "inputs": [{"q": 0, "state": {"type": "fock", "n": 2}}], "kappa_L": 2,
      "pairs": [[0, 1]], "distribution_n_max": 2, "observables": ["mean", "gamma_kl", "distribution"]})");
  const auto report = (dir.path / "report.csv").string();
  CHECK(invoke({"oracle-check", "--config", fock2, "--out", report}) == kOk);
  CHECK(invoke({"oracle-check", "--config", fock2, "--window", "1", "--out", report}) == kWindowTooSmall);
  CHECK(invoke({"oracle-check", "--config", fock2, "--tolerance", "1e-30", "--out", report}) == kToleranceBreach);
  CHECK(invoke({"zeros", "--out", (dir.path / "z.csv").string()}) == kOk);
}
