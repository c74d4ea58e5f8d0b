#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "raman_comb/analytic.hpp"
#include "raman_comb/cli/commands.hpp"
#include "raman_comb/errors.hpp"
#include "raman_comb/oracle.hpp"

namespace py = pybind11;
using namespace raman;

namespace {

SidebandWindow window_for(double kappa_L, std::optional<int> radius) {
  return radius ? SidebandWindow::symmetric(*radius) : default_window(kappa_L);
}

std::map<std::string, double> flat(const StatisticsRecord& rec) {
  std::map<std::string, double> out;
  for (const auto& [name, value] : rec.flatten()) out.emplace(name, value);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sideband photon statistics of multiorder Raman scattering: closed form and Fock-space oracle.";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<RangeError>(m, "RangeError", PyExc_IndexError);
  py::register_exception<UndefinedStatistic>(m, "UndefinedStatistic", PyExc_ArithmeticError);
  py::register_exception<CapacityError>(m, "CapacityError", PyExc_MemoryError);
  py::register_exception<TruncationError>(m, "TruncationError", PyExc_ValueError);
  py::register_exception<WindowTooSmall>(m, "WindowTooSmall", PyExc_RuntimeError);
  py::register_exception<cli::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
  m.def(
      "bessel_row", [](double x, int q_min, int q_max) { return bessel_row(x, q_min, q_max).values; }, py::arg("x"),
      py::arg("q_min"), py::arg("q_max"));

  py::class_<SidebandWindow>(m, "SidebandWindow")
      .def(py::init<int, int>(), py::arg("q_min"), py::arg("q_max"))
      .def_static("symmetric", &SidebandWindow::symmetric, py::arg("radius"))
      .def_property_readonly("q_min", &SidebandWindow::q_min)
      .def_property_readonly("q_max", &SidebandWindow::q_max)
      .def_property_readonly("width", &SidebandWindow::width)
      .def("__repr__", [](const SidebandWindow& w) {
        return "SidebandWindow(" + std::to_string(w.q_min()) + ", " + std::to_string(w.q_max()) + ")";
      });
  m.def("recommend_window", &recommend_window, py::arg("kappa_L"), py::arg("tail_epsilon") = 1e-12);

  py::class_<ModeState>(m, "ModeState")
      .def_static("vacuum", &ModeState::vacuum)
      .def_static("coherent", &ModeState::coherent, py::arg("alpha"))
      .def_static("fock", &ModeState::fock, py::arg("n"))
      .def_static("thermal", &ModeState::thermal, py::arg("mean"))
      .def_static("squeezed_vacuum", &ModeState::squeezed_vacuum, py::arg("r"), py::arg("theta") = 0.0)
      .def_property_readonly("is_pure", &ModeState::is_pure)
      .def("__eq__", [](const ModeState& a, const ModeState& b) { return a == b; })
      .def("__repr__", &ModeState::describe);

  m.def("photon_number_distribution", &photon_number_distribution, py::arg("state"), py::arg("n_max"));
  m.def("input_squeezing_factor", &input_squeezing_factor, py::arg("state"), py::arg("phi"));
  m.def("normalized_autocorrelation", &normalized_autocorrelation, py::arg("state"), py::arg("order"));

  py::class_<SingleModeScenario>(m, "SingleModeScenario")
      .def(py::init([](const ModeState& s, double kappa_L, std::optional<int> radius) {
             return SingleModeScenario(s, kappa_L, window_for(kappa_L, radius));
           }),
           py::arg("state"), py::arg("kappa_L"), py::arg("radius") = py::none())
      .def_property_readonly("kappa_L", &SingleModeScenario::kappa_L)
      .def_property_readonly("window", &SingleModeScenario::window)
      .def("mean", &mean_photon, py::arg("q"))
      .def("moment", &sideband_moment, py::arg("q"), py::arg("n"))
      .def("gamma", &autocorrelation, py::arg("q"), py::arg("n") = 2)
      .def("g", &normalized_autocorrelation_out, py::arg("q"), py::arg("n") = 2)
      .def(
          "cross", [](const SingleModeScenario& s, int k, int l) {
            const auto c = cross_correlation(s, k, l);
            return py::make_tuple(c.gamma_kl, c.g_kl);
          },
          py::arg("k"), py::arg("l"))
      .def("marginal", &marginal_pnd, py::arg("q"), py::arg("n_max"))
      .def("joint", &joint_pnd, py::arg("occupations"))
      .def("squeezing", &squeezing_factor_out, py::arg("q"), py::arg("phi"));

  py::class_<TwoModeScenario>(m, "TwoModeScenario")
      .def(py::init([](const ModeState& s0, const ModeState& s_nu, int nu, double kappa_L, std::optional<int> radius) {
             return TwoModeScenario(s0, s_nu, nu, kappa_L,
                                    radius ? SidebandWindow::symmetric(*radius)
                                           : SidebandWindow::symmetric(default_window(kappa_L).q_max() + std::abs(nu)));
           }),
           py::arg("input0"), py::arg("input_nu"), py::arg("nu"), py::arg("kappa_L"), py::arg("radius") = py::none())
      .def("mean", &two_mode_mean, py::arg("q"))
      .def("gamma2", &two_mode_gamma2, py::arg("q"))
      .def("g2", &two_mode_g2, py::arg("q"))
      .def("squeezing", &two_mode_squeezing, py::arg("q"), py::arg("phi"));

  m.def(
      "two_photon_probabilities",
      [](double kappa_L, std::optional<int> radius) {
        const auto p = two_photon_probabilities(kappa_L, window_for(kappa_L, radius));
        py::dict d;
        d["W2"] = p.w2;
        d["W11"] = p.w11;
        d["W1"] = p.w1;
        d["mean"] = p.mean;
        return d;
      },
      py::arg("kappa_L"), py::arg("radius") = py::none());
  m.def("coincidence_01", &coincidence_01, py::arg("kappa_L"));
  m.def(
      "interference_zeros", [](double max_kappa_L, int count) { return find_interference_zeros(max_kappa_L, count).roots; },
      py::arg("max_kappa_L") = 5.0, py::arg("count") = 3);

  m.def(
      "oracle_record",
      [](const std::map<int, ModeState>& inputs, double kappa_L, int radius, int photon_cap,
         std::vector<std::pair<int, int>> pairs, int distribution_n_max, double max_leakage) {
        py::gil_scoped_release release;
        const auto basis = build_basis(SidebandWindow::symmetric(radius), photon_cap);
        const auto prepared = prepare_ensemble(basis, inputs, max_leakage);
        MeasureRequest req;
        req.pairs = std::move(pairs);
        req.distribution_n_max = distribution_n_max;
        auto rec = measure(evolve(prepared, build_hamiltonian(basis), kappa_L), req);
        return flat(rec);
      },
      py::arg("inputs"), py::arg("kappa_L"), py::arg("radius"), py::arg("photon_cap"),
      py::arg("pairs") = std::vector<std::pair<int, int>>{}, py::arg("distribution_n_max") = -1,
      py::arg("max_leakage") = kMaxLeakage,
      "Flattened statistics of the truncated Fock-space evolution (\"mean[0]\", \"gamma_kl[0,1]\", ...).");
  m.def(
      "analytic_record",
      [](const ModeState& state, double kappa_L, int radius, std::vector<std::pair<int, int>> pairs,
         int distribution_n_max) {
        RecordRequest req;
        req.pairs = std::move(pairs);
        req.distribution_n_max = distribution_n_max;
        return flat(analytic_record(SingleModeScenario(state, kappa_L, SidebandWindow::symmetric(radius)), req));
      },
      py::arg("state"), py::arg("kappa_L"), py::arg("radius"), py::arg("pairs") = std::vector<std::pair<int, int>>{},
      py::arg("distribution_n_max") = -1);

  m.def(
      "run_config",
      [](const std::string& text, int jobs) {
        const auto table = cli::run_scenario(cli::parse_config(text), jobs);
        return py::make_tuple(table.columns, table.rows);
      },
      py::arg("config_json"), py::arg("jobs") = 1, "Evaluates a scenario config; returns (columns, rows).");
}
