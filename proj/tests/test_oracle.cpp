#include <doctest.h>

#include <cmath>

#include "raman_comb/analytic.hpp"
#include "raman_comb/errors.hpp"
#include "raman_comb/oracle.hpp"
#include "support/series_bessel.hpp"

using namespace raman;
using raman::testing::series_bessel_j;

namespace {

double J(int q, double x) { return series_bessel_j(q, x); }

std::vector<int> occupation_of(const SidebandWindow& w, std::map<int, int> occ) {
  std::vector<int> v(static_cast<std::size_t>(w.width()), 0);
  for (const auto& [q, n] : occ) v[w.offset(q)] = n;
  return v;
}

}  // namespace

TEST_CASE("basis counts") {
  CHECK(build_basis(SidebandWindow(-1, 1), 1)->size() == 4);
  CHECK(build_basis(SidebandWindow(0, 1), 2)->size() == 6);
  CHECK(build_basis(SidebandWindow::symmetric(5), 2)->size() == 78);
  CHECK(FockBasis::count(11, 2) == 78.0);
  CHECK_THROWS_AS(build_basis(SidebandWindow::symmetric(30), 8), CapacityError);
}

TEST_CASE("basis ordering and indexing") {
  const auto basis = build_basis(SidebandWindow::symmetric(3), 3);
  int previous_total = 0;
  for (std::size_t i = 0; i < basis->size(); ++i) {
    const auto occ = basis->occupation(i);
    CHECK(basis->index_of(occ) == i);
    CHECK(basis->total(i) >= previous_total);
    previous_total = basis->total(i);
  }
  const auto [begin, end] = basis->sector(2);
  CHECK(basis->occupation(begin, -3) == 2);
  CHECK(end - begin == 28);
}

TEST_CASE("state preparation") {
  const auto w = SidebandWindow::symmetric(2);
  const auto basis = build_basis(w, 6);
  const auto fock = prepare_state(basis, {{0, ModeState::fock(2)}});
  const auto idx = basis->index_of(std::span<const int>(occupation_of(w, {{0, 2}})));
  CHECK(fock.amplitudes[static_cast<Eigen::Index>(idx)] == Complex(1.0));
  CHECK(fock.norm() == doctest::Approx(1.0));

  double leakage = 1.0;
  const Complex alpha(0.5, 0.0);
  const auto coh = prepare_state(basis, {{0, ModeState::coherent(alpha)}}, kMaxLeakage, &leakage);
  CHECK(leakage < 1e-8);
  double fact = 1.0;
  for (int n = 0; n <= 6; ++n) {
    if (n > 0) fact *= n;
    const auto i = basis->index_of(std::span<const int>(occupation_of(w, {{0, n}})));
    const Complex expected = std::exp(-0.125) * std::pow(alpha, n) / std::sqrt(fact) / std::sqrt(1.0 - leakage);
    CHECK(std::abs(coh.amplitudes[static_cast<Eigen::Index>(i)] - expected) < 1e-14);
  }

  const auto two = prepare_state(basis, {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}});
  const auto i11 = basis->index_of(std::span<const int>(occupation_of(w, {{0, 1}, {1, 1}})));
  CHECK(std::abs(two.amplitudes[static_cast<Eigen::Index>(i11)]) == doctest::Approx(1.0));
  CHECK_THROWS_AS(prepare_state(basis, {{0, ModeState::fock(7)}}), TruncationError);
  CHECK_THROWS_AS(prepare_state(basis, {{0, ModeState::thermal(0.1)}}), DomainError);
}

TEST_CASE("Hamiltonian structure") {
  const auto vac = build_hamiltonian(build_basis(SidebandWindow::symmetric(2), 0));
  CHECK(vac.values.empty());

  const auto w = SidebandWindow::symmetric(3);
  const auto basis = build_basis(w, 3);
  const auto h = build_hamiltonian(basis);
  const auto [b1, e1] = basis->sector(1);
  const Eigen::MatrixXd one = h.dense_block(b1, e1);
  for (Eigen::Index i = 0; i < one.rows(); ++i)
    for (Eigen::Index j = 0; j < one.cols(); ++j) CHECK(one(i, j) == (std::abs(i - j) == 1 ? -1.0 : 0.0));
  const auto i0 = basis->index_of(std::span<const int>(occupation_of(w, {{0, 1}})));
  const auto i1 = basis->index_of(std::span<const int>(occupation_of(w, {{1, 1}})));
  CHECK(h.element(i0, i1) == -1.0);

  // Hermitian and photon-number conserving over the whole basis
  for (std::size_t r = 0; r < basis->size(); ++r)
    for (auto k = h.row_ptr[r]; k < h.row_ptr[r + 1]; ++k) {
      const auto c = static_cast<std::size_t>(h.cols[k]);
      CHECK(basis->total(r) == basis->total(c));
      CHECK(h.element(c, r) == h.values[k]);
    }
}

TEST_CASE("evolution") {
  const auto w = SidebandWindow::symmetric(15);
  const auto basis = build_basis(w, 1);
  const auto h = build_hamiltonian(basis);
  const auto psi0 = prepare_state(basis, {{0, ModeState::fock(1)}});
  const auto same = evolve(psi0, h, 0.0);
  CHECK((same.amplitudes - psi0.amplitudes).norm() == 0.0);

  const auto psi = evolve(psi0, h, 2.0);
  double worst = 0.0;
  for (int q = -15; q <= 15; ++q) {
    const auto i = basis->index_of(std::span<const int>(occupation_of(w, {{q, 1}})));
    worst = std::max(worst, std::abs(std::norm(psi.amplitudes[static_cast<Eigen::Index>(i)]) - J(q, 2.0) * J(q, 2.0)));
  }
  CHECK(worst <= 1e-9);

  const double root = find_interference_zeros(2.0, 1).roots.at(0);
  const auto w2 = SidebandWindow::symmetric(14);
  const auto b2 = build_basis(w2, 2);
  const auto pair = evolve(prepare_state(b2, {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}}), build_hamiltonian(b2), root);
  const auto i01 = b2->index_of(std::span<const int>(occupation_of(w2, {{0, 1}, {1, 1}})));
  CHECK(std::norm(pair.amplitudes[static_cast<Eigen::Index>(i01)]) <= 1e-8);
}

TEST_CASE("the Chebyshev path agrees with dense diagonalisation") {
  const auto w = SidebandWindow::symmetric(11);
  const auto basis = build_basis(w, 3);
  const auto h = build_hamiltonian(basis);
  const auto psi0 = prepare_state(basis, {{0, ModeState::fock(3)}});
  EvolveOptions dense;
  dense.dense_limit = 100000;
  EvolveOptions sparse;
  sparse.dense_limit = 0;
  const auto a = evolve(psi0, h, 3.3, dense);
  const auto b = evolve(psi0, h, 3.3, sparse);
  CHECK((a.amplitudes - b.amplitudes).norm() < 1e-11);
}

TEST_CASE("window monitor") {
  const auto basis = build_basis(SidebandWindow::symmetric(2), 1);
  CHECK_THROWS_AS(evolve(prepare_state(basis, {{0, ModeState::fock(1)}}), build_hamiltonian(basis), 3.0), WindowTooSmall);
}

TEST_CASE("norm and photon number are conserved") {
  const auto basis = build_basis(SidebandWindow::symmetric(22), 2);
  const auto h = build_hamiltonian(basis);
  const auto psi0 = prepare_state(basis, {{0, ModeState::fock(1)}, {1, ModeState::fock(1)}});
  EvolveReport report;
  const auto psi = evolve(psi0, h, 10.0, {}, &report);
  CHECK(std::abs(psi.norm() - 1.0) <= 1e-9);
  CHECK(std::abs(total_photon_number(psi) - 2.0) <= 1e-9);
  CHECK(report.norm_drift <= 1e-9);
  CHECK(report.photon_number_drift <= 1e-9);
}

TEST_CASE("measurements") {
  const auto vac_basis = build_basis(SidebandWindow::symmetric(2), 2);
  const auto vac = measure(prepare_state(vac_basis, {}), {});
  for (const auto& [q, s] : vac.sidebands) {
    CHECK(s.mean == 0.0);
    CHECK(s.gamma2 == 0.0);
  }

  // coherent input, narrow window, cap high enough that truncation stays below 1e-8
  const auto cw = SidebandWindow::symmetric(6);
  const auto cb = build_basis(cw, 9);
  const auto coh = evolve(prepare_state(cb, {{0, ModeState::coherent(0.5)}}), build_hamiltonian(cb), 1.0);
  const auto rec = measure(coh, {});
  for (int q = -2; q <= 2; ++q) CHECK(std::abs(*rec.sidebands.at(q).g2 - 1.0) <= 1e-8);

  const auto fw = SidebandWindow::symmetric(13);
  const auto fb = build_basis(fw, 1);
  const auto single = evolve(prepare_state(fb, {{0, ModeState::fock(1)}}), build_hamiltonian(fb), 0.8);
  MeasureRequest req;
  req.pairs = {{0, 1}};
  req.concurrence = true;
  const auto c = measure(single, req);
  CHECK(std::abs(*c.pairs.at({0, 1}).concurrence - 2.0 * std::abs(J(0, 0.8) * J(1, 0.8))) <= 1e-9);
}

TEST_CASE("concurrence matches the single-photon formula") {
  for (double kl : {0.5, 1.44, 3.0}) {
    const auto w = SidebandWindow::symmetric(static_cast<int>(std::ceil(kl)) + 12);
    const auto b = build_basis(w, 1);
    const Ensemble e{{{1.0, evolve(prepare_state(b, {{0, ModeState::fock(1)}}), build_hamiltonian(b), kl)}}, 0.0};
    for (auto [k, l] : {std::pair{0, 1}, std::pair{-1, 2}, std::pair{1, 3}})
      CHECK(std::abs(concurrence(reduced_pair_density(e, k, l)) - single_photon_concurrence(k, l, kl)) <= 1e-10);
  }
}

TEST_CASE("coherent inputs stay coherent") {
  const auto w = SidebandWindow::symmetric(8);
  const auto b = build_basis(w, 4);
  const AmplitudeMap in{{0, {0.3, 0.0}}, {1, {0.0, 0.2}}};
  const double kl = 1.44;
  const auto out = evolve(product_coherent_state(b, in), build_hamiltonian(b), kl);
  const auto expected = product_coherent_state(b, propagate_coherent(in, scattering_matrix(kl, w)));
  CHECK(fidelity(out, expected) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("thermal mixtures") {
  const auto w = SidebandWindow::symmetric(4);
  const auto b = build_basis(w, 12);
  const auto e = prepare_ensemble(b, {{0, ModeState::thermal(1.0)}}, 1e-3);
  CHECK_FALSE(e.is_pure());
  CHECK(e.leakage == doctest::Approx(std::pow(0.5, 13)).epsilon(1e-9));
  MeasureRequest req;
  req.distribution_n_max = 12;
  const double kl = 0.5;
  const auto rec = measure(evolve(e, build_hamiltonian(b), kl), req);
  for (int q = -2; q <= 2; ++q) {
    const double nbar = J(q, kl) * J(q, kl);
    for (int n = 0; n <= 12; ++n)
      CHECK(std::abs(rec.sidebands.at(q).distribution[n] - std::pow(nbar, n) / std::pow(1.0 + nbar, n + 1)) <=
            2.0 * e.leakage);
  }
  CHECK_THROWS_AS(prepare_ensemble(b, {{0, ModeState::thermal(1.0)}}), TruncationError);
}

TEST_CASE("compare") {
  const double kl = 2.0;
  const auto w = SidebandWindow::symmetric(14);
  const auto b = build_basis(w, 3);
  const auto oracle_state = evolve(prepare_state(b, {{0, ModeState::fock(3)}}), build_hamiltonian(b), kl);
  RecordRequest ar;
  ar.pairs = {{0, 1}, {-1, 2}};
  ar.distribution_n_max = 3;
  MeasureRequest mr;
  mr.pairs = ar.pairs;
  mr.distribution_n_max = 3;
  const auto analytic = analytic_record(SingleModeScenario(ModeState::fock(3), kl, w), ar);
  auto oracle = measure(oracle_state, mr);
  oracle.input_total = 3.0;

  const auto self = compare(analytic, analytic, {});
  for (const auto& d : self.entries)
    if (d.name.rfind("conservation", 0) != 0) CHECK(d.deviation == 0.0);

  const auto report = compare(analytic, oracle, {}, "fock3");
  CHECK(report.pass());
  CHECK(report.max_deviation() <= 1e-8);
  CHECK(report.entries.size() > 20);

  // a window too narrow for the sideband spread loses photons from the analytic sum
  const auto narrow = analytic_record(SingleModeScenario(ModeState::fock(3), 5.0, SidebandWindow::symmetric(3)), {});
  const auto flagged = compare(narrow, narrow, {});
  bool conservation_failed = false;
  for (const auto& d : flagged.entries)
    if (d.name == "conservation[analytic]") conservation_failed = !d.pass;
  CHECK(conservation_failed);
}
