#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "raman_comb/errors.hpp"
#include "raman_comb/oracle.hpp"

namespace raman {
namespace {

// Phase advanced per Chebyshev step; keeps the expansion short and the edge sampled often.
constexpr double kStepPhase = 15.0;

// Coefficients of exp(-i z x) = sum_k c_k T_k(x) on [-1, 1]; c_k = (2 - delta_k0) (-i)^k J_k(z),
// evaluated by the trapezoid rule on the circle so the oracle owes nothing to specfun.
std::vector<Complex> chebyshev_coefficients(double z) {
  const int terms = static_cast<int>(std::ceil(z)) + 60;
  const int samples = 2 * terms + 64;
  std::vector<Complex> phase(static_cast<std::size_t>(samples));
  std::vector<double> theta(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    theta[j] = 2.0 * std::numbers::pi * j / samples;
    phase[j] = std::polar(1.0, -z * std::cos(theta[j]));
  }
  std::vector<Complex> c(static_cast<std::size_t>(terms));
  for (int k = 0; k < terms; ++k) {
    Complex acc{};
    for (int j = 0; j < samples; ++j) acc += phase[j] * std::cos(k * theta[j]);
    c[k] = acc * ((k == 0 ? 1.0 : 2.0) / samples);
  }
  // drop the negligible tail
  while (c.size() > 1 && std::abs(c.back()) < 1e-18) c.pop_back();
  return c;
}

struct Sector {
  std::size_t begin = 0;
  std::size_t end = 0;
  int photons = 0;
};

double edge_population(const FockBasis& basis, std::size_t begin, const Eigen::VectorXcd& block) {
  const auto last = static_cast<std::size_t>(basis.modes() - 1);
  double pop = 0.0;
  for (Eigen::Index i = 0; i < block.size(); ++i) {
    const double p = std::norm(block[i]);
    if (p == 0.0) continue;
    const auto occ = basis.occupation(begin + static_cast<std::size_t>(i));
    pop += p * (occ[0] + occ[last]);
  }
  return pop;
}

struct RawEvolution {
  MultimodeFockVector state;
  std::vector<double> edge;  // edge population after each step
  double norm_drift = 0.0;
  double photon_drift = 0.0;
};

RawEvolution evolve_raw(const MultimodeFockVector& state, const HamiltonianMatrix& h, double kappa_L,
                        const EvolveOptions& options) {
  if (!state.basis || state.basis != h.basis) throw DomainError("state and Hamiltonian live on different bases");
  if (!std::isfinite(kappa_L) || kappa_L < 0.0) throw DomainError("kappa_L must be finite and non-negative");
  const auto& basis = *state.basis;
  const double t = kappa_L / (2.0 * h.coupling);

  std::vector<Sector> sectors;
  for (int n = 0; n <= basis.photon_cap(); ++n) {
    const auto [b, e] = basis.sector(n);
    if (state.amplitudes.segment(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(e - b)).squaredNorm() > 0.0)
      sectors.push_back({b, e, n});
  }
  // step count depends only on the basis so ensemble members share a time grid
  const double radius_max = 2.0 * h.coupling * basis.photon_cap();
  const int steps = std::max(options.checkpoints, static_cast<int>(std::ceil(radius_max * t / kStepPhase)));
  const double dt = t / steps;

  RawEvolution out{state, std::vector<double>(static_cast<std::size_t>(steps), 0.0), 0.0, 0.0};
  if (t == 0.0) return out;

  for (const auto& sec : sectors) {
    const auto len = static_cast<Eigen::Index>(sec.end - sec.begin);
    Eigen::VectorXcd psi = state.amplitudes.segment(static_cast<Eigen::Index>(sec.begin), len);
    if (sec.photons == 0) continue;

    if (sec.end - sec.begin <= options.dense_limit) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h.dense_block(sec.begin, sec.end));
      const Eigen::MatrixXcd v = eig.eigenvectors().cast<Complex>();
      const Eigen::VectorXcd c = v.adjoint() * psi;
      for (int k = 1; k <= steps; ++k) {
        Eigen::VectorXcd rotated(len);
        for (Eigen::Index i = 0; i < len; ++i) rotated[i] = c[i] * std::polar(1.0, -eig.eigenvalues()[i] * dt * k);
        psi = v * rotated;
        out.edge[static_cast<std::size_t>(k - 1)] += edge_population(basis, sec.begin, psi);
      }
    } else {
      // spectrum of the N-photon block lies in [-2gN, 2gN]
      const double radius = 2.0 * h.coupling * sec.photons * (1.0 + 1e-12);
      const auto coeff = chebyshev_coefficients(radius * dt);
      Eigen::VectorXcd prev, cur, next, acc;
      for (int k = 1; k <= steps; ++k) {
        prev = psi;
        h.apply(sec.begin, sec.end, prev, cur);
        cur /= radius;
        acc = coeff[0] * prev;
        if (coeff.size() > 1) acc += coeff[1] * cur;
        for (std::size_t m = 2; m < coeff.size(); ++m) {
          h.apply(sec.begin, sec.end, cur, next);
          next = (2.0 / radius) * next - prev;
          acc += coeff[m] * next;
          std::swap(prev, cur);
          std::swap(cur, next);
        }
        psi = acc;
        out.edge[static_cast<std::size_t>(k - 1)] += edge_population(basis, sec.begin, psi);
      }
    }
    out.state.amplitudes.segment(static_cast<Eigen::Index>(sec.begin), len) = psi;
  }

  out.norm_drift = std::abs(out.state.norm() - state.norm());
  out.photon_drift = std::abs(total_photon_number(out.state) - total_photon_number(state));
  return out;
}

void check_edge(const FockBasis& basis, const std::vector<double>& edge, const EvolveOptions& options,
                EvolveReport* report) {
  const double worst = edge.empty() ? 0.0 : *std::max_element(edge.begin(), edge.end());
  if (report) report->max_boundary_population = worst;
  if (basis.modes() >= 3 && worst > options.boundary_tolerance)
    throw WindowTooSmall("edge sidebands " + std::to_string(basis.window().q_min()) + " and " +
                         std::to_string(basis.window().q_max()) + " reached population " + std::to_string(worst) +
                         " (tolerance " + std::to_string(options.boundary_tolerance) + "); widen the window");
}

}  // namespace

double total_photon_number(const MultimodeFockVector& state) {
  double total = 0.0;
  for (std::size_t s = 0; s < state.basis->size(); ++s) {
    const double p = std::norm(state.amplitudes[static_cast<Eigen::Index>(s)]);
    if (p != 0.0) total += p * state.basis->total(s);
  }
  return total;
}

MultimodeFockVector evolve(const MultimodeFockVector& state, const HamiltonianMatrix& hamiltonian, double kappa_L,
                           const EvolveOptions& options, EvolveReport* report) {
  auto raw = evolve_raw(state, hamiltonian, kappa_L, options);
  if (report) {
    report->norm_drift = raw.norm_drift;
    report->photon_number_drift = raw.photon_drift;
  }
  check_edge(*state.basis, raw.edge, options, report);
  return std::move(raw.state);
}

Ensemble evolve(const Ensemble& ensemble, const HamiltonianMatrix& hamiltonian, double kappa_L,
                const EvolveOptions& options, EvolveReport* report) {
  Ensemble out;
  out.leakage = ensemble.leakage;
  std::vector<double> edge;
  double norm_drift = 0.0;
  double photon_drift = 0.0;
  for (const auto& [weight, member] : ensemble.members) {
    auto raw = evolve_raw(member, hamiltonian, kappa_L, options);
    if (edge.empty()) edge.assign(raw.edge.size(), 0.0);
    for (std::size_t k = 0; k < std::min(edge.size(), raw.edge.size()); ++k) edge[k] += weight * raw.edge[k];
    norm_drift = std::max(norm_drift, raw.norm_drift);
    photon_drift += weight * raw.photon_drift;
    out.members.emplace_back(weight, std::move(raw.state));
  }
  if (report) {
    report->norm_drift = norm_drift;
    report->photon_number_drift = photon_drift;
  }
  if (!ensemble.members.empty()) check_edge(*ensemble.members.front().second.basis, edge, options, report);
  return out;
}

}  // namespace raman
