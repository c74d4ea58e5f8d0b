#pragma once

// Brute-force reference engine: the sideband modes on a truncated multimode
// Fock space, evolved under H = -g sum_q (b_q b_{q+1}^+ + b_{q+1} b_q^+).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "raman_comb/analytic.hpp"
#include "raman_comb/record.hpp"
#include "raman_comb/scattering.hpp"
#include "raman_comb/states.hpp"

namespace raman {

inline constexpr std::size_t kDefaultBasisLimit = 2'000'000;

// All occupation vectors of a window with at most photon_cap photons, ordered by
// total photon number and, within a sector, reverse-lexicographically from q_min
// (so |N at q_min> comes first).
class FockBasis {
 public:
  FockBasis(SidebandWindow window, int photon_cap, std::size_t size_limit = kDefaultBasisLimit);

  // Number of occupation vectors of `modes` modes with total <= cap.
  static double count(int modes, int cap);

  const SidebandWindow& window() const { return window_; }
  int photon_cap() const { return cap_; }
  int modes() const { return modes_; }
  std::size_t size() const { return size_; }

  std::span<const std::uint8_t> occupation(std::size_t index) const {
    return {occupations_.data() + index * static_cast<std::size_t>(modes_), static_cast<std::size_t>(modes_)};
  }
  int occupation(std::size_t index, int q) const { return occupation(index)[window_.offset(q)]; }
  int total(std::size_t index) const;

  // Position of an occupation vector (one entry per mode, q_min first).
  std::size_t index_of(std::span<const std::uint8_t> occ) const;
  std::size_t index_of(std::span<const int> occ) const;

  // [begin, end) of sector N.
  std::pair<std::size_t, std::size_t> sector(int n) const;

 private:
  std::uint64_t compositions(int photons, int modes) const;

  SidebandWindow window_;
  int cap_;
  int modes_;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> occupations_;
  std::vector<std::vector<std::uint64_t>> binom_;
};

std::shared_ptr<const FockBasis> build_basis(const SidebandWindow& window, int photon_cap,
                                             std::size_t size_limit = kDefaultBasisLimit);

struct MultimodeFockVector {
  std::shared_ptr<const FockBasis> basis;
  Eigen::VectorXcd amplitudes;

  double norm() const { return amplitudes.norm(); }
};

// Convex mixture of pure states; a pure preparation has one member with weight 1.
struct Ensemble {
  std::vector<std::pair<double, MultimodeFockVector>> members;
  double leakage = 0.0;  // probability mass discarded by truncation

  bool is_pure() const { return members.size() == 1; }
};

inline constexpr double kMaxLeakage = 1e-6;

// Product input state. Each mode is truncated at its own cap (Fock(N) at N; the
// others split what is left of the basis cap to keep the most probability) and
// renormalised. Thermal modes become Boltzmann-weighted Fock mixtures.
// Throws TruncationError when more than max_leakage is discarded.
Ensemble prepare_ensemble(std::shared_ptr<const FockBasis> basis, const std::map<int, ModeState>& inputs,
                          double max_leakage = kMaxLeakage);

// Pure-state form of prepare_ensemble; rejects Thermal inputs.
MultimodeFockVector prepare_state(std::shared_ptr<const FockBasis> basis, const std::map<int, ModeState>& inputs,
                                  double max_leakage = kMaxLeakage, double* leakage = nullptr);

// Real symmetric sparse H/hbar over the whole basis (block diagonal by construction).
struct HamiltonianMatrix {
  std::shared_ptr<const FockBasis> basis;
  double coupling = 1.0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> cols;
  std::vector<double> values;

  double element(std::size_t row, std::size_t col) const;
  // out = H in, restricted to rows/cols [begin, end).
  void apply(std::size_t begin, std::size_t end, const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  Eigen::MatrixXd dense_block(std::size_t begin, std::size_t end) const;
};

HamiltonianMatrix build_hamiltonian(std::shared_ptr<const FockBasis> basis, double coupling = 1.0);

struct EvolveOptions {
  std::size_t dense_limit = 1000;     // sectors up to this size use exact diagonalisation
  double boundary_tolerance = 1e-6;   // max photon population allowed in the edge modes
  int checkpoints = 8;                // boundary samples per dense evolution
};

struct EvolveReport {
  double max_boundary_population = 0.0;
  double norm_drift = 0.0;
  double photon_number_drift = 0.0;
};

// exp(-i H t) with g t = kappa_L / 2. Throws WindowTooSmall when the edge modes
// (windows of width >= 3) pick up more than boundary_tolerance photons.
MultimodeFockVector evolve(const MultimodeFockVector& state, const HamiltonianMatrix& hamiltonian, double kappa_L,
                           const EvolveOptions& options = {}, EvolveReport* report = nullptr);
Ensemble evolve(const Ensemble& ensemble, const HamiltonianMatrix& hamiltonian, double kappa_L,
                const EvolveOptions& options = {}, EvolveReport* report = nullptr);

double total_photon_number(const MultimodeFockVector& state);

struct MeasureRequest {
  std::vector<std::pair<int, int>> pairs;
  int distribution_n_max = -1;
  bool amplitudes = false;   // pure states only
  bool concurrence = false;
  bool two_photon = false;   // fill W2/W1 per sideband and W11 per pair
};

StatisticsRecord measure(const Ensemble& ensemble, const MeasureRequest& request);
StatisticsRecord measure(const MultimodeFockVector& state, const MeasureRequest& request);

// Moments, factorial moments and photon distribution of one mode of a prepared state.
InputProfile measured_input_profile(const Ensemble& ensemble, int q);

// <{n}|rho|{n}> for a full occupation (one entry per mode).
double occupation_probability(const Ensemble& ensemble, std::span<const int> occupation);

// Reduced density matrix of modes (k, l) projected on {|00>,|01>,|10>,|11>} (k first).
Eigen::Matrix4cd reduced_pair_density(const Ensemble& ensemble, int k, int l);

// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Eigen::Matrix4cd& rho);

// Fidelity |<a|b>|^2 of two normalised pure states on the same basis.
double fidelity(const MultimodeFockVector& a, const MultimodeFockVector& b);

// Product coherent state prod_q |alpha_q>, truncated at the basis cap and renormalised.
MultimodeFockVector product_coherent_state(std::shared_ptr<const FockBasis> basis, const AmplitudeMap& amplitudes);

// --- comparison ------------------------------------------------------------------

struct Tolerances {
  double absolute = 1e-8;
  double conservation = 1e-8;
  std::map<std::string, double> per_family;  // overrides keyed by observable family ("mean", "p", ...)

  double for_family(const std::string& family) const;
};

struct Deviation {
  std::string name;
  double analytic = 0.0;
  double oracle = 0.0;
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = true;
};

struct DeviationReport {
  std::string scenario;
  double kappa_L = 0.0;
  std::vector<Deviation> entries;

  bool pass() const;
  double max_deviation() const;
  // Largest deviation per observable family.
  std::map<std::string, double> family_maxima() const;
};

// Entries for every observable present in both records plus a conservation check
// (sum of sideband means against the input total) for each engine.
DeviationReport compare(const StatisticsRecord& analytic, const StatisticsRecord& oracle, const Tolerances& tolerances,
                        std::string scenario = {});

}  // namespace raman
