#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "raman_comb/errors.hpp"
#include "raman_comb/oracle.hpp"

namespace raman {

double FockBasis::count(int modes, int cap) {
  // C(cap + modes, modes)
  double out = 1.0;
  for (int k = 1; k <= modes; ++k) out = out * (cap + k) / k;
  return std::round(out);
}

FockBasis::FockBasis(SidebandWindow window, int photon_cap, std::size_t size_limit)
    : window_(window), cap_(photon_cap), modes_(window.width()) {
  if (photon_cap < 0 || photon_cap > 255) throw DomainError("photon cap must be in 0..255");
  const double n_states = count(modes_, cap_);
  if (n_states > static_cast<double>(size_limit))
    throw CapacityError("Fock basis of " + std::to_string(modes_) + " modes with cap " + std::to_string(cap_) +
                        " has " + std::to_string(static_cast<long long>(n_states)) + " states, limit " +
                        std::to_string(size_limit));

  // binom_[r][m] = number of ways to put r photons into m modes
  binom_.assign(static_cast<std::size_t>(cap_) + 1, std::vector<std::uint64_t>(static_cast<std::size_t>(modes_) + 1, 0));
  for (int r = 0; r <= cap_; ++r)
    for (int m = 0; m <= modes_; ++m) {
      if (m == 0)
        binom_[r][m] = r == 0 ? 1 : 0;
      else if (r == 0)
        binom_[r][m] = 1;
      else
        binom_[r][m] = binom_[r][m - 1] + binom_[r - 1][m];
    }

  size_ = static_cast<std::size_t>(n_states);
  occupations_.reserve(size_ * static_cast<std::size_t>(modes_));
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(modes_), 0);
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos + 1 == modes_) {
      occ[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(remaining);
      occupations_.insert(occupations_.end(), occ.begin(), occ.end());
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      occ[static_cast<std::size_t>(pos)] = static_cast<std::uint8_t>(n);
      self(self, pos + 1, remaining - n);
    }
  };
  for (int n = 0; n <= cap_; ++n) fill(fill, 0, n);
  if (occupations_.size() != size_ * static_cast<std::size_t>(modes_))
    throw std::logic_error("Fock basis enumeration size mismatch");
}

std::uint64_t FockBasis::compositions(int photons, int modes) const {
  if (photons < 0) return 0;
  return binom_[static_cast<std::size_t>(photons)][static_cast<std::size_t>(modes)];
}

int FockBasis::total(std::size_t index) const {
  int sum = 0;
  for (auto n : occupation(index)) sum += n;
  return sum;
}

std::pair<std::size_t, std::size_t> FockBasis::sector(int n) const {
  if (n < 0 || n > cap_) throw RangeError("photon sector " + std::to_string(n) + " is outside 0.." + std::to_string(cap_));
  std::size_t begin = 0;
  for (int k = 0; k < n; ++k) begin += compositions(k, modes_);
  return {begin, begin + compositions(n, modes_)};
}

namespace {

template <class T>
std::size_t rank_of(std::span<const T> occ, int modes, int cap, const FockBasis& basis,
                    std::uint64_t (*comp)(const FockBasis&, int, int)) {
  if (static_cast<int>(occ.size()) != modes) throw DomainError("occupation vector length does not match the window");
  int total = 0;
  for (auto n : occ) {
    if (n < 0) throw DomainError("occupation numbers must be non-negative");
    total += static_cast<int>(n);
  }
  if (total > cap) throw RangeError("occupation exceeds the photon cap");
  std::size_t rank = basis.sector(total).first;
  int remaining = total;
  for (int i = 0; i + 1 < modes; ++i) {
    const int n = static_cast<int>(occ[static_cast<std::size_t>(i)]);
    // states earlier in the sector put more photons at position i
    rank += comp(basis, remaining - n - 1, modes - i);
    remaining -= n;
  }
  return rank;
}

}  // namespace

std::size_t FockBasis::index_of(std::span<const std::uint8_t> occ) const {
  return rank_of(occ, modes_, cap_, *this,
                 [](const FockBasis& b, int r, int m) { return b.compositions(r, m); });
}

std::size_t FockBasis::index_of(std::span<const int> occ) const {
  return rank_of(occ, modes_, cap_, *this,
                 [](const FockBasis& b, int r, int m) { return b.compositions(r, m); });
}

std::shared_ptr<const FockBasis> build_basis(const SidebandWindow& window, int photon_cap, std::size_t size_limit) {
  return std::make_shared<const FockBasis>(window, photon_cap, size_limit);
}

// --- state preparation -----------------------------------------------------------

namespace {

struct ModeFactor {
  int position = 0;
  bool mixed = false;
  bool fock = false;
  std::vector<Complex> amplitude;  // pure: c_n, mixed: sqrt(p_n)
  double kept = 1.0;
};

std::vector<Complex> pure_amplitudes(const ModeState& state, int cap) {
  std::vector<Complex> c(static_cast<std::size_t>(cap) + 1, Complex{});
  const auto& v = state.variant();
  if (std::holds_alternative<Vacuum>(v)) {
    c[0] = 1.0;
  } else if (const auto* coh = std::get_if<Coherent>(&v)) {
    c[0] = std::exp(-0.5 * std::norm(coh->alpha));
    for (int n = 1; n <= cap; ++n) c[n] = c[n - 1] * coh->alpha / std::sqrt(static_cast<double>(n));
  } else if (const auto* f = std::get_if<Fock>(&v)) {
    if (f->n <= cap) c[static_cast<std::size_t>(f->n)] = 1.0;
  } else if (const auto* s = std::get_if<SqueezedVacuum>(&v)) {
    // c_2k = (-e^{i theta} tanh r)^k sqrt((2k)!) / (2^k k!) / sqrt(cosh r)
    const Complex ratio = -std::polar(std::tanh(s->r), s->theta);
    c[0] = 1.0 / std::sqrt(std::cosh(s->r));
    for (int k = 1; 2 * k <= cap; ++k)
      c[2 * k] = c[2 * k - 2] * ratio * std::sqrt((2.0 * k - 1.0) / (2.0 * k));
  }
  return c;
}

std::vector<Complex> thermal_roots(double mean, int cap) {
  std::vector<Complex> c(static_cast<std::size_t>(cap) + 1);
  const double ratio = mean / (mean + 1.0);
  double p = 1.0 / (mean + 1.0);
  for (int n = 0; n <= cap; ++n) {
    c[static_cast<std::size_t>(n)] = std::sqrt(p);
    p *= ratio;
  }
  return c;
}

}  // namespace

Ensemble prepare_ensemble(std::shared_ptr<const FockBasis> basis, const std::map<int, ModeState>& inputs,
                          double max_leakage) {
  if (!basis) throw DomainError("prepare_ensemble needs a basis");
  const auto& w = basis->window();
  int budget = basis->photon_cap();
  for (const auto& [q, state] : inputs) {
    if (!w.contains(q)) throw RangeError("input sideband " + std::to_string(q) + " is outside the window");
    if (const auto* f = std::get_if<Fock>(&state.variant())) {
      budget -= f->n;
    }
  }
  if (budget < 0) throw TruncationError("Fock inputs exceed the photon cap");

  std::vector<ModeFactor> factors;
  for (const auto& [q, state] : inputs) {
    if (state.is_vacuum()) continue;
    ModeFactor f;
    f.position = static_cast<int>(w.offset(q));
    if (const auto* fock = std::get_if<Fock>(&state.variant())) {
      f.amplitude = pure_amplitudes(state, fock->n);
      f.fock = true;
    } else if (const auto* t = std::get_if<Thermal>(&state.variant())) {
      f.mixed = true;
      f.amplitude = thermal_roots(t->mean, budget);
    } else {
      f.amplitude = pure_amplitudes(state, budget);
    }
    factors.push_back(std::move(f));
  }

  // Hand the shared photon budget out one level at a time to whichever mode
  // would otherwise discard the most probability.
  std::vector<int> caps(factors.size(), 0);
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (factors[i].fock) caps[i] = static_cast<int>(factors[i].amplitude.size()) - 1;
  auto mass_at = [&](std::size_t i, int n) {
    return n < static_cast<int>(factors[i].amplitude.size()) ? std::norm(factors[i].amplitude[static_cast<std::size_t>(n)]) : 0.0;
  };
  for (int spent = 0; spent < budget; ++spent) {
    std::size_t best = factors.size();
    double best_score = -1.0;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (factors[i].fock) continue;
      // a squeezed vacuum has no odd terms, so look one level further too
      const double score = std::max(mass_at(i, caps[i] + 1), 0.5 * mass_at(i, caps[i] + 2));
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    if (best == factors.size()) break;
    ++caps[best];
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    factors[i].amplitude.resize(static_cast<std::size_t>(caps[i]) + 1);
    double mass = 0.0;
    for (const auto& c : factors[i].amplitude) mass += std::norm(c);
    factors[i].kept = mass;
  }

  Ensemble out;
  double kept_total = 1.0;
  for (const auto& f : factors) kept_total *= f.kept;
  out.leakage = 1.0 - kept_total;
  if (out.leakage > max_leakage)
    throw TruncationError("truncated input discards probability " + std::to_string(out.leakage) +
                          " (allowed " + std::to_string(max_leakage) + "); raise the photon cap");

  // Mixed modes are expanded into Fock members; pure modes stay coherent within each member.
  std::vector<const ModeFactor*> mixed;
  for (const auto& f : factors)
    if (f.mixed) mixed.push_back(&f);
  std::vector<int> occ(static_cast<std::size_t>(basis->modes()), 0);

  auto build_member = [&](double weight) {
    MultimodeFockVector v{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()))};
    auto place = [&](auto&& self, std::size_t i, Complex amp) -> void {
      if (i == factors.size()) {
        v.amplitudes[static_cast<Eigen::Index>(basis->index_of(std::span<const int>(occ)))] += amp;
        return;
      }
      const auto& f = factors[i];
      if (f.mixed) {
        self(self, i + 1, amp);
        return;
      }
      const double norm = std::sqrt(f.kept);
      for (std::size_t n = 0; n < f.amplitude.size(); ++n) {
        if (f.amplitude[n] == Complex{}) continue;
        occ[static_cast<std::size_t>(f.position)] = static_cast<int>(n);
        self(self, i + 1, amp * f.amplitude[n] / norm);
      }
      occ[static_cast<std::size_t>(f.position)] = 0;
    };
    place(place, 0, Complex{1.0, 0.0});
    out.members.emplace_back(weight, std::move(v));
  };

  auto expand = [&](auto&& self, std::size_t i, double weight) -> void {
    if (i == mixed.size()) {
      build_member(weight);
      return;
    }
    const auto& f = *mixed[i];
    for (std::size_t n = 0; n < f.amplitude.size(); ++n) {
      const double p = std::norm(f.amplitude[n]) / f.kept;
      if (p == 0.0) continue;
      occ[static_cast<std::size_t>(f.position)] = static_cast<int>(n);
      self(self, i + 1, weight * p);
    }
    occ[static_cast<std::size_t>(f.position)] = 0;
  };
  expand(expand, 0, 1.0);
  return out;
}

MultimodeFockVector prepare_state(std::shared_ptr<const FockBasis> basis, const std::map<int, ModeState>& inputs,
                                  double max_leakage, double* leakage) {
  for (const auto& [q, state] : inputs)
    if (!state.is_pure()) throw DomainError("prepare_state needs pure inputs; use prepare_ensemble for mixtures");
  auto ens = prepare_ensemble(std::move(basis), inputs, max_leakage);
  if (leakage) *leakage = ens.leakage;
  return std::move(ens.members.front().second);
}

MultimodeFockVector product_coherent_state(std::shared_ptr<const FockBasis> basis, const AmplitudeMap& amplitudes) {
  const auto& w = basis->window();
  std::vector<Complex> alpha(static_cast<std::size_t>(basis->modes()), Complex{});
  for (const auto& [q, a] : amplitudes) {
    if (!w.contains(q)) throw RangeError("coherent amplitude for sideband " + std::to_string(q) + " is outside the window");
    alpha[w.offset(q)] = a;
  }
  MultimodeFockVector v{basis, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()))};
  for (std::size_t s = 0; s < basis->size(); ++s) {
    Complex c{1.0, 0.0};
    const auto occ = basis->occupation(s);
    for (std::size_t i = 0; i < occ.size() && c != Complex{}; ++i)
      for (int n = 1; n <= occ[i]; ++n) c *= alpha[i] / std::sqrt(static_cast<double>(n));
    v.amplitudes[static_cast<Eigen::Index>(s)] = c;
  }
  const double norm = v.amplitudes.norm();
  if (norm > 0.0) v.amplitudes /= norm;
  return v;
}

// --- Hamiltonian -------------------------------------------------------------------

HamiltonianMatrix build_hamiltonian(std::shared_ptr<const FockBasis> basis, double coupling) {
  if (!basis) throw DomainError("build_hamiltonian needs a basis");
  if (!(coupling > 0.0) || !std::isfinite(coupling)) throw DomainError("coupling must be positive");
  HamiltonianMatrix h;
  h.basis = basis;
  h.coupling = coupling;
  h.row_ptr.reserve(basis->size() + 1);
  h.row_ptr.push_back(0);
  const int modes = basis->modes();
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(modes));
  std::vector<std::pair<std::size_t, double>> row;
  for (std::size_t s = 0; s < basis->size(); ++s) {
    const auto src = basis->occupation(s);
    std::copy(src.begin(), src.end(), occ.begin());
    row.clear();
    for (int i = 0; i + 1 < modes; ++i) {
      const int a = occ[static_cast<std::size_t>(i)];
      const int b = occ[static_cast<std::size_t>(i + 1)];
      // b_i b_{i+1}^+ moves a photon up, its conjugate moves one down
      if (a > 0) {
        --occ[static_cast<std::size_t>(i)];
        ++occ[static_cast<std::size_t>(i + 1)];
        row.emplace_back(basis->index_of(std::span<const std::uint8_t>(occ)), -coupling * std::sqrt(a * (b + 1.0)));
        ++occ[static_cast<std::size_t>(i)];
        --occ[static_cast<std::size_t>(i + 1)];
      }
      if (b > 0) {
        ++occ[static_cast<std::size_t>(i)];
        --occ[static_cast<std::size_t>(i + 1)];
        row.emplace_back(basis->index_of(std::span<const std::uint8_t>(occ)), -coupling * std::sqrt(b * (a + 1.0)));
        --occ[static_cast<std::size_t>(i)];
        ++occ[static_cast<std::size_t>(i + 1)];
      }
    }
    std::sort(row.begin(), row.end());
    for (const auto& [col, value] : row) {
      h.cols.push_back(col);
      h.values.push_back(value);
    }
    h.row_ptr.push_back(h.cols.size());
  }
  return h;
}

double HamiltonianMatrix::element(std::size_t r, std::size_t c) const {
  const auto first = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r]);
  const auto last = cols.begin() + static_cast<std::ptrdiff_t>(row_ptr[r + 1]);
  const auto it = std::lower_bound(first, last, c);
  return it != last && *it == c ? values[static_cast<std::size_t>(it - cols.begin())] : 0.0;
}

void HamiltonianMatrix::apply(std::size_t begin, std::size_t end, const Eigen::VectorXcd& in,
                              Eigen::VectorXcd& out) const {
  out.resize(static_cast<Eigen::Index>(end - begin));
  for (std::size_t r = begin; r < end; ++r) {
    Complex acc{};
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      acc += values[k] * in[static_cast<Eigen::Index>(cols[k] - begin)];
    out[static_cast<Eigen::Index>(r - begin)] = acc;
  }
}

Eigen::MatrixXd HamiltonianMatrix::dense_block(std::size_t begin, std::size_t end) const {
  const auto n = static_cast<Eigen::Index>(end - begin);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t r = begin; r < end; ++r)
    for (std::size_t k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
      m(static_cast<Eigen::Index>(r - begin), static_cast<Eigen::Index>(cols[k] - begin)) = values[k];
  return m;
}

}  // namespace raman
