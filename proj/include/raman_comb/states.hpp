#pragma once

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace raman {

using Complex = std::complex<double>;

struct Vacuum {};
struct Coherent {
  Complex alpha;
};
struct Fock {
  int n = 0;
};
struct Thermal {
  double mean = 0.0;
};
struct SqueezedVacuum {
  double r = 0.0;
  double theta = 0.0;  // reduced to [0, 2 pi)
};

// Input state of a single sideband.
class ModeState {
 public:
  using Variant = std::variant<Vacuum, Coherent, Fock, Thermal, SqueezedVacuum>;

  ModeState() = default;
  static ModeState vacuum() { return ModeState(Vacuum{}); }
  static ModeState coherent(Complex alpha);
  static ModeState fock(int n);
  static ModeState thermal(double mean);
  static ModeState squeezed_vacuum(double r, double theta);

  const Variant& variant() const { return value_; }
  std::string describe() const;

  // Pure states admit a state-vector representation; Thermal does not.
  bool is_pure() const { return !std::holds_alternative<Thermal>(value_); }
  bool is_vacuum() const { return std::holds_alternative<Vacuum>(value_); }

  friend bool operator==(const ModeState& a, const ModeState& b);

 private:
  explicit ModeState(Variant v) : value_(v) {}
  Variant value_ = Vacuum{};
};

// Low-order moments of one mode.
struct MomentSet {
  Complex m_b{};         // <b>
  Complex m_b2{};        // <b^2>
  double n_mean = 0.0;   // <b^+ b>
  double m_b2dag_b2 = 0.0;  // <b^+2 b^2>
  Complex m_b2dag_b{};   // <b^+2 b>
  Complex m_bdag_b2{};   // <b^+ b^2>
};

MomentSet moments(const ModeState& state);

// <b^+n b^n> for 0 <= n <= 4.
double factorial_moment(const ModeState& state, int n);

// p(0..n_max).
std::vector<double> photon_number_distribution(const ModeState& state, int n_max);

// Smallest n_max with 1 - sum_{n <= n_max} p(n) <= tail (a rigorous bound per variant).
int distribution_support(const ModeState& state, double tail = 1e-13);

// Upper bound on the probability mass above n_max.
double distribution_tail(const ModeState& state, int n_max);

// Quadrature convention X = b^+ e^{i phi} + b e^{-i phi}; S = <(dX)^2> - 1.
double squeezing_from_moments(double n_mean, Complex m_b, Complex m_b2, double phi);
double input_squeezing_factor(const ModeState& state, double phi);

// g^(n) = <b^+n b^n> / <b^+ b>^n; throws UndefinedStatistic for an empty mode.
double normalized_autocorrelation(const ModeState& state, int order);

}  // namespace raman
