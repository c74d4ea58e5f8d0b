#include "raman_comb/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "raman_comb/errors.hpp"

namespace raman {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double falling_factorial(int n, int k) {
  double out = 1.0;
  for (int i = 0; i < k; ++i) out *= static_cast<double>(n - i);
  return out;
}

// p(2k) recursion ratio for the squeezed vacuum is t^2 (2k-1)/(2k) <= t^2.
double squeezed_tail_after(const SqueezedVacuum& s, int n_max) {
  const double t2 = std::pow(std::tanh(s.r), 2);
  if (t2 == 0.0) return 0.0;
  const int next_even = (n_max < 0) ? 0 : (n_max % 2 == 0 ? n_max + 2 : n_max + 1);
  double p = 1.0 / std::cosh(s.r);
  for (int m = 2; m <= next_even; m += 2) p *= t2 * (m - 1) / m;
  return p / (1.0 - t2);
}

}  // namespace

ModeState ModeState::coherent(Complex alpha) {
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag()))
    throw DomainError("coherent amplitude must be finite");
  return ModeState(Coherent{alpha});
}

ModeState ModeState::fock(int n) {
  if (n < 0) throw DomainError("Fock photon number must be non-negative");
  return ModeState(Fock{n});
}

ModeState ModeState::thermal(double mean) {
  if (!std::isfinite(mean) || mean < 0.0) throw DomainError("thermal mean photon number must be non-negative");
  return ModeState(Thermal{mean});
}

ModeState ModeState::squeezed_vacuum(double r, double theta) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeezing parameter r must be non-negative");
  if (!std::isfinite(theta)) throw DomainError("squeezing phase must be finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double reduced = std::fmod(theta, two_pi);
  if (reduced < 0.0) reduced += two_pi;
  return ModeState(SqueezedVacuum{r, reduced});
}

bool operator==(const ModeState& a, const ModeState& b) {
  return std::visit(
      overloaded{
          [](const Vacuum&, const Vacuum&) { return true; },
          [](const Coherent& x, const Coherent& y) { return x.alpha == y.alpha; },
          [](const Fock& x, const Fock& y) { return x.n == y.n; },
          [](const Thermal& x, const Thermal& y) { return x.mean == y.mean; },
          [](const SqueezedVacuum& x, const SqueezedVacuum& y) { return x.r == y.r && x.theta == y.theta; },
          [](const auto&, const auto&) { return false; },
      },
      a.value_, b.value_);
}

std::string ModeState::describe() const {
  std::ostringstream os;
  os.precision(17);
  std::visit(overloaded{
                 [&](const Vacuum&) { os << "vacuum"; },
                 [&](const Coherent& c) { os << "coherent(" << c.alpha.real() << "," << c.alpha.imag() << ")"; },
                 [&](const Fock& f) { os << "fock(" << f.n << ")"; },
                 [&](const Thermal& t) { os << "thermal(" << t.mean << ")"; },
                 [&](const SqueezedVacuum& s) { os << "squeezed_vacuum(" << s.r << "," << s.theta << ")"; },
             },
             value_);
  return os.str();
}

MomentSet moments(const ModeState& state) {
  MomentSet m;
  std::visit(overloaded{
                 [](const Vacuum&) {},
                 [&](const Coherent& c) {
                   const Complex a = c.alpha;
                   m.m_b = a;
                   m.m_b2 = a * a;
                   m.n_mean = std::norm(a);
                   m.m_b2dag_b2 = m.n_mean * m.n_mean;
                   m.m_b2dag_b = std::conj(a) * std::conj(a) * a;
                   m.m_bdag_b2 = std::conj(a) * a * a;
                 },
                 [&](const Fock& f) {
                   m.n_mean = f.n;
                   m.m_b2dag_b2 = falling_factorial(f.n, 2);
                 },
                 [&](const Thermal& t) {
                   m.n_mean = t.mean;
                   m.m_b2dag_b2 = 2.0 * t.mean * t.mean;
                 },
                 [&](const SqueezedVacuum& s) {
                   const double sh = std::sinh(s.r);
                   const double ch = std::cosh(s.r);
                   m.n_mean = sh * sh;
                   m.m_b2 = -std::polar(sh * ch, s.theta);
                   // Gaussian factorisation: 2 <b^+b>^2 + |<b^2>|^2.
                   m.m_b2dag_b2 = 2.0 * m.n_mean * m.n_mean + std::norm(m.m_b2);
                 },
             },
             state.variant());
  return m;
}

double factorial_moment(const ModeState& state, int n) {
  if (n < 0 || n > 4) throw DomainError("factorial moments are available for 0 <= n <= 4");
  return std::visit(
      overloaded{
          [&](const Vacuum&) { return n == 0 ? 1.0 : 0.0; },
          [&](const Coherent& c) { return std::pow(std::norm(c.alpha), n); },
          [&](const Fock& f) { return n > f.n ? 0.0 : falling_factorial(f.n, n); },
          [&](const Thermal& t) { return std::tgamma(n + 1.0) * std::pow(t.mean, n); },
          [&](const SqueezedVacuum& s) {
            // Wick pairings of b^+n b^n with N = <b^+ b>, M = |<b^2>|^2.
            const double N = std::pow(std::sinh(s.r), 2);
            const double M = N * std::pow(std::cosh(s.r), 2);
            switch (n) {
              case 0: return 1.0;
              case 1: return N;
              case 2: return 2.0 * N * N + M;
              case 3: return 6.0 * N * N * N + 9.0 * N * M;
              default: return 24.0 * std::pow(N, 4) + 72.0 * N * N * M + 9.0 * M * M;
            }
          },
      },
      state.variant());
}

std::vector<double> photon_number_distribution(const ModeState& state, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be non-negative");
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1, 0.0);
  std::visit(overloaded{
                 [&](const Vacuum&) { p[0] = 1.0; },
                 [&](const Coherent& c) {
                   const double mean = std::norm(c.alpha);
                   if (mean == 0.0) {
                     p[0] = 1.0;
                     return;
                   }
                   const double log_mean = std::log(mean);
                   double log_p = -mean;
                   p[0] = std::exp(log_p);
                   for (int n = 1; n <= n_max; ++n) {
                     log_p += log_mean - std::log(static_cast<double>(n));
                     p[static_cast<std::size_t>(n)] = std::exp(log_p);
                   }
                 },
                 [&](const Fock& f) {
                   if (f.n <= n_max) p[static_cast<std::size_t>(f.n)] = 1.0;
                 },
                 [&](const Thermal& t) {
                   const double ratio = t.mean / (t.mean + 1.0);
                   double v = 1.0 / (t.mean + 1.0);
                   for (int n = 0; n <= n_max; ++n) {
                     p[static_cast<std::size_t>(n)] = v;
                     v *= ratio;
                   }
                 },
                 [&](const SqueezedVacuum& s) {
                   const double t2 = std::pow(std::tanh(s.r), 2);
                   double v = 1.0 / std::cosh(s.r);
                   for (int n = 0; n <= n_max; n += 2) {
                     p[static_cast<std::size_t>(n)] = v;
                     v *= t2 * (n + 1) / (n + 2);
                   }
                 },
             },
             state.variant());
  return p;
}

double distribution_tail(const ModeState& state, int n_max) {
  return std::visit(
      overloaded{
          [&](const Vacuum&) { return n_max >= 0 ? 0.0 : 1.0; },
          [&](const Coherent& c) {
            const double mean = std::norm(c.alpha);
            if (mean == 0.0) return n_max >= 0 ? 0.0 : 1.0;
            const int next = n_max + 1;
            if (next <= mean + 1.0) {
              const auto p = photon_number_distribution(state, std::max(n_max, 0));
              double s = 0.0;
              for (double v : p) s += v;
              return n_max < 0 ? 1.0 : std::max(0.0, 1.0 - s);
            }
            // Poisson terms beyond next shrink by at least mean / (next + 1).
            const double p_next = std::exp(-mean + next * std::log(mean) - std::lgamma(next + 1.0));
            return p_next / (1.0 - mean / (next + 1.0));
          },
          [&](const Fock& f) { return n_max >= f.n ? 0.0 : 1.0; },
          [&](const Thermal& t) { return std::pow(t.mean / (t.mean + 1.0), n_max + 1); },
          [&](const SqueezedVacuum& s) { return squeezed_tail_after(s, n_max); },
      },
      state.variant());
}

int distribution_support(const ModeState& state, double tail) {
  if (!(tail > 0.0)) throw DomainError("tail bound must be positive");
  if (const auto* f = std::get_if<Fock>(&state.variant())) return f->n;
  int n = 0;
  while (distribution_tail(state, n) > tail) {
    ++n;
    if (n > 100000) throw DomainError("photon-number support exceeds 1e5; state is too bright");
  }
  return n;
}

double squeezing_from_moments(double n_mean, Complex m_b, Complex m_b2, double phi) {
  const Complex rotated = (m_b2 - m_b * m_b) * std::polar(1.0, -2.0 * phi);
  return 2.0 * (n_mean - std::norm(m_b)) + 2.0 * rotated.real();
}

double input_squeezing_factor(const ModeState& state, double phi) {
  const auto m = moments(state);
  return squeezing_from_moments(m.n_mean, m.m_b, m.m_b2, phi);
}

double normalized_autocorrelation(const ModeState& state, int order) {
  if (order < 1) throw DomainError("autocorrelation order must be >= 1");
  const double mean = factorial_moment(state, 1);
  if (mean <= 0.0) throw UndefinedStatistic("g^(n) is undefined for a mode with zero mean photon number");
  return factorial_moment(state, order) / std::pow(mean, order);
}

}  // namespace raman
