#pragma once

// 1D harmonic oscillator with the leading relativistic correction, in the
// dimensionless form
//   eps phi = -phi'' + xi^2 phi - gamma phi'''',   gamma = hbar omega / (4 m c^2),
// eps = 2E / (hbar omega). The first-order level shift is -gamma <n|d^4/dxi^4|n>,
// computed here two independent ways, next to the closed form quoted in the
// literature and an exact diagonalisation in the Hermite basis.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "relamp/physics.hpp"

namespace relamp {

/// Highest level the weighted recurrence evaluates without underflow.
inline constexpr unsigned kMaxHermiteLevel = 700;

/// phi_n(xi) = pi^{-1/4} (2^n n!)^{-1/2} exp(-xi^2/2) H_n(xi) by the stable
/// three-term recurrence. Throws DomainError for n > kMaxHermiteLevel.
double hermite_function(unsigned n, double xi);

/// phi_0(xi) .. phi_n(xi).
std::vector<double> hermite_functions(unsigned n, double xi);

/// Q-point Gauss-Hermite rule in "scaled" form: int F(xi) dxi ~ sum_i w_i F(x_i)
/// for F = exp(-xi^2) * polynomial of degree < 2Q.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(unsigned q);

/// Exact matrix element <m|d^p/dxi^p|n> = coefficient * sqrt(radicand).
struct LadderElement {
  Rational coefficient;
  boost::multiprecision::cpp_int radicand = 1;

  double value() const;
};

/// Symbolic expansion of ((a - a^dagger)/sqrt 2)^p on the unnormalised
/// number states |n) = sqrt(n!) |n>, where a|n) = n|n-1) and a^dagger|n) = |n+1).
LadderElement ladder_element(unsigned m, unsigned n, unsigned power);

/// <n|d^4|n> from the ladder expansion.
double quartic_expectation_ladder(unsigned n);

/// <n|d^4|n> = int (phi_n'')^2 dxi by Gauss-Hermite quadrature, with
/// phi_n'' = (xi^2 - 2n - 1) phi_n. Throws DomainError when q < 2n + 8.
double quartic_expectation_quadrature(unsigned n, unsigned q);

/// Both oracles; throws ConsistencyError when they differ by more than 1e-10
/// relative.
double quartic_expectation(unsigned n, unsigned q);

/// <n|d^3|n> by quadrature (int phi_n phi_n''' dxi); zero by parity.
double cubic_expectation_quadrature(unsigned n, unsigned q);

/// -(3/2) gamma (n+1)(n+2), the closed form as printed in the literature.
double published_correction(unsigned n, double gamma);

/// -gamma <n|d^4|n> with the oracle expectation.
double oracle_correction(unsigned n, double gamma, unsigned q);

/// E_n / (hbar omega) = n(1 - 9 gamma/4) + (1 - 3 gamma)/2 - (3/4) gamma n^2.
double published_level_energy(unsigned n, double gamma);

/// (E_{n+1} - E_n)/(hbar omega) = 1 - 9 gamma/4 - (3/4) gamma (2n+1).
double published_level_gap(unsigned n, double gamma);

struct OscillatorConfig {
  double gamma = 0.0;
  unsigned basis_size = 48;
  unsigned quadrature_order = 0;  // 0: choose 2n + 8 per level

  /// Throws DomainError for negative or non-finite gamma.
  void validate(unsigned levels) const;
  /// Non-fatal notes, e.g. gamma above 1e-2.
  std::vector<std::string> warnings() const;
};

/// Lowest `levels` eigenvalues of -d^2 + xi^2 - gamma d^4 in the first
/// basis_size Hermite functions, ascending. The matrix of d^4 comes from the
/// exact ladder expansion (it couples |m - n| in {0, 2, 4}). Throws
/// ConvergenceError when enlarging the basis by 8 moves any returned value by
/// more than 1e-10, or when a spurious negative state appears.
std::vector<double> diagonalize_quartic(const OscillatorConfig& config, unsigned levels);

struct OscillatorReport {
  unsigned level = 0;
  double unperturbed = 0.0;           // 2n + 1
  double published_correction = 0.0;  // -(3/2) gamma (n+1)(n+2)
  double oracle_correction = 0.0;     // -gamma <n|d^4|n>
  double diag_eigenvalue = 0.0;       // eps_diag(gamma)
  double diag_shift = 0.0;            // eps_diag - (2n + 1)
  double published_vs_oracle = 0.0;   // (published - oracle)/|oracle|, 0 when gamma == 0
};

std::vector<OscillatorReport> oscillator_report(const OscillatorConfig& config, unsigned levels);

}  // namespace relamp
