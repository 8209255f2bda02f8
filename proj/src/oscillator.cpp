#include "relamp/oscillator.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include <Eigen/Dense>

#include "relamp/errors.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "oscillator";
using Int = boost::multiprecision::cpp_int;

// (a - a^dagger)^p |n) as {index -> integer coefficient}.
std::map<unsigned, Int> apply_difference_power(unsigned n, unsigned power) {
  std::map<unsigned, Int> v{{n, Int(1)}};
  for (unsigned step = 0; step < power; ++step) {
    std::map<unsigned, Int> next;
    for (const auto& [k, c] : v) {
      if (k > 0) next[k - 1] += c * k;
      next[k + 1] -= c;
    }
    for (auto it = next.begin(); it != next.end();) it = it->second == 0 ? next.erase(it) : std::next(it);
    v = std::move(next);
  }
  return v;
}

Int falling_product(unsigned lo, unsigned hi) {  // (lo+1)(lo+2)...hi
  Int p = 1;
  for (unsigned k = lo + 1; k <= hi; ++k) p *= k;
  return p;
}

Eigen::MatrixXd quartic_hamiltonian(double gamma, unsigned basis) {
  const auto b = static_cast<Eigen::Index>(basis);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(b, b);
  for (unsigned n = 0; n < basis; ++n) {
    h(n, n) = 2.0 * n + 1.0;
    for (unsigned m = (n >= 4 ? n - 4 : 0); m <= n + 4 && m < basis; ++m) {
      if ((m + n) % 2 != 0) continue;
      h(m, n) -= gamma * ladder_element(m, n, 4).value();
    }
  }
  return h;
}

std::vector<double> lowest_eigenvalues(double gamma, unsigned basis, unsigned levels) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(quartic_hamiltonian(gamma, basis), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError(kModule, "basis_size", "symmetric eigensolver did not converge");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + levels};
}

}  // namespace

double hermite_function(unsigned n, double xi) { return hermite_functions(n, xi).back(); }

std::vector<double> hermite_functions(unsigned n, double xi) {
  if (n > kMaxHermiteLevel) {
    std::ostringstream msg;
    msg << "level " << n << " exceeds the recurrence limit " << kMaxHermiteLevel;
    throw DomainError(kModule, "n", msg.str());
  }
  std::vector<double> phi(n + 1);
  phi[0] = std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * xi * xi);
  if (n >= 1) phi[1] = std::numbers::sqrt2 * xi * phi[0];
  for (unsigned k = 1; k < n; ++k) {
    phi[k + 1] = std::sqrt(2.0 / (k + 1.0)) * xi * phi[k] - std::sqrt(k / (k + 1.0)) * phi[k - 1];
  }
  return phi;
}

GaussHermiteRule gauss_hermite(unsigned q) {
  if (q == 0 || q > kMaxHermiteLevel) throw DomainError(kModule, "Q", "quadrature order out of range");
  // Golub-Welsch for starting values, then Newton on phi_q.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(q);
  Eigen::VectorXd off(q > 1 ? q - 1 : 0);
  for (unsigned k = 1; k < q; ++k) off[k - 1] = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::EigenvaluesOnly);
  GaussHermiteRule rule;
  for (unsigned i = 0; i < q; ++i) {
    double x = solver.eigenvalues()[i];
    for (int it = 0; it < 8; ++it) {
      const auto phi = hermite_functions(q, x);
      const double d = std::sqrt(2.0 * q) * phi[q - 1] - x * phi[q];
      if (d == 0.0) break;
      const double step = phi[q] / d;
      x -= step;
      if (std::abs(step) < 1e-16 * (1.0 + std::abs(x))) break;
    }
    const auto phi = hermite_functions(q - 1, x);
    double s = 0.0;
    for (double v : phi) s += v * v;
    rule.nodes.push_back(x);
    rule.weights.push_back(1.0 / s);
  }
  return rule;
}

double LadderElement::value() const {
  return static_cast<double>(coefficient) * std::sqrt(static_cast<double>(radicand));
}

LadderElement ladder_element(unsigned m, unsigned n, unsigned power) {
  const auto v = apply_difference_power(n, power);
  LadderElement e;
  const auto it = v.find(m);
  if (it == v.end()) {
    e.coefficient = 0;
    return e;
  }
  // <m|O|n> = c_m sqrt(m!/n!) 2^{-p/2}
  Rational c(it->second);
  Int rad = 1;
  if (m >= n) {
    rad = falling_product(n, m);
  } else {
    const Int r = falling_product(m, n);  // n!/m!
    c /= Rational(r);
    rad = r;
  }
  c /= Rational(Int(1) << (power / 2));
  if (power % 2 == 1) {
    // 2^{-1/2} = sqrt(2)/2
    c /= 2;
    rad *= 2;
  }
  e.coefficient = c;
  e.radicand = rad;
  return e;
}

double quartic_expectation_ladder(unsigned n) { return ladder_element(n, n, 4).value(); }

double quartic_expectation_quadrature(unsigned n, unsigned q) {
  if (q < 2 * n + 8) {
    std::ostringstream msg;
    msg << "quadrature order " << q << " below 2n+8 = " << 2 * n + 8;
    throw DomainError(kModule, "Q", msg.str());
  }
  const GaussHermiteRule rule = gauss_hermite(q);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const double second = (x * x - 2.0 * n - 1.0) * hermite_function(n, x);
    s += rule.weights[i] * second * second;
  }
  return s;
}

double quartic_expectation(unsigned n, unsigned q) {
  const double quad = quartic_expectation_quadrature(n, q);
  const double ladder = quartic_expectation_ladder(n);
  if (std::abs(quad - ladder) > 1e-10 * std::abs(ladder)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "<n|d^4|n> oracles disagree at n = " << n << ": quadrature " << quad << ", ladder " << ladder;
    throw ConsistencyError(kModule, "n", msg.str());
  }
  return ladder;
}

double cubic_expectation_quadrature(unsigned n, unsigned q) {
  if (q < 2 * n + 8) throw DomainError(kModule, "Q", "quadrature order below 2n+8");
  // phi''' = d/dxi[(xi^2 - 2n - 1) phi] = 2 xi phi + (xi^2 - 2n - 1) phi',
  // phi' = sqrt(n/2) phi_{n-1} - sqrt((n+1)/2) phi_{n+1}.
  const GaussHermiteRule rule = gauss_hermite(q);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    const auto phi = hermite_functions(n + 1, x);
    const double lower = n > 0 ? phi[n - 1] : 0.0;
    const double d1 = std::sqrt(0.5 * n) * lower - std::sqrt(0.5 * (n + 1.0)) * phi[n + 1];
    const double d3 = 2.0 * x * phi[n] + (x * x - 2.0 * n - 1.0) * d1;
    s += rule.weights[i] * phi[n] * d3;
  }
  return s;
}

double published_correction(unsigned n, double gamma) { return -1.5 * gamma * (n + 1.0) * (n + 2.0); }

double oracle_correction(unsigned n, double gamma, unsigned q) { return -gamma * quartic_expectation(n, q); }

double published_level_energy(unsigned n, double gamma) {
  const double nn = n;
  return nn * (1.0 - 2.25 * gamma) + 0.5 * (1.0 - 3.0 * gamma) - 0.75 * gamma * nn * nn;
}

double published_level_gap(unsigned n, double gamma) { return 1.0 - 2.25 * gamma - 0.75 * gamma * (2.0 * n + 1.0); }

void OscillatorConfig::validate(unsigned levels) const {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw DomainError(kModule, "gamma", "must be finite and >= 0");
  if (levels == 0) throw DomainError(kModule, "levels", "need at least one level");
  if (basis_size < levels + 8) {
    std::ostringstream msg;
    msg << "basis size " << basis_size << " must be at least levels + 8 = " << levels + 8;
    throw DomainError(kModule, "basis_size", msg.str());
  }
  if (quadrature_order != 0 && quadrature_order < 2 * (levels - 1) + 8) {
    throw DomainError(kModule, "quadrature_order", "must be at least 2n + 8 for the highest level");
  }
}

std::vector<std::string> OscillatorConfig::warnings() const {
  std::vector<std::string> w;
  if (gamma > 1e-2) w.emplace_back("gamma above 1e-2: first-order perturbation theory is not reliable");
  return w;
}

std::vector<double> diagonalize_quartic(const OscillatorConfig& config, unsigned levels) {
  config.validate(levels);
  const auto base = lowest_eigenvalues(config.gamma, config.basis_size, levels);
  const auto wider = lowest_eigenvalues(config.gamma, config.basis_size + 8, levels);
  if (base.front() < 0.0 || wider.front() < 0.0) {
    throw ConvergenceError(kModule, "basis_size",
                           "spurious negative state: -gamma d^4 dominates the truncated basis; reduce basis_size");
  }
  for (unsigned i = 0; i < levels; ++i) {
    if (std::abs(base[i] - wider[i]) > 1e-10) {
      std::ostringstream msg;
      msg.precision(3);
      msg << "level " << i << " moved by " << std::abs(base[i] - wider[i]) << " when the basis grew from "
          << config.basis_size << " to " << config.basis_size + 8;
      throw ConvergenceError(kModule, "basis_size", msg.str());
    }
  }
  return base;
}

std::vector<OscillatorReport> oscillator_report(const OscillatorConfig& config, unsigned levels) {
  const auto diag = diagonalize_quartic(config, levels);
  std::vector<OscillatorReport> out;
  for (unsigned n = 0; n < levels; ++n) {
    const unsigned q = config.quadrature_order != 0 ? config.quadrature_order : 2 * n + 8;
    OscillatorReport r;
    r.level = n;
    r.unperturbed = 2.0 * n + 1.0;
    r.published_correction = published_correction(n, config.gamma);
    r.oracle_correction = oracle_correction(n, config.gamma, q);
    r.diag_eigenvalue = diag[n];
    r.diag_shift = diag[n] - r.unperturbed;
    r.published_vs_oracle =
        config.gamma == 0.0 ? 0.0 : (r.published_correction - r.oracle_correction) / std::abs(r.oracle_correction);
    out.push_back(r);
  }
  return out;
}

}  // namespace relamp
