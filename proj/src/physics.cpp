#include "relamp/physics.hpp"

#include <cmath>
#include <mutex>

#include "relamp/errors.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "physics-core";

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(kModule, name, "must be positive and finite");
  }
}

}  // namespace

PhysicalScales::PhysicalScales(double m, double c, double hbar)
    : mass_(m),
      light_speed_(c),
      hbar_(hbar),
      compton_length_(hbar / (m * c)),
      compton_time_(compton_length_ / c) {}

PhysicalScales PhysicalScales::make(double mass, double light_speed, double hbar) {
  require_positive(mass, "mass");
  require_positive(light_speed, "light_speed");
  require_positive(hbar, "hbar");
  return PhysicalScales(mass, light_speed, hbar);
}

PhysicalScales PhysicalScales::electron_si() {
  return make(9.1093837015e-31, 299792458.0, 1.054571817e-34);
}

Rational series_coeff_a(unsigned n) {
  if (n == 0) throw DomainError(kModule, "n", "series coefficient a_n needs n >= 1");
  // a_1 = 1/2, a_{n+1} = a_n (2n-1)/(2n+2)
  Rational a(1, 2);
  for (unsigned j = 1; j < n; ++j) a *= Rational(2 * j - 1, 2 * j + 2);
  return a;
}

Rational series_coeff_b(unsigned n) {
  if (n == 0) throw DomainError(kModule, "n", "series coefficient b_n needs n >= 1");
  Rational b(1, 2);
  for (unsigned j = 1; j < n; ++j) b *= Rational(2 * j + 1, 2 * j + 2);
  return b;
}

std::vector<double> series_coeffs_a_double(unsigned n) {
  static std::mutex mu;
  static std::vector<double> table{0.0, 0.5};
  static Rational last(1, 2);  // exact a_{table.size()-1}
  std::lock_guard<std::mutex> lock(mu);
  while (table.size() <= n) {
    const unsigned j = table.size() - 1;
    last *= Rational(2 * j - 1, 2 * j + 2);
    table.push_back(static_cast<double>(last));
  }
  return {table.begin(), table.begin() + n + 1};
}

double sqrt_symbol(double x) { return std::hypot(1.0, x); }

double omega_symbol(double x) {
  const double s = std::hypot(1.0, x);
  return x * x / (s + 1.0);
}

double group_symbol(double x) { return x / std::hypot(1.0, x); }

DispersionSample dispersion(double k, const PhysicalScales& scales) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError(kModule, "k", "wavenumber must be finite and non-negative (pass |k|)");
  }
  const double x = scales.compton_length() * k;
  return {k, omega_symbol(x) / scales.compton_time(), scales.light_speed() * group_symbol(x)};
}

double nonrel_dispersion(double k, const PhysicalScales& scales) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError(kModule, "k", "wavenumber must be finite and non-negative (pass |k|)");
  }
  return scales.hbar() * k * k / (2.0 * scales.mass());
}

double nonrel_group_velocity(double k, const PhysicalScales& scales) {
  if (!(k >= 0.0) || !std::isfinite(k)) {
    throw DomainError(kModule, "k", "wavenumber must be finite and non-negative (pass |k|)");
  }
  return scales.hbar() * k / scales.mass();
}

}  // namespace relamp
