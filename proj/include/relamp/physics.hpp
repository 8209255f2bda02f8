#pragma once

// Unit system, expansion coefficients of the square-root operator and the
// free dispersion relation.
//
// Everything downstream works in dimensionless units: lengths in Compton
// lengths, times in Compton times, m = c = hbar = 1. PhysicalScales carries
// the conversion factors for callers that want SI (or any other) units.

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace relamp {

using Rational = boost::multiprecision::cpp_rational;

class PhysicalScales {
 public:
  /// Throws DomainError unless all three inputs are positive and finite.
  static PhysicalScales make(double mass, double light_speed, double hbar);

  /// m = c = hbar = 1.
  static PhysicalScales natural() { return make(1.0, 1.0, 1.0); }

  /// Electron in SI units (CODATA 2018 values).
  static PhysicalScales electron_si();

  double mass() const { return mass_; }
  double light_speed() const { return light_speed_; }
  double hbar() const { return hbar_; }
  /// hbar / (m c)
  double compton_length() const { return compton_length_; }
  /// compton_length / c = hbar / (m c^2)
  double compton_time() const { return compton_time_; }
  /// m c^2
  double rest_energy() const { return mass_ * light_speed_ * light_speed_; }

 private:
  PhysicalScales(double m, double c, double hbar);

  double mass_;
  double light_speed_;
  double hbar_;
  double compton_length_;
  double compton_time_;
};

/// a_n = (2n-3)!!/(2n)!! with (-1)!! = 1, so sqrt(1+y) = 1 - sum_n (-1)^n a_n y^n.
/// Throws DomainError for n == 0.
Rational series_coeff_a(unsigned n);

/// b_n = (2n-1)!!/(2n)!!, so 1/sqrt(1+y) = 1 + sum_n (-1)^n b_n y^n.
/// Throws DomainError for n == 0.
Rational series_coeff_b(unsigned n);

/// {0, a_1, ..., a_n} rounded to double. The exact table behind it is built
/// once; index 0 is a placeholder.
std::vector<double> series_coeffs_a_double(unsigned n);

struct DispersionSample {
  double wavenumber;      // 1/length
  double omega;           // 1/time
  double group_velocity;  // length/time
};

/// omega_k = (sqrt(1 + (lk)^2) - 1)/tau_C, v_g = c lk / sqrt(1 + (lk)^2).
/// Throws DomainError for negative or non-finite k.
DispersionSample dispersion(double k, const PhysicalScales& scales);

/// Nonrelativistic limit hbar k^2 / 2m.
double nonrel_dispersion(double k, const PhysicalScales& scales);

/// Nonrelativistic group velocity hbar k / m (unbounded).
double nonrel_group_velocity(double k, const PhysicalScales& scales);

/// Dimensionless helpers on x = lambda_bar * k, numerically stable near 0.
double sqrt_symbol(double x);      // sqrt(1 + x^2)
double omega_symbol(double x);     // sqrt(1 + x^2) - 1
double group_symbol(double x);     // x / sqrt(1 + x^2)

}  // namespace relamp
