#include <doctest.h>

#include <cmath>
#include <random>

#include "relamp/errors.hpp"
#include "relamp/physics.hpp"

using namespace relamp;

namespace {

// Independent route: products of odd/even integers, no recurrence.
Rational double_factorial_ratio(int odd_top, int even_top) {
  boost::multiprecision::cpp_int num = 1, den = 1;
  for (int k = odd_top; k > 0; k -= 2) num *= k;
  for (int k = even_top; k > 0; k -= 2) den *= k;
  return Rational(num, den);
}

}  // namespace

TEST_CASE("natural scales are unity") {
  const auto s = PhysicalScales::natural();
  CHECK(s.compton_length() == 1.0);
  CHECK(s.compton_time() == 1.0);
  CHECK(s.rest_energy() == 1.0);
}

TEST_CASE("electron Compton scales") {
  const auto s = PhysicalScales::electron_si();
  // CODATA 2018 reduced Compton wavelength 3.8615926796e-13 m.
  CHECK(s.compton_length() == doctest::Approx(3.8615926796e-13).epsilon(1e-9));
  CHECK(s.compton_time() == doctest::Approx(1.28808867e-21).epsilon(1e-8));
  CHECK(std::abs(s.compton_time() / 1.3e-21 - 1.0) < 0.05);
}

TEST_CASE("scales reject non-positive input") {
  CHECK_THROWS_AS(PhysicalScales::make(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhysicalScales::make(1.0, -1.0, 1.0), DomainError);
  CHECK_THROWS_AS(PhysicalScales::make(1.0, 1.0, std::nan("")), DomainError);
}

TEST_CASE("series coefficients, printed values") {
  CHECK(series_coeff_a(1) == Rational(1, 2));
  CHECK(series_coeff_a(2) == Rational(1, 8));
  CHECK(series_coeff_a(3) == Rational(3, 48));
  CHECK(series_coeff_b(1) == Rational(1, 2));
  CHECK(series_coeff_b(3) == Rational(15, 48));
}

TEST_CASE("b_2 follows the double-factorial definition") { CHECK(series_coeff_b(2) == Rational(3, 8)); }

TEST_CASE("coefficients agree with direct double factorials") {
  for (int n = 1; n <= 40; ++n) {
    CAPTURE(n);
    CHECK(series_coeff_a(n) == double_factorial_ratio(2 * n - 3, 2 * n));
    CHECK(series_coeff_b(n) == double_factorial_ratio(2 * n - 1, 2 * n));
  }
  CHECK_THROWS_AS(series_coeff_a(0), DomainError);
  CHECK_THROWS_AS(series_coeff_b(0), DomainError);
}

TEST_CASE("double table matches the exact coefficients") {
  const auto a = series_coeffs_a_double(30);
  REQUIRE(a.size() == 31);
  for (unsigned n = 1; n <= 30; ++n) CHECK(a[n] == static_cast<double>(series_coeff_a(n)));
}

TEST_CASE("series reproduce sqrt and inverse sqrt") {
  const double y = 0.25;
  double s = 1.0, inv = 1.0, p = 1.0;
  for (unsigned n = 1; n <= 60; ++n) {
    p *= -y;
    s -= static_cast<double>(series_coeff_a(n)) * p;
    inv += static_cast<double>(series_coeff_b(n)) * p;
  }
  CHECK(s == doctest::Approx(std::sqrt(1.25)).epsilon(1e-15));
  CHECK(inv == doctest::Approx(1.0 / std::sqrt(1.25)).epsilon(1e-15));
}

TEST_CASE("dispersion point values") {
  const auto nat = PhysicalScales::natural();
  const auto d = dispersion(1.0, nat);
  CHECK(d.omega == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));
  CHECK(d.group_velocity == doctest::Approx(0.7071068).epsilon(1e-7));
  CHECK(dispersion(0.0, nat).omega == 0.0);
  CHECK(dispersion(0.0, nat).group_velocity == 0.0);
  // The naive sqrt(1+x^2) - 1 loses everything here.
  CHECK(dispersion(1e-8, nat).omega == doctest::Approx(5e-17).epsilon(1e-12));
  CHECK(nonrel_dispersion(2.0, nat) == 2.0);
  CHECK(nonrel_group_velocity(2.0, nat) == 2.0);
  CHECK_THROWS_AS(dispersion(-1.0, nat), DomainError);
  CHECK_THROWS_AS(dispersion(INFINITY, nat), DomainError);
}

TEST_CASE("dispersion in SI units scales with the Compton length and time") {
  const auto e = PhysicalScales::electron_si();
  const auto d = dispersion(1.0 / e.compton_length(), e);
  CHECK(d.omega * e.compton_time() == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
  CHECK(d.group_velocity / e.light_speed() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
  CHECK(nonrel_group_velocity(2.0 / e.compton_length(), e) / e.light_speed() == doctest::Approx(2.0));
}

TEST_CASE("property: group velocity is subluminal, increasing and the derivative of omega") {
  std::mt19937_64 rng(20241016);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  const auto nat = PhysicalScales::natural();
  for (int i = 0; i < 2000; ++i) {
    const double k = u(rng);
    const double h = 1e-5 * (1.0 + k);
    const auto d = dispersion(k, nat);
    CHECK(d.group_velocity < 1.0);
    CHECK(dispersion(k + h, nat).group_velocity > d.group_velocity);
    const double fd = (omega_symbol(k + h) - omega_symbol(std::max(k - h, 0.0))) / (k + h - std::max(k - h, 0.0));
    CHECK(fd == doctest::Approx(d.group_velocity).epsilon(1e-6));
    CHECK(d.omega <= nonrel_dispersion(k, nat));
  }
}
