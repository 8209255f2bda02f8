#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relamp/errors.hpp"
#include "relamp/physics.hpp"
#include "relamp/spectral.hpp"

using namespace relamp;

namespace {

double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("grid layout") {
  const auto g = Grid1D::make(2.0 * std::numbers::pi, 8);
  CHECK(g.spacing() == doctest::Approx(std::numbers::pi / 4));
  CHECK(g.mode_spacing() == doctest::Approx(1.0));
  CHECK(g.nyquist() == doctest::Approx(4.0));
  CHECK(g.wavenumber(0) == 0.0);
  CHECK(g.wavenumber(3) == doctest::Approx(3.0));
  CHECK(g.wavenumber(5) == doctest::Approx(-3.0));
  CHECK(std::abs(g.wavenumber(4)) == doctest::Approx(4.0));
  CHECK_THROWS_AS(Grid1D::make(1.0, 12), ValidationError);
  CHECK_THROWS_AS(Grid1D::make(1.0, 4), ValidationError);
  CHECK_THROWS_AS(Grid1D::make(-1.0, 16), ValidationError);
}

TEST_CASE("non-finite samples are rejected") {
  const auto g = Grid1D::make(1.0, 8);
  std::vector<Complex> s(8, 1.0);
  s[3] = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(SpectralField::from_samples(g, s), ValidationError);
  CHECK_THROWS_AS(SpectralField::from_samples(g, std::vector<Complex>(4)), ValidationError);
}

TEST_CASE("Gaussian transforms to Gaussian, including the origin phase") {
  // psi(x) = exp(-x^2/2) has psi_k = exp(-k^2/2) in the unitary convention.
  const auto centred = Grid1D::centred(40.0, 256);
  const auto f = to_spectrum(SpectralField::from_function(centred, [](double x) { return std::exp(-0.5 * x * x); }));
  const auto shifted = Grid1D::make(40.0, 256, 0.0);
  const auto h =
      to_spectrum(SpectralField::from_function(shifted, [](double x) { return std::exp(-0.5 * (x - 20) * (x - 20)); }));
  for (std::size_t j = 0; j < 256; ++j) {
    const double k = centred.wavenumber(j);
    CHECK(std::abs(f.spectrum()[j] - std::exp(-0.5 * k * k)) < 1e-14);
    const Complex expect = std::exp(-0.5 * k * k) * std::exp(Complex(0.0, -20.0 * k));
    CHECK(std::abs(h.spectrum()[j] - expect) < 1e-13);
  }
}

TEST_CASE("round trip and Parseval") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n;
  const auto g = Grid1D::make(13.0, 64);
  std::vector<Complex> s(64);
  for (auto& v : s) v = Complex(n(rng), n(rng));
  const auto f = to_spectrum(SpectralField::from_samples(g, s));
  const auto back = SpectralField::from_spectrum(g, {f.spectrum().begin(), f.spectrum().end()});
  CHECK(max_diff(back.samples(), f.samples()) < 1e-13);
  double spec = 0.0;
  for (const auto& v : f.spectrum()) spec += std::norm(v) * g.mode_spacing();
  CHECK(spec == doctest::Approx(f.norm_squared()).epsilon(1e-13));
  CHECK_THROWS_AS((void)SpectralField::from_samples(g, s).spectrum(), std::logic_error);
}

TEST_CASE("square root acts on a plane wave by its symbol") {
  const auto g = Grid1D::make(2.0 * std::numbers::pi * 10.0, 64);
  const double k = 0.7;  // 7 modes of 0.1
  const auto psi = SpectralField::from_function(g, [&](double x) { return std::exp(Complex(0.0, k * x)); });
  const auto out = apply_sqrt_exact(psi);
  for (std::size_t m = 0; m < g.size(); ++m) {
    CHECK(std::abs(out.samples()[m] - std::sqrt(1.0 + k * k) * psi.samples()[m]) < 1e-13);
  }
}

TEST_CASE("series symbol") {
  CHECK(sqrt_series_symbol(0.5, 1) == doctest::Approx(1.125));
  CHECK(sqrt_series_symbol(0.5, 2) == doctest::Approx(1.125 - 0.0625 / 8));
  CHECK(sqrt_series_symbol(0.0, 7) == 1.0);
  const auto a = series_coeffs_a_double(41);
  for (double x : {0.1, 0.3, 0.5, 0.8, 0.95}) {
    for (unsigned n = 1; n <= 40; ++n) {
      CAPTURE(x);
      CAPTURE(n);
      const double err = std::abs(sqrt_series_symbol(x, n) - std::hypot(1.0, x));
      CHECK(err <= a[n + 1] * std::pow(x, 2.0 * n + 2) + 4e-16);
    }
  }
}

TEST_CASE("series operator guards") {
  const auto g = Grid1D::centred(200.0, 512);
  CHECK_THROWS_AS(apply_sqrt_series(random_band_limited(g, 1.5, 3), 4), ConvergenceError);
  CHECK_THROWS_AS(apply_sqrt_series(random_band_limited(g, 0.5, 3), 0), DomainError);
  CHECK_NOTHROW(apply_sqrt_series(random_band_limited(g, 0.5, 3), 4));
}

TEST_CASE("Laplacian powers and gradient on trigonometric fields") {
  const auto g = Grid1D::make(2.0 * std::numbers::pi, 32);
  const auto psi = SpectralField::from_function(g, [](double x) { return Complex(std::sin(3 * x)); });
  const auto l2 = laplacian_power(psi, 2);
  const auto d = gradient(psi);
  for (std::size_t m = 0; m < g.size(); ++m) {
    const double x = g.position(m);
    // Roundoff in samples is amplified by up to k_nyq^4 = 16^4.
    CHECK(std::abs(l2.samples()[m] - 81.0 * std::sin(3 * x)) < 1e-10);
    CHECK(std::abs(d.samples()[m] - 3.0 * std::cos(3 * x)) < 1e-13);
  }
  CHECK(max_diff(laplacian_power(psi, 0).samples(), psi.samples()) == 0.0);
}

TEST_CASE("gradient of a real field is real") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  const auto g = Grid1D::make(5.0, 16);
  std::vector<Complex> s(16);
  for (auto& v : s) v = n(rng);
  const auto d = gradient(SpectralField::from_samples(g, s));
  for (const auto& v : d.samples()) CHECK(std::abs(v.imag()) < 1e-13);
}

TEST_CASE("exact propagation: unitary group with the right generator") {
  const auto g = Grid1D::centred(400.0, 1024);
  const auto psi = gaussian_mode(g, 0.3, 10.0);
  const auto a = propagate_exact(propagate_exact(psi, 1.7), 2.4);
  const auto b = propagate_exact(psi, 4.1);
  CHECK(max_diff(a.samples(), b.samples()) < 1e-13);
  CHECK(b.norm_squared() == doctest::Approx(psi.norm_squared()).epsilon(1e-13));
  const double h = 1e-4;
  const auto dt = time_derivative(psi);
  const auto fp = propagate_exact(psi, h), fm = propagate_exact(psi, -h);
  for (std::size_t m = 0; m < g.size(); m += 37) {
    const Complex fd = (fp.samples()[m] - fm.samples()[m]) / (2 * h);
    CHECK(std::abs(fd - dt.samples()[m]) < 1e-8);
  }
}

TEST_CASE("inner product is conjugate-linear in the first slot") {
  const auto g = Grid1D::centred(100.0, 256);
  const auto a = gaussian_mode(g, 0.2, 5.0);
  const auto ia = SpectralField::from_function(g, [&](double x) {
    const std::size_t m = static_cast<std::size_t>(std::lround((x - g.origin()) / g.spacing()));
    return Complex(0.0, 1.0) * a.samples()[m];
  });
  // Modes under the band-weight floor are dropped, so the norm is 1 - O(1e-13).
  CHECK(std::abs(inner_product(a, a) - 1.0) < 1e-12);
  CHECK(std::abs(inner_product(ia, a) - Complex(0.0, -1.0)) < 1e-12);
}

TEST_CASE("Gaussian-modulated mode") {
  const auto g = Grid1D::centred(1024.0, 2048);
  const auto psi = gaussian_mode(g, 0.15, 35.0);
  CHECK(psi.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(psi.band_limit() < 0.3);
  CHECK(psi.band_limit() > 0.28);
  double mean = 0.0;
  for (std::size_t m = 0; m < g.size(); ++m) mean += g.position(m) * std::norm(psi.samples()[m]) * g.spacing();
  CHECK(std::abs(mean) < 1e-9);
  // Peak amplitude (pi w^2)^{-1/4}
  CHECK(std::abs(psi.samples()[1024]) == doctest::Approx(std::pow(std::numbers::pi * 35.0 * 35.0, -0.25)));
  CHECK_THROWS_AS(gaussian_mode(g, 0.1, 100.0), ValidationError);
}

TEST_CASE("random band-limited field") {
  const auto g = Grid1D::centred(500.0, 1024);
  const auto a = random_band_limited(g, 0.5, 42);
  const auto b = random_band_limited(g, 0.5, 42);
  const auto c = random_band_limited(g, 0.5, 43);
  CHECK(max_diff(a.samples(), b.samples()) == 0.0);
  CHECK(max_diff(a.samples(), c.samples()) > 1e-3);
  CHECK(a.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.band_limit() <= 0.5);
  CHECK(a.band_limit() > 0.49);
}

TEST_CASE("property: square root is linear and squares to 1 - Delta") {
  const auto g = Grid1D::centred(300.0, 512);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto f = random_band_limited(g, 0.8, seed);
    const auto h = random_band_limited(g, 0.8, seed + 100);
    std::vector<Complex> sum(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) sum[m] = 2.0 * f.samples()[m] - h.samples()[m];
    const auto lhs = apply_sqrt_exact(SpectralField::from_samples(g, sum));
    const auto sf = apply_sqrt_exact(f), sh = apply_sqrt_exact(h);
    const auto twice = apply_sqrt_exact(sf);
    const auto lap = laplacian_power(f, 1);
    for (std::size_t m = 0; m < g.size(); ++m) {
      CHECK(std::abs(lhs.samples()[m] - (2.0 * sf.samples()[m] - sh.samples()[m])) < 1e-12);
      CHECK(std::abs(twice.samples()[m] - (f.samples()[m] - lap.samples()[m])) < 1e-12);
    }
  }
}
