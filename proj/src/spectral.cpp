#include "relamp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "fft.hpp"
#include "relamp/errors.hpp"
#include "relamp/physics.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "spectral-field";
constexpr double kBandWeightFloor = 1e-12;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Cached spectrum or a fresh transform.
std::vector<Complex> spectrum_of(const SpectralField& field) {
  if (field.has_spectrum()) {
    auto s = field.spectrum();
    return {s.begin(), s.end()};
  }
  const SpectralField f = to_spectrum(field);
  auto s = f.spectrum();
  return {s.begin(), s.end()};
}

// 1 + sum_{n=1}^{N} (-1)^{n-1} a_n x^{2n}, Horner in x^2.
double partial_sqrt(const std::vector<double>& a, unsigned order, double x) {
  const double y = x * x;
  double acc = 0.0;
  for (unsigned n = order; n >= 1; --n) acc = (acc + ((n % 2 == 1) ? a[n] : -a[n])) * y;
  return 1.0 + acc;
}

}  // namespace

Grid1D Grid1D::make(double length, std::size_t point_count, double origin) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw ValidationError(kModule, "length", "grid length must be positive and finite");
  }
  if (point_count < 8 || !is_power_of_two(point_count)) {
    throw ValidationError(kModule, "point_count",
                          "grid size must be a power of two >= 8, got " + std::to_string(point_count));
  }
  if (!std::isfinite(origin)) throw ValidationError(kModule, "origin", "must be finite");
  return Grid1D(length, point_count, origin);
}

double Grid1D::mode_spacing() const { return 2.0 * std::numbers::pi / length_; }

double Grid1D::nyquist() const { return std::numbers::pi / spacing(); }

double Grid1D::wavenumber(std::size_t j) const {
  const auto n = static_cast<std::ptrdiff_t>(size_);
  auto s = static_cast<std::ptrdiff_t>(j);
  if (s >= n / 2) s -= n;
  return mode_spacing() * static_cast<double>(s);
}

SpectralField SpectralField::from_samples(const Grid1D& grid, std::vector<Complex> samples) {
  if (samples.size() != grid.size()) {
    throw ValidationError(kModule, "samples", "sample count does not match the grid");
  }
  for (const auto& v : samples) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError(kModule, "samples", "field contains non-finite samples");
    }
  }
  return SpectralField(grid, std::move(samples), std::nullopt);
}

SpectralField SpectralField::from_function(const Grid1D& grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t m = 0; m < v.size(); ++m) v[m] = f(grid.position(m));
  return from_samples(grid, std::move(v));
}

SpectralField SpectralField::from_spectrum(const Grid1D& grid, std::vector<Complex> spectrum) {
  if (spectrum.size() != grid.size()) {
    throw ValidationError(kModule, "spectrum", "spectrum length does not match the grid");
  }
  const std::size_t n = grid.size();
  std::vector<Complex> shifted(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& v = spectrum[j];
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw ValidationError(kModule, "spectrum", "spectrum contains non-finite values");
    }
    shifted[j] = v * std::polar(1.0, grid.wavenumber(j) * grid.origin());
  }
  std::vector<Complex> samples(n);
  detail::fft_backward(shifted, samples);
  const double scale = std::sqrt(2.0 * std::numbers::pi) / (grid.spacing() * static_cast<double>(n));
  for (auto& v : samples) v *= scale;
  return SpectralField(grid, std::move(samples), std::move(spectrum));
}

std::span<const Complex> SpectralField::spectrum() const {
  if (!spectrum_) throw std::logic_error("SpectralField: spectrum not cached; call to_spectrum()");
  return *spectrum_;
}

double SpectralField::norm_squared() const {
  double s = 0.0;
  for (const auto& v : samples_) s += std::norm(v);
  return s * grid_.spacing();
}

double SpectralField::band_limit() const {
  const auto spec = spectrum();
  const double dk = grid_.mode_spacing();
  double total = 0.0;
  for (const auto& v : spec) total += std::norm(v) * dk;
  if (total == 0.0) return 0.0;
  double limit = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) {
    if (std::norm(spec[j]) * dk > kBandWeightFloor * total) {
      limit = std::max(limit, std::abs(grid_.wavenumber(j)));
    }
  }
  return limit;
}

std::pair<std::vector<double>, std::vector<double>> SpectralField::real_imag_split() const {
  std::vector<double> re(samples_.size()), im(samples_.size());
  for (std::size_t m = 0; m < samples_.size(); ++m) {
    re[m] = std::numbers::sqrt2 * samples_[m].real();
    im[m] = std::numbers::sqrt2 * samples_[m].imag();
  }
  return {std::move(re), std::move(im)};
}

SpectralField to_spectrum(const SpectralField& field) {
  if (field.has_spectrum()) return field;
  const Grid1D& grid = field.grid();
  const std::size_t n = grid.size();
  std::vector<Complex> out(n);
  detail::fft_forward(field.samples(), out);
  const double scale = grid.spacing() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] *= scale * std::polar(1.0, -grid.wavenumber(j) * grid.origin());
  }
  auto samples = field.samples();
  return SpectralField(grid, {samples.begin(), samples.end()}, std::move(out));
}

SpectralField apply_symbol(const SpectralField& field, const std::function<Complex(double)>& symbol) {
  const Grid1D& grid = field.grid();
  std::vector<Complex> spec = spectrum_of(field);
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= symbol(grid.wavenumber(j));
  return SpectralField::from_spectrum(grid, std::move(spec));
}

SpectralField apply_sqrt_exact(const SpectralField& field) {
  return apply_symbol(field, [](double k) { return Complex(sqrt_symbol(k)); });
}

double sqrt_series_symbol(double x, unsigned order) {
  return partial_sqrt(series_coeffs_a_double(order), order, x);
}

SpectralField apply_sqrt_series(const SpectralField& field, unsigned order) {
  if (order == 0) throw DomainError(kModule, "N", "series order must be >= 1");
  const SpectralField f = to_spectrum(field);
  const double limit = f.band_limit();
  if (limit >= 1.0) {
    throw ConvergenceError(kModule, "band_limit",
                           "operator series diverges: band limit lambda_bar*k_eff = " +
                               std::to_string(limit) + " is not below 1");
  }
  const auto a = series_coeffs_a_double(order);
  return apply_symbol(f, [&](double k) { return Complex(partial_sqrt(a, order, k)); });
}

SpectralField laplacian_power(const SpectralField& field, unsigned n) {
  if (n == 0) return field;
  return apply_symbol(field, [n](double k) { return Complex(std::pow(-k * k, static_cast<int>(n))); });
}

SpectralField gradient(const SpectralField& field) {
  const Grid1D& grid = field.grid();
  std::vector<Complex> spec = spectrum_of(field);
  for (std::size_t j = 0; j < spec.size(); ++j) {
    spec[j] = grid.is_nyquist(j) ? Complex(0.0) : spec[j] * Complex(0.0, grid.wavenumber(j));
  }
  return SpectralField::from_spectrum(grid, std::move(spec));
}

SpectralField propagate_exact(const SpectralField& field, double t) {
  if (!std::isfinite(t)) throw DomainError(kModule, "t", "time must be finite");
  return apply_symbol(field, [t](double k) { return std::polar(1.0, -sqrt_symbol(k) * t); });
}

SpectralField time_derivative(const SpectralField& field) {
  return apply_symbol(field, [](double k) { return Complex(0.0, -sqrt_symbol(k)); });
}

Complex inner_product(const SpectralField& a, const SpectralField& b) {
  if (!(a.grid() == b.grid())) throw ValidationError(kModule, "grid", "fields live on different grids");
  Complex s(0.0);
  const auto x = a.samples();
  const auto y = b.samples();
  for (std::size_t m = 0; m < x.size(); ++m) s += std::conj(x[m]) * y[m];
  return s * a.grid().spacing();
}

SpectralField gaussian_mode(const Grid1D& grid, double carrier, double width) {
  if (!(width > 0.0) || !std::isfinite(carrier)) throw DomainError(kModule, "width", "must be positive");
  if (12.0 * width > grid.length()) {
    throw ValidationError(kModule, "width", "envelope of width " + std::to_string(width) +
                                                " does not fit the periodic box (need 12 w <= L)");
  }
  const std::size_t n = grid.size();
  const double amp = std::pow(width * width / std::numbers::pi, 0.25);
  std::vector<Complex> spec(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = (grid.wavenumber(j) - carrier) * width;
    spec[j] = amp * std::exp(-0.5 * d * d);
  }
  // The continuous norm is 1; drop modes that carry less than the band floor.
  const double dk = grid.mode_spacing();
  for (auto& v : spec) {
    if (std::norm(v) * dk <= kBandWeightFloor) v = 0.0;
  }
  return SpectralField::from_spectrum(grid, std::move(spec));
}

SpectralField random_band_limited(const Grid1D& grid, double k_eff, std::uint64_t seed) {
  if (!(k_eff > 0.0) || k_eff >= grid.nyquist()) {
    throw DomainError(kModule, "k_eff", "must lie in (0, nyquist)");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const std::size_t n = grid.size();
  std::vector<Complex> spec(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(grid.wavenumber(j)) > k_eff || grid.is_nyquist(j)) continue;
    spec[j] = Complex(normal(rng), normal(rng));
    total += std::norm(spec[j]) * grid.mode_spacing();
  }
  if (total == 0.0) throw DomainError(kModule, "k_eff", "no grid modes inside the band");
  const double scale = 1.0 / std::sqrt(total);
  for (auto& v : spec) v *= scale;
  return SpectralField::from_spectrum(grid, std::move(spec));
}

}  // namespace relamp
