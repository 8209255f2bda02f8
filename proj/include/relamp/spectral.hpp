#pragma once

// Complex fields on a 1D periodic grid and the square-root operator
// sqrt(1 - Delta) applied either through its Fourier symbol sqrt(1 + k^2) or
// through the truncated Laplacian-power series. Coordinates are in Compton
// lengths and times in Compton times.
//
// Spectra use the unitary continuous-transform normalisation
//   psi_k = dx/sqrt(2 pi) * sum_m psi(x_m) exp(-i k x_m),
// so that sum |psi|^2 dx == sum |psi_k|^2 dk.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace relamp {

using Complex = std::complex<double>;

class Grid1D {
 public:
  /// Periodic grid on [origin, origin + length). point_count must be a power
  /// of two and at least 8; throws ValidationError otherwise.
  static Grid1D make(double length, std::size_t point_count, double origin = 0.0);

  /// Grid centred on x = 0.
  static Grid1D centred(double length, std::size_t point_count) {
    return make(length, point_count, -0.5 * length);
  }

  double length() const { return length_; }
  std::size_t size() const { return size_; }
  double spacing() const { return length_ / static_cast<double>(size_); }
  double origin() const { return origin_; }
  double position(std::size_t m) const { return origin_ + spacing() * static_cast<double>(m); }
  /// Mode spacing 2 pi / L.
  double mode_spacing() const;
  /// pi / dx
  double nyquist() const;
  /// Wavenumber of FFT slot j; slots cover 2 pi j / L for j in [-M/2, M/2).
  double wavenumber(std::size_t j) const;
  bool is_nyquist(std::size_t j) const { return j == size_ / 2; }

  bool operator==(const Grid1D&) const = default;

 private:
  Grid1D(double length, std::size_t size, double origin)
      : length_(length), size_(size), origin_(origin) {}

  double length_;
  std::size_t size_;
  double origin_;
};

/// Immutable sampled field with an optional cached spectrum. Operations return
/// new fields; a field built from a spectrum keeps that spectrum exactly.
class SpectralField {
 public:
  /// Throws ValidationError on size mismatch or non-finite samples.
  static SpectralField from_samples(const Grid1D& grid, std::vector<Complex> samples);
  static SpectralField from_function(const Grid1D& grid, const std::function<Complex(double)>& f);
  static SpectralField from_spectrum(const Grid1D& grid, std::vector<Complex> spectrum);

  const Grid1D& grid() const { return grid_; }
  std::span<const Complex> samples() const { return samples_; }
  bool has_spectrum() const { return spectrum_.has_value(); }
  /// Cached spectrum; throws std::logic_error when absent (call to_spectrum).
  std::span<const Complex> spectrum() const;

  /// sum |psi|^2 dx
  double norm_squared() const;
  /// Largest |k| whose spectral weight exceeds 1e-12 of the total. Needs the
  /// cached spectrum.
  double band_limit() const;

  /// (sqrt(2) Re psi, sqrt(2) Im psi): the real pair with psi = (a + i b)/sqrt(2).
  std::pair<std::vector<double>, std::vector<double>> real_imag_split() const;

 private:
  friend SpectralField to_spectrum(const SpectralField& field);

  SpectralField(Grid1D grid, std::vector<Complex> samples, std::optional<std::vector<Complex>> spectrum)
      : grid_(grid), samples_(std::move(samples)), spectrum_(std::move(spectrum)) {}

  Grid1D grid_;
  std::vector<Complex> samples_;
  std::optional<std::vector<Complex>> spectrum_;
};

/// Returns the same samples with the spectrum cache filled.
SpectralField to_spectrum(const SpectralField& field);

/// Multiplies every mode by symbol(k) and returns the resulting field with its
/// spectrum cached.
SpectralField apply_symbol(const SpectralField& field, const std::function<Complex(double)>& symbol);

/// sqrt(1 - Delta) through the symbol sqrt(1 + k^2).
SpectralField apply_sqrt_exact(const SpectralField& field);

/// (1 - sum_{n=1}^{N} a_n Delta^n) psi with Delta^n -> (-k^2)^n. Throws
/// ConvergenceError when the band limit is >= 1 and DomainError for N == 0.
SpectralField apply_sqrt_series(const SpectralField& field, unsigned order);

/// Partial-sum multiplier 1 + sum_{n=1}^{N} (-1)^{n-1} a_n x^{2n} at x = k.
double sqrt_series_symbol(double x, unsigned order);

/// Delta^n; n == 0 returns the input unchanged.
SpectralField laplacian_power(const SpectralField& field, unsigned n);

/// d/dx. The Nyquist slot is zeroed so real fields stay real.
SpectralField gradient(const SpectralField& field);

/// Exact free evolution psi(t) = exp(-i sqrt(1 - Delta) t) psi(0).
SpectralField propagate_exact(const SpectralField& field, double t);

/// d psi / dt = -i sqrt(1 - Delta) psi from the equation of motion.
SpectralField time_derivative(const SpectralField& field);

/// sum conj(a) b dx, accumulated in index order.
Complex inner_product(const SpectralField& a, const SpectralField& b);

/// Unit-norm Gaussian-modulated plane wave centred at x = 0,
///   psi(x) = (pi w^2)^{-1/4} exp(-x^2 / 2w^2) exp(i k0 x),
/// built directly in spectral space. Modes below the band-weight floor are
/// exact zeros, so Laplacian powers do not amplify transform roundoff.
/// Throws ValidationError when the envelope does not fit the periodic box.
SpectralField gaussian_mode(const Grid1D& grid, double carrier, double width);

/// Unit-norm field with independent normal complex amplitudes on |k| <= k_eff
/// and exact zeros elsewhere; deterministic in `seed`.
SpectralField random_band_limited(const Grid1D& grid, double k_eff, std::uint64_t seed);

}  // namespace relamp
