#pragma once

// Closed-form free evolution of the amplitude chi = (chi' + i chi'')/sqrt(2),
// where psi = chi exp(-i t/tau_C). Each Fourier mode rotates rigidly:
//   chi'_k(t)  =  chi'_k(0) cos(w_k t) + chi''_k(0) sin(w_k t)
//   chi''_k(t) = -chi'_k(0) sin(w_k t) + chi''_k(0) cos(w_k t)
// with w_k tau_C = sqrt(1 + (lk)^2) - 1. Radial routines work in dimensionless
// units (lengths in lambda_bar, times in tau_C).

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "relamp/physics.hpp"
#include "relamp/radial.hpp"

namespace relamp {

struct KModeState {
  double wavenumber = 0.0;
  double re = 0.0;  // chi'_k
  double im = 0.0;  // chi''_k
};

/// Rotates the mode by angle w_k t (t in the time unit of `scales`).
KModeState evolve_mode(const KModeState& state, double t, const PhysicalScales& scales);

/// Radial snapshot of (chi', chi'') together with their j0 spectra.
class PacketSnapshot {
 public:
  /// Builds a snapshot from position samples; the spectra are computed.
  static PacketSnapshot from_samples(std::shared_ptr<const RadialGrid> grid, double sigma, double time,
                                     std::vector<double> re, std::vector<double> im);
  /// Builds a snapshot from spectra; position samples are computed.
  static PacketSnapshot from_spectra(std::shared_ptr<const RadialGrid> grid, double sigma, double time,
                                     std::vector<double> re_k, std::vector<double> im_k);

  const RadialGrid& grid() const { return *grid_; }
  const std::shared_ptr<const RadialGrid>& grid_ptr() const { return grid_; }
  double time() const { return time_; }
  /// Width used for the |psi~|^2 = pi^{3/2} sigma^3 |psi|^2 scaling.
  double sigma() const { return sigma_; }

  std::span<const double> re() const { return re_; }
  std::span<const double> im() const { return im_; }
  std::span<const double> re_spectrum() const { return re_k_; }
  std::span<const double> im_spectrum() const { return im_k_; }

  /// 4 pi int |psi|^2 r^2 dr = 2 pi int (chi'^2 + chi''^2) r^2 dr.
  double norm() const;
  /// (chi', chi'') at an arbitrary radius, interpolated through the spectra.
  std::pair<double, double> value_at(double r) const;
  /// pi^{3/2} sigma^3 |psi(r)|^2.
  double scaled_density_at(double r) const;
  /// Smallest node radius where the scaled density falls to half its r = 0 value.
  double half_height_radius() const;

 private:
  PacketSnapshot() = default;

  std::shared_ptr<const RadialGrid> grid_;
  double sigma_ = 1.0;
  double time_ = 0.0;
  std::vector<double> re_, im_, re_k_, im_k_;
};

/// chi'(r,0) = sqrt(2) pi^{-3/4} sigma^{-3/2} exp(-r^2/2 sigma^2), chi'' = 0.
/// Throws DomainError for sigma <= 0 and ValidationError when sigma > r_max/6.
PacketSnapshot gaussian_initial(double sigma, std::shared_ptr<const RadialGrid> grid);

/// Forward j0 transform, per-mode rotation by w_k t, inverse transform. The
/// returned snapshot carries time initial.time() + t. Throws ValidationError
/// when the initial norm differs from 1 by more than 1e-6.
PacketSnapshot propagate_radial(const PacketSnapshot& initial, double t);

/// Direct evaluation of the Gaussian-packet solution
///   chi'(r,t)  =  C int dk k^2 cos(w_k t) j0(k r) exp(-k^2 sigma^2/2)
///   chi''(r,t) = -C int dk k^2 sin(w_k t) j0(k r) exp(-k^2 sigma^2/2)
/// with C = sqrt(2) pi^{-3/4} sqrt(2/pi) sigma^{3/2}, by adaptive
/// Gauss-Kronrod quadrature. Throws ConvergenceError with the achieved
/// error estimate when the tolerance is not met.
std::pair<double, double> evolve_gaussian_quadrature(double sigma, double t, double r);

struct KernelSample {
  double separation = 0.0;
  double time = 0.0;
  double regulator = 0.0;
  double cos_kernel = 0.0;  // J_C
  double sin_kernel = 0.0;  // J_S
};

/// J_C, J_S = (1/2 pi^2) int dk k^2 {cos, sin}(w_k t) j0(k r) exp(-eps k^2).
/// The bare kernels are distributions, so eps > 0 is mandatory (DomainError).
KernelSample kernel_values(double r, double t, double eps);

/// The Gaussian packet of width sigma is the eps = sigma^2/2 member of the
/// regulated delta sequence, so its evolution is A (J_C, -J_S) with
/// A = sqrt(2) pi^{-3/4} sigma^{3/2} (2 pi)^{3/2}.
std::pair<double, double> kernel_packet(double sigma, double t, double r);

/// Position-space propagator applied to Gaussian data: the 3D convolution of
/// the regulated kernels with gaussian_initial(sigma0), evaluated by nested
/// radial quadrature. Equals the sigma = sqrt(sigma0^2 + 2 eps) packet scaled
/// by (sigma0 / sigma)^{3/2}.
std::pair<double, double> kernel_convolve_gaussian(double sigma0, double eps, double t, double r);

/// L2 norm (4 pi r^2 dr measure) of tau_C^2 d^2chi'/dt^2 + (sqrt(1 - Delta) - 1)^2 chi'
/// with the central second difference in time and the exact spectral operator
/// at the middle snapshot. Throws ValidationError on mismatched grids or
/// unequal spacing.
double klein_gordon_residual(const PacketSnapshot& before, const PacketSnapshot& now, const PacketSnapshot& after);

/// L2 norm (4 pi r^2 dr measure) of a radial sample vector.
double radial_l2_norm(const RadialGrid& grid, std::span<const double> f);

}  // namespace relamp
