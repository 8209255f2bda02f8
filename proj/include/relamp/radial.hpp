#pragma once

// Radially symmetric 3D fields. The unitary 3D Fourier pair reduces to the
// spherical Bessel (j0) transform
//   f_k(k) = sqrt(2/pi) int_0^inf dr r^2 j0(k r) f(r)
//   f(r)   = sqrt(2/pi) int_0^inf dk k^2 j0(k r) f_k(k)
// evaluated with composite Gauss-Legendre panels on [0, r_max] and [0, k_max].

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace relamp {

/// j0(x) = sin(x)/x, series near the origin.
double spherical_j0(double x);

class RadialGrid {
 public:
  /// panels * order nodes on each axis. Throws ValidationError for
  /// non-positive extents, zero panels, or order outside [2, 64].
  static RadialGrid make(double r_max, double k_max, std::size_t panels, std::size_t order);

  /// k_max set so that exp(-k_max^2 sigma^2 / 2) < 1e-16.
  static double packet_cutoff(double sigma);

  double r_max() const { return r_max_; }
  double k_max() const { return k_max_; }
  std::size_t size() const { return r_.size(); }
  std::size_t panels() const { return panels_; }
  std::size_t order() const { return order_; }

  std::span<const double> r_nodes() const { return r_; }
  /// Weights for int_0^r_max dr r^2 f(r) (the r^2 is included).
  std::span<const double> r_weights() const { return wr_; }
  std::span<const double> k_nodes() const { return k_; }
  /// Weights for int_0^k_max dk k^2 g(k).
  std::span<const double> k_weights() const { return wk_; }

  std::vector<double> forward(std::span<const double> f) const;
  std::vector<double> inverse(std::span<const double> g) const;
  /// Inverse transform evaluated at an arbitrary radius.
  double inverse_at(std::span<const double> g, double r) const;

  /// int_0^r_max r^2 f(r) dr
  double integrate_r2(std::span<const double> f) const;

  bool same_layout(const RadialGrid& o) const {
    return r_max_ == o.r_max_ && k_max_ == o.k_max_ && panels_ == o.panels_ && order_ == o.order_;
  }

 private:
  RadialGrid() = default;

  double r_max_ = 0.0;
  double k_max_ = 0.0;
  std::size_t panels_ = 0;
  std::size_t order_ = 0;
  std::vector<double> r_, wr_, k_, wk_;
  Eigen::MatrixXd kernel_;  // sqrt(2/pi) j0(k_j r_i), rows k, columns r
};

}  // namespace relamp
