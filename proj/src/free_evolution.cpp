#include "relamp/free_evolution.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relamp/errors.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "free-evolution";
constexpr double kPi = std::numbers::pi;
// exp(-kDecay) ~ 1e-18: integrands are cut where the Gaussian damping drops below this.
constexpr double kDecay = 41.5;
constexpr double kQuadTol = 1e-13;
constexpr double kQuadAccept = 1e-10;
// Absolute floor for pieces whose whole contribution is negligible.
constexpr double kQuadFloor = 1e-15;
constexpr unsigned kMaxDepth = 18;

// sqrt(2) pi^{-3/4} sigma^{-3/2}
double packet_amplitude(double sigma) {
  return std::numbers::sqrt2 * std::pow(kPi, -0.75) * std::pow(sigma, -1.5);
}

template <typename F>
double integrate(F f, double a, double b, const char* what) {
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err = 0.0;
  double l1 = 0.0;
  const double value = Quad::integrate(f, a, b, kMaxDepth, kQuadTol, &err, &l1);
  if (!(err <= kQuadAccept * l1 + kQuadFloor) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge: estimate " << value << ", error estimate " << err
        << " (L1 " << l1 << ")";
    throw ConvergenceError(kModule, what, msg.str());
  }
  return value;
}

// Split [0, K] into pieces so the adaptive rule starts from a sensible mesh.
template <typename F>
double integrate_k(F f, double k_max, const char* what) {
  constexpr int kPieces = 8;
  double s = 0.0;
  for (int p = 0; p < kPieces; ++p) {
    s += integrate(f, k_max * p / kPieces, k_max * (p + 1) / kPieces, what);
  }
  return s;
}

double omega_tau(double k) { return omega_symbol(k); }

void require_same_grid(const PacketSnapshot& a, const PacketSnapshot& b) {
  if (a.grid_ptr() != b.grid_ptr() && !a.grid().same_layout(b.grid())) {
    throw ValidationError(kModule, "grid", "snapshots live on different radial grids");
  }
}

}  // namespace

KModeState evolve_mode(const KModeState& state, double t, const PhysicalScales& scales) {
  const double angle = dispersion(std::abs(state.wavenumber), scales).omega * t;
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {state.wavenumber, c * state.re + s * state.im, -s * state.re + c * state.im};
}

PacketSnapshot PacketSnapshot::from_samples(std::shared_ptr<const RadialGrid> grid, double sigma, double time,
                                            std::vector<double> re, std::vector<double> im) {
  if (!grid) throw ValidationError(kModule, "grid", "missing radial grid");
  if (re.size() != grid->size() || im.size() != grid->size()) {
    throw ValidationError(kModule, "samples", "sample count does not match the radial grid");
  }
  PacketSnapshot s;
  s.re_k_ = grid->forward(re);
  s.im_k_ = grid->forward(im);
  s.re_ = std::move(re);
  s.im_ = std::move(im);
  s.grid_ = std::move(grid);
  s.sigma_ = sigma;
  s.time_ = time;
  return s;
}

PacketSnapshot PacketSnapshot::from_spectra(std::shared_ptr<const RadialGrid> grid, double sigma, double time,
                                            std::vector<double> re_k, std::vector<double> im_k) {
  if (!grid) throw ValidationError(kModule, "grid", "missing radial grid");
  if (re_k.size() != grid->size() || im_k.size() != grid->size()) {
    throw ValidationError(kModule, "spectrum", "spectrum length does not match the radial grid");
  }
  PacketSnapshot s;
  s.re_ = grid->inverse(re_k);
  s.im_ = grid->inverse(im_k);
  s.re_k_ = std::move(re_k);
  s.im_k_ = std::move(im_k);
  s.grid_ = std::move(grid);
  s.sigma_ = sigma;
  s.time_ = time;
  return s;
}

double PacketSnapshot::norm() const {
  std::vector<double> d(re_.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = re_[i] * re_[i] + im_[i] * im_[i];
  return 2.0 * kPi * grid_->integrate_r2(d);
}

std::pair<double, double> PacketSnapshot::value_at(double r) const {
  return {grid_->inverse_at(re_k_, r), grid_->inverse_at(im_k_, r)};
}

double PacketSnapshot::scaled_density_at(double r) const {
  const auto [a, b] = value_at(r);
  return std::pow(kPi, 1.5) * sigma_ * sigma_ * sigma_ * 0.5 * (a * a + b * b);
}

double PacketSnapshot::half_height_radius() const {
  const double half = 0.5 * scaled_density_at(0.0);
  const auto r = grid_->r_nodes();
  double lo = 0.0;
  for (double hi : r) {
    if (scaled_density_at(hi) <= half) {
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (scaled_density_at(mid) > half ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    lo = hi;
  }
  return grid_->r_max();
}

PacketSnapshot gaussian_initial(double sigma, std::shared_ptr<const RadialGrid> grid) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError(kModule, "sigma", "packet width must be positive");
  if (!grid) throw ValidationError(kModule, "grid", "missing radial grid");
  if (sigma > grid->r_max() / 6.0) {
    throw ValidationError(kModule, "sigma", "packet width exceeds r_max/6; enlarge the radial grid");
  }
  const double amp = packet_amplitude(sigma);
  const auto r = grid->r_nodes();
  std::vector<double> re(r.size()), im(r.size(), 0.0);
  for (std::size_t i = 0; i < r.size(); ++i) re[i] = amp * std::exp(-r[i] * r[i] / (2.0 * sigma * sigma));
  return PacketSnapshot::from_samples(std::move(grid), sigma, 0.0, std::move(re), std::move(im));
}

PacketSnapshot propagate_radial(const PacketSnapshot& initial, double t) {
  if (!std::isfinite(t)) throw DomainError(kModule, "t", "time must be finite");
  const double n0 = initial.norm();
  if (std::abs(n0 - 1.0) > 1e-6) {
    throw ValidationError(kModule, "initial", "packet is not normalised (norm " + std::to_string(n0) + ")");
  }
  const auto k = initial.grid().k_nodes();
  const auto re_k = initial.re_spectrum();
  const auto im_k = initial.im_spectrum();
  std::vector<double> out_re(k.size()), out_im(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double angle = omega_tau(k[j]) * t;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    out_re[j] = c * re_k[j] + s * im_k[j];
    out_im[j] = -s * re_k[j] + c * im_k[j];
  }
  return PacketSnapshot::from_spectra(initial.grid_ptr(), initial.sigma(), initial.time() + t, std::move(out_re),
                                      std::move(out_im));
}

std::pair<double, double> evolve_gaussian_quadrature(double sigma, double t, double r) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError(kModule, "sigma", "packet width must be positive");
  if (!std::isfinite(t) || !std::isfinite(r)) throw DomainError(kModule, "t", "time and radius must be finite");
  const double pref = packet_amplitude(1.0) * std::sqrt(2.0 / kPi) * std::pow(sigma, 1.5);
  const double k_max = std::sqrt(2.0 * kDecay) / sigma;
  const double s2 = sigma * sigma;
  const double cos_part = integrate_k(
      [&](double k) { return k * k * std::cos(omega_tau(k) * t) * spherical_j0(k * r) * std::exp(-0.5 * k * k * s2); },
      k_max, "chi_re");
  const double sin_part = t == 0.0 ? 0.0
                                   : integrate_k(
                                         [&](double k) {
                                           return k * k * std::sin(omega_tau(k) * t) * spherical_j0(k * r) *
                                                  std::exp(-0.5 * k * k * s2);
                                         },
                                         k_max, "chi_im");
  if (t == 0.0) {
    // Closed form: int k^2 j0(k r) exp(-k^2 s^2/2) dk = sqrt(pi/2) exp(-r^2/2s^2) / s^3.
    const double exact = std::sqrt(kPi / 2.0) * std::exp(-r * r / (2.0 * s2)) / (s2 * sigma);
    if (std::abs(cos_part - exact) > 1e-9 * (std::abs(exact) + 1e-3)) {
      throw ConsistencyError(kModule, "chi_re", "t = 0 quadrature disagrees with the Gaussian closed form");
    }
  }
  return {pref * cos_part, -pref * sin_part};
}

KernelSample kernel_values(double r, double t, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw DomainError(kModule, "eps", "kernels are distributions; a positive Gaussian regulator is required");
  }
  if (!std::isfinite(r) || !std::isfinite(t)) throw DomainError(kModule, "r", "separation and time must be finite");
  const double k_max = std::sqrt(kDecay / eps);
  const double c = 1.0 / (2.0 * kPi * kPi);
  KernelSample out{r, t, eps, 0.0, 0.0};
  out.cos_kernel = c * integrate_k(
                           [&](double k) {
                             return k * k * std::cos(omega_tau(k) * t) * spherical_j0(k * r) * std::exp(-eps * k * k);
                           },
                           k_max, "J_C");
  if (t != 0.0) {
    out.sin_kernel = c * integrate_k(
                             [&](double k) {
                               return k * k * std::sin(omega_tau(k) * t) * spherical_j0(k * r) *
                                      std::exp(-eps * k * k);
                             },
                             k_max, "J_S");
  }
  return out;
}

std::pair<double, double> kernel_packet(double sigma, double t, double r) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError(kModule, "sigma", "packet width must be positive");
  const double a = packet_amplitude(sigma) * sigma * sigma * sigma * std::pow(2.0 * kPi, 1.5);
  const KernelSample j = kernel_values(r, t, 0.5 * sigma * sigma);
  return {a * j.cos_kernel, -a * j.sin_kernel};
}

std::pair<double, double> kernel_convolve_gaussian(double sigma0, double eps, double t, double r) {
  if (!(sigma0 > 0.0)) throw DomainError(kModule, "sigma0", "initial width must be positive");
  if (!(r >= 0.0)) throw DomainError(kModule, "r", "radius must be non-negative");
  const double amp = packet_amplitude(sigma0);
  const double b2 = sigma0 * sigma0;
  // Angular integral of the Gaussian about a shell of radius s, divided by 2 pi:
  //   (1/r) int_{|r-s|}^{r+s} u g(u) du, with the r -> 0 limit 2 s g(s).
  const auto shell = [&](double s) {
    const double x = r * s / b2;
    const double base = amp * b2 * std::exp(-(r * r + s * s) / (2.0 * b2));
    if (x < 1e-8) return base * 2.0 * s / b2;
    if (x < 20.0) return base * 2.0 * std::sinh(x) / r;
    return amp * b2 * (std::exp(-(r - s) * (r - s) / (2.0 * b2)) - std::exp(-(r + s) * (r + s) / (2.0 * b2))) / r;
  };
  const double reach = 9.0 * sigma0;
  const double lo = std::max(0.0, r - reach);
  const double hi = r + reach;
  const double jc = 2.0 * kPi * integrate([&](double s) { return s * kernel_values(s, t, eps).cos_kernel * shell(s); },
                                          lo, hi, "convolution");
  const double js = t == 0.0 ? 0.0
                             : 2.0 * kPi *
                                   integrate([&](double s) { return s * kernel_values(s, t, eps).sin_kernel * shell(s); },
                                             lo, hi, "convolution");
  return {jc, -js};
}

double radial_l2_norm(const RadialGrid& grid, std::span<const double> f) {
  std::vector<double> sq(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) sq[i] = f[i] * f[i];
  return std::sqrt(4.0 * kPi * grid.integrate_r2(sq));
}

double klein_gordon_residual(const PacketSnapshot& before, const PacketSnapshot& now, const PacketSnapshot& after) {
  require_same_grid(before, now);
  require_same_grid(now, after);
  const double dt = now.time() - before.time();
  const double dt2 = after.time() - now.time();
  if (!(dt > 0.0) || std::abs(dt - dt2) > 1e-9 * dt) {
    throw ValidationError(kModule, "history", "snapshots must be equally spaced and increasing in time");
  }
  const RadialGrid& grid = now.grid();
  const auto k = grid.k_nodes();
  std::vector<double> op_k(k.size());
  const auto re_k = now.re_spectrum();
  for (std::size_t j = 0; j < k.size(); ++j) {
    const double w = omega_tau(k[j]);
    op_k[j] = w * w * re_k[j];
  }
  const std::vector<double> op = grid.inverse(op_k);
  std::vector<double> res(op.size());
  const auto a = before.re();
  const auto b = now.re();
  const auto c = after.re();
  for (std::size_t i = 0; i < res.size(); ++i) res[i] = (a[i] - 2.0 * b[i] + c[i]) / (dt * dt) + op[i];
  return radial_l2_norm(grid, res);
}

}  // namespace relamp
