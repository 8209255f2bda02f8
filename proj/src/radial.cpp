#include "relamp/radial.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/legendre.hpp>

#include "relamp/errors.hpp"
#include "relamp/parallel.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "spectral-field";

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

Rule gauss_legendre(std::size_t n) {
  // legendre_p_zeros returns the non-negative zeros in ascending order.
  const auto pos = boost::math::legendre_p_zeros<double>(static_cast<int>(n));
  Rule rule;
  for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
    if (*it != 0.0) rule.x.push_back(-*it);
  }
  for (double z : pos) rule.x.push_back(z);
  for (double z : rule.x) {
    const double dp = boost::math::legendre_p_prime<double>(static_cast<int>(n), z);
    rule.w.push_back(2.0 / ((1.0 - z * z) * dp * dp));
  }
  return rule;
}

void composite(const Rule& rule, double extent, std::size_t panels, std::vector<double>& nodes,
               std::vector<double>& weights) {
  const double h = extent / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double x = mid + 0.5 * h * rule.x[i];
      nodes.push_back(x);
      weights.push_back(0.5 * h * rule.w[i] * x * x);
    }
  }
}

}  // namespace

double spherical_j0(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

double RadialGrid::packet_cutoff(double sigma) {
  // exp(-K^2 sigma^2/2) = 1e-16  ->  K sigma = sqrt(32 ln 10)
  return std::sqrt(32.0 * std::numbers::ln10) * 1.0001 / sigma;
}

RadialGrid RadialGrid::make(double r_max, double k_max, std::size_t panels, std::size_t order) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError(kModule, "r_max", "must be positive");
  if (!(k_max > 0.0) || !std::isfinite(k_max)) throw ValidationError(kModule, "k_max", "must be positive");
  if (panels == 0) throw ValidationError(kModule, "panels", "need at least one panel");
  if (order < 2 || order > 64) {
    throw ValidationError(kModule, "order", "panel order must lie in [2, 64], got " + std::to_string(order));
  }
  RadialGrid g;
  g.r_max_ = r_max;
  g.k_max_ = k_max;
  g.panels_ = panels;
  g.order_ = order;
  const Rule rule = gauss_legendre(order);
  composite(rule, r_max, panels, g.r_, g.wr_);
  composite(rule, k_max, panels, g.k_, g.wk_);

  const std::size_t n = g.r_.size();
  g.kernel_.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double c = std::sqrt(2.0 / std::numbers::pi);
  parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i < n; ++i) {
      g.kernel_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = c * spherical_j0(g.k_[j] * g.r_[i]);
    }
  });
  return g;
}

std::vector<double> RadialGrid::forward(std::span<const double> f) const {
  if (f.size() != size()) throw ValidationError(kModule, "samples", "length does not match radial grid");
  Eigen::VectorXd v(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) v[static_cast<Eigen::Index>(i)] = wr_[i] * f[i];
  const Eigen::VectorXd out = kernel_ * v;
  return {out.data(), out.data() + out.size()};
}

std::vector<double> RadialGrid::inverse(std::span<const double> g) const {
  if (g.size() != size()) throw ValidationError(kModule, "spectrum", "length does not match radial grid");
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t j = 0; j < g.size(); ++j) v[static_cast<Eigen::Index>(j)] = wk_[j] * g[j];
  const Eigen::VectorXd out = kernel_.transpose() * v;
  return {out.data(), out.data() + out.size()};
}

double RadialGrid::inverse_at(std::span<const double> g, double r) const {
  if (g.size() != size()) throw ValidationError(kModule, "spectrum", "length does not match radial grid");
  double s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += wk_[j] * spherical_j0(k_[j] * r) * g[j];
  return std::sqrt(2.0 / std::numbers::pi) * s;
}

double RadialGrid::integrate_r2(std::span<const double> f) const {
  if (f.size() != size()) throw ValidationError(kModule, "samples", "length does not match radial grid");
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += wr_[i] * f[i];
  return s;
}

}  // namespace relamp
