#include "relamp/currents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relamp/errors.hpp"
#include "relamp/physics.hpp"

namespace relamp {

namespace {

constexpr const char* kModule = "currents";

using Samples = std::vector<Complex>;

// lap[m] = Delta^m psi, grad[m] = grad Delta^m psi, sampled, m = 0..top.
struct Tower {
  std::vector<Samples> lap;
  std::vector<Samples> grad;
};

Tower build_tower(const SpectralField& psi, unsigned top) {
  const SpectralField f = to_spectrum(psi);
  const Grid1D& grid = f.grid();
  const auto spec = f.spectrum();
  Tower t;
  std::vector<Complex> cur(spec.begin(), spec.end());
  for (unsigned m = 0; m <= top; ++m) {
    if (m > 0) {
      for (std::size_t j = 0; j < cur.size(); ++j) {
        const double k = grid.wavenumber(j);
        cur[j] *= -k * k;
      }
    }
    const SpectralField lap = SpectralField::from_spectrum(grid, cur);
    t.lap.emplace_back(lap.samples().begin(), lap.samples().end());
    std::vector<Complex> g(cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j) {
      g[j] = grid.is_nyquist(j) ? Complex(0.0) : cur[j] * Complex(0.0, grid.wavenumber(j));
    }
    const SpectralField grad = SpectralField::from_spectrum(grid, std::move(g));
    t.grad.emplace_back(grad.samples().begin(), grad.samples().end());
  }
  return t;
}

void require_order(unsigned order) {
  if (order < 1) throw DomainError(kModule, "N", "truncation order must be >= 1");
}

void require_band(const SpectralField& psi) {
  const double limit = to_spectrum(psi).band_limit();
  if (limit >= 1.0) {
    std::ostringstream msg;
    msg << "operator series diverges: band limit lambda_bar*k_eff = " << limit << " is not below 1";
    throw ConvergenceError(kModule, "band_limit", msg.str());
  }
}

RealField take_real(const Samples& v, double* residue) {
  RealField out(v.size());
  double max_re = 0.0;
  double max_im = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].real();
    max_re = std::max(max_re, std::abs(v[i].real()));
    max_im = std::max(max_im, std::abs(v[i].imag()));
  }
  if (residue != nullptr && max_re > 0.0) *residue = std::max(*residue, max_im / max_re);
  return out;
}

RealField flux_impl(const Tower& t, unsigned order, const std::vector<double>& a, double* residue) {
  const std::size_t n_pts = t.lap[0].size();
  Samples acc(n_pts, Complex(0.0));
  for (unsigned n = 1; n <= order; ++n) {
    const Complex c(0.0, -a[n]);
    for (unsigned alpha = 1; alpha <= n; ++alpha) {
      const Samples& d = t.lap[alpha - 1];
      const Samples& g = t.grad[n - alpha];
      for (std::size_t i = 0; i < n_pts; ++i) {
        acc[i] += c * (std::conj(d[i]) * g[i] - d[i] * std::conj(g[i]));
      }
    }
  }
  return take_real(acc, residue);
}

RealField energy_flux_impl(const Tower& t, const Tower& td, unsigned order, const std::vector<double>& a,
                           double* residue) {
  const std::size_t n_pts = t.lap[0].size();
  Samples acc(n_pts, Complex(0.0));
  for (unsigned n = 1; n <= order; ++n) {
    const double c = 0.5 * a[n];
    for (unsigned alpha = 1; alpha <= n; ++alpha) {
      const Samples& d = t.lap[alpha - 1];
      const Samples& g = t.grad[alpha - 1];
      const Samples& dd = td.lap[n - alpha];
      const Samples& gd = td.grad[n - alpha];
      for (std::size_t i = 0; i < n_pts; ++i) {
        acc[i] += c * (std::conj(d[i]) * gd[i] - std::conj(g[i]) * dd[i] + d[i] * std::conj(gd[i]) -
                       g[i] * std::conj(dd[i]));
      }
    }
  }
  return take_real(acc, residue);
}

RealField stress_impl(const Tower& t, unsigned order, const std::vector<double>& a, double* residue) {
  // In 1D, grad Delta^m grad psi = Delta^{m+1} psi.
  const std::size_t n_pts = t.lap[0].size();
  Samples acc(n_pts, Complex(0.0));
  for (unsigned n = 1; n <= order; ++n) {
    const double c = -0.5 * a[n];
    for (unsigned alpha = 1; alpha <= n; ++alpha) {
      const Samples& d = t.lap[alpha - 1];
      const Samples& g = t.grad[alpha - 1];
      const Samples& dd = t.lap[n - alpha + 1];
      const Samples& gd = t.grad[n - alpha];
      for (std::size_t i = 0; i < n_pts; ++i) {
        acc[i] += c * (std::conj(d[i]) * dd[i] - std::conj(g[i]) * gd[i] + d[i] * std::conj(dd[i]) -
                       g[i] * std::conj(gd[i]));
      }
    }
  }
  return take_real(acc, residue);
}

RealField energy_density_with(const SpectralField& psi, const SpectralField& a_psi, double* residue) {
  const auto p = psi.samples();
  const auto q = a_psi.samples();
  Samples h(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) h[i] = 0.5 * (std::conj(p[i]) * q[i] + p[i] * std::conj(q[i]));
  return take_real(h, residue);
}

void require_triplet(const SpectralField& before, const SpectralField& now, const SpectralField& after, double dt) {
  if (!(before.grid() == now.grid()) || !(now.grid() == after.grid())) {
    throw ValidationError(kModule, "grid", "snapshots live on different grids");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError(kModule, "dt", "time step must be positive");
}

RealField balance(const Grid1D& grid, const RealField& before, const RealField& after, const RealField& flux,
                  double dt) {
  RealField div = derivative(grid, flux);
  for (std::size_t i = 0; i < div.size(); ++i) div[i] += (after[i] - before[i]) / (2.0 * dt);
  return div;
}

}  // namespace

RealField probability_density(const SpectralField& psi) {
  RealField out(psi.samples().size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::norm(psi.samples()[i]);
  return out;
}

RealField probability_flux(const SpectralField& psi, unsigned order) {
  require_order(order);
  require_band(psi);
  return flux_impl(build_tower(psi, order - 1), order, series_coeffs_a_double(order), nullptr);
}

RealField energy_density(const SpectralField& psi) { return energy_density_with(psi, apply_sqrt_exact(psi), nullptr); }

RealField energy_density(const SpectralField& psi, unsigned order) {
  return energy_density_with(psi, apply_sqrt_series(psi, order), nullptr);
}

RealField energy_flux(const SpectralField& psi, const SpectralField& psi_dot, unsigned order) {
  require_order(order);
  require_band(psi);
  if (!(psi.grid() == psi_dot.grid())) throw ValidationError(kModule, "psi_dot", "grid differs from psi");
  return energy_flux_impl(build_tower(psi, order - 1), build_tower(psi_dot, order - 1), order,
                          series_coeffs_a_double(order), nullptr);
}

RealField momentum_density(const SpectralField& psi) {
  const auto p = psi.samples();
  const SpectralField g = gradient(psi);
  const auto q = g.samples();
  RealField out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = (Complex(0.0, -0.5) * (std::conj(p[i]) * q[i] - p[i] * std::conj(q[i]))).real();
  }
  return out;
}

RealField momentum_flux(const SpectralField& psi, unsigned order) {
  require_order(order);
  require_band(psi);
  return stress_impl(build_tower(psi, order), order, series_coeffs_a_double(order), nullptr);
}

CurrentBundle evaluate_currents(const SpectralField& psi, unsigned order) {
  require_order(order);
  require_band(psi);
  const auto a = series_coeffs_a_double(order);
  const SpectralField f = to_spectrum(psi);
  const Tower t = build_tower(f, order);
  const Tower td = build_tower(time_derivative(f), order - 1);
  CurrentBundle b;
  b.order = order;
  b.density = probability_density(f);
  b.flux = flux_impl(t, order, a, &b.imag_residue);
  b.energy_density = energy_density_with(f, apply_sqrt_exact(f), &b.imag_residue);
  b.energy_flux = energy_flux_impl(t, td, order, a, &b.imag_residue);
  b.momentum_density = momentum_density(f);
  b.stress = stress_impl(t, order, a, &b.imag_residue);
  return b;
}

double continuity_residual(const SpectralField& before, const SpectralField& now, const SpectralField& after,
                           double dt, unsigned order) {
  require_triplet(before, now, after, dt);
  const Grid1D& grid = now.grid();
  return l2_norm(grid, balance(grid, probability_density(before), probability_density(after),
                               probability_flux(now, order), dt));
}

double energy_continuity_residual(const SpectralField& before, const SpectralField& now, const SpectralField& after,
                                  double dt, unsigned order) {
  require_triplet(before, now, after, dt);
  const Grid1D& grid = now.grid();
  return l2_norm(grid, balance(grid, energy_density(before), energy_density(after),
                               energy_flux(now, time_derivative(now), order), dt));
}

double momentum_continuity_residual(const SpectralField& before, const SpectralField& now,
                                    const SpectralField& after, double dt, unsigned order) {
  require_triplet(before, now, after, dt);
  const Grid1D& grid = now.grid();
  return l2_norm(grid, balance(grid, momentum_density(before), momentum_density(after), momentum_flux(now, order), dt));
}

RealField derivative(const Grid1D& grid, const RealField& f) {
  if (f.size() != grid.size()) throw ValidationError(kModule, "field", "length does not match grid");
  std::vector<Complex> c(f.begin(), f.end());
  const SpectralField g = gradient(SpectralField::from_samples(grid, std::move(c)));
  RealField out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = g.samples()[i].real();
  return out;
}

double l2_norm(const Grid1D& grid, const RealField& f) {
  double s = 0.0;
  for (double v : f) s += v * v;
  return std::sqrt(s * grid.spacing());
}

double integrate(const Grid1D& grid, const RealField& f) {
  double s = 0.0;
  for (double v : f) s += v;
  return s * grid.spacing();
}

RealField kg_density(const SpectralField& psi, const SpectralField& psi_dot) {
  if (!(psi.grid() == psi_dot.grid())) throw ValidationError(kModule, "psi_dot", "grid differs from psi");
  const auto p = psi.samples();
  const auto q = psi_dot.samples();
  RealField out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = (Complex(0.0, 0.5) * (std::conj(p[i]) * q[i] - p[i] * std::conj(q[i]))).real();
  }
  return out;
}

double FourCurrent::lorentz_norm(double light_speed) const {
  const double c2r2 = light_speed * light_speed * density * density;
  return c2r2 - (flux[0] * flux[0] + flux[1] * flux[1] + flux[2] * flux[2]);
}

FourCurrent boost_current(const FourCurrent& current, double beta, unsigned axis, double light_speed) {
  if (!(std::abs(beta) < 1.0)) throw DomainError(kModule, "beta", "boost velocity must satisfy |beta| < 1");
  if (axis > 2) throw DomainError(kModule, "axis", "boost axis must be 0, 1 or 2");
  if (!(light_speed > 0.0)) throw DomainError(kModule, "light_speed", "must be positive");
  const double gamma = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  // a_{mu nu} with index 3 standing for x_4 = i c t; a_{mu nu} a_{mu nu'} = delta_{nu nu'}.
  std::array<std::array<Complex, 4>, 4> a{};
  for (unsigned i = 0; i < 4; ++i) a[i][i] = 1.0;
  a[axis][axis] = gamma;
  a[3][3] = gamma;
  a[axis][3] = Complex(0.0, beta * gamma);
  a[3][axis] = Complex(0.0, -beta * gamma);

  const std::array<Complex, 4> j{current.flux[0], current.flux[1], current.flux[2],
                                 Complex(0.0, light_speed * current.density)};
  std::array<Complex, 4> out{};
  for (unsigned mu = 0; mu < 4; ++mu) {
    for (unsigned nu = 0; nu < 4; ++nu) out[mu] += a[mu][nu] * j[nu];
  }
  FourCurrent r;
  r.flux = {out[0].real(), out[1].real(), out[2].real()};
  r.density = out[3].imag() / light_speed;
  std::ostringstream tag;
  tag << current.frame << "|boost(axis=" << axis << ",beta=" << beta << ")";
  r.frame = tag.str();
  return r;
}

}  // namespace relamp
