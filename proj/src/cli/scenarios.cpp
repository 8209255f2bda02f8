#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "relamp/cli.hpp"
#include "relamp/currents.hpp"
#include "relamp/errors.hpp"
#include "relamp/free_evolution.hpp"
#include "relamp/oscillator.hpp"
#include "relamp/physics.hpp"
#include "relamp/radial.hpp"
#include "relamp/spectral.hpp"

namespace relamp::cli {

using nlohmann::json;

namespace {

PhysicalScales scales_for(const ScenarioConfig& c) {
  return c.units == "electron" ? PhysicalScales::electron_si() : PhysicalScales::natural();
}

json scales_json(const ScenarioConfig& c) {
  const PhysicalScales s = scales_for(c);
  return {{"units", c.units},
          {"mass", s.mass()},
          {"light_speed", s.light_speed()},
          {"hbar", s.hbar()},
          {"compton_length", s.compton_length()},
          {"compton_time", s.compton_time()}};
}

RunResult spread(const ScenarioConfig& c) {
  auto grid = std::make_shared<const RadialGrid>(
      RadialGrid::make(c.r_max, RadialGrid::packet_cutoff(c.sigma), c.panels, c.panel_order));
  const PacketSnapshot initial = gaussian_initial(c.sigma, grid);

  std::vector<PacketSnapshot> snaps;
  for (double t : c.times) snaps.push_back(t == 0.0 ? initial : propagate_radial(initial, t));

  ResultTable table{"spread", {{"r", "lambda_bar"}}, {}};
  for (double t : c.times) table.columns.push_back({"|psi|^2 tau=" + format_number(t), "|psi(0,0)|^2"});
  for (unsigned i = 0; i < c.r_points; ++i) {
    const double r = c.r_out * i / (c.r_points - 1);
    std::vector<double> row{r};
    for (const auto& s : snaps) row.push_back(s.scaled_density_at(r));
    table.rows.push_back(std::move(row));
  }

  json per_time = json::array();
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    per_time.push_back({{"tau", c.times[i]},
                        {"central_density", snaps[i].scaled_density_at(0.0)},
                        {"norm", snaps[i].norm()},
                        {"half_height_radius", snaps[i].half_height_radius()}});
  }
  RunResult out;
  out.tables.push_back(std::move(table));
  out.summary = {{"snapshots", per_time}, {"radial_nodes", grid->size()}, {"k_max", grid->k_max()}};
  return out;
}

RunResult dispersion_table(const ScenarioConfig& c) {
  const PhysicalScales nat = PhysicalScales::natural();
  ResultTable table{"dispersion",
                    {{"lambda_bar*k", "1"},
                     {"omega*tau_C", "1"},
                     {"omega_nonrel*tau_C", "1"},
                     {"v_g/c", "1"},
                     {"v_nonrel/c", "1"}},
                    {}};
  double max_vg = 0.0;
  bool monotone = true;
  double prev = -1.0;
  for (unsigned i = 0; i < c.k_points; ++i) {
    const double k = c.k_min + (c.k_max - c.k_min) * i / (c.k_points - 1);
    const DispersionSample d = dispersion(k, nat);
    table.rows.push_back(
        {k, d.omega, nonrel_dispersion(k, nat), d.group_velocity, nonrel_group_velocity(k, nat)});
    max_vg = std::max(max_vg, d.group_velocity);
    monotone = monotone && d.group_velocity > prev;
    prev = d.group_velocity;
  }
  RunResult out;
  out.tables.push_back(std::move(table));
  out.summary = {{"max_group_velocity", max_vg},
                 {"group_velocity_monotone", monotone},
                 {"subluminal", max_vg < 1.0}};
  return out;
}

RunResult currents_check(const ScenarioConfig& c) {
  const Grid1D grid = Grid1D::centred(c.length, c.points);
  const SpectralField psi = gaussian_mode(grid, c.carrier, c.width);

  ResultTable orders{"currents_orders",
                     {{"N", "1"}, {"probability residual", "1/tau_C"}, {"energy residual", "mc^2/tau_C"},
                      {"momentum residual", "mc/tau_C"}},
                     {}};
  {
    const SpectralField before = propagate_exact(psi, -c.sweep_dt);
    const SpectralField after = propagate_exact(psi, c.sweep_dt);
    for (unsigned n : c.orders) {
      orders.rows.push_back({double(n), continuity_residual(before, psi, after, c.sweep_dt, n),
                             energy_continuity_residual(before, psi, after, c.sweep_dt, n),
                             momentum_continuity_residual(before, psi, after, c.sweep_dt, n)});
    }
  }

  ResultTable steps{"currents_dt",
                    {{"dt", "tau_C"}, {"probability residual", "1/tau_C"}, {"energy residual", "mc^2/tau_C"},
                     {"momentum residual", "mc/tau_C"}},
                    {}};
  for (double dt : c.dts) {
    const SpectralField before = propagate_exact(psi, -dt);
    const SpectralField after = propagate_exact(psi, dt);
    steps.rows.push_back({dt, continuity_residual(before, psi, after, dt, c.sweep_order),
                          energy_continuity_residual(before, psi, after, dt, c.sweep_order),
                          momentum_continuity_residual(before, psi, after, dt, c.sweep_order)});
  }

  ResultTable conservation{"conservation",
                           {{"t", "tau_C"}, {"integral |psi|^2", "1"}, {"integral H", "mc^2"},
                            {"integral pi", "mc"}},
                           {}};
  constexpr unsigned kSamples = 11;
  double drift = 0.0;
  std::vector<double> first;
  for (unsigned i = 0; i < kSamples; ++i) {
    const double t = c.horizon * i / (kSamples - 1);
    const SpectralField state = propagate_exact(psi, t);
    const std::vector<double> row{t, integrate(grid, probability_density(state)),
                                  integrate(grid, energy_density(state)), integrate(grid, momentum_density(state))};
    if (first.empty()) first = row;
    for (std::size_t q = 1; q < row.size(); ++q) {
      drift = std::max(drift, std::abs(row[q] - first[q]) / std::abs(first[q]));
    }
    conservation.rows.push_back(row);
  }

  // Square-root series on a random band-limited field.
  const SpectralField noise = random_band_limited(grid, c.band, c.seed);
  const SpectralField exact = apply_sqrt_exact(noise);
  ResultTable series{"series",
                     {{"N", "1"}, {"deviation", "1"}, {"worst mode error/bound", "1"}},
                     {}};
  constexpr unsigned kMaxOrder = 12;
  const auto a = series_coeffs_a_double(kMaxOrder + 1);
  for (unsigned n = 1; n <= kMaxOrder; ++n) {
    const SpectralField approx = apply_sqrt_series(noise, n);
    const auto se = exact.spectrum();
    const auto sa = approx.spectrum();
    const auto s0 = noise.spectrum();
    double dev = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < se.size(); ++j) {
      dev += std::norm(sa[j] - se[j]) * grid.mode_spacing();
      if (s0[j] == Complex(0.0)) continue;
      const double x = std::abs(grid.wavenumber(j));
      const double bound = a[n + 1] * std::pow(x, 2.0 * (n + 1)) +
                           4.0 * std::numeric_limits<double>::epsilon() * std::hypot(1.0, x);
      worst = std::max(worst, std::abs(sa[j] - se[j]) / std::abs(s0[j]) / bound);
    }
    series.rows.push_back({double(n), std::sqrt(dev), worst});
  }

  RunResult out;
  out.summary = {{"band_limit", psi.band_limit()},
                 {"series_band_limit", noise.band_limit()},
                 {"max_relative_drift", drift},
                 {"imag_residue", evaluate_currents(psi, c.sweep_order).imag_residue}};
  out.tables = {std::move(orders), std::move(steps), std::move(conservation), std::move(series)};
  return out;
}

RunResult oscillator(const ScenarioConfig& c) {
  OscillatorConfig oc{c.gamma, c.basis, c.quadrature_order};
  const auto report = oscillator_report(oc, c.levels);

  ResultTable table{"oscillator",
                    {{"n", "1"},
                     {"eps0", "hbar*omega/2"},
                     {"published correction", "hbar*omega/2"},
                     {"oracle correction", "hbar*omega/2"},
                     {"diag eigenvalue", "hbar*omega/2"},
                     {"diag shift", "hbar*omega/2"},
                     {"published vs oracle", "1"},
                     {"E published", "hbar*omega"}},
                    {}};
  json levels = json::array();
  for (const auto& r : report) {
    table.rows.push_back({double(r.level), r.unperturbed, r.published_correction, r.oracle_correction,
                          r.diag_eigenvalue, r.diag_shift, r.published_vs_oracle,
                          published_level_energy(r.level, c.gamma)});
    levels.push_back({{"n", r.level},
                      {"eps0", r.unperturbed},
                      {"published", r.published_correction},
                      {"oracle", r.oracle_correction},
                      {"diag", r.diag_eigenvalue},
                      {"diag_shift", r.diag_shift},
                      {"published_vs_oracle", r.published_vs_oracle}});
  }

  // Least-squares line through the level gaps (units hbar omega): gap = A - B n.
  json fit = nullptr;
  if (report.size() >= 3 && c.gamma > 0.0) {
    const std::size_t m = report.size() - 1;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t n = 0; n < m; ++n) {
      const double gap = 0.5 * (report[n + 1].diag_eigenvalue - report[n].diag_eigenvalue);
      sx += n;
      sy += gap;
      sxx += double(n) * n;
      sxy += n * gap;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / m;
    fit = {{"A", intercept}, {"B", -slope}, {"B_over_gamma", -slope / c.gamma}, {"oracle_B_over_gamma", 1.5}};
  }

  RunResult out;
  out.tables.push_back(std::move(table));
  out.summary = {{"gamma", c.gamma}, {"levels", levels}, {"gap_fit", fit}};
  return out;
}

RunResult boost(const ScenarioConfig& c) {
  const PhysicalScales s = scales_for(c);
  FourCurrent base;
  base.density = c.rho;
  std::copy(c.flux.begin(), c.flux.end(), base.flux.begin());
  const double norm0 = base.lorentz_norm(s.light_speed());

  ResultTable table{"boost",
                    {{"beta", "1"}, {"rho'", "rho"}, {"j'_x", "rho*c"}, {"j'_y", "rho*c"}, {"j'_z", "rho*c"},
                     {"norm'", "rho^2*c^2"}, {"norm change", "1"}, {"round trip error", "1"}},
                    {}};
  for (double beta : c.betas) {
    const FourCurrent there = boost_current(base, beta, c.axis, s.light_speed());
    const FourCurrent back = boost_current(there, -beta, c.axis, s.light_speed());
    double trip = std::abs(back.density - base.density);
    for (int q = 0; q < 3; ++q) trip = std::max(trip, std::abs(back.flux[q] - base.flux[q]));
    const double n1 = there.lorentz_norm(s.light_speed());
    table.rows.push_back({beta, there.density, there.flux[0], there.flux[1], there.flux[2], n1,
                          std::abs(n1 - norm0) / std::max(std::abs(norm0), 1e-300), trip});
  }
  RunResult out;
  out.tables.push_back(std::move(table));
  out.summary = {{"rest_norm", norm0}};
  return out;
}

}  // namespace

RunResult run_scenario(const ScenarioConfig& config) {
  RunResult result;
  if (config.scenario == "spread") {
    result = spread(config);
  } else if (config.scenario == "dispersion") {
    result = dispersion_table(config);
  } else if (config.scenario == "currents-check") {
    result = currents_check(config);
  } else if (config.scenario == "oscillator") {
    result = oscillator(config);
  } else if (config.scenario == "boost") {
    result = boost(config);
  } else {
    throw ValidationError("cli", "scenario", "unknown scenario '" + config.scenario + "'");
  }
  for (const auto& t : result.tables) t.check();
  result.summary["scales"] = scales_json(config);
  result.summary["config"] = config.normalized();
  result.summary["config_hash"] = config.hash();
  return result;
}

}  // namespace relamp::cli
