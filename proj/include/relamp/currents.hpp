#pragma once

// Conserved densities and fluxes of probability, energy and momentum for the
// square-root equation on the 1D periodic grid, truncated at series order N.
// Natural units: m = c = hbar = 1, so lambda_bar = tau_C = 1 and the rest
// energy is 1. Fields are the full amplitude psi (rest phase included); its
// time derivative is -i sqrt(1 - Delta) psi.
//
// All inner sums over alpha use cached Delta^m psi and grad Delta^m psi, so a
// bundle at order N costs O(N) transforms and O(N^2) pointwise products.

#include <array>
#include <string>
#include <vector>

#include "relamp/spectral.hpp"

namespace relamp {

using RealField = std::vector<double>;

struct CurrentBundle {
  unsigned order = 0;
  RealField density;           // |psi|^2
  RealField flux;              // j, summed to order N
  RealField energy_density;    // H with the exact operator
  RealField energy_flux;       // j_E, summed to order N
  RealField momentum_density;  // pi
  RealField stress;            // sigma_xx, summed to order N
  /// Largest |Im| discarded from the complex expressions, relative to the
  /// largest |Re| of the same quantity.
  double imag_residue = 0.0;
};

RealField probability_density(const SpectralField& psi);

/// j = sum_{n=1}^{N} j^(n),
/// j^(n) = -i a_n sum_alpha [(D^{alpha-1} psi*)(grad D^{n-alpha} psi) - c.c.].
/// Throws DomainError for N < 1 and ConvergenceError when the band limit is >= 1.
RealField probability_flux(const SpectralField& psi, unsigned order);

/// H = (1/2)[psi* A psi + psi A psi*] with A = sqrt(1 - Delta) (exact symbol).
RealField energy_density(const SpectralField& psi);
/// Same with A replaced by the N-term series.
RealField energy_density(const SpectralField& psi, unsigned order);

/// j_E = sum_n (a_n/2) sum_alpha [(D^{alpha-1} psi*)(grad D^{n-alpha} psidot)
///        - (grad D^{alpha-1} psi*)(D^{n-alpha} psidot) + c.c.].
RealField energy_flux(const SpectralField& psi, const SpectralField& psi_dot, unsigned order);

/// pi = -(i/2)(psi* grad psi - psi grad psi*).
RealField momentum_density(const SpectralField& psi);

/// sigma_xx = -sum_n (a_n/2) sum_alpha [(D^{alpha-1} psi*)(grad D^{n-alpha} grad psi)
///            - (grad D^{alpha-1} psi*)(D^{n-alpha} grad psi) + c.c.].
RealField momentum_flux(const SpectralField& psi, unsigned order);

/// Everything above at one instant; psidot comes from the equation of motion.
CurrentBundle evaluate_currents(const SpectralField& psi, unsigned order);

/// L2 norms (sum f^2 dx)^{1/2} of the local balance laws with a central
/// difference in time over snapshots at t - dt, t, t + dt and N-term fluxes:
///   d|psi|^2/dt + grad j = 0,  dH/dt + grad j_E = 0,  dpi/dt + grad sigma = 0.
/// Throws ValidationError on grid mismatch or dt <= 0.
double continuity_residual(const SpectralField& before, const SpectralField& now, const SpectralField& after,
                           double dt, unsigned order);
double energy_continuity_residual(const SpectralField& before, const SpectralField& now, const SpectralField& after,
                                  double dt, unsigned order);
double momentum_continuity_residual(const SpectralField& before, const SpectralField& now,
                                    const SpectralField& after, double dt, unsigned order);

/// d/dx of a real periodic field, spectrally.
RealField derivative(const Grid1D& grid, const RealField& f);

/// (sum f^2 dx)^{1/2}
double l2_norm(const Grid1D& grid, const RealField& f);

/// sum f dx
double integrate(const Grid1D& grid, const RealField& f);

/// Klein-Gordon density (i/2)(psi* psidot - psi psidot*), for contrast: not
/// positive definite.
RealField kg_density(const SpectralField& psi, const SpectralField& psi_dot);

/// Probability 4-current j_mu = (j, i c rho) at a point.
struct FourCurrent {
  double density = 0.0;
  std::array<double, 3> flux{};
  std::string frame = "lab";

  /// c^2 rho^2 - |j|^2
  double lorentz_norm(double light_speed = 1.0) const;
};

/// Transforms with the complex-orthogonal boost matrix a_{mu nu} along one
/// coordinate axis: j'_mu = a_{mu nu} j_nu. Throws DomainError unless |beta| < 1
/// and axis < 3.
FourCurrent boost_current(const FourCurrent& current, double beta, unsigned axis = 0, double light_speed = 1.0);

}  // namespace relamp
