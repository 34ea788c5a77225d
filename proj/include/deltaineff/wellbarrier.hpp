#pragma once

#include <span>
#include <vector>

#include "deltaineff/coupling.hpp"

namespace deltaineff::wellbarrier {

/// Exactly solvable D=3 companion model: an infinite spherical well of radius
/// R whose center carries a constant repulsive barrier of radius eps and
/// height 3g/(4 pi eps^3) (a finite-radius stand-in for the contact term).
/// Everything is phrased for u(r) = r psi(r), which turns the s-wave problem
/// into 1-D matching with u(0) = u(R) = 0.
struct WellModel {
  double radius;          // R > 0
  double barrier_radius;  // 0 < eps < R
  Coupling coupling;      // g >= 0 or hard core

  static WellModel make(double radius, double barrier_radius,
                        Coupling coupling);

  double barrier_height() const;  // 3g/(4 pi eps^3)
};

struct WellSolution {
  double wave_number;         // k, with E = k^2
  double energy;
  double residual;            // normalized log-derivative mismatch at r = eps
  double interior_amplitude;  // c of u_in = c sinh(lambda r) (or sin for the
                              // oscillatory interior)
  double interior_lambda_sq;  // barrier_height - k^2 at the solution
  bool sinh_interior;         // true when the interior is under the barrier
};

/// Ground state: k solves lambda coth(lambda eps) = -k cot(k (R - eps)) by
/// bisection on (pi/R, pi/(R-eps)). The interior log-derivative is evaluated
/// as an analytic function of lambda^2, so the solver passes smoothly through
/// the barrier-height = k^2 crossover (weak coupling); it only refuses when a
/// node would enter the barrier region itself.
WellSolution solve_well(const WellModel& model);

struct ExpansionRow {
  double barrier_radius;
  double energy;
  double predicted_deficit;  // -2 sqrt(4 pi eps/(3 g)) eps / R
  double ratio;              // (E (R-eps)^2/pi^2 - 1) / predicted_deficit
};

/// Small-eps energy law check: the measured relative deficit against the
/// leading-order prediction, per barrier radius (finite g only).
std::vector<ExpansionRow> expansion_check(double radius, double coupling,
                                          std::span<const double> barrier_radii);

struct OriginRow {
  double barrier_radius;
  double psi_origin;       // c lambda = interior value at r -> 0
  double predicted;        // (2 pi / R) exp(-sqrt(3 g/(4 pi eps)))
};

/// Exponential suppression of the wave function at the origin as the barrier
/// narrows (finite g only; computed in log form, stable for lambda*eps ~ 1e3).
std::vector<OriginRow> origin_suppression(double radius, double coupling,
                                          std::span<const double> barrier_radii);

}  // namespace deltaineff::wellbarrier
