#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "deltaineff/coupling.hpp"
#include "deltaineff/spectral.hpp"

namespace deltaineff::wavefn {

/// Truncated-basis eigenstate
///   psi(r) = sum_k c_k psi_k(r),
///   c_k = psi_k(0)/(E - E_k) / sqrt(sum_i psi_i(0)^2/(E - E_i)^2),
/// so the coefficient vector has unit norm by construction.
struct WaveFunctionExpansion {
  double dimension;
  std::size_t truncation;
  double energy;
  std::vector<double> coeffs;
};

/// Coefficients for a solved level (throws PoleError if the energy sits on an
/// unperturbed level).
WaveFunctionExpansion reconstruct(const spectral::SpectralSolution& solution,
                                  std::size_t truncation, double dimension);

/// sum_k c_k psi_k(r) per grid point.
std::vector<double> evaluate(const WaveFunctionExpansion& expansion,
                             std::span<const double> radii);
double evaluate_at(const WaveFunctionExpansion& expansion, double r);

/// sum_k c_k psi_k(0).
double origin_value(const WaveFunctionExpansion& expansion);

struct OriginRow {
  std::size_t truncation;
  double psi_origin;
};

/// Ground-state origin value per truncation, via the closed form
/// psi(0) = (1/g) / sqrt(sum_i psi_i(0)^2/(E - E_i)^2) that follows from the
/// secular condition (no grid work, so K = 1e6 stays cheap; identically 0 in
/// hard-core mode).
std::vector<OriginRow> origin_trace(double dimension, Coupling coupling,
                                    std::span<const std::size_t> truncations);

/// Fixed grids behind the successive-approximation plot: r in [0,4] with 401
/// uniform points, plus an inset r in [0,0.2] with 201 points for the region
/// of small distances at large K.
std::vector<double> figure_grid();
std::vector<double> figure_inset_grid();

}  // namespace deltaineff::wavefn
