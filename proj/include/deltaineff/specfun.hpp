#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deltaineff::specfun {

// s-wave oscillator basis in D dimensions (unit mass and frequency, energies
// in units of hbar*omega). Basis states are indexed by the radial quantum
// number k = 0, 1, ...; the unperturbed levels are E_k = 2k + D/2. D may be
// any real >= 1: every closed form below is analytic in D.

/// Unperturbed level 2k + D/2.
double level_energy(std::size_t k, double dimension);

/// ln Gamma(x) for x > 0; relative accuracy ~1e-15 (throws on x <= 0).
double log_gamma(double x);

/// Gamma(k + D/2) / Gamma(k + 1) by the ratio recurrence
/// ratio_{k+1} = ratio_k (k + D/2)/(k + 1) from ratio_0 = Gamma(D/2).
/// The recurrence never forms the two huge gammas separately, so it neither
/// overflows nor cancels for k up to 1e7 at moderate D.
double weight_ratio(std::size_t k, double dimension);

/// |psi_k(0)|^2 = weight_ratio(k, D) / (pi^{D/2} Gamma(D/2)).
double psi0_sq(std::size_t k, double dimension);

/// psi_k(0) (positive square root of psi0_sq).
double psi0(std::size_t k, double dimension);

/// All |psi_k(0)|^2 for k = 0..K in one recurrence pass.
std::vector<double> psi0_sq_sequence(std::size_t k_max, double dimension);

/// Normalized radial eigenfunction
///   psi_k(r) = N_k L_k^{(D/2-1)}(r^2) exp(-r^2/2).
///
/// The normalization N_k is fixed by int |psi_k|^2 dV = 1 over the
/// D-dimensional measure S_{D-1} r^{D-1} dr with S_{D-1} = 2 pi^{D/2}/Gamma(D/2).
/// Substituting t = r^2 gives int_0^inf [L_k^{(a)}(t)]^2 e^{-t} t^a dt
/// = Gamma(k + a + 1)/k! with a = D/2 - 1, hence
///   N_k^2 = 2 Gamma(k+1) / (S_{D-1} Gamma(k + D/2))
///         = Gamma(D/2) Gamma(k+1) / (pi^{D/2} Gamma(k + D/2)).
/// With L_k^{(a)}(0) = Gamma(k + D/2)/(Gamma(k+1) Gamma(D/2)) this makes
/// psi_k(0)^2 equal psi0_sq(k, D) identically, which ties the basis
/// normalization to the secular-sum weights.
double radial_eigenfunction(std::size_t k, double dimension, double r);

/// psi_k(r) for every k = 0..k_max at one radius, via the simultaneous
/// three-term Laguerre recurrence (O(k_max) total).
void basis_row(std::size_t k_max, double dimension, double r,
               std::span<double> out);
std::vector<double> basis_row(std::size_t k_max, double dimension, double r);

}  // namespace deltaineff::specfun
