#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace deltaineff::regularized {

/// Gaussian-smeared contact problem: the contact term is replaced by
/// (sqrt(pi) eps)^{-D} exp(-r^2/eps^2) and the Hamiltonian is projected onto
/// the truncated oscillator basis. The zero-range physics is recovered by
/// taking eps -> 0 in the solved energies, never inside the construction.
struct RegularizedProblem {
  double dimension;
  double coupling;     // finite g (any sign; the matrix itself is always defined)
  double width;        // eps > 0
  std::size_t truncation;

  static RegularizedProblem make(double dimension, double coupling,
                                 double width, std::size_t truncation);
};

struct SymmetricMatrix {
  std::size_t size = 0;
  std::vector<double> data;  // row-major, size x size

  double& at(std::size_t i, std::size_t j) { return data[i * size + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * size + j]; }
};

/// M_ij = (2i + D/2) delta_ij
///        + g S_{D-1} int_0^inf psi_i psi_j (sqrt(pi) eps)^{-D}
///                     exp(-r^2/eps^2) r^{D-1} dr,
/// assembled on a shared tanh-sinh node set whose depth is chosen
/// adaptively on probe integrands; symmetric by construction.
SymmetricMatrix delta_eps_matrix(const RegularizedProblem& problem);

/// eps -> 0 limit of the matrix: diag(2i + D/2) + g v v^T with v_i = psi_i(0).
SymmetricMatrix rank_one_matrix(std::size_t truncation, double dimension,
                                double coupling);

/// `count` smallest eigenvalues by cyclic Jacobi rotations, iterated until the
/// off-diagonal Frobenius norm is <= 1e-12 (or stops decreasing at the
/// round-off floor). Input must be exactly symmetric.
std::vector<double> eigen_lowest(SymmetricMatrix matrix, std::size_t count);

struct StudyRow {
  double width;
  std::size_t truncation;
  double ground_energy;
};

/// Ground energy over (eps, K) pairs. At fixed eps the K -> infinity limit is
/// a finite positive shift (smooth potential); shrinking eps afterwards walks
/// the energy up to the rank-one value, which for D >= 2 drifts back to the
/// unperturbed level as K grows — the order-of-limits story in one table.
std::vector<StudyRow> double_limit_study(double dimension, double coupling,
                                         std::span<const double> widths,
                                         std::span<const std::size_t> truncations);

}  // namespace deltaineff::regularized
