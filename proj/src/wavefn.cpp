#include "deltaineff/wavefn.hpp"

#include <cmath>

#include "deltaineff/accumulate.hpp"
#include "deltaineff/errors.hpp"
#include "deltaineff/specfun.hpp"

namespace deltaineff::wavefn {

WaveFunctionExpansion reconstruct(const spectral::SpectralSolution& solution,
                                  std::size_t truncation, double dimension) {
  const double delta = solution.energy - 0.5 * dimension;
  WaveFunctionExpansion w;
  w.dimension = dimension;
  w.truncation = truncation;
  w.energy = solution.energy;
  w.coeffs.resize(truncation + 1);

  const std::vector<double> wsq =
      specfun::psi0_sq_sequence(truncation, dimension);
  CompensatedSum norm_sq;
  for (std::size_t k = truncation + 1; k-- > 0;) {
    const double denom = delta - 2.0 * static_cast<double>(k);
    if (denom == 0.0)
      throw PoleError("expansion energy coincides with an unperturbed level");
    w.coeffs[k] = std::sqrt(wsq[k]) / denom;
    norm_sq.add(wsq[k] / (denom * denom));
  }
  const double inv_norm = 1.0 / std::sqrt(norm_sq.value());
  for (double& c : w.coeffs) c *= inv_norm;
  return w;
}

double evaluate_at(const WaveFunctionExpansion& expansion, double r) {
  const std::vector<double> row =
      specfun::basis_row(expansion.truncation, expansion.dimension, r);
  CompensatedSum acc;
  for (std::size_t k = 0; k < row.size(); ++k)
    acc.add(expansion.coeffs[k] * row[k]);
  return acc.value();
}

std::vector<double> evaluate(const WaveFunctionExpansion& expansion,
                             std::span<const double> radii) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (double r : radii) out.push_back(evaluate_at(expansion, r));
  return out;
}

double origin_value(const WaveFunctionExpansion& expansion) {
  CompensatedSum acc;
  for (std::size_t k = 0; k < expansion.coeffs.size(); ++k)
    acc.add(expansion.coeffs[k] * specfun::psi0(k, expansion.dimension));
  return acc.value();
}

std::vector<OriginRow> origin_trace(double dimension, Coupling coupling,
                                    std::span<const std::size_t> truncations) {
  std::vector<OriginRow> rows;
  rows.reserve(truncations.size());
  for (std::size_t K : truncations) {
    const auto problem =
        spectral::SpectralProblem::make(dimension, coupling, K, 0);
    spectral::SecularSeries series(K, dimension);
    const spectral::SpectralSolution sol = solve_shift(problem, series);
    const double s2 = series.second_moment(sol.shift);
    rows.push_back({K, coupling.inverse() / std::sqrt(s2)});
  }
  return rows;
}

std::vector<double> figure_grid() {
  std::vector<double> r(401);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = 4.0 * static_cast<double>(i) / 400.0;
  return r;
}

std::vector<double> figure_inset_grid() {
  std::vector<double> r(201);
  for (std::size_t i = 0; i < r.size(); ++i)
    r[i] = 0.2 * static_cast<double>(i) / 200.0;
  return r;
}

}  // namespace deltaineff::wavefn
