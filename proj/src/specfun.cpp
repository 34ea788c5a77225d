#include "deltaineff/specfun.hpp"

#include <cmath>
#include <numbers>

#include "deltaineff/errors.hpp"

namespace deltaineff::specfun {

namespace {

void check_dimension(double dimension) {
  if (!(dimension >= 1.0))
    throw ConfigError("dimension must be >= 1");
}

}  // namespace

double level_energy(std::size_t k, double dimension) {
  return 2.0 * static_cast<double>(k) + 0.5 * dimension;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw ConfigError("log_gamma requires x > 0");
  return std::lgamma(x);
}

double weight_ratio(std::size_t k, double dimension) {
  check_dimension(dimension);
  double ratio = std::tgamma(0.5 * dimension);
  for (std::size_t j = 0; j < k; ++j) {
    const double dj = static_cast<double>(j);
    ratio *= (dj + 0.5 * dimension) / (dj + 1.0);
  }
  return ratio;
}

double psi0_sq(std::size_t k, double dimension) {
  check_dimension(dimension);
  const double pref =
      1.0 / (std::pow(std::numbers::pi, 0.5 * dimension) * std::tgamma(0.5 * dimension));
  return pref * weight_ratio(k, dimension);
}

double psi0(std::size_t k, double dimension) {
  return std::sqrt(psi0_sq(k, dimension));
}

std::vector<double> psi0_sq_sequence(std::size_t k_max, double dimension) {
  check_dimension(dimension);
  std::vector<double> w(k_max + 1);
  const double pref =
      1.0 / (std::pow(std::numbers::pi, 0.5 * dimension) * std::tgamma(0.5 * dimension));
  double ratio = std::tgamma(0.5 * dimension);
  for (std::size_t k = 0; k <= k_max; ++k) {
    w[k] = pref * ratio;
    const double dk = static_cast<double>(k);
    ratio *= (dk + 0.5 * dimension) / (dk + 1.0);
  }
  return w;
}

void basis_row(std::size_t k_max, double dimension, double r,
               std::span<double> out) {
  check_dimension(dimension);
  if (!(r >= 0.0)) throw ConfigError("radius must be >= 0");
  const double a = 0.5 * dimension - 1.0;
  const double x = r * r;
  const double damp = std::exp(-0.5 * x);
  // N_{k+1}/N_k = sqrt((k+1)/(k + D/2)); see the normalization note in the header.
  double norm = std::pow(std::numbers::pi, -0.25 * dimension);
  double lkm1 = 1.0;
  out[0] = norm * lkm1 * damp;
  if (k_max == 0) return;
  double lk = 1.0 + a - x;
  norm *= std::sqrt(1.0 / (0.5 * dimension));
  out[1] = norm * lk * damp;
  for (std::size_t j = 1; j < k_max; ++j) {
    const double dj = static_cast<double>(j);
    const double lkp1 = ((2.0 * dj + 1.0 + a - x) * lk - (dj + a) * lkm1) / (dj + 1.0);
    norm *= std::sqrt((dj + 1.0) / (dj + 0.5 * dimension));
    out[j + 1] = norm * lkp1 * damp;
    lkm1 = lk;
    lk = lkp1;
  }
}

std::vector<double> basis_row(std::size_t k_max, double dimension, double r) {
  std::vector<double> out(k_max + 1);
  basis_row(k_max, dimension, r, out);
  return out;
}

double radial_eigenfunction(std::size_t k, double dimension, double r) {
  std::vector<double> row(k + 1);
  basis_row(k, dimension, r, row);
  return row[k];
}

}  // namespace deltaineff::specfun
