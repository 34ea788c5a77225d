#include "deltaineff/wellbarrier.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "deltaineff/errors.hpp"

namespace deltaineff::wellbarrier {

namespace {

constexpr double kPi = std::numbers::pi;

/// u'/u at r = eps for the interior solution, as a function of lambda^2 =
/// barrier_height - k^2. Positive lambda^2: lambda coth(lambda eps); negative:
/// mu cot(mu eps) (same analytic function); the small-|lambda^2| series keeps
/// the crossover smooth.
double interior_logderiv(double lambda_sq, double eps) {
  const double x2 = lambda_sq * eps * eps;
  if (std::abs(x2) < 1e-8)
    return 1.0 / eps + lambda_sq * eps / 3.0;
  if (lambda_sq > 0.0) {
    const double lam = std::sqrt(lambda_sq);
    return lam / std::tanh(lam * eps);  // tanh saturates: stable for any lam*eps
  }
  const double mu = std::sqrt(-lambda_sq);
  if (mu * eps >= kPi)
    throw BranchError(
        "interior node inside the barrier: out of the modeled regime");
  return mu / std::tan(mu * eps);
}

/// ln sinh(x) without overflow.
double log_sinh(double x) {
  return x + std::log1p(-std::exp(-2.0 * x)) - std::numbers::ln2;
}

}  // namespace

WellModel WellModel::make(double radius, double barrier_radius,
                          Coupling coupling) {
  if (!(radius > 0.0)) throw ConfigError("well radius must be > 0");
  if (!(barrier_radius > 0.0 && barrier_radius < radius))
    throw ConfigError("barrier radius must satisfy 0 < eps < R");
  if (coupling.attractive())
    throw ConfigError("barrier coupling must be repulsive (g >= 0)");
  return WellModel{radius, barrier_radius, coupling};
}

double WellModel::barrier_height() const {
  return 3.0 * coupling.value() /
         (4.0 * kPi * std::pow(barrier_radius, 3.0));
}

WellSolution solve_well(const WellModel& model) {
  const double R = model.radius;
  const double eps = model.barrier_radius;

  if (model.coupling.is_hard_core()) {
    WellSolution sol;
    sol.wave_number = kPi / (R - eps);
    sol.energy = sol.wave_number * sol.wave_number;
    sol.residual = 0.0;
    sol.interior_amplitude = 0.0;
    sol.interior_lambda_sq = std::numeric_limits<double>::infinity();
    sol.sinh_interior = true;
    return sol;
  }

  const double height = model.barrier_height();
  auto mismatch = [&](double k) {
    const double inner = interior_logderiv(height - k * k, eps);
    const double outer = -k * std::cos(k * (R - eps)) / std::sin(k * (R - eps));
    return inner - outer;
  };

  double lo = kPi / R * (1.0 - 1e-9);
  double hi = kPi / (R - eps) * (1.0 - 1e-9);
  if (!(mismatch(lo) > 0.0))
    throw BracketError("well matching has no sign change on the bracket");
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (mismatch(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-15 * hi) break;
  }

  WellSolution sol;
  sol.wave_number = 0.5 * (lo + hi);
  sol.energy = sol.wave_number * sol.wave_number;
  sol.interior_lambda_sq = height - sol.energy;
  sol.sinh_interior = sol.interior_lambda_sq > 0.0;

  const double inner = interior_logderiv(sol.interior_lambda_sq, eps);
  const double outer = -sol.wave_number *
                       std::cos(sol.wave_number * (R - eps)) /
                       std::sin(sol.wave_number * (R - eps));
  sol.residual =
      std::abs(inner - outer) / (std::abs(inner) + std::abs(outer) + 1.0);

  // Exterior normalization u_out = sin(k (R - r)); continuity at eps fixes c.
  const double match = std::sin(sol.wave_number * (R - eps));
  if (sol.sinh_interior) {
    const double x = std::sqrt(sol.interior_lambda_sq) * eps;
    sol.interior_amplitude =
        x < 300.0 ? match / std::sinh(x) : match * std::exp(-log_sinh(x));
  } else {
    sol.interior_amplitude =
        match / std::sin(std::sqrt(-sol.interior_lambda_sq) * eps);
  }
  return sol;
}

std::vector<ExpansionRow> expansion_check(
    double radius, double coupling, std::span<const double> barrier_radii) {
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw ConfigError("expansion check needs finite g > 0");
  for (std::size_t i = 1; i < barrier_radii.size(); ++i)
    if (!(barrier_radii[i] < barrier_radii[i - 1]))
      throw ConfigError("barrier-radius grid must be strictly decreasing");
  std::vector<ExpansionRow> rows;
  rows.reserve(barrier_radii.size());
  for (double eps : barrier_radii) {
    const WellSolution sol =
        solve_well(WellModel::make(radius, eps, Coupling::finite(coupling)));
    ExpansionRow row;
    row.barrier_radius = eps;
    row.energy = sol.energy;
    row.predicted_deficit =
        -2.0 * std::sqrt(4.0 * kPi * eps / (3.0 * coupling)) * eps / radius;
    const double rel =
        sol.energy * (radius - eps) * (radius - eps) / (kPi * kPi) - 1.0;
    row.ratio = rel / row.predicted_deficit;
    rows.push_back(row);
  }
  return rows;
}

std::vector<OriginRow> origin_suppression(
    double radius, double coupling, std::span<const double> barrier_radii) {
  if (!(coupling > 0.0) || !std::isfinite(coupling))
    throw ConfigError("origin suppression needs finite g > 0");
  for (std::size_t i = 1; i < barrier_radii.size(); ++i)
    if (!(barrier_radii[i] < barrier_radii[i - 1]))
      throw ConfigError("barrier-radius grid must be strictly decreasing");
  std::vector<OriginRow> rows;
  rows.reserve(barrier_radii.size());
  for (double eps : barrier_radii) {
    const WellModel model =
        WellModel::make(radius, eps, Coupling::finite(coupling));
    const WellSolution sol = solve_well(model);
    OriginRow row;
    row.barrier_radius = eps;
    if (sol.sinh_interior) {
      // psi(0) = c lambda, computed through logs so sinh never overflows.
      const double lam = std::sqrt(sol.interior_lambda_sq);
      const double ln_psi0 =
          std::log(lam) +
          std::log(std::sin(sol.wave_number * (radius - eps))) -
          log_sinh(lam * eps);
      row.psi_origin = std::exp(ln_psi0);
    } else {
      const double mu = std::sqrt(-sol.interior_lambda_sq);
      row.psi_origin = sol.interior_amplitude * mu;
    }
    row.predicted = (2.0 * kPi / radius) *
                    std::exp(-std::sqrt(3.0 * coupling / (4.0 * kPi * eps)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace deltaineff::wellbarrier
