#include "deltaineff/regularized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "deltaineff/accumulate.hpp"
#include "deltaineff/errors.hpp"
#include "deltaineff/quadrature.hpp"
#include "deltaineff/specfun.hpp"

namespace deltaineff::regularized {

namespace {

double surface_area(double dimension) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dimension) /
         std::tgamma(0.5 * dimension);
}

/// Radius beyond which the smeared-delta integrand is below ~1e-50 of scale.
double cutoff_radius(double width, double dimension) {
  const double log_pref =
      -dimension * std::log(std::sqrt(std::numbers::pi) * width);
  const double budget = std::max(0.0, log_pref) + 130.0;
  return std::sqrt(budget / (1.0 + 1.0 / (width * width)));
}

struct SmearedDensity {
  double log_pref;  // -D log(sqrt(pi) eps)
  double inv_w2;    // 1/eps^2
  double dimension;
  double area;

  double operator()(double r) const {
    if (r <= 0.0) return 0.0;
    const double le =
        log_pref - r * r * inv_w2 + (dimension - 1.0) * std::log(r);
    if (le < -700.0) return 0.0;
    return area * std::exp(le);
  }
};

}  // namespace

RegularizedProblem RegularizedProblem::make(double dimension, double coupling,
                                            double width,
                                            std::size_t truncation) {
  if (!(dimension >= 1.0)) throw ConfigError("dimension must be >= 1");
  if (!(width > 0.0)) throw ConfigError("regularization width must be > 0");
  if (!std::isfinite(coupling))
    throw ConfigError("regularized coupling must be finite");
  if (truncation < 1) throw ConfigError("truncation K must be >= 1");
  return RegularizedProblem{dimension, coupling, width, truncation};
}

SymmetricMatrix delta_eps_matrix(const RegularizedProblem& problem) {
  const std::size_t n = problem.truncation + 1;
  const double r_max = cutoff_radius(problem.width, problem.dimension);
  const SmearedDensity dens{
      -problem.dimension *
          std::log(std::sqrt(std::numbers::pi) * problem.width),
      1.0 / (problem.width * problem.width), problem.dimension,
      surface_area(problem.dimension)};

  // Pick the node depth on two probes: the density normalization (integrates
  // to ~1) and the most oscillatory diagonal element.
  int level = 6;
  for (const bool with_basis : {false, true}) {
    auto probe = [&](double r) {
      const double d = dens(r);
      if (!with_basis || d == 0.0) return d;
      const double psi = specfun::radial_eigenfunction(
          problem.truncation, problem.dimension, r);
      return d * psi * psi;
    };
    double prev = quad::tanh_sinh(probe, 0.0, r_max, 0.0, 0.0, level);
    for (int lv = level + 1; lv <= 13; ++lv) {
      const double cur = quad::tanh_sinh(probe, 0.0, r_max, 0.0, 0.0, lv);
      if (std::abs(cur - prev) <=
          1e-13 * std::max(1.0, std::abs(cur))) {
        level = std::max(level, lv);
        break;
      }
      prev = cur;
      level = lv;
    }
  }
  level = std::min(level + 1, 13);

  SymmetricMatrix m;
  m.size = n;
  m.data.assign(n * n, 0.0);

  const quad::TsLevel& tbl = quad::ts_level(level);
  const double half = 0.5 * r_max;
  std::vector<double> row(n);
  auto accumulate_node = [&](double r, double weight) {
    if (r <= 0.0 || r >= r_max) return;
    const double d = dens(r);
    if (d == 0.0) return;
    specfun::basis_row(problem.truncation, problem.dimension, r, row);
    const double scale = weight * d;
    for (std::size_t i = 0; i < n; ++i) {
      const double si = scale * row[i];
      for (std::size_t j = i; j < n; ++j) m.data[i * n + j] += si * row[j];
    }
  };
  accumulate_node(half, tbl.center_weight);
  for (const quad::TsNode& node : tbl.nodes) {
    accumulate_node(half * node.offset, node.weight);
    accumulate_node(r_max - half * node.offset, node.weight);
  }

  const double jac = problem.coupling * tbl.step * half;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = m.data[i * n + j] * jac;
      m.data[i * n + j] = v;
      m.data[j * n + i] = v;
    }
  for (std::size_t i = 0; i < n; ++i)
    m.data[i * n + i] += specfun::level_energy(i, problem.dimension);
  return m;
}

SymmetricMatrix rank_one_matrix(std::size_t truncation, double dimension,
                                double coupling) {
  const std::size_t n = truncation + 1;
  SymmetricMatrix m;
  m.size = n;
  m.data.assign(n * n, 0.0);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = specfun::psi0(i, dimension);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double val = coupling * v[i] * v[j];
      m.data[i * n + j] = val;
      m.data[j * n + i] = val;
    }
  for (std::size_t i = 0; i < n; ++i)
    m.data[i * n + i] += specfun::level_energy(i, dimension);
  return m;
}

namespace {

double offdiag_norm(const SymmetricMatrix& m) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < m.size; ++i)
    for (std::size_t j = i + 1; j < m.size; ++j)
      acc.add(m.at(i, j) * m.at(i, j));
  return std::sqrt(2.0 * acc.value());
}

}  // namespace

std::vector<double> eigen_lowest(SymmetricMatrix m, std::size_t count) {
  const std::size_t n = m.size;
  if (n == 0 || count == 0 || count > n)
    throw ConfigError("eigen_lowest: bad matrix or count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (m.at(i, j) != m.at(j, i))
        throw ConfigError("eigen_lowest requires a symmetric matrix");

  double prev_off = std::numeric_limits<double>::infinity();
  for (int sweep = 0; sweep < 100; ++sweep) {
    const double off = offdiag_norm(m);
    if (off <= 1e-12) break;
    if (off >= prev_off && sweep > 4) break;  // round-off floor
    prev_off = off;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = m.at(p, q);
        if (std::abs(apq) < 1e-300) {
          m.at(p, q) = m.at(q, p) = 0.0;
          continue;
        }
        const double theta = 0.5 * (m.at(q, q) - m.at(p, p)) / apq;
        const double t =
            (theta >= 0.0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);
        const double app = m.at(p, p);
        const double aqq = m.at(q, q);
        m.at(p, p) = app - t * apq;
        m.at(q, q) = aqq + t * apq;
        m.at(p, q) = m.at(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m.at(r, p);
          const double arq = m.at(r, q);
          m.at(r, p) = m.at(p, r) = arp - s * (arq + tau * arp);
          m.at(r, q) = m.at(q, r) = arq + s * (arp - tau * arq);
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = m.at(i, i);
  std::sort(eig.begin(), eig.end());
  eig.resize(count);
  return eig;
}

std::vector<StudyRow> double_limit_study(
    double dimension, double coupling, std::span<const double> widths,
    std::span<const std::size_t> truncations) {
  if (widths.empty() || truncations.empty())
    throw ConfigError("double_limit_study: empty grid");
  for (std::size_t i = 1; i < widths.size(); ++i)
    if (!(widths[i] < widths[i - 1]))
      throw ConfigError("width grid must be strictly decreasing");
  for (std::size_t i = 1; i < truncations.size(); ++i)
    if (!(truncations[i] > truncations[i - 1]))
      throw ConfigError("truncation grid must be strictly increasing");

  const std::size_t k_max = truncations.back();
  std::vector<StudyRow> rows;
  rows.reserve(widths.size() * truncations.size());
  for (double eps : widths) {
    const SymmetricMatrix full = delta_eps_matrix(
        RegularizedProblem::make(dimension, coupling, eps, k_max));
    for (std::size_t K : truncations) {
      // The matrix elements do not depend on K; reuse the principal block.
      const std::size_t n = K + 1;
      SymmetricMatrix sub;
      sub.size = n;
      sub.data.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          sub.data[i * n + j] = full.at(i, j);
      rows.push_back({eps, K, eigen_lowest(std::move(sub), 1)[0]});
    }
  }
  return rows;
}

}  // namespace deltaineff::regularized
