#include "deltaineff/variational.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "deltaineff/accumulate.hpp"
#include "deltaineff/quadrature.hpp"
#include "deltaineff/rng.hpp"

namespace deltaineff::variational {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
}  // namespace

CorrelationFactor CorrelationFactor::two_d(double beta) {
  if (!(beta > std::exp(kE)))
    throw ConfigError("two-d factor needs beta > e^e (alpha must exceed 1)");
  return CorrelationFactor(Kind::two_d, std::log(std::log(beta)),
                           std::log(beta));
}

CorrelationFactor CorrelationFactor::two_d_alpha(double alpha) {
  if (!(alpha > 1.0)) throw ConfigError("two-d factor needs alpha > 1");
  return CorrelationFactor(Kind::two_d, alpha, std::exp(alpha));
}

CorrelationFactor CorrelationFactor::gaussian(double b) {
  if (!(b > 0.0) || !std::isfinite(b))
    throw ConfigError("gaussian factor needs b > 0");
  return CorrelationFactor(Kind::gaussian, 0.0, b);
}

CorrelationFactor CorrelationFactor::unit() {
  return CorrelationFactor(Kind::unit, 0.0, 0.0);
}

double CorrelationFactor::alpha() const {
  if (kind_ != Kind::two_d) throw ConfigError("alpha: not a two-d factor");
  return alpha_;
}

double CorrelationFactor::log_beta() const {
  if (kind_ != Kind::two_d) throw ConfigError("log_beta: not a two-d factor");
  return log_beta_or_b_;
}

double CorrelationFactor::scale() const {
  if (kind_ != Kind::gaussian) throw ConfigError("scale: not a gaussian factor");
  return log_beta_or_b_;
}

CorrelationFactor::Eval CorrelationFactor::operator()(double r) const {
  if (!(r >= 0.0)) throw ConfigError("factor argument must be >= 0");
  switch (kind_) {
    case Kind::unit:
      return {1.0, 0.0};
    case Kind::gaussian: {
      const double b = log_beta_or_b_;
      const double x = (r / b) * (r / b);
      const double e = std::exp(-x);
      return {-std::expm1(-x), 2.0 * r / (b * b) * e};
    }
    case Kind::two_d: {
      if (r == 0.0)
        return {0.0, std::numeric_limits<double>::infinity()};
      const double t = std::exp((log_beta_or_b_ + std::log(r)) / alpha_);
      const double f = -std::expm1(-t);
      // f' = (1/alpha) beta^{1/alpha} r^{1/alpha - 1} e^{-t}, via logs.
      const double log_fp = -std::log(alpha_) + log_beta_or_b_ / alpha_ +
                            (1.0 / alpha_ - 1.0) * std::log(r) - t;
      return {f, std::exp(log_fp)};
    }
  }
  return {0.0, 0.0};
}

double kinetic_integral_2d(const CorrelationFactor& factor) {
  if (factor.kind() != CorrelationFactor::Kind::two_d)
    throw ConfigError("kinetic_integral_2d needs a two-d factor");
  const double alpha = factor.alpha();
  const double log_beta = factor.log_beta();
  // pi int f'^2 r dr in the variable t = (beta r)^{1/alpha}:
  //   r = t^alpha / beta, dr/dt = alpha t^{alpha-1} / beta.
  auto integrand = [alpha, log_beta](double t) {
    if (t <= 0.0) return 0.0;
    const double log_r = alpha * std::log(t) - log_beta;
    const double log_fp = -std::log(alpha) + log_beta / alpha +
                          (1.0 / alpha - 1.0) * log_r - t;
    const double log_jac =
        std::log(alpha) + (alpha - 1.0) * std::log(t) - log_beta;
    return kPi * std::exp(2.0 * log_fp + log_r + log_jac);
  };
  return quad::tanh_sinh(integrand, 0.0, 30.0, 1e-15, 1e-12, 12);
}

double kinetic_integral_2d(double beta) {
  return kinetic_integral_2d(CorrelationFactor::two_d(beta));
}

NormDefect norm_defect_2d(const CorrelationFactor& factor,
                          const std::function<double(double)>& density) {
  NormDefect result{0.0, 0.0};
  if (factor.kind() == CorrelationFactor::Kind::two_d) {
    const double alpha = factor.alpha();
    result.scale = alpha * std::exp(std::lgamma(2.0 * alpha) -
                                    2.0 * factor.log_beta());
  }
  if (factor.kind() == CorrelationFactor::Kind::unit) return result;

  auto rho = density ? density : [](double r) {
    return std::exp(-r * r) / kPi;  // 2-D oscillator ground-state density
  };
  double r_hi = 8.0;
  if (factor.kind() == CorrelationFactor::Kind::two_d) {
    // 1 - f^2 = e^{-t}(2 - e^{-t}) is dead beyond t ~ 45.
    const double alpha = factor.alpha();
    r_hi = std::min(8.0, 2.0 * std::exp(alpha * std::log(45.0) -
                                        factor.log_beta()));
  }
  auto integrand = [&](double r) {
    const auto fe = factor(r);
    const double one_minus_f = 1.0 - fe.value;
    const double one_minus_f2 = one_minus_f * (1.0 + fe.value);
    return rho(r) * one_minus_f2 * 2.0 * kPi * r;
  };
  result.defect = quad::tanh_sinh(integrand, 0.0, r_hi, 1e-18, 1e-10, 13);
  return result;
}

NormDefect norm_defect_2d(double beta,
                          const std::function<double(double)>& density) {
  return norm_defect_2d(CorrelationFactor::two_d(beta), density);
}

VariationalEstimate two_particle_bound(double dimension, double b) {
  if (!(dimension > 2.0))
    throw ConfigError("two_particle_bound is stated for D > 2");
  const CorrelationFactor factor = CorrelationFactor::gaussian(b);
  const double inv_gamma = 1.0 / std::tgamma(0.5 * dimension);

  const double r_corr = std::min(8.0, 12.0 * b);
  auto corr_integrand = [&](double r) {
    const auto fe = factor(r);
    return std::exp(-r * r) * fe.derivative * fe.derivative *
           std::pow(r, dimension - 1.0);
  };
  auto norm_integrand = [&](double r) {
    const auto fe = factor(r);
    return std::exp(-r * r) * fe.value * fe.value *
           std::pow(r, dimension - 1.0);
  };

  VariationalEstimate est{};
  est.unperturbed_energy = 0.5 * dimension;
  est.correction =
      inv_gamma * quad::tanh_sinh(corr_integrand, 0.0, r_corr, 1e-16, 1e-12, 13);
  est.norm = 2.0 * inv_gamma *
             quad::tanh_sinh(norm_integrand, 0.0, 8.0, 1e-16, 1e-12, 13);
  return est;
}

namespace {

struct BatchResult {
  double sum_val = 0.0;
  double sum_val_sq = 0.0;
  double sum_f2 = 0.0;
  double sum_f2_sq = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
};

BatchResult run_batch(std::size_t particles, std::size_t dimension,
                      const CorrelationFactor& factor, std::uint64_t count,
                      std::uint64_t stream_seed, double threshold) {
  BatchResult out;
  GaussianStream gauss(stream_seed);
  const double sigma = 1.0 / std::numbers::sqrt2;  // |Psi0|^2 coordinate width
  const std::size_t nd = particles * dimension;
  std::vector<double> x(nd), grad(nd), diff(dimension);

  for (std::uint64_t s = 0; s < count; ++s) {
    for (double& xi : x) xi = sigma * gauss.next();
    std::fill(grad.begin(), grad.end(), 0.0);
    double log_f_prod = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < particles && ok; ++i) {
      for (std::size_t j = i + 1; j < particles; ++j) {
        double r2 = 0.0;
        for (std::size_t d = 0; d < dimension; ++d) {
          diff[d] = x[i * dimension + d] - x[j * dimension + d];
          r2 += diff[d] * diff[d];
        }
        const double r = std::sqrt(r2);
        const auto fe = factor(r);
        if (!(fe.value >= threshold)) {
          ok = false;
          break;
        }
        log_f_prod += std::log(fe.value);
        const double ratio = fe.derivative / (fe.value * r);
        for (std::size_t d = 0; d < dimension; ++d) {
          grad[i * dimension + d] += ratio * diff[d];
          grad[j * dimension + d] -= ratio * diff[d];
        }
      }
    }
    if (!ok) {
      ++out.rejected;
      continue;
    }
    const double f2 = std::exp(2.0 * log_f_prod);
    double grad_sq = 0.0;
    for (double gi : grad) grad_sq += gi * gi;
    const double val = 0.5 * f2 * grad_sq;
    out.sum_val += val;
    out.sum_val_sq += val * val;
    out.sum_f2 += f2;
    out.sum_f2_sq += f2 * f2;
    ++out.accepted;
  }
  return out;
}

}  // namespace

VariationalEstimate nbody_bound_mc(std::size_t particles,
                                   std::size_t dimension,
                                   const CorrelationFactor& factor,
                                   std::uint64_t samples, std::uint64_t seed,
                                   const McOptions& options) {
  if (particles < 2) throw ConfigError("need at least two particles");
  if (dimension < 3) throw ConfigError("n-body bound is stated for D >= 3");
  if (samples == 0) throw ConfigError("need at least one sample");
  if (factor.kind() == CorrelationFactor::Kind::two_d)
    throw ConfigError("n-body Monte Carlo uses the gaussian or unit factor");

  const std::uint64_t bs = options.batch_size;
  const std::uint64_t nbatches = (samples + bs - 1) / bs;
  std::vector<BatchResult> partials(nbatches);

  auto worker = [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t b = begin; b < end; ++b) {
      const std::uint64_t count = std::min(bs, samples - b * bs);
      partials[b] = run_batch(particles, dimension, factor, count,
                              derive_stream(seed, b),
                              options.underflow_threshold);
    }
  };
  const unsigned nthreads =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(nbatches)));
  if (nthreads <= 1) {
    worker(0, nbatches);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (nbatches + nthreads - 1) / nthreads;
    for (unsigned t = 0; t < nthreads; ++t) {
      const std::uint64_t begin = t * chunk;
      const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, nbatches);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Merge in batch order: the estimate depends only on (seed, samples).
  BatchResult total;
  for (const BatchResult& p : partials) {
    total.sum_val += p.sum_val;
    total.sum_val_sq += p.sum_val_sq;
    total.sum_f2 += p.sum_f2;
    total.sum_f2_sq += p.sum_f2_sq;
    total.accepted += p.accepted;
    total.rejected += p.rejected;
  }

  const double rate =
      static_cast<double>(total.rejected) / static_cast<double>(samples);
  if (rate >= options.max_rejection_rate)
    throw NumericalError("factor-underflow rejection rate " +
                         std::to_string(rate) + " exceeds the allowed " +
                         std::to_string(options.max_rejection_rate));
  if (total.accepted < 2) throw NumericalError("not enough accepted samples");

  const double n = static_cast<double>(total.accepted);
  VariationalEstimate est{};
  est.unperturbed_energy =
      static_cast<double>(particles) * 0.5 * static_cast<double>(dimension);
  est.correction = total.sum_val / n;
  est.norm = total.sum_f2 / n;
  est.stat_error = std::sqrt(std::max(
      0.0, (total.sum_val_sq - n * est.correction * est.correction) /
               (n * (n - 1.0))));
  est.norm_error = std::sqrt(std::max(
      0.0, (total.sum_f2_sq - n * est.norm * est.norm) / (n * (n - 1.0))));
  est.samples = samples;
  est.seed = seed;
  est.rejected = total.rejected;
  return est;
}

VariationalEstimate nbody_bound_mc(std::size_t particles,
                                   std::size_t dimension, double b,
                                   std::uint64_t samples, std::uint64_t seed,
                                   const McOptions& options) {
  return nbody_bound_mc(particles, dimension, CorrelationFactor::gaussian(b),
                        samples, seed, options);
}

}  // namespace deltaineff::variational
