#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rgamss/rng.hpp"
#include "rgamss/sampler.hpp"
#include "rgamss/specfun.hpp"

namespace rgamss::gof {

// CDF of Z = -alpha log Y: P(Z <= z) = P(Y >= e^{-z/alpha}) = Q(alpha, e^{-z/alpha}).
// Accepts z = +-inf.
double exact_cdf_z(double z, ShapeParam shape);

// 1 - exact_cdf_z, computed directly as P(alpha, e^{-z/alpha}).
double exact_sf_z(double z, ShapeParam shape);

// log h(z) - log Gamma(1 + alpha); integrates to 1 over the real line.
double normalized_log_density(double z, ShapeParam shape);

// E(Z) = 1 - alpha digamma(alpha + 1) and V(Z) = 1 + alpha^2 trigamma(alpha + 1).
double mean_theory(double alpha);
double var_theory(double alpha);

struct KsResult {
  double statistic;
  double p_value;
};

// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_survival(double lambda);

// One-sample two-sided test. Throws std::invalid_argument on an empty sample.
KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);

// Two-sample two-sided test with effective size n m / (n + m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MomentCheck {
  double mean_observed;
  double mean_theory;
  double mean_discrepancy;  // (observed - theory) / standard error
  double var_observed;
  double var_theory;
  double var_discrepancy;
};

// Throws std::invalid_argument for fewer than two samples.
MomentCheck moment_check(std::span<const double> z_samples, ShapeParam shape);

// phi(t) = E exp(i t Z) = Gamma(alpha - i alpha t) / Gamma(alpha)
specfun::Complex cf_exact(ShapeParam shape, double t);

// max over the grid of |phi(t) - 1 / (1 - i t)|
double cf_limit_check(ShapeParam shape, std::span<const double> t_grid);

// Symmetric grid from lo to hi inclusive with the given step.
std::vector<double> make_grid(double lo, double hi, double step);
// -5, -4.5, ..., 5
std::vector<double> default_t_grid();

struct GofReport {
  double alpha = 0.0;
  std::size_t n = 0;
  double ks_stat_exact = 0.0;
  double ks_stat_exp1 = 0.0;
  double p_value_exact = 0.0;
  double mean_observed = 0.0;
  double mean_theory = 0.0;
  double mean_discrepancy = 0.0;
  double var_observed = 0.0;
  double var_theory = 0.0;
  double var_discrepancy = 0.0;
  double cf_max_abs_err = 0.0;
  double accept_rate_observed = 0.0;
  double accept_rate_theory = 0.0;  // 1 / (1 + w)
  double accept_rate_exact = 0.0;   // Gamma(1 + alpha) / (1 + w)
  std::uint64_t proposals = 0;

  // Standard error of accept_rate_observed around accept_rate_exact.
  double accept_rate_se() const;

  // KS p > 0.01, both standardized moment discrepancies within 4, and the
  // observed acceptance rate within 4 standard errors of accept_rate_exact.
  bool passes() const;

  // key=value, one field per line.
  std::string to_key_value() const;
  // One JSON object.
  std::string to_json() const;
};

inline constexpr std::size_t kMinReportSize = 100;

// Samples n values of Z from `src` and runs every check. Throws
// std::invalid_argument for n < kMinReportSize.
GofReport run_report(ShapeParam shape, std::size_t n, UniformSource& src,
                     std::span<const double> t_grid = {});

}  // namespace rgamss::gof
