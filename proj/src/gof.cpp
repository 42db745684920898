#include "rgamss/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "rgamss/text.hpp"

namespace rgamss::gof {

double exact_cdf_z(double z, ShapeParam shape) {
  return specfun::reg_inc_gamma_log_x(shape.alpha(), -z / shape.alpha()).upper;
}

double exact_sf_z(double z, ShapeParam shape) {
  return specfun::reg_inc_gamma_log_x(shape.alpha(), -z / shape.alpha()).lower;
}

double normalized_log_density(double z, ShapeParam shape) {
  return log_h(z, shape) - specfun::log_gamma(1.0 + shape.alpha());
}

double mean_theory(double alpha) { return 1.0 - alpha * specfun::digamma(alpha + 1.0); }

double var_theory(double alpha) { return 1.0 + alpha * alpha * specfun::trigamma(alpha + 1.0); }

double kolmogorov_survival(double lambda) {
  constexpr double kTermTol = 1e-12;
  if (!(lambda > 0.0)) return 1.0;
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  double p;
  if (lambda < 1.18) {
    // Theta-function form of the CDF converges fast for small lambda.
    const double scale = -pi2 / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double term = std::exp((2 * k - 1) * (2 * k - 1) * scale);
      cdf += term;
      if (term < kTermTol) break;
    }
    p = 1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * cdf;
  } else {
    double sum = 0.0;
    for (int k = 1; k < 100; ++k) {
      const double term = std::exp(-2.0 * k * k * lambda * lambda);
      sum += (k % 2 == 1) ? term : -term;
      if (term < kTermTol) break;
    }
    p = 2.0 * sum;
  }
  return std::clamp(p, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_test: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return {d, kolmogorov_survival(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n = static_cast<double>(x.size());
  const double m = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] <= v) ++i;
    while (j < y.size() && y[j] <= v) ++j;
    d = std::max(d, std::abs(i / n - j / m));
  }
  return {d, kolmogorov_survival(std::sqrt(n * m / (n + m)) * d)};
}

MomentCheck moment_check(std::span<const double> z_samples, ShapeParam shape) {
  if (z_samples.size() < 2) throw std::invalid_argument("moment_check: need at least 2 samples");
  const double n = static_cast<double>(z_samples.size());
  double mean = 0.0;
  for (double z : z_samples) mean += z;
  mean /= n;
  double m2 = 0.0;
  double m4 = 0.0;
  for (double z : z_samples) {
    const double d2 = (z - mean) * (z - mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  const double var = m2 / (n - 1.0);
  m2 /= n;
  m4 /= n;

  MomentCheck out{};
  out.mean_observed = mean;
  out.mean_theory = mean_theory(shape.alpha());
  out.mean_discrepancy = (mean - out.mean_theory) / std::sqrt(var / n);
  out.var_observed = var;
  out.var_theory = var_theory(shape.alpha());
  const double var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / n);
  out.var_discrepancy = (var - out.var_theory) / var_se;
  return out;
}

specfun::Complex cf_exact(ShapeParam shape, double t) {
  const double alpha = shape.alpha();
  return std::exp(specfun::log_gamma_complex({alpha, -alpha * t}) - specfun::log_gamma(alpha));
}

double cf_limit_check(ShapeParam shape, std::span<const double> t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    const specfun::Complex limit = 1.0 / specfun::Complex(1.0, -t);
    worst = std::max(worst, std::abs(cf_exact(shape, t) - limit));
  }
  return worst;
}

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("make_grid: need step > 0 and hi >= lo");
  std::vector<double> grid;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  grid.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) grid.push_back(lo + step * static_cast<double>(k));
  return grid;
}

std::vector<double> default_t_grid() { return make_grid(-5.0, 5.0, 0.5); }

double GofReport::accept_rate_se() const {
  if (proposals == 0) return 0.0;
  return std::sqrt(accept_rate_exact * (1.0 - accept_rate_exact) / static_cast<double>(proposals));
}

bool GofReport::passes() const {
  return p_value_exact > 0.01 && std::abs(mean_discrepancy) < 4.0 &&
         std::abs(var_discrepancy) < 4.0 &&
         std::abs(accept_rate_observed - accept_rate_exact) <= 4.0 * accept_rate_se();
}

namespace {

nlohmann::ordered_json report_object(const GofReport& r) {
  nlohmann::ordered_json j;
  j["alpha"] = r.alpha;
  j["n"] = r.n;
  j["ks_stat_exact"] = r.ks_stat_exact;
  j["ks_stat_exp1"] = r.ks_stat_exp1;
  j["p_value_exact"] = r.p_value_exact;
  j["mean_observed"] = r.mean_observed;
  j["mean_theory"] = r.mean_theory;
  j["mean_discrepancy"] = r.mean_discrepancy;
  j["var_observed"] = r.var_observed;
  j["var_theory"] = r.var_theory;
  j["var_discrepancy"] = r.var_discrepancy;
  j["cf_max_abs_err"] = r.cf_max_abs_err;
  j["accept_rate_observed"] = r.accept_rate_observed;
  j["accept_rate_theory"] = r.accept_rate_theory;
  j["accept_rate_exact"] = r.accept_rate_exact;
  j["proposals"] = r.proposals;
  j["pass"] = r.passes();
  return j;
}

}  // namespace

std::string GofReport::to_key_value() const {
  std::ostringstream out;
  const nlohmann::ordered_json obj = report_object(*this);
  for (const auto& [key, value] : obj.items()) {
    out << key << '=';
    if (value.is_number_float()) {
      out << format_double(value.get<double>());
    } else {
      out << value.dump();
    }
    out << '\n';
  }
  return out.str();
}

std::string GofReport::to_json() const { return report_object(*this).dump(); }

GofReport run_report(ShapeParam shape, std::size_t n, UniformSource& src,
                     std::span<const double> t_grid) {
  if (n < kMinReportSize) {
    throw std::invalid_argument("run_report: n must be >= " + std::to_string(kMinReportSize));
  }
  const EnvelopeParams params = envelope_params(shape);
  SamplerStats stats;
  std::vector<double> z(n);
  for (double& v : z) v = sample_z(params, src, stats);

  GofReport report;
  report.alpha = shape.alpha();
  report.n = n;
  const KsResult exact = ks_test(z, [shape](double x) { return exact_cdf_z(x, shape); });
  report.ks_stat_exact = exact.statistic;
  report.p_value_exact = exact.p_value;
  report.ks_stat_exp1 = ks_test(z, [](double x) { return x > 0.0 ? -std::expm1(-x) : 0.0; }).statistic;

  const MomentCheck moments = moment_check(z, shape);
  report.mean_observed = moments.mean_observed;
  report.mean_theory = moments.mean_theory;
  report.mean_discrepancy = moments.mean_discrepancy;
  report.var_observed = moments.var_observed;
  report.var_theory = moments.var_theory;
  report.var_discrepancy = moments.var_discrepancy;

  const std::vector<double> default_grid = t_grid.empty() ? default_t_grid() : std::vector<double>{};
  report.cf_max_abs_err = cf_limit_check(shape, t_grid.empty() ? std::span<const double>(default_grid) : t_grid);

  report.accept_rate_observed = stats.accept_rate();
  report.accept_rate_theory = params.r;
  report.accept_rate_exact = acceptance_probability(shape);
  report.proposals = stats.proposals;
  return report;
}

}  // namespace rgamss::gof
