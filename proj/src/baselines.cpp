#include "rgamss/baselines.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rgamss/gof.hpp"

namespace rgamss::baselines {
namespace {

// Marsaglia polar method; the second variate of each pair is discarded so the
// source stays the only state.
double standard_normal(UniformSource& src) {
  for (;;) {
    const double u = 2.0 * src.next_unit() - 1.0;
    const double v = 2.0 * src.next_unit() - 1.0;
    const double s = u * u + v * v;
    if (s < 1.0 && s > 0.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

void count(SamplerStats* stats, bool accepted) {
  if (stats == nullptr) return;
  ++stats->proposals;
  if (accepted) ++stats->accepts;
}

}  // namespace

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::AhrensDieterGS:
      return "ahrens-dieter-gs";
    case BaselineKind::MarsagliaTsangLog:
      return "marsaglia-tsang-log";
  }
  return "unknown";
}

std::optional<BaselineKind> parse_baseline(std::string_view tag) {
  if (tag == "ahrens-dieter-gs") return BaselineKind::AhrensDieterGS;
  if (tag == "marsaglia-tsang-log") return BaselineKind::MarsagliaTsangLog;
  return std::nullopt;
}

double ahrens_dieter_gs(ShapeParam shape, UniformSource& src, SamplerStats* stats) {
  const double alpha = shape.alpha();
  const double b = 1.0 + alpha / std::numbers::e;
  for (;;) {
    const double p = b * src.next_unit();
    const double u2 = src.next_unit();
    if (p <= 1.0) {
      double x = std::pow(p, 1.0 / alpha);
      // Flush subnormals: anything below the normal range counts as lost.
      if (x < std::numeric_limits<double>::min()) x = 0.0;
      const bool accepted = u2 <= std::exp(-x);
      count(stats, accepted);
      if (accepted) return x;
    } else {
      const double x = -std::log((b - p) / alpha);
      const bool accepted = u2 <= std::pow(x, alpha - 1.0);
      count(stats, accepted);
      if (accepted) return x;
    }
  }
}

double marsaglia_tsang_log(ShapeParam shape, UniformSource& src, SamplerStats* stats) {
  const double alpha = shape.alpha();
  const double d = alpha + 1.0 - 1.0 / 3.0;
  const double c = 1.0 / (3.0 * std::sqrt(d));
  double log_boosted;
  for (;;) {
    const double x = standard_normal(src);
    double v = 1.0 + c * x;
    if (v <= 0.0) {
      count(stats, false);
      continue;
    }
    v = v * v * v;
    const double u = src.next_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
      count(stats, true);
      log_boosted = std::log(d * v);
      break;
    }
    count(stats, false);
  }
  return log_boosted + std::log(src.next_unit()) / alpha;
}

double log_realmin_magnitude() { return -std::log(std::numeric_limits<double>::min()); }

double underflow_fraction_prediction(ShapeParam shape) {
  // 1 - F_Z(alpha L), evaluated on the lower-tail side to keep tiny values.
  return gof::exact_sf_z(shape.alpha() * log_realmin_magnitude(), shape);
}

}  // namespace rgamss::baselines
