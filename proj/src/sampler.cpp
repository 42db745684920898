#include "rgamss/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "rgamss/errors.hpp"
#include "rgamss/specfun.hpp"

namespace rgamss {

ShapeParam::ShapeParam(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("shape alpha must lie in the open interval (0, 1), got " +
                      std::to_string(alpha) + "; use a standard gamma sampler for alpha >= 1");
  }
}

EnvelopeParams envelope_params(ShapeParam shape) {
  const double alpha = shape.alpha();
  const double w = alpha / (std::numbers::e * (1.0 - alpha));
  return {alpha, (1.0 - alpha) / alpha, w, 1.0 / (1.0 + w)};
}

double log_h(double z, ShapeParam shape) { return -z - std::exp(-z / shape.alpha()); }

double log_eta(double z, const EnvelopeParams& params) {
  return z >= 0.0 ? -z : -1.0 + params.lambda * z;
}

double log_accept_ratio(double z, const EnvelopeParams& params) {
  const double u = -z / params.alpha;
  if (z >= 0.0) return -std::exp(u);
  // 1 + log t - t with t = e^u, u > 0
  return u - std::expm1(u);
}

double sample_z(const EnvelopeParams& params, UniformSource& src, SamplerStats& stats) {
  for (;;) {
    ++stats.proposals;
    const double u = src.next_unit();
    double z;
    if (u <= params.r) {
      ++stats.right_branch;
      z = -std::log(u / params.r);
    } else {
      z = std::log(src.next_unit()) / params.lambda;
    }
    if (std::log(src.next_unit()) < log_accept_ratio(z, params)) {
      ++stats.accepts;
      return z;
    }
  }
}

LogGammaBatch sample_log_gamma(ShapeParam shape, std::size_t n, UniformSource& src) {
  const EnvelopeParams params = envelope_params(shape);
  LogGammaBatch batch;
  batch.log_y.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    batch.log_y.push_back(-sample_z(params, src, batch.stats) / params.alpha);
  }
  return batch;
}

LogGammaBatch sample_log_gamma_parallel(ShapeParam shape, std::size_t n, std::uint64_t seed,
                                        unsigned workers) {
  if (workers == 0) throw DomainError("worker count must be >= 1");
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<LogGammaBatch> parts(blocks);
  auto run_blocks = [&](unsigned worker) {
    for (std::size_t b = worker; b < blocks; b += workers) {
      UniformSource src(seed, b);
      parts[b] = sample_log_gamma(shape, std::min(kBlockSize, n - b * kBlockSize), src);
    }
  };
  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(workers, blocks));
  if (threads <= 1) {
    run_blocks(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(run_blocks, w);
  }
  LogGammaBatch out;
  out.log_y.reserve(n);
  for (auto& part : parts) {
    out.log_y.insert(out.log_y.end(), part.log_y.begin(), part.log_y.end());
    out.stats += part.stats;
  }
  return out;
}

AcceptanceRate acceptance_rate(ShapeParam shape) {
  const double alpha = shape.alpha();
  return {envelope_params(shape).r, 1.0 - alpha / std::numbers::e};
}

double acceptance_probability(ShapeParam shape) {
  return std::exp(specfun::log_gamma(1.0 + shape.alpha())) * envelope_params(shape).r;
}

double to_natural(double log_y) {
  static const double kLogRealMin = std::log(std::numeric_limits<double>::min());
  return log_y < kLogRealMin ? 0.0 : std::exp(log_y);
}

}  // namespace rgamss
