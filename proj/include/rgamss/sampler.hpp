#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "rgamss/rng.hpp"

namespace rgamss {

// Shape parameter alpha of Gam(alpha, 1), restricted to the open interval
// (0, 1). The envelope below needs lambda = 1/alpha - 1 > 0; for alpha >= 1
// use a standard gamma sampler instead.
class ShapeParam {
 public:
  explicit ShapeParam(double alpha);
  double alpha() const { return alpha_; }

 private:
  double alpha_;
};

// Constants of the two-sided exponential envelope for Z = -alpha log Y.
struct EnvelopeParams {
  double alpha;
  double lambda;  // rate of the left (z < 0) branch, 1/alpha - 1 = (1 - alpha)/alpha
  double w;       // left-branch mass, alpha / (e (1 - alpha))
  double r;       // 1 / (1 + w), probability of proposing from the right branch
};

struct SamplerStats {
  std::uint64_t proposals = 0;
  std::uint64_t accepts = 0;
  std::uint64_t right_branch = 0;

  SamplerStats& operator+=(const SamplerStats& other) {
    proposals += other.proposals;
    accepts += other.accepts;
    right_branch += other.right_branch;
    return *this;
  }
  double proposals_per_accept() const {
    return accepts == 0 ? 0.0 : static_cast<double>(proposals) / static_cast<double>(accepts);
  }
  double accept_rate() const {
    return proposals == 0 ? 0.0 : static_cast<double>(accepts) / static_cast<double>(proposals);
  }
};

EnvelopeParams envelope_params(ShapeParam shape);

// log of the unnormalized density of Z, -z - exp(-z/alpha). Goes to -inf
// (never NaN) far into the left tail.
double log_h(double z, ShapeParam shape);

// log of the unnormalized envelope: -z for z >= 0, -1 + lambda z for z < 0
// (w * lambda = 1/e exactly).
double log_eta(double z, const EnvelopeParams& params);

// log h(z) - log eta(z) in closed form. Always <= 0; approaches 0 as z -> 0-
// and as z -> +inf.
double log_accept_ratio(double z, const EnvelopeParams& params);

// One accepted draw of Z = -alpha log Y.
double sample_z(const EnvelopeParams& params, UniformSource& src, SamplerStats& stats);

struct LogGammaBatch {
  std::vector<double> log_y;
  SamplerStats stats;
};

// n draws of log Y, Y ~ Gam(alpha, 1), in generation order.
LogGammaBatch sample_log_gamma(ShapeParam shape, std::size_t n, UniformSource& src);

// Draws per block in the parallel batch sampler. Block b always uses stream
// id b, so the output does not depend on the number of workers.
inline constexpr std::size_t kBlockSize = 1u << 16;

// n draws of log Y split into kBlockSize blocks over `workers` threads;
// blocks are concatenated in stream-id order and stats are summed.
LogGammaBatch sample_log_gamma_parallel(ShapeParam shape, std::size_t n, std::uint64_t seed,
                                        unsigned workers);

struct AcceptanceRate {
  double exact;   // 1 / (1 + alpha / (e (1 - alpha)))
  double approx;  // 1 - alpha / e
};

AcceptanceRate acceptance_rate(ShapeParam shape);

// Probability that a single proposal is accepted: the unnormalized target
// has mass Gamma(1 + alpha) and the envelope 1 + w, so this equals
// Gamma(1 + alpha) * r rather than r.
double acceptance_probability(ShapeParam shape);

// exp(log_y), flushed to exactly 0 below the smallest positive normal double.
// For alpha below about 0.01 a noticeable share of draws lands there.
double to_natural(double log_y);

}  // namespace rgamss
