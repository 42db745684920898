#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rgamss/rng.hpp"
#include "rgamss/sampler.hpp"

namespace rgamss::baselines {

// Reference samplers benchmarked against the log-scale envelope sampler.
enum class BaselineKind {
  AhrensDieterGS,     // "ahrens-dieter-gs", natural scale
  MarsagliaTsangLog,  // "marsaglia-tsang-log", log scale
};

std::string_view to_string(BaselineKind kind);
std::optional<BaselineKind> parse_baseline(std::string_view tag);

// Ahrens-Dieter (1974) GS algorithm, natural scale. Values below the smallest
// positive normal double are returned as exactly 0, which is how natural-scale
// samplers lose small-shape draws. `stats`, when given, counts loop attempts.
double ahrens_dieter_gs(ShapeParam shape, UniformSource& src, SamplerStats* stats = nullptr);

// Marsaglia-Tsang (2000) squeeze sampler for Gam(alpha + 1), boosted to
// Gam(alpha) on the log scale: log Y = log Y' + log(U) / alpha.
double marsaglia_tsang_log(ShapeParam shape, UniformSource& src, SamplerStats* stats = nullptr);

// -log(smallest positive normal double), about 708.396.
double log_realmin_magnitude();

// P(Y < smallest positive normal double) for Y ~ Gam(alpha, 1), i.e. the
// expected share of exact zeros from a natural-scale sampler.
double underflow_fraction_prediction(ShapeParam shape);

}  // namespace rgamss::baselines
