#include "rgamss/rng.hpp"

#include <cmath>
#include <string>

#include "rgamss/errors.hpp"

namespace rgamss {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

UniformSource::UniformSource(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  // Hashing the stream id before it becomes the increment avoids the
  // correlations PCG shows between increments that differ in a few low bits.
  const std::uint64_t inc_hi = splitmix64(stream_id ^ 0x6a09e667f3bcc909ULL);
  const std::uint64_t inc_lo = splitmix64(inc_hi ^ stream_id);
  inc_ = ((static_cast<u128>(inc_hi) << 64) | inc_lo) | 1u;

  const std::uint64_t s_hi = splitmix64(seed);
  const std::uint64_t s_lo = splitmix64(s_hi ^ seed);
  state_ = 0;
  step();
  state_ += (static_cast<u128>(s_hi) << 64) | s_lo;
  step();
}

std::uint64_t UniformSource::next_u64() {
  step();
  const auto hi = static_cast<std::uint64_t>(state_ >> 64);
  const auto lo = static_cast<std::uint64_t>(state_);
  const auto rot = static_cast<unsigned>(state_ >> 122);
  const std::uint64_t x = hi ^ lo;
  return (x >> rot) | (x << ((64u - rot) & 63u));
}

double UniformSource::next_unit() {
  for (;;) {
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

double UniformSource::next_exponential(double rate) {
  if (!(rate > 0.0)) {
    throw DomainError("next_exponential: rate must be > 0, got " + std::to_string(rate));
  }
  return -std::log(next_unit()) / rate;
}

}  // namespace rgamss
