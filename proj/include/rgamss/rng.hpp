#pragma once

#include <cstdint>

namespace rgamss {

// Seed used by the CLI and by every regression/acceptance run unless one is
// given explicitly.
inline constexpr std::uint64_t kDefaultSeed = 20130207;

// PCG64 (128-bit LCG, XSL-RR output) stream of unit uniforms.
//
// The pair (seed, stream_id) fixes the output sequence bit for bit. The stream
// id selects the LCG increment, so distinct ids give distinct full-period
// (2^128) sequences without any shared state. A source is single-owner
// mutable state; give each worker its own stream id.
class UniformSource {
 public:
  UniformSource(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint64_t next_u64();

  // Uniform on the open interval (0, 1), 53-bit resolution. A raw draw that
  // maps to 0 is discarded and redrawn; 1 is unreachable by construction.
  double next_unit();

  // -log(next_unit()) / rate. Throws DomainError unless rate > 0.
  double next_exponential(double rate = 1.0);

 private:
  using u128 = unsigned __int128;

  void step() { state_ = state_ * kMultiplier + inc_; }

  static constexpr u128 kMultiplier =
      (static_cast<u128>(2549297995355413924ULL) << 64) | 4865540595714422341ULL;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  u128 state_ = 0;
  u128 inc_ = 1;
};

inline UniformSource new_source(std::uint64_t seed, std::uint64_t stream_id) {
  return UniformSource(seed, stream_id);
}

}  // namespace rgamss
