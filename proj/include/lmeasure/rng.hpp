#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace lmeasure {

/// Reproducible random stream keyed by (seed, stream_id).
///
/// xoshiro256++ seeded from the seed through splitmix64; stream k is the base
/// state advanced by k jumps of 2^128 draws, so streams never overlap.
/// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  result_type next();

  /// Uniform on the open interval (0, 1); never returns 0 or 1.
  double uniform();

  /// Standard normal (Marsaglia polar method, spare value cached).
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void jump();

  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace lmeasure
