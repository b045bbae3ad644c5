#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lmeasure/rng.hpp"

namespace lmeasure {

/// Monte Carlo estimate of a mean with its standard error.
struct EstimatorResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint32_t streams = 1;
};

/// Describes how `n_samples` draws are spread over RNG streams. Stream s
/// (0-based) uses RngStream(seed, s) and receives n_samples / streams draws,
/// plus one if s < n_samples % streams.
struct StreamPlan {
  std::uint64_t n_samples = 1;
  std::uint64_t seed = 0;
  std::uint32_t streams = 1;

  std::uint64_t count_for(std::uint32_t stream) const;
  void validate() const;
};

/// Runs fn(stream_id) for every stream, concurrently when more than one
/// hardware thread is available. fn must only touch per-stream state.
void for_each_stream(std::uint32_t streams, const std::function<void(std::uint32_t)>& fn);

/// Estimates `dim` means at once. `draw` fills one value per component from
/// a single random draw. Results merge in stream order, so output depends
/// only on (seed, streams, n_samples), never on thread timing. Each stream
/// calls its own copy of `draw`, so a mutable lambda may keep scratch buffers.
std::vector<EstimatorResult> estimate_means(
    const StreamPlan& plan, std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& draw);

/// The raw draws behind estimate_means: result[c] holds component c of every
/// draw, streams concatenated in order.
std::vector<std::vector<double>> collect_draws(
    const StreamPlan& plan, std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& draw);

EstimatorResult estimate_mean(const StreamPlan& plan,
                              const std::function<double(RngStream&)>& draw);

/// Streaming mean/variance accumulator (Chan et al. pairwise merge).
class MomentAccumulator {
 public:
  void add_block(std::span<const double> values);
  void merge(const MomentAccumulator& other);

  std::uint64_t count() const { return count_; }
  double mean() const { return mean_; }
  /// Unbiased variance; 0 for fewer than two values.
  double variance() const;
  double std_error() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace lmeasure
