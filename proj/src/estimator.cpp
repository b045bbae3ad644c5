#include "lmeasure/estimator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "lmeasure/errors.hpp"
#include "lmeasure/kernels.hpp"

namespace lmeasure {
namespace {
constexpr std::size_t kBlock = 4096;
}

std::uint64_t StreamPlan::count_for(std::uint32_t stream) const {
  return n_samples / streams + (stream < n_samples % streams ? 1 : 0);
}

void StreamPlan::validate() const {
  if (n_samples < 1) throw DomainError("samples must be >= 1");
  if (streams < 1) throw DomainError("streams must be >= 1");
}

void MomentAccumulator::add_block(std::span<const double> values) {
  if (values.empty()) return;
  const double shift = values.front();
  const auto m = kernels::active().shifted_moments(values, shift);
  MomentAccumulator block;
  block.count_ = values.size();
  const double n = static_cast<double>(values.size());
  block.mean_ = shift + m.sum / n;
  block.m2_ = std::max(0.0, m.sum_sq - m.sum * m.sum / n);
  merge(block);
}

void MomentAccumulator::merge(const MomentAccumulator& other) {
  if (other.count_ == 0) return;
  if (count_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(count_);
  const double nb = static_cast<double>(other.count_);
  const double total = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / total;
  m2_ += other.m2_ + delta * delta * na * nb / total;
  count_ += other.count_;
}

double MomentAccumulator::variance() const {
  return count_ < 2 ? 0.0 : m2_ / static_cast<double>(count_ - 1);
}

double MomentAccumulator::std_error() const {
  return count_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(count_));
}

void for_each_stream(std::uint32_t streams, const std::function<void(std::uint32_t)>& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers = std::min<unsigned>(hw, streams);
  if (workers <= 1) {
    for (std::uint32_t s = 0; s < streams; ++s) fn(s);
    return;
  }
  std::atomic<std::uint32_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::uint32_t s = next++; s < streams; s = next++) {
        try {
          fn(s);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<EstimatorResult> estimate_means(
    const StreamPlan& plan, std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& draw) {
  plan.validate();
  std::vector<std::vector<MomentAccumulator>> per_stream(
      plan.streams, std::vector<MomentAccumulator>(dim));

  for_each_stream(plan.streams, [&](std::uint32_t s) {
    RngStream rng(plan.seed, s);
    auto local_draw = draw;  // per-stream copy: draws may keep scratch state
    auto& acc = per_stream[s];
    // Component-major block buffer so each component is contiguous for the
    // moment kernel.
    std::vector<double> block(kBlock * dim);
    std::vector<double> row(dim);
    std::size_t filled = 0;
    auto flush = [&] {
      for (std::size_t c = 0; c < dim; ++c) {
        acc[c].add_block(std::span<const double>(block.data() + c * kBlock, filled));
      }
      filled = 0;
    };
    const std::uint64_t count = plan.count_for(s);
    for (std::uint64_t i = 0; i < count; ++i) {
      local_draw(rng, row);
      for (std::size_t c = 0; c < dim; ++c) block[c * kBlock + filled] = row[c];
      if (++filled == kBlock) flush();
    }
    flush();
  });

  std::vector<EstimatorResult> out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    MomentAccumulator total;
    for (std::uint32_t s = 0; s < plan.streams; ++s) total.merge(per_stream[s][c]);
    out[c] = {total.mean(), total.std_error(), total.count(), plan.seed, plan.streams};
  }
  return out;
}

std::vector<std::vector<double>> collect_draws(
    const StreamPlan& plan, std::size_t dim,
    const std::function<void(RngStream&, std::span<double>)>& draw) {
  plan.validate();
  std::vector<std::vector<std::vector<double>>> per_stream(plan.streams);
  for_each_stream(plan.streams, [&](std::uint32_t s) {
    RngStream rng(plan.seed, s);
    auto local_draw = draw;
    const std::uint64_t count = plan.count_for(s);
    auto& cols = per_stream[s];
    cols.assign(dim, std::vector<double>(count));
    std::vector<double> row(dim);
    for (std::uint64_t i = 0; i < count; ++i) {
      local_draw(rng, row);
      for (std::size_t c = 0; c < dim; ++c) cols[c][i] = row[c];
    }
  });
  std::vector<std::vector<double>> out(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    out[c].reserve(plan.n_samples);
    for (auto& cols : per_stream) out[c].insert(out[c].end(), cols[c].begin(), cols[c].end());
  }
  return out;
}

EstimatorResult estimate_mean(const StreamPlan& plan,
                              const std::function<double(RngStream&)>& draw) {
  return estimate_means(plan, 1, [draw](RngStream& rng, std::span<double> out) {
    out[0] = draw(rng);
  })[0];
}

}  // namespace lmeasure
