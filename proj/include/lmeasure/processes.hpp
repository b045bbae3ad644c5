#pragma once

// Samplers for the random discrete measures xi = sum_k c_k delta_{x_k} on
// X = [0, 1) with base measure theta * uniform:
//
//   GEM(theta) sticks  --stick_break-->  masses  --sort_decreasing-->  PD(theta)
//   Dirichlet process  = PD(theta) x uniform locations
//   gamma process      = Dirichlet process scaled by an independent gamma(theta) total
//
// The sigma-finite measures (infinite-dimensional Lebesgue L^theta and the
// conic Poisson-Dirichlet measure) cannot be sampled; they are represented
// by gamma-process samples carrying the log importance weight sum_k c_k.
// Estimators against them must use integrands with a finite weighted second
// moment.

#include <cstdint>
#include <optional>
#include <vector>

#include "lmeasure/densities.hpp"
#include "lmeasure/estimator.hpp"
#include "lmeasure/positive_real.hpp"
#include "lmeasure/rng.hpp"
#include "lmeasure/step_function.hpp"

namespace lmeasure {

inline constexpr double kDefaultTailEps = 1e-10;

/// Sticks y_1..y_K of a truncated GEM draw and the untruncated remainder
/// prod (1 - y_j).
struct GemDraw {
  std::vector<double> sticks;
  double residual = 1.0;
};

/// Truncated discrete measure sum_k c_k delta_{x_k}, masses non-increasing.
struct WeightedAtomSeries {
  std::vector<double> masses;
  std::vector<double> locations;
  /// Total mass including the truncated tail; empty for normalized series
  /// (points of the simplex, total 1).
  std::optional<double> total_mass;
  /// Upper bound on the mass not represented by atoms.
  double tail_bound = 0.0;
  /// ln of the importance weight (0 for probability-law samples).
  double log_weight = 0.0;

  double theta = 1.0;
  double eps = kDefaultTailEps;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  bool normalized() const { return !total_mass.has_value(); }
  double total() const { return total_mass.value_or(1.0); }
  double retained_mass() const;
  /// Throws DomainError when an invariant is broken.
  void validate() const;
};

/// Sticks with 1 - y_i = U^(1/theta), so 1 - y has density theta x^(theta-1)
/// and y is beta(1, theta); drawn until the residual drops to eps or below.
GemDraw sample_gem(PositiveReal theta, double eps, RngStream& rng);

/// c_i = y_i prod_{j<i} (1 - y_j).
std::vector<double> stick_break(const GemDraw& draw);

/// Stable non-increasing sort.
std::vector<double> sort_decreasing(std::vector<double> masses);

WeightedAtomSeries sample_dirichlet_process(PositiveReal theta, double eps, RngStream& rng);
WeightedAtomSeries sample_gamma_process(PositiveReal theta, double eps, RngStream& rng);

/// ln dL^theta/dLambda^theta = sum_k c_k, i.e. the total mass.
double lebesgue_log_weight(const WeightedAtomSeries& series);

/// Gamma-process sample with log_weight set so that weighted averages are
/// integrals against L^theta.
WeightedAtomSeries sample_lebesgue_weighted(PositiveReal theta, double eps, RngStream& rng);

/// Cartan-group action: c_k -> a(x_k) c_k, then a joint non-increasing
/// re-sort of (mass, location) pairs. The truncated tail is scaled by the
/// uniform mean of a (its atoms sit at i.i.d. uniform locations).
WeightedAtomSeries apply_multiplicator(const StepFunction& a, const WeightedAtomSeries& series);

/// Marks each atom independently with part i with probability theta_i/theta
/// and returns the n part sums. The tail mass is split in the same
/// proportions, so the parts add up to the series total.
std::vector<double> partition_sums(const WeightedAtomSeries& series, const PartitionSpec& spec,
                                   RngStream& rng);

/// Masses aggregated over the location intervals [b_i, b_{i+1}); the tail is
/// split by interval width.
std::vector<double> aggregate_masses(const WeightedAtomSeries& series,
                                     const std::vector<double>& breakpoints);

/// L^theta-weighted Monte Carlo mass of the box [0, b]^n for the partition
/// sums, one estimate per entry of `sides`:  E[exp(total) 1{sums <= b}].
/// The exact value is box_mass_L(spec, b). Variance is finite because the
/// indicator bounds the total mass by n b.
std::vector<EstimatorResult> estimate_box_mass(const PartitionSpec& spec,
                                               const std::vector<double>& sides,
                                               const StreamPlan& plan,
                                               double eps = kDefaultTailEps);

/// Exact gamma(shape) draw: Marsaglia-Tsang for shape >= 1, and
/// gamma(shape + 1) * U^(1/shape) below one.
double sample_gamma_variate(PositiveReal shape, RngStream& rng);

}  // namespace lmeasure
