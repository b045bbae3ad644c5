#include "lmeasure/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/kernels.hpp"

namespace lmeasure {
namespace {

constexpr std::size_t kMaxSticks = 10'000'000;

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream msg;
    msg << "tail tolerance eps must lie in (0, 1), got " << eps;
    throw DomainError(msg.str());
  }
}

// Joint stable sort of (mass, location) by decreasing mass.
void sort_pairs_decreasing(std::vector<double>& masses, std::vector<double>& locations) {
  std::vector<std::size_t> order(masses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return masses[a] > masses[b]; });
  std::vector<double> m(masses.size());
  std::vector<double> x(locations.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    m[i] = masses[order[i]];
    x[i] = locations[order[i]];
  }
  masses.swap(m);
  locations.swap(x);
}

}  // namespace

double WeightedAtomSeries::retained_mass() const {
  return kernels::active().sum(masses);
}

void WeightedAtomSeries::validate() const {
  if (masses.size() != locations.size()) throw DomainError("series: masses/locations length");
  for (std::size_t k = 0; k < masses.size(); ++k) {
    if (!(masses[k] > 0.0)) throw DomainError("series: masses must be positive");
    if (k && masses[k] > masses[k - 1]) throw DomainError("series: masses must be non-increasing");
    if (!(locations[k] >= 0.0 && locations[k] < 1.0)) {
      throw DomainError("series: locations must lie in [0, 1)");
    }
  }
  if (!(tail_bound >= 0.0)) throw DomainError("series: negative tail bound");
  if (normalized()) {
    const double s = retained_mass();
    if (s > 1.0 + 1e-12 || s < 1.0 - tail_bound - 1e-12) {
      throw DomainError("series: normalized masses do not sum to 1 within the tail bound");
    }
  } else if (!(*total_mass > 0.0) || !std::isfinite(*total_mass)) {
    throw DomainError("series: total mass must be positive");
  }
}

GemDraw sample_gem(PositiveReal theta, double eps, RngStream& rng) {
  require_eps(eps);
  GemDraw draw;
  const double inv_theta = 1.0 / theta;
  constexpr double kBelowOne = 1.0 - 0x1.0p-53;
  while (draw.residual > eps) {
    if (draw.sticks.size() >= kMaxSticks) {
      throw NumericalError("sample_gem: stick count limit reached before the tail tolerance");
    }
    // 1 - y = U^(1/theta) has density theta x^(theta-1); expm1 keeps small
    // sticks (large theta) accurate.
    const double log_keep = std::log(rng.uniform()) * inv_theta;
    double y = -std::expm1(log_keep);
    if (y < std::numeric_limits<double>::min()) y = std::numeric_limits<double>::min();
    draw.sticks.push_back(std::min(y, kBelowOne));
    draw.residual *= std::exp(log_keep);
  }
  return draw;
}

std::vector<double> stick_break(const GemDraw& draw) {
  std::vector<double> masses(draw.sticks.size());
  double remaining = 1.0;
  for (std::size_t i = 0; i < draw.sticks.size(); ++i) {
    masses[i] = draw.sticks[i] * remaining;
    remaining *= 1.0 - draw.sticks[i];
  }
  return masses;
}

std::vector<double> sort_decreasing(std::vector<double> masses) {
  std::stable_sort(masses.begin(), masses.end(), std::greater<>());
  return masses;
}

WeightedAtomSeries sample_dirichlet_process(PositiveReal theta, double eps, RngStream& rng) {
  const GemDraw gem = sample_gem(theta, eps, rng);
  WeightedAtomSeries s;
  s.masses = stick_break(gem);
  s.locations.resize(s.masses.size());
  for (double& x : s.locations) x = rng.uniform();
  sort_pairs_decreasing(s.masses, s.locations);
  s.tail_bound = gem.residual;
  s.theta = theta;
  s.eps = eps;
  s.seed = rng.seed();
  s.stream_id = rng.stream_id();
  return s;
}

WeightedAtomSeries sample_gamma_process(PositiveReal theta, double eps, RngStream& rng) {
  WeightedAtomSeries s = sample_dirichlet_process(theta, eps, rng);
  const double total = sample_gamma_variate(theta, rng);
  for (double& c : s.masses) c *= total;
  s.total_mass = total;
  s.tail_bound *= total;
  return s;
}

double lebesgue_log_weight(const WeightedAtomSeries& series) {
  if (series.normalized()) {
    throw DomainError("lebesgue_log_weight: series has no total mass (normalized sample)");
  }
  return *series.total_mass;
}

WeightedAtomSeries sample_lebesgue_weighted(PositiveReal theta, double eps, RngStream& rng) {
  WeightedAtomSeries s = sample_gamma_process(theta, eps, rng);
  s.log_weight = lebesgue_log_weight(s);
  return s;
}

WeightedAtomSeries apply_multiplicator(const StepFunction& a, const WeightedAtomSeries& series) {
  WeightedAtomSeries out = series;
  kernels::active().step_scale(series.masses, series.locations, a.view(), out.masses);
  sort_pairs_decreasing(out.masses, out.locations);
  const double tail = std::max(0.0, series.total() - series.retained_mass());
  out.total_mass = out.retained_mass() + tail * a.mean();
  out.tail_bound = series.tail_bound * a.max_value();
  return out;
}

std::vector<double> partition_sums(const WeightedAtomSeries& series, const PartitionSpec& spec,
                                   RngStream& rng) {
  const std::vector<double> p = spec.probabilities();
  std::vector<double> cumulative(p.size());
  std::partial_sum(p.begin(), p.end(), cumulative.begin());
  std::vector<double> sums(p.size(), 0.0);
  for (double c : series.masses) {
    const double u = rng.uniform();
    auto it = std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
    sums[static_cast<std::size_t>(it - cumulative.begin())] += c;
  }
  const double tail = std::max(0.0, series.total() - series.retained_mass());
  for (std::size_t i = 0; i < sums.size(); ++i) sums[i] += tail * p[i];
  return sums;
}

std::vector<double> aggregate_masses(const WeightedAtomSeries& series,
                                     const std::vector<double>& breakpoints) {
  if (breakpoints.size() < 2 || breakpoints.front() != 0.0 || breakpoints.back() != 1.0) {
    throw DomainError("aggregate_masses: breakpoints must span [0, 1]");
  }
  const std::size_t n = breakpoints.size() - 1;
  std::vector<double> sums(n, 0.0);
  for (std::size_t k = 0; k < series.masses.size(); ++k) {
    auto it = std::upper_bound(breakpoints.begin() + 1, breakpoints.end() - 1, series.locations[k]);
    sums[static_cast<std::size_t>(it - (breakpoints.begin() + 1))] += series.masses[k];
  }
  const double tail = std::max(0.0, series.total() - series.retained_mass());
  for (std::size_t i = 0; i < n; ++i) sums[i] += tail * (breakpoints[i + 1] - breakpoints[i]);
  return sums;
}

std::vector<EstimatorResult> estimate_box_mass(const PartitionSpec& spec,
                                               const std::vector<double>& sides,
                                               const StreamPlan& plan, double eps) {
  for (double b : sides) {
    if (!(b > 0.0)) throw DomainError("estimate_box_mass: box sides must be positive");
  }
  const PositiveReal theta(spec.theta(), "theta");
  return estimate_means(plan, sides.size(), [&](RngStream& rng, std::span<double> out) {
    const WeightedAtomSeries s = sample_lebesgue_weighted(theta, eps, rng);
    const std::vector<double> sums = partition_sums(s, spec, rng);
    const double largest = *std::max_element(sums.begin(), sums.end());
    const double weight = std::exp(s.log_weight);
    for (std::size_t j = 0; j < sides.size(); ++j) out[j] = largest <= sides[j] ? weight : 0.0;
  });
}

double sample_gamma_variate(PositiveReal shape, RngStream& rng) {
  if (shape < 1.0) {
    const double boosted = sample_gamma_variate(PositiveReal(shape + 1.0), rng);
    const double value = std::exp(std::log(boosted) + std::log(rng.uniform()) / shape);
    return std::max(value, std::numeric_limits<double>::min());
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace lmeasure
