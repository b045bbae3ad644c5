#include <algorithm>

#include "lmeasure/kernels.hpp"

namespace lmeasure::kernels::scalar {
namespace {

double sum(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Moments shifted_moments(std::span<const double> v, double shift) {
  Moments m;
  for (double x : v) {
    const double d = x - shift;
    m.sum += d;
    m.sum_sq += d * d;
  }
  return m;
}

// Piece index = number of interior breakpoints <= x.
double step_value(StepView f, double x) {
  const auto interior = f.breakpoints.subspan(1, f.values.size() - 1);
  const auto it = std::upper_bound(interior.begin(), interior.end(), x);
  return f.values[static_cast<std::size_t>(it - interior.begin())];
}

double step_functional(std::span<const double> masses, std::span<const double> locations,
                       StepView f, double offset) {
  double acc = 0.0;
  for (std::size_t k = 0; k < masses.size(); ++k) {
    acc += masses[k] * (step_value(f, locations[k]) - offset);
  }
  return acc;
}

void step_scale(std::span<const double> masses, std::span<const double> locations, StepView f,
                std::span<double> out) {
  for (std::size_t k = 0; k < masses.size(); ++k) out[k] = step_value(f, locations[k]) * masses[k];
}

}  // namespace

const Table kTable = {Isa::scalar, sum, dot, shifted_moments, step_functional, step_scale};

}  // namespace lmeasure::kernels::scalar
