#include "lmeasure/step_function.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "lmeasure/errors.hpp"

namespace lmeasure {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
  if (values_.empty() || breakpoints_.size() != values_.size() + 1) {
    throw DomainError("step function needs n values and n+1 breakpoints");
  }
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0) {
    throw DomainError("step function breakpoints must span [0, 1)");
  }
  for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i) {
    if (!(breakpoints_[i] < breakpoints_[i + 1])) {
      throw DomainError("step function breakpoints must be strictly increasing");
    }
  }
  for (double v : values_) {
    // Non-positive test functions have no finite distribution under the
    // sigma-finite measures, so they are rejected here.
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "step function values must be positive and finite, got " << v;
      throw DomainError(msg.str());
    }
  }
}

StepFunction StepFunction::constant(double value) { return StepFunction({0.0, 1.0}, {value}); }

StepFunction StepFunction::uniform_pieces(std::vector<double> values) {
  const std::size_t n = values.size();
  std::vector<double> breaks(n + 1);
  for (std::size_t i = 0; i <= n; ++i) breaks[i] = static_cast<double>(i) / static_cast<double>(n);
  return StepFunction(std::move(breaks), std::move(values));
}

double StepFunction::operator()(double x) const {
  const auto interior_begin = breakpoints_.begin() + 1;
  const auto interior_end = breakpoints_.end() - 1;
  const auto it = std::upper_bound(interior_begin, interior_end, x);
  return values_[static_cast<std::size_t>(it - interior_begin)];
}

double StepFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double StepFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double StepFunction::mean() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) acc += width(i) * values_[i];
  return acc;
}

StepFunction StepFunction::reciprocal() const {
  std::vector<double> inv(values_.size());
  std::transform(values_.begin(), values_.end(), inv.begin(), [](double v) { return 1.0 / v; });
  return StepFunction(breakpoints_, std::move(inv));
}

StepFunction StepFunction::scaled(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return StepFunction(breakpoints_, std::move(v));
}

std::string StepFunction::to_string() const {
  auto fmt = [](double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
  };
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += fmt(values_[i]) + '@' + fmt(breakpoints_[i]) + ':' + fmt(breakpoints_[i + 1]);
  }
  return out;
}

StepFunction operator*(const StepFunction& f, const StepFunction& g) {
  std::vector<double> breaks;
  std::set_union(f.breakpoints().begin(), f.breakpoints().end(), g.breakpoints().begin(),
                 g.breakpoints().end(), std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<double> values(breaks.size() - 1);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double left = breaks[i];
    values[i] = f(left) * g(left);
  }
  return StepFunction(std::move(breaks), std::move(values));
}

}  // namespace lmeasure
