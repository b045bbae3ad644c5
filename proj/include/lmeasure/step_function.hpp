#pragma once

#include <string>
#include <vector>

#include "lmeasure/kernels.hpp"

namespace lmeasure {

/// Strictly positive piecewise-constant function on X = [0, 1):
/// values[i] on [breakpoints[i], breakpoints[i+1]), with
/// 0 = breakpoints[0] < ... < breakpoints[n] = 1.
///
/// Serves as test function f and as multiplicator a of the Cartan group.
class StepFunction {
 public:
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction constant(double value);
  /// Equal-width pieces.
  static StepFunction uniform_pieces(std::vector<double> values);

  double operator()(double x) const;
  std::size_t pieces() const { return values_.size(); }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<double>& values() const { return values_; }
  double width(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  double min_value() const;
  double max_value() const;
  /// Integral against the uniform probability on [0, 1).
  double mean() const;

  StepFunction reciprocal() const;
  StepFunction scaled(double c) const;

  kernels::StepView view() const { return {breakpoints_, values_}; }

  /// "v1@b0:b1,v2@b1:b2,..." (the format accepted by the CLI).
  std::string to_string() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<double> values_;
};

/// Pointwise product on the common refinement of both breakpoint sets.
StepFunction operator*(const StepFunction& f, const StepFunction& g);

}  // namespace lmeasure
