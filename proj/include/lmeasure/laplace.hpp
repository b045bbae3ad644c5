#pragma once

// Laplace transform of the sigma-finite measure L^theta on positive test
// functions,
//
//   Psi_theta(f) = integral exp(-<f, xi>) dL^theta(xi) = exp(-integral ln f dm),
//
// with m = theta * uniform on [0, 1), so f = d constant gives d^(-theta).
// Monte Carlo evaluation uses gamma-process samples weighted by
// exp(sum c_k):  Psi_theta(f) = E[exp(-sum c_k (f(x_k) - 1))].
// The weighted second moment is Psi_theta(2f - 1), finite iff min f > 1/2.

#include <vector>

#include "lmeasure/estimator.hpp"
#include "lmeasure/positive_real.hpp"
#include "lmeasure/processes.hpp"
#include "lmeasure/step_function.hpp"

namespace lmeasure {

/// integral ln f dm = theta * sum_i width_i ln f_i
double log_mean(const StepFunction& f, PositiveReal theta);

/// exp(log_mean(a)); equals 1 exactly on the special Cartan group M_0.
double phi(const StepFunction& a, PositiveReal theta);

double analytic_laplace(PositiveReal theta, const StepFunction& f);

struct McOptions {
  StreamPlan plan;
  double eps = kDefaultTailEps;
  /// Run even when the weighted estimator has infinite variance.
  bool allow_infinite_variance = false;
};

EstimatorResult mc_laplace(PositiveReal theta, const StepFunction& f, const McOptions& opt);

struct QuasiInvarianceReport {
  double phi_a = 0.0;
  double analytic_f = 0.0;
  double analytic_af = 0.0;
  /// |Psi(a f) phi(a) - Psi(f)|
  double exact_residual = 0.0;
  EstimatorResult mc_af;
  double z_score = 0.0;  // (mc_af - analytic_af) / stderr
  bool exact_ok = false;
  bool mc_ok = false;
};

/// Checks Psi(a f) phi(a) = Psi(f) exactly (1e-12) and the Monte Carlo leg
/// mc_laplace(a f) against Psi(a f) within 3 standard errors.
QuasiInvarianceReport quasi_invariance_check(PositiveReal theta, const StepFunction& a,
                                             const StepFunction& f, const McOptions& opt);

struct WindowRow {
  double t = 0.0;
  EstimatorResult weighted;  // L^theta-mass of {<f, xi> <= t}
  double exact = 0.0;        // exp(-c(f)) t^theta / Gamma(theta + 1)
  double z_score = 0.0;
};

struct FunctionalDistributionReport {
  double c_f = 0.0;  // integral ln f dm
  std::vector<WindowRow> rows;
};

/// Distribution of the linear functional <f, .> under L^theta, which is the
/// measure exp(-c(f)) L_theta on the half-line; windows t = b k / windows.
FunctionalDistributionReport functional_distribution_check(PositiveReal theta,
                                                           const StepFunction& f, double b,
                                                           std::size_t windows,
                                                           const McOptions& opt);

/// <f, xi> including the tail mass at the uniform mean of f.
double linear_functional(const StepFunction& f, const WeightedAtomSeries& series);

}  // namespace lmeasure
