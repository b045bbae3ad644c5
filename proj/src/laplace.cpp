#include "lmeasure/laplace.hpp"

#include <cmath>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/kernels.hpp"
#include "lmeasure/special_functions.hpp"

namespace lmeasure {

double log_mean(const StepFunction& f, PositiveReal theta) {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) acc += f.width(i) * std::log(f.values()[i]);
  return theta * acc;
}

double phi(const StepFunction& a, PositiveReal theta) { return std::exp(log_mean(a, theta)); }

double analytic_laplace(PositiveReal theta, const StepFunction& f) {
  return std::exp(-log_mean(f, theta));
}

double linear_functional(const StepFunction& f, const WeightedAtomSeries& series) {
  const double atoms = kernels::active().step_functional(series.masses, series.locations,
                                                         f.view(), 0.0);
  const double tail = std::max(0.0, series.total() - series.retained_mass());
  return atoms + tail * f.mean();
}

EstimatorResult mc_laplace(PositiveReal theta, const StepFunction& f, const McOptions& opt) {
  if (f.min_value() <= 0.5 && !opt.allow_infinite_variance) {
    std::ostringstream msg;
    msg << "mc_laplace: min f = " << f.min_value()
        << " <= 1/2 gives an infinite-variance weighted estimator; pass the override to run "
           "anyway";
    throw VarianceError(msg.str());
  }
  const double f_mean_minus_one = f.mean() - 1.0;
  return estimate_mean(opt.plan, [&](RngStream& rng) {
    const WeightedAtomSeries s = sample_gamma_process(theta, opt.eps, rng);
    // -<f, xi> + sum c_k, written so that f = 1 gives exactly 0.
    const double atoms =
        kernels::active().step_functional(s.masses, s.locations, f.view(), 1.0);
    const double tail = std::max(0.0, s.total() - s.retained_mass());
    return std::exp(-(atoms + tail * f_mean_minus_one));
  });
}

QuasiInvarianceReport quasi_invariance_check(PositiveReal theta, const StepFunction& a,
                                             const StepFunction& f, const McOptions& opt) {
  QuasiInvarianceReport r;
  const StepFunction af = a * f;
  r.phi_a = phi(a, theta);
  r.analytic_f = analytic_laplace(theta, f);
  r.analytic_af = analytic_laplace(theta, af);
  r.exact_residual = std::abs(r.analytic_af * r.phi_a - r.analytic_f);
  r.exact_ok = r.exact_residual <= 1e-12;
  r.mc_af = mc_laplace(theta, af, opt);
  if (r.mc_af.std_error > 0.0) {
    r.z_score = (r.mc_af.estimate - r.analytic_af) / r.mc_af.std_error;
    r.mc_ok = std::abs(r.z_score) <= 3.0;
  } else {
    r.mc_ok = std::abs(r.mc_af.estimate - r.analytic_af) <= 1e-12;
  }
  return r;
}

FunctionalDistributionReport functional_distribution_check(PositiveReal theta,
                                                           const StepFunction& f, double b,
                                                           std::size_t windows,
                                                           const McOptions& opt) {
  if (!(b > 0.0)) throw DomainError("functional_distribution_check: window b must be positive");
  if (windows < 1) throw DomainError("functional_distribution_check: need at least one window");
  FunctionalDistributionReport report;
  report.c_f = log_mean(f, theta);
  std::vector<double> ts(windows);
  for (std::size_t k = 0; k < windows; ++k) {
    ts[k] = b * static_cast<double>(k + 1) / static_cast<double>(windows);
  }
  // On {<f, xi> <= b} the total mass is at most b / min f, so the weights
  // exp(total) are bounded and every window estimator has finite variance.
  const auto estimates = estimate_means(opt.plan, windows, [&](RngStream& rng,
                                                               std::span<double> out) {
    const WeightedAtomSeries s = sample_lebesgue_weighted(theta, opt.eps, rng);
    const double value = linear_functional(f, s);
    const double weight = std::exp(s.log_weight);
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = value <= ts[k] ? weight : 0.0;
  });
  const double log_norm = -report.c_f - log_gamma(theta + 1.0);
  for (std::size_t k = 0; k < windows; ++k) {
    WindowRow row;
    row.t = ts[k];
    row.weighted = estimates[k];
    row.exact = std::exp(log_norm + theta * std::log(ts[k]));
    row.z_score = row.weighted.std_error > 0.0
                      ? (row.weighted.estimate - row.exact) / row.weighted.std_error
                      : 0.0;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace lmeasure
