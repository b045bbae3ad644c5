#pragma once

#include <functional>
#include <span>
#include <vector>

namespace lmeasure::stats {

struct KsResult {
  double statistic = 0.0;  // sup |F_n - F|
  double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test of `samples` against `cdf`.
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test.
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

/// Asymptotic Kolmogorov survival function Q(lambda) = P(K > lambda).
double kolmogorov_q(double lambda);

/// P-value for statistic D with effective sample size n (Stephens'
/// finite-sample correction).
double ks_p_value(double statistic, double effective_n);

double mean(std::span<const double> v);
/// Unbiased sample variance.
double variance(std::span<const double> v);
/// Pearson correlation.
double correlation(std::span<const double> a, std::span<const double> b);

}  // namespace lmeasure::stats
