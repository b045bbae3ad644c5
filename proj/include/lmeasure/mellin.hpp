#pragma once

// Mellin-Barnes functions
//
//   F_n(lambda) = integral over H_n = {sum x_k = 0} of exp(-lambda sum_k e^{x_k}) dx
//
// (Lebesgue measure on the n - 1 free coordinates), computed two ways:
// directly for n <= 4, and for any n as the inverse Mellin transform of
// Gamma(s)^n,
//
//   F_n(lambda) = 1/(2 pi i) integral_{a - i inf}^{a + i inf} Gamma(s)^n lambda^(-n s) ds.
//
// The exponential rate lim ln F_n / n is L(lambda) = ln Gamma(gamma) - gamma ln lambda
// where psi(gamma) = ln lambda.

#include <functional>
#include <optional>
#include <vector>

#include "lmeasure/positive_real.hpp"

namespace lmeasure {

struct SaddleSolution {
  double lambda = 1.0;
  double gamma = 1.0;
  double L_value = 0.0;    // ln Gamma(gamma) - gamma ln lambda
  double curvature = 1.0;  // psi'(gamma)

  /// Gamma(gamma) / lambda^gamma, the non-logarithmic form of the rate.
  double L_ratio() const;
};

/// Root of psi(gamma) = ln lambda by bracketing and safeguarded Newton.
SaddleSolution solve_saddle(PositiveReal lambda);

/// L(lambda) alone.
double limit_rate(PositiveReal lambda);

/// The lambda at which L changes sign (L is strictly decreasing).
double limit_rate_zero();

/// Nested adaptive quadrature over the free coordinates, n in 1..4.
double F_direct(int n, PositiveReal lambda);

/// ln F_n(lambda) from the contour integral along Re s = abscissa
/// (default: the saddle gamma). Works in log space, so large n is fine.
double log_F_contour(int n, PositiveReal lambda, std::optional<double> abscissa = {});
double F_contour(int n, PositiveReal lambda, std::optional<double> abscissa = {});

struct LimitRow {
  int n = 0;
  double log_F_over_n = 0.0;
  double gap = 0.0;       // log_F_over_n - L
  double envelope = 0.0;  // fitted_C ln n / n
};

struct LimitStudy {
  SaddleSolution saddle;
  std::vector<LimitRow> rows;  // n = 2..n_max
  /// max |gap| n / ln n over n <= 10; the envelope is then checked for all n.
  double fitted_C = 0.0;
  bool envelope_ok = false;
  /// |gap| non-increasing from n = 5 on.
  bool monotone_from_5 = false;
  /// Least-squares limit of L + a ln n / n + b / n + c / n^2 over n >= 5.
  double extrapolated = 0.0;
  double extrapolation_gap = 0.0;
  /// Gap of the last row against ln of the ratio form is the same number;
  /// this is the gap against the ratio form itself.
  double ratio_form_gap = 0.0;
};

LimitStudy L_limit_study(PositiveReal lambda, int n_max);

/// (prod f_k)^(1/n)
double rho_geometric_mean(const std::vector<double>& f);

/// Laplace transform of the invariant measure on the hypersphere of radius
/// r in dimension n = f.size():  D_n(f) = F_n(rho_n(f) r).
double log_D_n(const std::vector<double>& f, PositiveReal r);
double D_n(const std::vector<double>& f, PositiveReal r);

struct RadiusSchedule {
  enum class Kind { constant, sqrt_n, custom };
  Kind kind = Kind::constant;
  double scale = 1.0;
  std::function<double(int)> custom;

  static RadiusSchedule constant(double r);
  static RadiusSchedule sqrt_n(double scale);

  /// r(n); throws DomainError if not positive.
  double operator()(int n) const;
  const char* name() const;
};

struct DivergenceRow {
  int n = 0;
  double lambda = 0.0;
  double r = 0.0;
  double gamma = 0.0;  // saddle of lambda r
  double L = 0.0;      // L(lambda r)
  double log_D_over_n = 0.0;
  double gap = 0.0;    // log_D_over_n - L
};

/// ln D_n(f = lambda, r_n) / n for n in [n_min, n_max]. For a constant
/// radius the rows tend to L(lambda r), so D_n goes to 0 or infinity
/// geometrically unless lambda r sits on the zero of L.
std::vector<DivergenceRow> divergence_experiment(PositiveReal lambda,
                                                 const RadiusSchedule& schedule, int n_min,
                                                 int n_max);

}  // namespace lmeasure
