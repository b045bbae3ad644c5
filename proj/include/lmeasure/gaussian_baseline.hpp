#pragma once

// Characteristic functions of the uniform probability on the (n-1)-sphere
// of radius R in R^n. By rotational symmetry they depend on |s| only:
//
//   phi_n(s) = E cos(s x_1) = C_n integral_{-1}^{1} (1 - r^2)^((n-3)/2) cos(s R r) dr
//            = Gamma(n/2) (2 / (s R))^(n/2 - 1) J_{n/2-1}(s R).
//
// With R = sqrt(n) they converge to exp(-s^2/2) as n grows.

#include <vector>

#include "lmeasure/estimator.hpp"

namespace lmeasure {

struct SphereConfig {
  int n = 2;
  double radius = 1.4142135623730951;

  /// Radius sqrt(n).
  static SphereConfig standard(int n);
  void validate() const;
};

/// E cos(s x_1), x uniform on the sphere (normalized Gaussian vector).
EstimatorResult sphere_charfun_mc(const SphereConfig& cfg, double s_norm, const StreamPlan& plan);

/// Same expectation with s pointing in a fresh uniform random direction per
/// draw; checks the reduction to the first axis.
EstimatorResult sphere_charfun_mc_random_direction(const SphereConfig& cfg, double s_norm,
                                                   const StreamPlan& plan);

/// The one-dimensional integral, normalized numerically so that s = 0 gives 1.
double sphere_charfun_quad(const SphereConfig& cfg, double s_norm);

/// Closed form through J_{n/2-1}.
double sphere_charfun_bessel(const SphereConfig& cfg, double s_norm);

double gaussian_charfun(double s_norm);

struct MpRow {
  int n = 0;
  double sup_gap = 0.0;  // sup over the grid of |phi_n(s) - exp(-s^2/2)|
  double s_at_sup = 0.0;
};

struct MpTable {
  std::vector<MpRow> rows;
  bool strictly_decreasing = false;
  /// Slope of ln sup_gap against ln n (about -1).
  double loglog_slope = 0.0;
};

/// Quadrature route on spheres of radius sqrt(n).
MpTable mp_convergence_table(const std::vector<double>& s_grid, const std::vector<int>& n_list);

/// s = 0, step, ..., s_max (s_max included).
std::vector<double> uniform_grid(double s_max, std::size_t points);

}  // namespace lmeasure
