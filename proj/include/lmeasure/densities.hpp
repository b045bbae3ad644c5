#pragma once

// Finite-dimensional log-densities of the three self-consistent systems on a
// partition with masses theta_1..theta_n:
//   Dirichlet  D(u)  = Gamma(theta) prod u_i^(theta_i-1) / Gamma(theta_i)   on the simplex
//   gamma      g(x)  = prod x_i^(theta_i-1) e^(-x_i) / Gamma(theta_i)       on the orthant
//   Lebesgue   L(x)  = prod x_i^(theta_i-1) / Gamma(theta_i)                on the orthant
// The simplex reference measure is du_1 ... du_{n-1}, so the uniform
// density (all theta_i = 1) is Gamma(n).

#include <cstddef>
#include <vector>

#include "lmeasure/positive_real.hpp"

namespace lmeasure {

/// Partition masses theta_1..theta_n (n >= 1, all > 0) and their sum theta.
class PartitionSpec {
 public:
  explicit PartitionSpec(std::vector<double> weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }
  double theta() const { return theta_; }
  /// theta_i / theta
  std::vector<double> probabilities() const;

 private:
  std::vector<double> weights_;
  double theta_;
};

/// Point of the standard simplex: coords >= 0 summing to 1 (within 1e-12).
class SimplexPoint {
 public:
  explicit SimplexPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

 private:
  std::vector<double> coords_;
};

/// Point of the open orthant: all coords > 0.
class OrthantPoint {
 public:
  explicit OrthantPoint(std::vector<double> coords);
  const std::vector<double>& coords() const { return coords_; }
  std::size_t size() const { return coords_.size(); }

 private:
  std::vector<double> coords_;
};

double dirichlet_log_density(const PartitionSpec& spec, const SimplexPoint& u);
double gamma_log_density(const PartitionSpec& spec, const OrthantPoint& x);
double lebesgue_log_density(const PartitionSpec& spec, const OrthantPoint& x);

/// Mass of the box [0, b]^n under L: prod b^theta_i / Gamma(theta_i + 1).
double box_mass_L(const PartitionSpec& spec, double b);

struct ConvolutionGrid {
  double z_max = 5.0;
  std::size_t points = 50;
};

/// Max over z in (0, z_max] of |(L_t1 * L_t2)(z) - L_{t1+t2}(z)|, with the
/// convolution computed by quadrature.
double semigroup_convolution_check(PositiveReal theta1, PositiveReal theta2,
                                   const ConvolutionGrid& grid = {});

/// |ln g(x) - ln D(x/s) - ln g_theta(s) + (n-1) ln s| with s = sum x_i; the
/// (n-1) ln s term is the Jacobian of x -> (x/s, s).
double lemma1_pointwise_check(const PartitionSpec& spec, const OrthantPoint& x);

}  // namespace lmeasure
