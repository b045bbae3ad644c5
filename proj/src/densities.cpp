#include "lmeasure/densities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/quadrature.hpp"
#include "lmeasure/special_functions.hpp"

namespace lmeasure {
namespace {

void require_same_size(const PartitionSpec& spec, std::size_t n) {
  if (spec.size() != n) {
    std::ostringstream msg;
    msg << "dimension mismatch: partition has " << spec.size() << " parts, point has " << n;
    throw DomainError(msg.str());
  }
}

// sum_i (theta_i - 1) ln x_i - ln Gamma(theta_i)
double log_power_product(const PartitionSpec& spec, const std::vector<double>& x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double t = spec.weights()[i];
    if (t != 1.0) acc += (t - 1.0) * std::log(x[i]);
    acc -= log_gamma(t);
  }
  return acc;
}

}  // namespace

PartitionSpec::PartitionSpec(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw DomainError("partition needs at least one part");
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      std::ostringstream msg;
      msg << "partition weights must be positive and finite, got " << w;
      throw DomainError(msg.str());
    }
  }
  theta_ = std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

std::vector<double> PartitionSpec::probabilities() const {
  std::vector<double> p(weights_.size());
  std::transform(weights_.begin(), weights_.end(), p.begin(),
                 [this](double w) { return w / theta_; });
  return p;
}

SimplexPoint::SimplexPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("simplex point needs at least one coordinate");
  double total = 0.0;
  for (double c : coords_) {
    if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("simplex coordinates must be >= 0");
    total += c;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "simplex coordinates must sum to 1, got " << total;
    throw DomainError(msg.str());
  }
}

OrthantPoint::OrthantPoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw DomainError("orthant point needs at least one coordinate");
  for (double c : coords_) {
    if (!(c > 0.0) || !std::isfinite(c)) {
      std::ostringstream msg;
      msg << "orthant coordinates must be positive and finite, got " << c;
      throw DomainError(msg.str());
    }
  }
}

double dirichlet_log_density(const PartitionSpec& spec, const SimplexPoint& u) {
  require_same_size(spec, u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u.coords()[i] == 0.0 && spec.weights()[i] != 1.0) {
      std::ostringstream msg;
      msg << "Dirichlet density at a boundary point: coordinate " << i
          << " is 0 with theta_i = " << spec.weights()[i];
      throw SingularityError(msg.str());
    }
  }
  return log_gamma(spec.theta()) + log_power_product(spec, u.coords());
}

double gamma_log_density(const PartitionSpec& spec, const OrthantPoint& x) {
  require_same_size(spec, x.size());
  double total = 0.0;
  for (double c : x.coords()) total += c;
  return log_power_product(spec, x.coords()) - total;
}

double lebesgue_log_density(const PartitionSpec& spec, const OrthantPoint& x) {
  require_same_size(spec, x.size());
  return log_power_product(spec, x.coords());
}

double box_mass_L(const PartitionSpec& spec, double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("box side b must be positive");
  double log_mass = 0.0;
  for (double t : spec.weights()) log_mass += t * std::log(b) - log_gamma(t + 1.0);
  return std::exp(log_mass);
}

double semigroup_convolution_check(PositiveReal theta1, PositiveReal theta2,
                                   const ConvolutionGrid& grid) {
  if (!(grid.z_max >= 5.0) || grid.points < 1) {
    throw DomainError("convolution grid must cover [0, z_max] with z_max >= 5");
  }
  const double t1 = theta1;
  const double t2 = theta2;
  const double log_norm = log_gamma(t1) + log_gamma(t2);
  const double log_norm_sum = log_gamma(t1 + t2);
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-13;

  double worst = 0.0;
  for (std::size_t i = 1; i <= grid.points; ++i) {
    const double z = grid.z_max * static_cast<double>(i) / static_cast<double>(grid.points);
    // x^(t1-1) (z-x)^(t2-1), using the exact endpoint distances from the rule.
    auto integrand = [&](double, double from_zero, double from_z) {
      return std::exp((t1 - 1.0) * std::log(from_zero) + (t2 - 1.0) * std::log(from_z) -
                      log_norm);
    };
    const double conv = quad::tanh_sinh(integrand, 0.0, z, opt).value;
    const double exact = std::exp((t1 + t2 - 1.0) * std::log(z) - log_norm_sum);
    worst = std::max(worst, std::abs(conv - exact));
  }
  return worst;
}

double lemma1_pointwise_check(const PartitionSpec& spec, const OrthantPoint& x) {
  require_same_size(spec, x.size());
  double s = 0.0;
  for (double c : x.coords()) s += c;
  std::vector<double> u(x.coords());
  for (double& c : u) c /= s;

  const double theta = spec.theta();
  const double log_gamma_theta_at_s = (theta - 1.0) * std::log(s) - s - log_gamma(theta);
  const double n_minus_1 = static_cast<double>(x.size() - 1);
  return std::abs(gamma_log_density(spec, x) - dirichlet_log_density(spec, SimplexPoint(u)) -
                  log_gamma_theta_at_s + n_minus_1 * std::log(s));
}

}  // namespace lmeasure
