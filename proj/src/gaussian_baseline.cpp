#include "lmeasure/gaussian_baseline.hpp"

#include <cmath>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/kernels.hpp"
#include "lmeasure/quadrature.hpp"
#include "lmeasure/special_functions.hpp"

namespace lmeasure {
namespace {

void require_s(double s) {
  if (!(s >= 0.0) || !std::isfinite(s)) {
    std::ostringstream msg;
    msg << "|s| must be finite and non-negative, got " << s;
    throw DomainError(msg.str());
  }
}

void gaussian_vector(RngStream& rng, std::vector<double>& g) {
  for (double& v : g) v = rng.normal();
}

// 2 * integral_0^1 (1 - r^2)^((n-3)/2) cos(w r) dr.
double half_line_integral(int n, double w) {
  const double p = 0.5 * (n - 3);
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-12;
  if (n < 5) {
    // (1 - r)^p is singular (n = 2) or has an unbounded derivative (n = 3, 4)
    // at r = 1; tanh-sinh with the exact distance 1 - r handles both.
    auto f = [&](double r, double, double to_one) {
      return std::exp(p * (std::log(to_one) + std::log1p(r))) * std::cos(w * r);
    };
    return 2.0 * quad::tanh_sinh(f, 0.0, 1.0, opt).value;
  }
  auto f = [&](double r) { return std::exp(p * std::log1p(-r * r)) * std::cos(w * r); };
  return 2.0 * quad::gauss_kronrod(f, 0.0, 1.0, opt, {0.25, 0.5, 0.75}).value;
}

}  // namespace

SphereConfig SphereConfig::standard(int n) {
  SphereConfig cfg;
  cfg.n = n;
  cfg.radius = std::sqrt(static_cast<double>(n));
  cfg.validate();
  return cfg;
}

void SphereConfig::validate() const {
  if (n < 2) {
    std::ostringstream msg;
    msg << "sphere dimension n must be at least 2, got " << n;
    throw DomainError(msg.str());
  }
  if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("sphere radius must be positive");
}

EstimatorResult sphere_charfun_mc(const SphereConfig& cfg, double s_norm, const StreamPlan& plan) {
  cfg.validate();
  require_s(s_norm);
  const double k = s_norm * cfg.radius;
  return estimate_mean(plan, [&, g = std::vector<double>()](RngStream& rng) mutable {
    g.resize(static_cast<std::size_t>(cfg.n));
    gaussian_vector(rng, g);
    const double norm = std::sqrt(kernels::active().dot(g, g));
    return std::cos(k * g[0] / norm);
  });
}

EstimatorResult sphere_charfun_mc_random_direction(const SphereConfig& cfg, double s_norm,
                                                   const StreamPlan& plan) {
  cfg.validate();
  require_s(s_norm);
  const double k = s_norm * cfg.radius;
  return estimate_mean(plan, [&, g = std::vector<double>(), u = std::vector<double>()](
                                 RngStream& rng) mutable {
    g.resize(static_cast<std::size_t>(cfg.n));
    u.resize(static_cast<std::size_t>(cfg.n));
    gaussian_vector(rng, g);
    gaussian_vector(rng, u);
    const auto& kt = kernels::active();
    const double cosine = kt.dot(g, u) / std::sqrt(kt.dot(g, g) * kt.dot(u, u));
    return std::cos(k * cosine);
  });
}

double sphere_charfun_quad(const SphereConfig& cfg, double s_norm) {
  cfg.validate();
  require_s(s_norm);
  if (s_norm == 0.0) return 1.0;
  return half_line_integral(cfg.n, s_norm * cfg.radius) / half_line_integral(cfg.n, 0.0);
}

double sphere_charfun_bessel(const SphereConfig& cfg, double s_norm) {
  cfg.validate();
  require_s(s_norm);
  const double nu = 0.5 * cfg.n - 1.0;
  const double x = s_norm * cfg.radius;
  if (x <= 2.0 * std::sqrt(nu + 1.0)) {
    // Gamma(nu + 1) (2/x)^nu J_nu(x) = sum_k (-x^2/4)^k Gamma(nu+1) / (k! Gamma(nu+k+1)),
    // whose terms shrink from the start in this range.
    const double q = -0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (k * (nu + k));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(log_gamma(nu + 1.0) + nu * std::log(2.0 / x)) * bessel_j(nu, x);
}

double gaussian_charfun(double s_norm) { return std::exp(-0.5 * s_norm * s_norm); }

MpTable mp_convergence_table(const std::vector<double>& s_grid, const std::vector<int>& n_list) {
  if (s_grid.empty() || n_list.empty()) throw DomainError("mp_convergence_table: empty grid");
  for (double s : s_grid) require_s(s);
  MpTable table;
  table.rows.resize(n_list.size());
  for_each_stream(static_cast<std::uint32_t>(n_list.size()), [&](std::uint32_t i) {
    const SphereConfig cfg = SphereConfig::standard(n_list[i]);
    MpRow& row = table.rows[i];
    row.n = cfg.n;
    for (double s : s_grid) {
      const double gap = std::abs(sphere_charfun_quad(cfg, s) - gaussian_charfun(s));
      if (gap > row.sup_gap) {
        row.sup_gap = gap;
        row.s_at_sup = s;
      }
    }
  });
  table.strictly_decreasing = true;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    if (!(table.rows[i].sup_gap < table.rows[i - 1].sup_gap)) table.strictly_decreasing = false;
  }
  // Ordinary least-squares slope in log-log coordinates.
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (const auto& row : table.rows) {
    if (!(row.sup_gap > 0.0)) continue;
    const double lx = std::log(row.n), ly = std::log(row.sup_gap);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly; m += 1;
  }
  if (m >= 2) table.loglog_slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return table;
}

std::vector<double> uniform_grid(double s_max, std::size_t points) {
  require_s(s_max);
  if (points < 2) throw DomainError("uniform_grid: need at least two points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = s_max * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

}  // namespace lmeasure
