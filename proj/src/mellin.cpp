#include "lmeasure/mellin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "lmeasure/errors.hpp"
#include "lmeasure/estimator.hpp"
#include "lmeasure/quadrature.hpp"
#include "lmeasure/special_functions.hpp"

namespace lmeasure {
namespace {

constexpr int kMaxContourN = 60;

// Least squares for a handful of columns by modified Gram-Schmidt.
template <std::size_t K>
std::array<double, K> least_squares(const std::vector<std::array<double, K>>& rows,
                                    const std::vector<double>& y) {
  const std::size_t m = rows.size();
  std::array<std::vector<double>, K> q;
  std::array<std::array<double, K>, K> r{};
  for (std::size_t j = 0; j < K; ++j) {
    q[j].resize(m);
    for (std::size_t i = 0; i < m; ++i) q[j][i] = rows[i][j];
  }
  for (std::size_t j = 0; j < K; ++j) {
    for (std::size_t k = 0; k < j; ++k) {
      double dot = 0.0;
      for (std::size_t i = 0; i < m; ++i) dot += q[k][i] * q[j][i];
      r[k][j] = dot;
      for (std::size_t i = 0; i < m; ++i) q[j][i] -= dot * q[k][i];
    }
    double norm = 0.0;
    for (double v : q[j]) norm += v * v;
    norm = std::sqrt(norm);
    r[j][j] = norm;
    for (double& v : q[j]) v /= norm;
  }
  std::array<double, K> qty{};
  for (std::size_t j = 0; j < K; ++j) {
    for (std::size_t i = 0; i < m; ++i) qty[j] += q[j][i] * y[i];
  }
  std::array<double, K> x{};
  for (std::size_t j = K; j-- > 0;) {
    double acc = qty[j];
    for (std::size_t k = j + 1; k < K; ++k) acc -= r[j][k] * x[k];
    x[j] = acc / r[j][j];
  }
  return x;
}

void require_n(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    std::ostringstream msg;
    msg << what << ": n must lie in [" << lo << ", " << hi << "], got " << n;
    throw DomainError(msg.str());
  }
}

}  // namespace

double SaddleSolution::L_ratio() const { return std::exp(L_value); }

SaddleSolution solve_saddle(PositiveReal lambda) {
  const double y = std::log(lambda);
  double lo = 1.0, hi = 1.0;
  while (digamma(lo) > y) lo *= 0.5;
  while (digamma(hi) < y) hi *= 2.0;
  // Asymptotic starting points: psi(x) ~ -1/x near 0, ~ ln(x - 1/2) for large x.
  double g = y < -1.0 ? -1.0 / y : std::exp(y) + 0.5;
  if (!(g > lo && g < hi)) g = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200; ++iter) {
    const double f = digamma(g) - y;
    if (f < 0.0) lo = g; else hi = g;
    if (std::abs(f) <= 1e-15 * std::max(1.0, std::abs(y))) break;
    double next = g - f / trigamma(g);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == g) break;
    g = next;
  }
  SaddleSolution s;
  s.lambda = lambda;
  s.gamma = g;
  s.L_value = log_gamma(g) - g * y;
  s.curvature = trigamma(g);
  return s;
}

double limit_rate(PositiveReal lambda) { return solve_saddle(lambda).L_value; }

double limit_rate_zero() {
  // In terms of gamma, L = ln Gamma(gamma) - gamma psi(gamma), with
  // derivative -gamma psi'(gamma) < 0; it is +0.58 at 1 and -0.85 at 2.
  double lo = 1.0, hi = 2.0;
  while (hi - lo > 4 * std::numeric_limits<double>::epsilon()) {
    const double mid = 0.5 * (lo + hi);
    if (log_gamma(mid) - mid * digamma(mid) > 0.0) lo = mid; else hi = mid;
  }
  return std::exp(digamma(0.5 * (lo + hi)));
}

double F_direct(int n, PositiveReal lambda) {
  require_n(n, 1, 4, "F_direct");
  if (n == 1) return std::exp(-lambda);
  // Every x_k, the dependent one included, stays below M wherever the
  // integrand exceeds e^-60 of its peak; sum x = 0 then bounds the free ones
  // by (n - 1) M.
  const double M = std::log(n * lambda + 60.0) - std::log(lambda);
  const double R = (n - 1) * M;
  const int free = n - 1;
  quad::Options inner;
  inner.abs_tol = 0.0;
  inner.rel_tol = 1e-12;
  inner.max_panels = 20000;
  quad::Options outer = inner;
  outer.rel_tol = 1e-10;

  // Integrand scaled by e^{n lambda} so the peak (at x = 0) is 1.
  std::function<double(int, double, double)> level = [&](int k, double sum_exp,
                                                          double sum_x) -> double {
    auto body = [&](double x) {
      const double se = sum_exp + std::exp(x);
      const double sx = sum_x + x;
      if (k + 1 == free) {
        return std::exp(-lambda * (se + std::exp(-sx) - n));
      }
      return level(k + 1, se, sx);
    };
    return quad::gauss_kronrod(body, -R, R, k + 1 == free ? inner : outer, {0.0}).value;
  };
  return std::exp(-n * lambda) * level(0, 0.0, 0.0);
}

double log_F_contour(int n, PositiveReal lambda, std::optional<double> abscissa) {
  require_n(n, 1, kMaxContourN, "F_contour");
  const double a = abscissa ? *abscissa : solve_saddle(lambda).gamma;
  if (!(a > 0.0)) throw DomainError("F_contour: abscissa must be positive");
  const double ln_lambda = std::log(lambda);
  const double lg_a = log_gamma(a);
  const double g0 = n * (lg_a - a * ln_lambda);

  // |Gamma(a + it)| decreases in t, so the first T with n (Re lnGamma - lnGamma(a))
  // below -41 bounds the integrand by 1e-18 of its value at t = 0 from there on.
  auto log_modulus = [&](double t) {
    return n * (std::real(log_gamma(std::complex<double>(a, t))) - lg_a);
  };
  double T = 1.0;
  while (log_modulus(T) > -41.0) T *= 2.0;

  auto integrand = [&](double t) {
    const std::complex<double> s(a, t);
    const std::complex<double> e = static_cast<double>(n) * (log_gamma(s) - s * ln_lambda) - g0;
    return std::exp(e.real()) * std::cos(e.imag());
  };
  // Panels on the scale of the Gaussian core of the integrand.
  const double width = 1.0 / std::sqrt(n * trigamma(a));
  std::vector<double> breaks;
  for (double t = width; t < T && breaks.size() < 2000; t += width) breaks.push_back(t);
  quad::Options opt;
  // Rounding in n * lnGamma(a + it) puts a floor of roughly n * 1e-15 on the
  // absolute error (the integrand is 1 at t = 0).
  opt.abs_tol = 1e-15 * (n + 10);
  opt.rel_tol = 1e-10;
  opt.max_panels = 20000;
  opt.throw_on_failure = false;
  const quad::Result r = quad::gauss_kronrod(integrand, 0.0, T, opt, breaks);
  if (!r.converged || !(r.value > 0.0)) {
    std::ostringstream msg;
    msg << "F_contour: quadrature failed for n=" << n << " lambda=" << static_cast<double>(lambda)
        << " abscissa=" << a << " (value=" << r.value << " error=" << r.abs_error
        << " T=" << T << " evaluations=" << r.evaluations << ")";
    throw NumericalError(msg.str());
  }
  return g0 + std::log(r.value / kPi);
}

double F_contour(int n, PositiveReal lambda, std::optional<double> abscissa) {
  return std::exp(log_F_contour(n, lambda, abscissa));
}

LimitStudy L_limit_study(PositiveReal lambda, int n_max) {
  require_n(n_max, 2, kMaxContourN, "L_limit_study");
  LimitStudy study;
  study.saddle = solve_saddle(lambda);
  const double L = study.saddle.L_value;
  study.rows.resize(static_cast<std::size_t>(n_max - 1));
  for_each_stream(static_cast<std::uint32_t>(study.rows.size()), [&](std::uint32_t i) {
    LimitRow& row = study.rows[i];
    row.n = static_cast<int>(i) + 2;
    row.log_F_over_n = log_F_contour(row.n, lambda, study.saddle.gamma) / row.n;
    row.gap = row.log_F_over_n - L;
  });

  for (const auto& row : study.rows) {
    if (row.n <= 10) {
      study.fitted_C = std::max(study.fitted_C, std::abs(row.gap) * row.n / std::log(row.n));
    }
  }
  study.envelope_ok = true;
  study.monotone_from_5 = true;
  double previous = std::numeric_limits<double>::infinity();
  for (auto& row : study.rows) {
    row.envelope = study.fitted_C * std::log(row.n) / row.n;
    if (std::abs(row.gap) > row.envelope * (1.0 + 1e-12)) study.envelope_ok = false;
    if (row.n >= 5) {
      if (std::abs(row.gap) > previous) study.monotone_from_5 = false;
      previous = std::abs(row.gap);
    }
  }

  std::vector<std::array<double, 4>> design;
  std::vector<double> y;
  for (const auto& row : study.rows) {
    if (row.n < 5) continue;
    const double n = row.n;
    design.push_back({1.0, std::log(n) / n, 1.0 / n, 1.0 / (n * n)});
    y.push_back(row.log_F_over_n);
  }
  study.extrapolated =
      design.size() >= 4 ? least_squares<4>(design, y)[0] : study.rows.back().log_F_over_n;
  study.extrapolation_gap = study.extrapolated - L;
  study.ratio_form_gap = study.rows.back().log_F_over_n - study.saddle.L_ratio();
  return study;
}

double rho_geometric_mean(const std::vector<double>& f) {
  if (f.empty()) throw DomainError("rho_geometric_mean: empty vector");
  double acc = 0.0;
  for (double v : f) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      std::ostringstream msg;
      msg << "rho_geometric_mean: entries must be positive and finite, got " << v;
      throw DomainError(msg.str());
    }
    acc += std::log(v);
  }
  return std::exp(acc / static_cast<double>(f.size()));
}

double log_D_n(const std::vector<double>& f, PositiveReal r) {
  const double rho = rho_geometric_mean(f);
  return log_F_contour(static_cast<int>(f.size()), PositiveReal(rho * r, "rho * r"));
}

double D_n(const std::vector<double>& f, PositiveReal r) { return std::exp(log_D_n(f, r)); }

RadiusSchedule RadiusSchedule::constant(double r) {
  RadiusSchedule s;
  s.kind = Kind::constant;
  s.scale = PositiveReal(r, "radius");
  return s;
}

RadiusSchedule RadiusSchedule::sqrt_n(double scale) {
  RadiusSchedule s;
  s.kind = Kind::sqrt_n;
  s.scale = PositiveReal(scale, "radius scale");
  return s;
}

double RadiusSchedule::operator()(int n) const {
  double r = 0.0;
  switch (kind) {
    case Kind::constant: r = scale; break;
    case Kind::sqrt_n: r = scale * std::sqrt(static_cast<double>(n)); break;
    case Kind::custom:
      if (!custom) throw DomainError("radius schedule: custom kind without a function");
      r = custom(n);
      break;
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    std::ostringstream msg;
    msg << "radius schedule " << name() << " gives r(" << n << ") = " << r;
    throw DomainError(msg.str());
  }
  return r;
}

const char* RadiusSchedule::name() const {
  switch (kind) {
    case Kind::constant: return "constant";
    case Kind::sqrt_n: return "sqrt_n";
    case Kind::custom: return "custom";
  }
  return "?";
}

std::vector<DivergenceRow> divergence_experiment(PositiveReal lambda,
                                                 const RadiusSchedule& schedule, int n_min,
                                                 int n_max) {
  require_n(n_min, 1, kMaxContourN, "divergence_experiment");
  require_n(n_max, n_min, kMaxContourN, "divergence_experiment");
  std::vector<DivergenceRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].n = n_min + static_cast<int>(i);
    rows[i].r = schedule(rows[i].n);  // validated up front, on this thread
  }
  for_each_stream(static_cast<std::uint32_t>(rows.size()), [&](std::uint32_t i) {
    DivergenceRow& row = rows[i];
    row.lambda = lambda;
    const PositiveReal effective(lambda * row.r, "lambda * r");
    const SaddleSolution s = solve_saddle(effective);
    row.gamma = s.gamma;
    row.L = s.L_value;
    row.log_D_over_n = log_D_n(std::vector<double>(row.n, lambda), PositiveReal(row.r)) / row.n;
    row.gap = row.log_D_over_n - row.L;
  });
  return rows;
}

}  // namespace lmeasure
