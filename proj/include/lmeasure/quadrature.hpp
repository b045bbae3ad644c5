#pragma once

// One-dimensional quadrature used throughout the library:
//   * adaptive Gauss-Kronrod (7/15) for smooth integrands on finite panels,
//   * tanh-sinh (double exponential) for integrands with algebraic endpoint
//     singularities such as x^(a-1) (b-x)^(c-1).
//
// The tanh-sinh integrand may take either (x) or (x, dist_to_a, dist_to_b);
// the second form receives the endpoint distances computed without
// cancellation, which is what keeps x^(-1/2)-type singularities accurate.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include "lmeasure/errors.hpp"

namespace lmeasure::quad {

struct Options {
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  std::size_t max_panels = 4000;
  // Throw NumericalError instead of returning an unconverged result.
  bool throw_on_failure = true;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for nodes kKronrodNodes[1], [3], [5], [7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
Panel kronrod15(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * sum;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod over [a, b], optionally pre-split at `breaks`
/// (sorted interior points). Subdivides the panel with the largest error
/// estimate until the summed estimate meets max(abs_tol, rel_tol*|I|).
template <class F>
Result gauss_kronrod(F&& f, double a, double b, const Options& opt = {},
                     const std::vector<double>& breaks = {}) {
  std::priority_queue<detail::Panel> panels;
  Result out;
  double total = 0.0;
  double error = 0.0;
  double lo = a;
  auto push = [&](double x0, double x1) {
    auto p = detail::kronrod15(f, x0, x1);
    out.evaluations += 15;
    total += p.value;
    error += p.error;
    panels.push(p);
  };
  for (double br : breaks) {
    if (br > lo && br < b) {
      push(lo, br);
      lo = br;
    }
  }
  push(lo, b);

  auto target = [&] { return std::max(opt.abs_tol, opt.rel_tol * std::abs(total)); };
  bool stuck = false;
  for (;;) {
    while (error > target()) {
      const auto worst = panels.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (panels.size() >= opt.max_panels || !(mid > worst.a && mid < worst.b)) {
        stuck = true;  // panel budget spent or panel at float resolution
        break;
      }
      panels.pop();
      total -= worst.value;
      error -= worst.error;
      push(worst.a, mid);
      push(mid, worst.b);
    }
    // Re-sum to shed drift from the running updates; refine again if the
    // drift was hiding unmet tolerance.
    total = 0.0;
    error = 0.0;
    for (auto copy = panels; !copy.empty(); copy.pop()) {
      total += copy.top().value;
      error += copy.top().error;
    }
    if (stuck || error <= target()) break;
  }
  out.value = total;
  out.abs_error = error;
  out.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total));
  if (!out.converged && opt.throw_on_failure) {
    std::ostringstream msg;
    msg << "gauss_kronrod: no convergence on [" << a << ", " << b << "] value=" << total
        << " error=" << error << " panels=" << panels.size();
    throw NumericalError(msg.str());
  }
  return out;
}

/// Tanh-sinh quadrature over a finite [a, b]. Refines the step until two
/// successive levels agree to max(abs_tol, rel_tol*|I|).
template <class F>
Result tanh_sinh(F&& f, double a, double b, const Options& opt = {}, int max_level = 12) {
  constexpr double kHalfPi = 1.57079632679489661923;
  constexpr double kTMax = 6.5;
  const double half = 0.5 * (b - a);
  Result out;

  auto eval = [&](double x, double da, double db) -> double {
    if constexpr (std::is_invocable_v<F&, double, double, double>) {
      return f(x, da, db);
    } else {
      if (!(x > a && x < b)) return 0.0;  // node rounded onto an endpoint
      return f(x);
    }
  };
  // Contribution of the node pair at +t and -t.
  auto pair_sum = [&](double t) -> double {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * u);
    const double d = 2.0 * e / (1.0 + e);  // 1 - tanh(u)
    if (d <= 0.0) return 0.0;
    const double weight = kHalfPi * std::cosh(t) * d * (2.0 - d);
    const double near = half * d;
    const double far = half * (2.0 - d);
    if (!(near > 0.0)) return 0.0;
    out.evaluations += 2;
    double s = 0.0;
    s += eval(b - near, far, near);
    s += eval(a + near, near, far);
    return weight * s;
  };

  double h = 0.5;
  double sum = eval(a + half, half, half) * kHalfPi;
  ++out.evaluations;
  for (double t = h; t <= kTMax; t += h) sum += pair_sum(t);
  double estimate = half * h * sum;
  for (int level = 1; level <= max_level; ++level) {
    h *= 0.5;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += pair_sum(t);
    const double next = half * h * sum;
    out.abs_error = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && out.abs_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(next))) {
      out.converged = true;
      break;
    }
  }
  out.value = estimate;
  if (!out.converged && opt.throw_on_failure) {
    std::ostringstream msg;
    msg << "tanh_sinh: no convergence on [" << a << ", " << b << "] value=" << estimate
        << " last_change=" << out.abs_error;
    throw NumericalError(msg.str());
  }
  return out;
}

}  // namespace lmeasure::quad
