#pragma once

// Scalar special-function kernels. All functions are pure and throw
// DomainError outside their stated domain instead of returning NaN/inf.

#include <complex>

namespace lmeasure {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// ln Gamma(z) for Re z > 0, the branch continuous from the positive real
/// axis (imaginary part is not reduced to (-pi, pi]).
std::complex<double> log_gamma(std::complex<double> z);

/// psi(x) = Gamma'(x) / Gamma(x), x > 0.
double digamma(double x);

/// psi'(x), x > 0.
double trigamma(double x);

/// ln B(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a + b).
double log_beta(double a, double b);

/// Bessel function of the first kind J_order(x), order >= 0, x >= 0.
double bessel_j(double order, double x);

/// Modified Bessel function of the second kind K_0(x), x > 0.
double bessel_k0(double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a);
/// the CDF of the gamma(a) law. a > 0, x >= 0.
double gamma_p(double a, double x);

}  // namespace lmeasure
