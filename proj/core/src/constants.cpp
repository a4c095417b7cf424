#include "loglap/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loglap {

namespace {

// Lanczos coefficients, g = 7, 9 terms.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Lanczos series A(x) and its derivative, valid for x >= 0.5.
double lanczos_series(double x) {
  double a = kLanczos[0];
  for (int k = 1; k < 9; ++k) a += kLanczos[k] / (x - 1.0 + k);
  return a;
}

double lanczos_series_deriv(double x) {
  double a = 0.0;
  for (int k = 1; k < 9; ++k) {
    const double d = x - 1.0 + k;
    a -= kLanczos[k] / (d * d);
  }
  return a;
}

double lgamma_core(double x) {  // x >= 0.5
  const double t = x + kLanczosG - 0.5;
  return 0.5 * std::log(2.0 * pi) + (x - 0.5) * std::log(t) - t +
         std::log(lanczos_series(x));
}

double digamma_core(double x) {  // x >= 0.5
  const double t = x + kLanczosG - 0.5;
  return std::log(t) + (x - 0.5) / t - 1.0 +
         lanczos_series_deriv(x) / lanczos_series(x);
}

}  // namespace

double lgamma_real(double x) {
  if (is_nonpositive_integer(x))
    throw std::invalid_argument("lgamma_real: pole at x = " + std::to_string(x));
  if (x >= 0.5) return lgamma_core(x);
  // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
  return std::log(pi / std::abs(std::sin(pi * x))) - lgamma_core(1.0 - x);
}

double gamma_real(double x) {
  if (is_nonpositive_integer(x))
    throw std::invalid_argument("gamma_real: pole at x = " + std::to_string(x));
  if (x >= 0.5) return std::exp(lgamma_core(x));
  return pi / (std::sin(pi * x) * std::exp(lgamma_core(1.0 - x)));
}

double digamma(double x) {
  if (is_nonpositive_integer(x))
    throw std::invalid_argument("digamma: pole at x = " + std::to_string(x));
  if (x >= 0.5) return digamma_core(x);
  return digamma_core(1.0 - x) - pi / std::tan(pi * x);
}

LogKernelConstants log_constants(int n) {
  if (n < 1) throw std::invalid_argument("log_constants: dimension must be >= 1");
  LogKernelConstants c;
  c.dim = n;
  c.c_n = std::pow(pi, -0.5 * n) * gamma_real(0.5 * n);
  c.rho_n = 2.0 * std::log(2.0) + digamma(0.5 * n) - euler_gamma;
  c.sphere_measure = 2.0 * std::pow(pi, 0.5 * n) / gamma_real(0.5 * n);
  return c;
}

double frac_constant(int n, double s) {
  if (n < 1) throw std::invalid_argument("frac_constant: dimension must be >= 1");
  if (!(s > 0.0 && s < 1.0))
    throw std::invalid_argument("frac_constant: s must lie in (0,1), got " +
                                std::to_string(s));
  // log-space evaluation; |Gamma(-s)| = Gamma(1-s)/s for s in (0,1)
  const double log_num = s * std::log(4.0) + lgamma_real(0.5 * n + s);
  const double log_den = 0.5 * n * std::log(pi) + lgamma_real(1.0 - s) - std::log(s);
  return std::exp(log_num - log_den);
}

double log_symbol(double xi_norm) {
  if (!(xi_norm > 0.0))
    throw std::invalid_argument("log_symbol: |xi| must be positive");
  return 2.0 * std::log(xi_norm);
}

}  // namespace loglap
