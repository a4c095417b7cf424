#ifndef LOGLAP_CONSTANTS_HPP
#define LOGLAP_CONSTANTS_HPP

#include <cstddef>

namespace loglap {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

inline constexpr double pi = 3.14159265358979323846264338327950288;

//------------------------------------------------------------------------------
// Special functions (Lanczos approximation, ~13 significant digits on the
// argument ranges used here: real x, poles at nonpositive integers excluded).
//------------------------------------------------------------------------------

/// log |Gamma(x)| for real x not a nonpositive integer.
double lgamma_real(double x);

/// Gamma(x), including negative non-integer arguments via reflection.
double gamma_real(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x).
double digamma(double x);

//------------------------------------------------------------------------------
// Kernel constants for the logarithmic Laplacian in dimension n.
//
//   c_n   = pi^{-n/2} Gamma(n/2)            (kernel strength, equals 2/|S^{n-1}|)
//   rho_n = 2 log 2 + psi(n/2) - gamma      (zero-order coefficient)
//------------------------------------------------------------------------------

struct LogKernelConstants {
  int dim = 0;
  double c_n = 0.0;
  double rho_n = 0.0;
  double sphere_measure = 0.0;  ///< |S^{n-1}|
};

/// Constants of the integral representation in dimension n >= 1.
LogKernelConstants log_constants(int n);

/// Normalization C_{n,s} = 4^s Gamma(n/2+s) / (pi^{n/2} |Gamma(-s)|) of the
/// fractional Laplacian kernel, s in (0,1).  Satisfies C_{n,s}/s -> c_n as s->0.
double frac_constant(int n, double s);

/// Fourier symbol of the operator: 2 log|xi|.  Requires xi != 0.
double log_symbol(double xi_norm);

}  // namespace loglap

#endif
