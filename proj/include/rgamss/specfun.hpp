#pragma once

#include <complex>

namespace rgamss::specfun {

using Complex = std::complex<double>;

// log Gamma(x) for finite x > 0.
double log_gamma(double x);

// Principal branch of log Gamma(z) for Re(z) > 0. The imaginary part is the
// continuous branch obtained from the real axis, not reduced modulo 2*pi.
Complex log_gamma_complex(Complex z);

// First and second derivatives of log Gamma.
double digamma(double x);
double trigamma(double x);

// Regularized incomplete gamma pair P(a, x) + Q(a, x) = 1. Whichever half is
// numerically small is computed directly and the other one as its complement.
struct IncGamma {
  double lower;  // P(a, x)
  double upper;  // Q(a, x)
};

IncGamma reg_inc_gamma(double a, double x);

// Same pair, with the argument given as log(x). This keeps x^a exact when x
// itself under- or overflows, e.g. x = exp(-z / alpha) for tiny alpha.
IncGamma reg_inc_gamma_log_x(double a, double log_x);

inline double reg_inc_gamma_upper(double a, double x) { return reg_inc_gamma(a, x).upper; }
inline double reg_inc_gamma_lower(double a, double x) { return reg_inc_gamma(a, x).lower; }

}  // namespace rgamss::specfun
