#include "rgamss/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rgamss/errors.hpp"

namespace rgamss::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Arguments are shifted up to this point before the Stirling series is used.
constexpr double kStirlingMin = 15.0;
// Shift threshold for the digamma/trigamma asymptotic expansions.
constexpr double kPolygammaMin = 8.0;

const double kHalfLog2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,           -1.0 / 360.0,       1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,         -691.0 / 360360.0,  1.0 / 156.0,  -3617.0 / 122400.0};

// B_{2k} / (2k), k = 1..9.
constexpr std::array<double, 9> kDigamma = {
    1.0 / 12.0,  -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,         1.0 / 132.0,
    -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0, 43867.0 / 14364.0};

// B_{2k}, k = 1..9.
constexpr std::array<double, 9> kTrigamma = {
    1.0 / 6.0,   -1.0 / 30.0,        1.0 / 42.0,   -1.0 / 30.0,         5.0 / 66.0,
    -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0};

// Correction series of Stirling's formula, sum_k c_k / y^(2k-1).
template <typename T>
T stirling_tail(T y) {
  const T inv = T(1.0) / y;
  const T inv2 = inv * inv;
  T acc = T(kStirling.back());
  for (auto it = kStirling.rbegin() + 1; it != kStirling.rend(); ++it) {
    acc = acc * inv2 + T(*it);
  }
  return acc * inv;
}

template <typename T>
T stirling(T y) {
  return (y - T(0.5)) * std::log(y) - y + T(kHalfLog2Pi) + stirling_tail(y);
}

// log Gamma(ref + delta) for ref in {1, 2}, where log Gamma(ref) = 0. Every term
// is proportional to delta so the result keeps its relative accuracy near the
// two zeros of log Gamma.
double log_gamma_near_root(double ref, double delta) {
  double y = ref;
  double shift_sum = 0.0;
  while (y < kStirlingMin) {
    shift_sum += std::log1p(delta / y);
    y += 1.0;
  }
  const double stirling_diff = (y - 0.5) * std::log1p(delta / y) + delta * std::log(y + delta) -
                               delta + (stirling_tail(y + delta) - stirling_tail(y));
  return stirling_diff - shift_sum;
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) {
    throw DomainError(std::string(what) + ": argument must be > 0, got " + std::to_string(x));
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be finite and > 0, got " + std::to_string(x));
  }
  if (x >= 0.5 && x < 2.5) {
    return x < 1.5 ? log_gamma_near_root(1.0, x - 1.0) : log_gamma_near_root(2.0, x - 2.0);
  }
  if (x >= kStirlingMin) return stirling(x);
  // Gamma(x) = Gamma(x + n) / (x (x+1) ... (x+n-1))
  double y = x;
  double prod = 1.0;
  while (y < kStirlingMin) {
    prod *= y;
    y += 1.0;
  }
  return stirling(y) - std::log(prod);
}

Complex log_gamma_complex(Complex z) {
  if (!(z.real() > 0.0)) {
    throw DomainError("log_gamma_complex: real part must be > 0, got " + std::to_string(z.real()));
  }
  // Summing principal logs term by term keeps the branch continuous from
  // the real axis; the log of the product would wrap around.
  Complex shift_sum{0.0, 0.0};
  Complex y = z;
  while (y.real() < kStirlingMin) {
    shift_sum += std::log(y);
    y += 1.0;
  }
  return stirling(y) - shift_sum;
}

double digamma(double x) {
  require_positive(x, "digamma");
  double acc = 0.0;
  while (x < kPolygammaMin) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  double series = kDigamma.back();
  for (auto it = kDigamma.rbegin() + 1; it != kDigamma.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return acc + std::log(x) - 0.5 / x - series * inv2;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double acc = 0.0;
  while (x < kPolygammaMin) {
    acc += 1.0 / (x * x);
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double series = kTrigamma.back();
  for (auto it = kTrigamma.rbegin() + 1; it != kTrigamma.rend(); ++it) {
    series = series * inv2 + *it;
  }
  return acc + inv + 0.5 * inv2 + series * inv2 * inv;
}

namespace {

constexpr int kMaxIter = 100000;

// a < 1 and x < a + 1: P = x^a / Gamma(a+1) * (1 + a T),
// T = sum_{n>=1} (-x)^n / (n! (a + n)).
IncGamma small_shape_series(double a, double log_x, double x) {
  const double u = a * log_x - log_gamma(a + 1.0);
  double term = 1.0;
  double t_sum = 0.0;
  for (int n = 1; n < kMaxIter; ++n) {
    term *= -x / n;
    const double contrib = term / (a + n);
    t_sum += contrib;
    if (std::abs(contrib) <= kEps * std::abs(t_sum) || term == 0.0) break;
  }
  const double xa = std::exp(u);
  const double upper = -std::expm1(u) - xa * a * t_sum;
  const double lower = xa * (1.0 + a * t_sum);
  return upper <= lower ? IncGamma{1.0 - upper, upper} : IncGamma{lower, 1.0 - lower};
}

// P = x^a e^-x / Gamma(a+1) * sum_n x^n / ((a+1)...(a+n))
IncGamma lower_series(double a, double log_x, double x) {
  double ap = a;
  double del = 1.0;
  double sum = 1.0;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (del < sum * kEps) break;
  }
  const double lower = sum * std::exp(a * log_x - x - log_gamma(a + 1.0));
  return {lower, 1.0 - lower};
}

// Modified Lentz evaluation of the continued fraction for Q.
IncGamma upper_continued_fraction(double a, double log_x, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= kEps) break;
  }
  const double upper = std::exp(a * log_x - x - log_gamma(a)) * h;
  return {1.0 - upper, upper};
}

}  // namespace

IncGamma reg_inc_gamma_log_x(double a, double log_x) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("reg_inc_gamma: shape must be finite and > 0, got " + std::to_string(a));
  }
  if (std::isnan(log_x)) throw DomainError("reg_inc_gamma: argument is NaN");
  if (log_x == -std::numeric_limits<double>::infinity()) return {0.0, 1.0};
  const double x = std::exp(log_x);
  if (std::isinf(x)) return {1.0, 0.0};
  if (x < a + 1.0) {
    return a < 1.0 ? small_shape_series(a, log_x, x) : lower_series(a, log_x, x);
  }
  return upper_continued_fraction(a, log_x, x);
}

IncGamma reg_inc_gamma(double a, double x) {
  if (!(x >= 0.0)) {
    throw DomainError("reg_inc_gamma: argument must be >= 0, got " + std::to_string(x));
  }
  return reg_inc_gamma_log_x(a, std::log(x));
}

}  // namespace rgamss::specfun
