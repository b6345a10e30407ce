#include "oscitom/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "oscitom/errors.hpp"

namespace oscitom {

namespace {

constexpr double kRescaleThreshold = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kLogRescale = 150.0 * std::numbers::ln10;

// value * exp(log_scale) without underflowing exp() when value is huge.
double apply_scale(double value, double log_scale) {
  if (log_scale > -700.0 || value == 0.0) return value * std::exp(log_scale);
  return std::copysign(std::exp(std::log(std::abs(value)) + log_scale), value);
}

void check_order(int n, int max_order) {
  if (n < 0) throw DomainError("Hermite order must be nonnegative, got " + std::to_string(n));
  if (n > max_order) {
    throw OutOfRangeError("Hermite order " + std::to_string(n) + " exceeds configured maximum " +
                          std::to_string(max_order));
  }
}

// Normalized recurrence with the Gaussian kept in log form. The sink sees
// (k, value, log_scale) with h_k(u) == value * exp(log_scale).
template <class Sink>
void normalized_recurrence(int n, double u, Sink&& sink) {
  const double h0 = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));
  double prev = 0.0;
  double cur = h0;
  double log_scale = -0.5 * u * u;
  sink(0, cur, log_scale);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * u * cur - std::sqrt(double(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleThreshold) {
      cur *= kRescaleFactor;
      prev *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    sink(k + 1, cur, log_scale);
  }
}

}  // namespace

double hermite_function(int n, double u, int max_order) {
  check_order(n, max_order);
  double result = 0.0;
  normalized_recurrence(n, u, [&](int k, double value, double log_scale) {
    if (k == n) result = apply_scale(value, log_scale);
  });
  return result;
}

void hermite_functions(double u, std::span<double> out) {
  if (out.empty()) return;
  const int n = static_cast<int>(out.size()) - 1;
  normalized_recurrence(n, u, [&](int k, double value, double log_scale) {
    out[k] = apply_scale(value, log_scale);
  });
}

double oscillator_eigenfunction(int n, double mass, double frequency, double x, int max_order) {
  if (!(mass > 0.0) || !(frequency > 0.0)) {
    throw DomainError("oscillator mass and frequency must be positive");
  }
  const double inv_length = std::sqrt(mass * frequency);
  return std::sqrt(inv_length) * hermite_function(n, x * inv_length, max_order);
}

std::complex<double> momentum_eigenfunction(int n, double mass, double frequency, double p,
                                            int max_order) {
  if (!(mass > 0.0) || !(frequency > 0.0)) {
    throw DomainError("oscillator mass and frequency must be positive");
  }
  const double momentum_scale = std::sqrt(mass * frequency);
  const double magnitude = hermite_function(n, p / momentum_scale, max_order) / std::sqrt(momentum_scale);
  // (-i)^n cycles through 1, -i, -1, i.
  switch (n % 4) {
    case 0: return {magnitude, 0.0};
    case 1: return {0.0, -magnitude};
    case 2: return {-magnitude, 0.0};
    default: return {0.0, magnitude};
  }
}

double mehler_kernel(double u, double v, double s) {
  if (!(std::abs(s) < 1.0)) {
    throw DomainError("Mehler kernel requires |s| < 1, got s = " + std::to_string(s));
  }
  const double one_minus_s2 = 1.0 - s * s;
  const double exponent = -(s * s * (u * u + v * v) - 2.0 * u * v * s) / one_minus_s2;
  return std::exp(exponent) / std::sqrt(one_minus_s2);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0) throw DomainError("log_binomial arguments must be nonnegative");
  if (k > n) {
    throw DomainError("log_binomial requires k <= n, got n = " + std::to_string(n) +
                      ", k = " + std::to_string(k));
  }
  const std::int64_t j = std::min(k, n - k);
  if (j == 0) return 0.0;
  // Small j: direct product avoids cancellation between large log-gammas.
  if (j <= 32) {
    long double acc = 0.0L;
    for (std::int64_t i = 1; i <= j; ++i) {
      acc += std::log(static_cast<long double>(n - j + i) / static_cast<long double>(i));
    }
    return static_cast<double>(acc);
  }
  const long double nl = static_cast<long double>(n);
  const long double kl = static_cast<long double>(j);
  return static_cast<double>(std::lgamma(nl + 1.0L) - std::lgamma(kl + 1.0L) -
                             std::lgamma(nl - kl + 1.0L));
}

}  // namespace oscitom
