#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace oscitom {

inline constexpr int kDefaultMaxHermiteOrder = 200;

/// Normalized Hermite function h_n(u) = H_n(u) e^{-u^2/2} / sqrt(2^n n! sqrt(pi)).
///
/// Evaluated with the three-term recurrence on the normalized functions. The
/// recurrence carries a running power-of-ten exponent so that the Gaussian
/// factor never underflows before the polynomial part has grown, which keeps
/// values accurate far outside the classical turning point.
double hermite_function(int n, double u, int max_order = kDefaultMaxHermiteOrder);

/// Fills out[k] = h_k(u) for k = 0 .. out.size()-1.
void hermite_functions(double u, std::span<double> out);

/// Position-space energy eigenfunction of a 1D oscillator (hbar = 1).
double oscillator_eigenfunction(int n, double mass, double frequency, double x,
                                int max_order = kDefaultMaxHermiteOrder);

/// Momentum-space eigenfunction: (-i)^n times the Hermite function on the
/// momentum scale sqrt(mass * frequency).
std::complex<double> momentum_eigenfunction(int n, double mass, double frequency, double p,
                                            int max_order = kDefaultMaxHermiteOrder);

/// Closed form of sum_n H_n(u) H_n(v) s^n / (2^n n!), valid for |s| < 1.
double mehler_kernel(double u, double v, double s);

/// ln C(n, k).
double log_binomial(std::int64_t n, std::int64_t k);

}  // namespace oscitom
