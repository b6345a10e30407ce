#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "oscitom/quadrature.hpp"
#include "oscitom/tomogram_slice.hpp"

namespace oscitom {

/// Two identical oscillators (mass m, frequency w) with bilinear coupling
/// (1/2) m lambda x1 x2, in units hbar = 1.
///
/// Separates into a centre-of-mass oscillator of frequency w_c = sqrt(w^2 + lambda/2)
/// and a relative oscillator of frequency w_r = sqrt(w^2 - lambda/2). The
/// Hamiltonian is positive definite only for |lambda| < 2 w^2.
class OscillatorParams {
 public:
  OscillatorParams(double mass, double frequency, double coupling);

  /// m = 1, w_r = 1, w_c = eta; w and lambda recovered from the separation.
  static OscillatorParams from_ratio(double eta);

  double mass() const { return mass_; }
  double frequency() const { return frequency_; }
  double coupling() const { return coupling_; }
  double com_frequency() const { return com_frequency_; }
  double relative_frequency() const { return relative_frequency_; }
  /// eta = w_c / w_r.
  double ratio() const { return com_frequency_ / relative_frequency_; }

 private:
  OscillatorParams(double mass, double frequency, double coupling, double com_frequency,
                   double relative_frequency);

  double mass_;
  double frequency_;
  double coupling_;
  double com_frequency_;
  double relative_frequency_;
};

/// Energy eigenstate |n_c> (x) |n_r> of the separated Hamiltonian.
///
/// The COM coordinate X = (x1 + x2)/2 carries mass 2m, the relative coordinate
/// x = x1 - x2 carries mass m/2. In momentum space P = p1 + p2 and
/// p = (p1 - p2)/2 are the conjugates. Both changes of variables have unit
/// Jacobian, so the joint wavefunctions are normalized in (x1, x2) and (p1, p2).
class ProductEigenstate {
 public:
  ProductEigenstate(OscillatorParams params, int n_com, int n_rel);

  const OscillatorParams& params() const { return params_; }
  int n_com() const { return n_com_; }
  int n_rel() const { return n_rel_; }
  int max_quantum_number() const { return n_com_ > n_rel_ ? n_com_ : n_rel_; }

  double com_mass() const { return 2.0 * params_.mass(); }
  double relative_mass() const { return 0.5 * params_.mass(); }
  /// L_c = (1 / (2 m w_c))^{1/2}, the oscillator length of the COM mode.
  double com_length() const;
  /// L_r = (2 / (m w_r))^{1/2}, the oscillator length of the relative mode.
  double relative_length() const;

  double com_amplitude(double X) const;
  double relative_amplitude(double x) const;
  double position_amplitude(double x1, double x2) const;
  std::complex<double> momentum_amplitude(double p1, double p2) const;
  double position_density(double x1, double x2) const;
  double momentum_density(double p1, double p2) const;

 private:
  OscillatorParams params_;
  int n_com_;
  int n_rel_;
};

inline constexpr int kDefaultGridPoints = 1024;

/// 8 * max(L_c, L_r) * sqrt(max(n_c, n_r) + 1).
double default_position_half_width(const ProductEigenstate& state);
/// Momentum analogue: 8 * max(1/L_c, 1/L_r) * sqrt(max(n_c, n_r) + 1).
double default_momentum_half_width(const ProductEigenstate& state);

QuadratureGrid position_grid(const ProductEigenstate& state, int points = kDefaultGridPoints,
                             std::optional<double> half_width = std::nullopt);
QuadratureGrid momentum_grid(const ProductEigenstate& state, int points = kDefaultGridPoints,
                             std::optional<double> half_width = std::nullopt);

/// psi(x_i, x_j) on grid x grid.
Eigen::MatrixXd position_amplitude_matrix(const ProductEigenstate& state, const QuadratureGrid& grid);

/// |psi(x1, x2)|^2 on grid x grid. Throws GridError naming the grid extent when
/// the normalization deficit exceeds 1e-6 or the density on the grid boundary
/// exceeds 1e-12 of its peak.
TomogramSlice joint_position_density(const ProductEigenstate& state, const QuadratureGrid& grid);

/// |psi~(p1, p2)|^2 on grid x grid, same checks as the position slice.
TomogramSlice joint_momentum_density(const ProductEigenstate& state, const QuadratureGrid& grid);

/// Reduced density kernel of oscillator 1, K(x_i, x_k) = sum_j w_j psi(x_i, x_j) psi(x_k, x_j).
/// Throws GridError when the weighted trace deviates from 1 by more than 1e-6.
Eigen::MatrixXd reduced_density_kernel(const ProductEigenstate& state, const QuadratureGrid& grid);

}  // namespace oscitom
