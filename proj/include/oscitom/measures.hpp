#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "oscitom/oscillator_model.hpp"
#include "oscitom/quadrature.hpp"

namespace oscitom {

inline constexpr double kDefaultSchmidtCutoff = 1e-14;

/// Schmidt coefficients of a bipartite pure state, in descending order.
///
/// Raw values in [-1e-8, 0) are treated as roundoff and clamped to zero;
/// anything more negative is a NumericalError. Coefficients below the cutoff
/// are dropped, and residual() = 1 - sum of the retained ones.
class SchmidtSpectrum {
 public:
  explicit SchmidtSpectrum(std::vector<double> raw, double cutoff = kDefaultSchmidtCutoff);

  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }
  double operator[](std::size_t i) const { return coefficients_[i]; }
  double sum() const;
  double residual() const { return 1.0 - sum(); }

 private:
  std::vector<double> coefficients_;
};

/// Subsystem linear entropy and subsystem von Neumann entropy (natural log).
struct EntropyPair {
  double sle = 0.0;
  double svne = 0.0;
};

EntropyPair entropies(const SchmidtSpectrum& spectrum);

/// Thermal single oscillator whose density matrix equals the ground-state
/// reduced density matrix.
struct HeatBathEquivalent {
  double effective_frequency = 0.0;
  /// beta * hbar * effective_frequency; nullopt at eta = 1 (zero temperature, pure reduced state).
  std::optional<double> reduced_beta;

  bool zero_temperature() const { return !reduced_beta.has_value(); }
  /// Geometric spectrum (1 - q) q^n with q = exp(-reduced_beta), truncated below cutoff.
  std::vector<double> spectrum(double cutoff = 1e-300) const;
  /// 1 - tanh(reduced_beta / 2).
  double sle() const;
  /// -ln(1 - q) + reduced_beta q / (1 - q).
  double svne() const;
};

HeatBathEquivalent heat_bath_map(const OscillatorParams& params);

/// Uncoupled (lambda = 0) Schmidt spectrum of |nu_c, nu_r> from the explicit
/// double sum over the binomial expansion of the COM and relative creation
/// operators. Requires nu_c + nu_r <= 60.
SchmidtSpectrum schmidt_uncoupled(int nu_c, int nu_r);

/// 1 - 2^{-2 nu_r} C(2 nu_r, nu_r), for nu_c = 0.
double sle_uncoupled(int nu_r);
/// nu_r ln 2 - 2^{-nu_r} sum_l C(nu_r, l) ln C(nu_r, l), for nu_c = 0.
double svne_uncoupled(int nu_r);

/// (1 - sqrt(eta))^2 / (1 + eta).
double sle_ground_closed(double eta);
/// Ground-state SVNE in closed form; exactly 0 at eta = 1.
double svne_ground_closed(double eta);

/// Eigenvalues of sqrt(w_i) K(x_i, x_j) sqrt(w_j).
SchmidtSpectrum schmidt_numeric(const Eigen::MatrixXd& kernel, const QuadratureGrid& grid,
                                double cutoff = kDefaultSchmidtCutoff);

/// Squared singular values of A_ij = sqrt(w_i) psi(x_i, x_j) sqrt(w_j).
/// Default numerical route.
SchmidtSpectrum schmidt_svd(const ProductEigenstate& state, const QuadratureGrid& grid,
                            double cutoff = kDefaultSchmidtCutoff);

/// |sle_uncoupled(nu_r) - (1 - (pi nu_r)^{-1/2})|.
double sle_asymptote_check(int nu_r);

}  // namespace oscitom
