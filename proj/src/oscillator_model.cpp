#include "oscitom/oscillator_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "oscitom/errors.hpp"
#include "oscitom/special_functions.hpp"

namespace oscitom {

OscillatorParams::OscillatorParams(double mass, double frequency, double coupling)
    : mass_(mass), frequency_(frequency), coupling_(coupling) {
  if (!(mass > 0.0)) throw DomainError("oscillator mass must be positive");
  if (!(frequency > 0.0)) throw DomainError("oscillator frequency must be positive");
  if (!(std::abs(coupling) < 2.0 * frequency * frequency)) {
    std::ostringstream msg;
    msg << "coupling |lambda| = " << std::abs(coupling) << " must be below 2 w^2 = "
        << 2.0 * frequency * frequency << " for a positive-definite Hamiltonian";
    throw DomainError(msg.str());
  }
  com_frequency_ = std::sqrt(frequency * frequency + 0.5 * coupling);
  relative_frequency_ = std::sqrt(frequency * frequency - 0.5 * coupling);
}

OscillatorParams::OscillatorParams(double mass, double frequency, double coupling,
                                   double com_frequency, double relative_frequency)
    : mass_(mass),
      frequency_(frequency),
      coupling_(coupling),
      com_frequency_(com_frequency),
      relative_frequency_(relative_frequency) {}

OscillatorParams OscillatorParams::from_ratio(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("frequency ratio eta must be positive, got " + std::to_string(eta));
  }
  const double w2 = 0.5 * (eta * eta + 1.0);
  return OscillatorParams(1.0, std::sqrt(w2), eta * eta - 1.0, eta, 1.0);
}

ProductEigenstate::ProductEigenstate(OscillatorParams params, int n_com, int n_rel)
    : params_(params), n_com_(n_com), n_rel_(n_rel) {
  if (n_com < 0 || n_rel < 0) throw DomainError("quantum numbers must be nonnegative");
  if (std::max(n_com, n_rel) > kDefaultMaxHermiteOrder) {
    throw OutOfRangeError("quantum number exceeds maximum Hermite order " +
                          std::to_string(kDefaultMaxHermiteOrder));
  }
}

double ProductEigenstate::com_length() const {
  return std::sqrt(1.0 / (com_mass() * params_.com_frequency()));
}

double ProductEigenstate::relative_length() const {
  return std::sqrt(1.0 / (relative_mass() * params_.relative_frequency()));
}

double ProductEigenstate::com_amplitude(double X) const {
  return oscillator_eigenfunction(n_com_, com_mass(), params_.com_frequency(), X);
}

double ProductEigenstate::relative_amplitude(double x) const {
  return oscillator_eigenfunction(n_rel_, relative_mass(), params_.relative_frequency(), x);
}

double ProductEigenstate::position_amplitude(double x1, double x2) const {
  return com_amplitude(0.5 * (x1 + x2)) * relative_amplitude(x1 - x2);
}

std::complex<double> ProductEigenstate::momentum_amplitude(double p1, double p2) const {
  return momentum_eigenfunction(n_com_, com_mass(), params_.com_frequency(), p1 + p2) *
         momentum_eigenfunction(n_rel_, relative_mass(), params_.relative_frequency(),
                                0.5 * (p1 - p2));
}

double ProductEigenstate::position_density(double x1, double x2) const {
  const double a = position_amplitude(x1, x2);
  return a * a;
}

double ProductEigenstate::momentum_density(double p1, double p2) const {
  return std::norm(momentum_amplitude(p1, p2));
}

double default_position_half_width(const ProductEigenstate& state) {
  return 8.0 * std::max(state.com_length(), state.relative_length()) *
         std::sqrt(state.max_quantum_number() + 1.0);
}

double default_momentum_half_width(const ProductEigenstate& state) {
  return 8.0 * std::max(1.0 / state.com_length(), 1.0 / state.relative_length()) *
         std::sqrt(state.max_quantum_number() + 1.0);
}

QuadratureGrid position_grid(const ProductEigenstate& state, int points,
                             std::optional<double> half_width) {
  return make_grid(GridKind::UniformTrapezoid,
                   half_width.value_or(default_position_half_width(state)), points);
}

QuadratureGrid momentum_grid(const ProductEigenstate& state, int points,
                             std::optional<double> half_width) {
  return make_grid(GridKind::UniformTrapezoid,
                   half_width.value_or(default_momentum_half_width(state)), points);
}

namespace {

// M(i, j) = com(sum_factor * (x_i + x_j)) * rel(diff_factor * (x_i - x_j)).
//
// On a uniform grid x_i + x_j and x_i - x_j only take 2N-1 distinct values, so
// both factors are tabulated once instead of evaluated N^2 times.
template <class Com, class Rel>
Eigen::MatrixXd separable_product(const QuadratureGrid& grid, double sum_factor, double diff_factor,
                                  Com&& com, Rel&& rel) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd out(n, n);
  if (grid.kind() == GridKind::UniformTrapezoid) {
    const double h = grid.spacing();
    const double x0 = grid.node(0);
    std::vector<double> com_table(2 * n - 1);
    std::vector<double> rel_table(2 * n - 1);
    for (Eigen::Index s = 0; s < 2 * n - 1; ++s) {
      com_table[s] = com(sum_factor * (2.0 * x0 + static_cast<double>(s) * h));
      rel_table[s] = rel(diff_factor * static_cast<double>(s - (n - 1)) * h);
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        out(i, j) = com_table[i + j] * rel_table[i - j + n - 1];
      }
    }
    return out;
  }
  const auto x = grid.nodes();
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      out(i, j) = com(sum_factor * (x[i] + x[j])) * rel(diff_factor * (x[i] - x[j]));
    }
  }
  return out;
}

// Real envelope of the momentum eigenfunction; the (-i)^n phase drops out of densities.
double momentum_envelope(int n, double mass, double frequency, double p) {
  const double scale = std::sqrt(mass * frequency);
  return hermite_function(n, p / scale) / std::sqrt(scale);
}

void check_grid_support(const Eigen::MatrixXd& density, const QuadratureGrid& grid,
                        std::string_view what) {
  const double weighted = weight_vector(grid).transpose() * density * weight_vector(grid);
  const double peak = density.maxCoeff();
  const auto n = density.rows();
  double boundary = std::max({density.row(0).maxCoeff(), density.row(n - 1).maxCoeff(),
                              density.col(0).maxCoeff(), density.col(n - 1).maxCoeff()});
  const double deficit = std::abs(1.0 - weighted);
  if (deficit > TomogramSlice::kNormalizationTolerance || boundary > 1e-12 * peak) {
    std::ostringstream msg;
    msg << what << " grid too small: half-width " << grid.half_width() << " with " << grid.size()
        << " " << to_string(grid.kind()) << " points gives normalization deficit " << deficit
        << " and boundary/peak density ratio " << (peak > 0.0 ? boundary / peak : 0.0);
    throw GridError(msg.str());
  }
}

}  // namespace

Eigen::MatrixXd position_amplitude_matrix(const ProductEigenstate& state, const QuadratureGrid& grid) {
  return separable_product(
      grid, 0.5, 1.0, [&](double X) { return state.com_amplitude(X); },
      [&](double x) { return state.relative_amplitude(x); });
}

TomogramSlice joint_position_density(const ProductEigenstate& state, const QuadratureGrid& grid) {
  Eigen::MatrixXd density = position_amplitude_matrix(state, grid).array().square().matrix();
  check_grid_support(density, grid, "position");
  return TomogramSlice(SliceAxis::Position, grid, grid, std::move(density));
}

TomogramSlice joint_momentum_density(const ProductEigenstate& state, const QuadratureGrid& grid) {
  const auto& params = state.params();
  Eigen::MatrixXd envelope = separable_product(
      grid, 1.0, 0.5,
      [&](double P) {
        return momentum_envelope(state.n_com(), state.com_mass(), params.com_frequency(), P);
      },
      [&](double p) {
        return momentum_envelope(state.n_rel(), state.relative_mass(), params.relative_frequency(), p);
      });
  Eigen::MatrixXd density = envelope.array().square().matrix();
  check_grid_support(density, grid, "momentum");
  return TomogramSlice(SliceAxis::Momentum, grid, grid, std::move(density));
}

Eigen::MatrixXd reduced_density_kernel(const ProductEigenstate& state, const QuadratureGrid& grid) {
  const Eigen::MatrixXd amplitude = position_amplitude_matrix(state, grid);
  const Eigen::VectorXd w = weight_vector(grid);
  Eigen::MatrixXd kernel = amplitude * w.asDiagonal() * amplitude.transpose();
  const double trace = w.dot(kernel.diagonal());
  if (std::abs(trace - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "reduced density kernel: weighted trace " << trace << " on half-width "
        << grid.half_width() << " with " << grid.size() << " points deviates from 1 by more than 1e-6";
    throw GridError(msg.str());
  }
  return kernel;
}

}  // namespace oscitom
