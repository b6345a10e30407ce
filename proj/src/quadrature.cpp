#include "oscitom/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "oscitom/errors.hpp"
#include "oscitom/special_functions.hpp"

namespace oscitom {

std::string_view to_string(GridKind kind) {
  switch (kind) {
    case GridKind::GaussHermite: return "gauss-hermite";
    case GridKind::UniformTrapezoid: return "uniform-trapezoid";
  }
  return "unknown";
}

QuadratureGrid::QuadratureGrid(GridKind kind, double half_width, std::vector<double> nodes,
                               std::vector<double> weights)
    : kind_(kind), half_width_(half_width), nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.size() != weights_.size()) {
    throw DomainError("quadrature grid: node and weight counts differ");
  }
  if (nodes_.empty()) throw DomainError("quadrature grid: no nodes");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(weights_[i] > 0.0) || !std::isfinite(weights_[i])) {
      throw NumericalError("quadrature grid: weight " + std::to_string(i) + " is not positive");
    }
    if (i > 0 && !(nodes_[i] > nodes_[i - 1])) {
      throw NumericalError("quadrature grid: nodes not strictly increasing at index " +
                           std::to_string(i));
    }
  }
}

double QuadratureGrid::spacing() const {
  if (kind_ != GridKind::UniformTrapezoid || nodes_.size() < 2) return 0.0;
  return 2.0 * half_width_ / static_cast<double>(nodes_.size() - 1);
}

double QuadratureGrid::integrate(std::span<const double> values) const {
  if (values.size() != nodes_.size()) {
    throw DomainError("quadrature grid: value count does not match node count");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) acc += weights_[i] * values[i];
  return acc;
}

double QuadratureGrid::integrate(const std::function<double(double)>& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) acc += weights_[i] * f(nodes_[i]);
  return acc;
}

namespace {

QuadratureGrid make_trapezoid(double half_width, int points) {
  std::vector<double> nodes(points);
  std::vector<double> weights(points);
  const double h = 2.0 * half_width / (points - 1);
  for (int i = 0; i < points; ++i) {
    nodes[i] = -half_width + i * h;
    weights[i] = h;
  }
  // Exact symmetry about the origin.
  for (int i = 0; i < points / 2; ++i) nodes[points - 1 - i] = -nodes[i];
  if (points % 2 == 1) nodes[points / 2] = 0.0;
  weights.front() *= 0.5;
  weights.back() *= 0.5;
  return QuadratureGrid(GridKind::UniformTrapezoid, half_width, std::move(nodes), std::move(weights));
}

// Golub-Welsch eigenvalues of the Jacobi matrix of the physicists' Hermite
// weight, polished by Newton on h_N with h_N' = sqrt(2N) h_{N-1} - t h_N.
// Returns the roots and, alongside, the full-integrand weights
// w_i e^{t_i^2} = 1 / (N h_{N-1}(t_i)^2).
void hermite_roots(int points, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(points, 0.0);
  weights.assign(points, 0.0);
  if (points == 1) {
    weights[0] = std::sqrt(std::numbers::pi);
    return;
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(points);
  Eigen::VectorXd sub(points - 1);
  for (int k = 1; k < points; ++k) sub(k - 1) = std::sqrt(0.5 * k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& roots = solver.eigenvalues();

  std::vector<double> h(points + 1);
  const double two_n = 2.0 * points;
  for (int i = 0; i < points; ++i) {
    double t = roots(i);
    for (int iter = 0; iter < 3; ++iter) {
      hermite_functions(t, h);
      const double derivative = std::sqrt(two_n) * h[points - 1] - t * h[points];
      if (derivative == 0.0) break;
      t -= h[points] / derivative;
    }
    hermite_functions(t, h);
    nodes[i] = t;
    weights[i] = 1.0 / (points * h[points - 1] * h[points - 1]);
  }
}

QuadratureGrid make_gauss_hermite(double scale, int points) {
  std::vector<double> nodes;
  std::vector<double> weights;
  hermite_roots(points, nodes, weights);
  for (int i = 0; i < points / 2; ++i) {
    const double t = 0.5 * (nodes[points - 1 - i] - nodes[i]);
    const double w = 0.5 * (weights[points - 1 - i] + weights[i]);
    nodes[i] = -t;
    nodes[points - 1 - i] = t;
    weights[i] = weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) nodes[points / 2] = 0.0;
  for (int i = 0; i < points; ++i) {
    nodes[i] *= scale;
    weights[i] *= scale;
  }
  return QuadratureGrid(GridKind::GaussHermite, scale, std::move(nodes), std::move(weights));
}

}  // namespace

QuadratureGrid make_grid(GridKind kind, double half_width, int points) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw DomainError("grid half-width must be positive, got " + std::to_string(half_width));
  }
  if (points < 16) {
    throw DomainError("grid needs at least 16 points, got " + std::to_string(points));
  }
  switch (kind) {
    case GridKind::UniformTrapezoid: return make_trapezoid(half_width, points);
    case GridKind::GaussHermite: return make_gauss_hermite(half_width, points);
  }
  throw DomainError("unknown grid kind");
}

std::vector<double> hermite_zeros(int n) {
  if (n < 0) throw DomainError("hermite_zeros: order must be nonnegative");
  if (n == 0) return {};
  std::vector<double> nodes;
  std::vector<double> weights;
  hermite_roots(n, nodes, weights);
  for (int i = 0; i < n / 2; ++i) {
    const double t = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -t;
    nodes[n - 1 - i] = t;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  return nodes;
}

LegendreRule gauss_legendre(int points) {
  if (points < 1) throw DomainError("gauss_legendre: needs at least one point");
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [points](double x) {
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= points; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair{p1, points * (x * p1 - p0) / (x * x - 1.0)};
  };
  LegendreRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < (points + 1) / 2; ++i) {
    // Tricomi initial guess, then Newton.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [value, derivative] = legendre(x);
      const double step = value / derivative;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double derivative = legendre(x).second;
    const double w = 2.0 / ((1.0 - x * x) * derivative * derivative);
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = rule.weights[points - 1 - i] = w;
  }
  if (points % 2 == 1) rule.nodes[points / 2] = 0.0;
  return rule;
}

QuadratureGrid refined(const QuadratureGrid& grid) {
  return make_grid(grid.kind(), grid.half_width(), 2 * static_cast<int>(grid.size()));
}

double refinement_change(const QuadratureGrid& grid,
                         const std::function<double(const QuadratureGrid&)>& integral) {
  return std::abs(integral(refined(grid)) - integral(grid));
}

}  // namespace oscitom
