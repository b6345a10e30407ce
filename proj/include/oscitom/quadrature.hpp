#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace oscitom {

enum class GridKind { GaussHermite, UniformTrapezoid };

std::string_view to_string(GridKind kind);

/// One-dimensional quadrature rule: integral f(x) dx ~ sum_i w_i f(x_i).
///
/// Gauss-Hermite weights are stored already multiplied by exp(x_i^2 / scale^2)
/// so both kinds integrate plain integrands. Nodes strictly increase and
/// weights are strictly positive; the constructor enforces both.
class QuadratureGrid {
 public:
  QuadratureGrid(GridKind kind, double half_width, std::vector<double> nodes,
                 std::vector<double> weights);

  GridKind kind() const { return kind_; }
  /// Construction parameter: the half-width for a trapezoid grid, the
  /// length scale for a Gauss-Hermite grid.
  double half_width() const { return half_width_; }
  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  /// Node spacing of a trapezoid grid (0 for Gauss-Hermite).
  double spacing() const;

  double integrate(std::span<const double> values) const;
  double integrate(const std::function<double(double)>& f) const;

 private:
  GridKind kind_;
  double half_width_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Builds a grid with `points` nodes (points >= 16).
///
/// UniformTrapezoid: nodes -half_width .. half_width inclusive, end weights halved.
/// GaussHermite: Golub-Welsch nodes of the physicists' rule scaled by half_width.
QuadratureGrid make_grid(GridKind kind, double half_width, int points);

/// Zeros of the Hermite polynomial H_n in increasing order (empty for n = 0).
std::vector<double> hermite_zeros(int n);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct LegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
LegendreRule gauss_legendre(int points);

/// Same kind and extent with twice the number of points.
QuadratureGrid refined(const QuadratureGrid& grid);

/// |integral on refined(grid) - integral on grid|. Grid self-convergence probe.
double refinement_change(const QuadratureGrid& grid,
                         const std::function<double(const QuadratureGrid&)>& integral);

}  // namespace oscitom
