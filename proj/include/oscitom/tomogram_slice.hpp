#pragma once

#include <Eigen/Dense>
#include <string_view>

#include "oscitom/quadrature.hpp"

namespace oscitom {

enum class SliceAxis { Position, Momentum };

std::string_view to_string(SliceAxis axis);

/// Joint probability density of the two subsystems in one measurement basis,
/// sampled on grid1 x grid2, together with its two marginals.
///
/// joint(i, j) is the density at (grid1.node(i), grid2.node(j)). Marginals are
/// obtained by contracting the joint with the quadrature weights of the other
/// axis. Immutable after construction.
class TomogramSlice {
 public:
  /// Builds marginals from the joint. Throws GridError when the joint does
  /// not integrate to 1 within kNormalizationTolerance and NumericalError on
  /// negative entries.
  TomogramSlice(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2, Eigen::MatrixXd joint);

  /// Takes externally supplied marginals; each must match the contraction of
  /// the joint pointwise within kMarginalTolerance.
  static TomogramSlice from_components(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2,
                                       Eigen::MatrixXd joint, Eigen::VectorXd marginal1,
                                       Eigen::VectorXd marginal2);

  static constexpr double kNormalizationTolerance = 1e-6;
  static constexpr double kMarginalTolerance = 1e-10;

  SliceAxis axis() const { return axis_; }
  const QuadratureGrid& grid1() const { return grid1_; }
  const QuadratureGrid& grid2() const { return grid2_; }
  const Eigen::MatrixXd& joint() const { return joint_; }
  const Eigen::VectorXd& marginal1() const { return marginal1_; }
  const Eigen::VectorXd& marginal2() const { return marginal2_; }
  /// 2D quadrature of the joint.
  double normalization() const { return normalization_; }

 private:
  TomogramSlice(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2, Eigen::MatrixXd joint,
                Eigen::VectorXd marginal1, Eigen::VectorXd marginal2);
  static TomogramSlice from_joint(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2,
                                  Eigen::MatrixXd joint);

  SliceAxis axis_;
  QuadratureGrid grid1_;
  QuadratureGrid grid2_;
  Eigen::MatrixXd joint_;
  Eigen::VectorXd marginal1_;
  Eigen::VectorXd marginal2_;
  double normalization_ = 0.0;
};

/// Weights of a grid as an Eigen vector.
Eigen::VectorXd weight_vector(const QuadratureGrid& grid);

}  // namespace oscitom
