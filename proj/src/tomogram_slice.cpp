#include "oscitom/tomogram_slice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oscitom/errors.hpp"

namespace oscitom {

std::string_view to_string(SliceAxis axis) {
  return axis == SliceAxis::Position ? "position" : "momentum";
}

Eigen::VectorXd weight_vector(const QuadratureGrid& grid) {
  const auto w = grid.weights();
  return Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

namespace {

void check_shape(const QuadratureGrid& grid1, const QuadratureGrid& grid2,
                 const Eigen::MatrixXd& joint) {
  if (joint.rows() != static_cast<Eigen::Index>(grid1.size()) ||
      joint.cols() != static_cast<Eigen::Index>(grid2.size())) {
    throw DomainError("tomogram slice: joint shape does not match grids");
  }
}

void check_nonnegative(const Eigen::MatrixXd& joint) {
  if (!joint.allFinite()) throw NumericalError("tomogram slice: joint density is not finite");
  if (joint.minCoeff() < 0.0) throw NumericalError("tomogram slice: joint density has negative entries");
}

}  // namespace

TomogramSlice::TomogramSlice(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2,
                             Eigen::MatrixXd joint, Eigen::VectorXd marginal1,
                             Eigen::VectorXd marginal2)
    : axis_(axis),
      grid1_(std::move(grid1)),
      grid2_(std::move(grid2)),
      joint_(std::move(joint)),
      marginal1_(std::move(marginal1)),
      marginal2_(std::move(marginal2)) {
  normalization_ = weight_vector(grid1_).dot(marginal1_);
  if (std::abs(normalization_ - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg << "tomogram slice (" << to_string(axis_) << "): joint normalization " << normalization_
        << " deviates from 1 by more than " << kNormalizationTolerance;
    throw GridError(msg.str());
  }
}

TomogramSlice::TomogramSlice(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2,
                             Eigen::MatrixXd joint)
    : TomogramSlice(from_joint(axis, std::move(grid1), std::move(grid2), std::move(joint))) {}

TomogramSlice TomogramSlice::from_joint(SliceAxis axis, QuadratureGrid grid1, QuadratureGrid grid2,
                                        Eigen::MatrixXd joint) {
  check_shape(grid1, grid2, joint);
  check_nonnegative(joint);
  Eigen::VectorXd m1 = joint * weight_vector(grid2);
  Eigen::VectorXd m2 = joint.transpose() * weight_vector(grid1);
  return TomogramSlice(axis, std::move(grid1), std::move(grid2), std::move(joint), std::move(m1),
                       std::move(m2));
}

TomogramSlice TomogramSlice::from_components(SliceAxis axis, QuadratureGrid grid1,
                                             QuadratureGrid grid2, Eigen::MatrixXd joint,
                                             Eigen::VectorXd marginal1, Eigen::VectorXd marginal2) {
  check_shape(grid1, grid2, joint);
  check_nonnegative(joint);
  if (marginal1.size() != joint.rows() || marginal2.size() != joint.cols()) {
    throw DomainError("tomogram slice: marginal sizes do not match grids");
  }
  if (marginal1.minCoeff() < 0.0 || marginal2.minCoeff() < 0.0) {
    throw NumericalError("tomogram slice: marginal has negative entries");
  }
  const Eigen::VectorXd c1 = joint * weight_vector(grid2);
  const Eigen::VectorXd c2 = joint.transpose() * weight_vector(grid1);
  const double dev = std::max((c1 - marginal1).cwiseAbs().maxCoeff(),
                              (c2 - marginal2).cwiseAbs().maxCoeff());
  if (dev > kMarginalTolerance) {
    std::ostringstream msg;
    msg << "tomogram slice: supplied marginals differ from joint contraction by " << dev;
    throw NumericalError(msg.str());
  }
  return TomogramSlice(axis, std::move(grid1), std::move(grid2), std::move(joint),
                       std::move(marginal1), std::move(marginal2));
}

}  // namespace oscitom
