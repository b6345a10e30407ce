#include "oscitom/tomogram.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "oscitom/errors.hpp"

namespace oscitom {

std::string_view to_string(Indicator indicator) {
  return indicator == Indicator::Bhattacharyya ? "bd" : "kl";
}

namespace {

double clamp_indicator(double value, std::string_view what) {
  if (!std::isfinite(value)) {
    throw NumericalError(std::string(what) + ": indicator is not finite");
  }
  if (value < -kIndicatorClampTolerance) {
    std::ostringstream msg;
    msg << what << ": value " << value << " is negative beyond quadrature tolerance";
    throw NumericalError(msg.str());
  }
  return value < 0.0 ? 0.0 : value;
}

}  // namespace

double epsilon_bd(const TomogramSlice& slice) {
  const Eigen::VectorXd u =
      weight_vector(slice.grid1()).cwiseProduct(slice.marginal1().cwiseSqrt());
  const Eigen::VectorXd v =
      weight_vector(slice.grid2()).cwiseProduct(slice.marginal2().cwiseSqrt());
  const double coefficient = u.dot(slice.joint().cwiseSqrt() * v);
  if (!(coefficient > 0.0)) {
    throw NumericalError("epsilon_bd: Bhattacharyya coefficient is not positive");
  }
  return clamp_indicator(-std::log2(coefficient), "epsilon_bd");
}

double epsilon_kl(const TomogramSlice& slice, double floor) {
  const auto& joint = slice.joint();
  const Eigen::VectorXd w1 = weight_vector(slice.grid1());
  const Eigen::VectorXd w2 = weight_vector(slice.grid2());
  const Eigen::VectorXd& m1 = slice.marginal1();
  const Eigen::VectorXd& m2 = slice.marginal2();
  constexpr double kMinusInf = -std::numeric_limits<double>::infinity();
  const Eigen::VectorXd log_m1 = m1.unaryExpr([](double v) { return v > 0.0 ? std::log(v) : kMinusInf; });
  const Eigen::VectorXd log_m2 = m2.unaryExpr([](double v) { return v > 0.0 ? std::log(v) : kMinusInf; });

  double total = 0.0;
  for (Eigen::Index j = 0; j < joint.cols(); ++j) {
    double column = 0.0;
    for (Eigen::Index i = 0; i < joint.rows(); ++i) {
      const double p = joint(i, j);
      if (p <= floor) continue;
      if (!(m1(i) > 0.0) || !(m2(j) > 0.0)) {
        std::ostringstream msg;
        msg << "epsilon_kl: support mismatch at grid point (" << i << ", " << j << ") = ("
            << slice.grid1().node(i) << ", " << slice.grid2().node(j) << "): joint " << p
            << " but product of marginals vanishes";
        throw NumericalError(msg.str());
      }
      column += w1(i) * p * (std::log(p) - log_m1(i) - log_m2(j));
    }
    total += w2(j) * column;
  }
  return clamp_indicator(total / std::numbers::ln2, "epsilon_kl");
}

double evaluate(Indicator indicator, const TomogramSlice& slice) {
  return indicator == Indicator::Bhattacharyya ? epsilon_bd(slice) : epsilon_kl(slice);
}

double slice_indicator(Indicator indicator, const ProductEigenstate& state, SliceAxis axis,
                       int segment_nodes) {
  const NodalSlice slice(state, axis, segment_nodes);
  if (indicator == Indicator::Bhattacharyya) {
    return clamp_indicator(slice.bhattacharyya(), "epsilon_bd");
  }
  return clamp_indicator(slice.kullback_leibler(), "epsilon_kl");
}

double ipr_indicator(const TomogramSlice& slice) {
  const Eigen::VectorXd w1 = weight_vector(slice.grid1());
  const Eigen::VectorXd w2 = weight_vector(slice.grid2());
  const double joint_sq = w1.dot(slice.joint().array().square().matrix() * w2);
  const double m1_sq = w1.dot(slice.marginal1().cwiseAbs2());
  const double m2_sq = w2.dot(slice.marginal2().cwiseAbs2());
  return 1.0 + joint_sq - m1_sq - m2_sq;
}

double default_dimensionless_half_width(const ProductEigenstate& state) {
  return 8.0 * std::sqrt(state.max_quantum_number() + 1.0);
}

TomogramSlice dimensionless_position_slice(const ProductEigenstate& state,
                                           const QuadratureGrid& dimensionless_grid) {
  const double lc = state.com_length();
  const double lr = state.relative_length();
  if (std::abs(lc - lr) > 1e-12 * lr) {
    std::ostringstream msg;
    msg << "epsilon_ipr needs proportional dimensionless coordinates, i.e. L_c = L_r (eta = 1/4); got eta = "
        << state.params().ratio() << " with L_c = " << lc << ", L_r = " << lr;
    throw DomainError(msg.str());
  }
  const double length = lr;
  const QuadratureGrid physical =
      make_grid(dimensionless_grid.kind(), length * dimensionless_grid.half_width(),
                static_cast<int>(dimensionless_grid.size()));
  const TomogramSlice slice = joint_position_density(state, physical);
  Eigen::MatrixXd scaled = (length * length) * slice.joint();
  return TomogramSlice(SliceAxis::Position, dimensionless_grid, dimensionless_grid, std::move(scaled));
}

double epsilon_ipr(const ProductEigenstate& state, const QuadratureGrid& dimensionless_grid) {
  return ipr_indicator(dimensionless_position_slice(state, dimensionless_grid));
}

double epsilon_ipr(const ProductEigenstate& state, int points) {
  return epsilon_ipr(state, make_grid(GridKind::UniformTrapezoid,
                                      default_dimensionless_half_width(state), points));
}

IndicatorResult averaged_indicator(Indicator indicator, const ProductEigenstate& state,
                                   const QuadratureGrid& position, const QuadratureGrid& momentum) {
  const double pos = evaluate(indicator, joint_position_density(state, position));
  const double mom = evaluate(indicator, joint_momentum_density(state, momentum));
  return {indicator, 0.5 * (pos + mom), {pos, mom}};
}

IndicatorResult averaged_indicator(Indicator indicator, const ProductEigenstate& state,
                                   int segment_nodes) {
  const double pos = slice_indicator(indicator, state, SliceAxis::Position, segment_nodes);
  const double mom = slice_indicator(indicator, state, SliceAxis::Momentum, segment_nodes);
  return {indicator, 0.5 * (pos + mom), {pos, mom}};
}

std::vector<double> divergence_probe(Indicator indicator, int n_rel, std::span<const double> etas,
                                     int segment_nodes) {
  for (std::size_t i = 0; i < etas.size(); ++i) {
    if (!(etas[i] > 0.0)) throw DomainError("divergence_probe: eta values must be positive");
    if (i > 0 && !(etas[i] < etas[i - 1])) {
      throw DomainError("divergence_probe: eta sequence must be strictly decreasing");
    }
  }
  std::vector<double> out;
  out.reserve(etas.size());
  for (double eta : etas) {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, n_rel);
    out.push_back(averaged_indicator(indicator, state, segment_nodes).value);
  }
  return out;
}

}  // namespace oscitom
