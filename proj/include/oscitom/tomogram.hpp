#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "oscitom/nodal_slice.hpp"
#include "oscitom/oscillator_model.hpp"
#include "oscitom/quadrature.hpp"
#include "oscitom/tomogram_slice.hpp"

namespace oscitom {

enum class Indicator { Bhattacharyya, KullbackLeibler };

std::string_view to_string(Indicator indicator);

inline constexpr double kIndicatorClampTolerance = 1e-10;
inline constexpr double kDefaultDensityFloor = 1e-300;

/// Bhattacharyya distance between the joint and the product of its marginals,
/// -log2 of the 2D quadrature of sqrt(P(X,Y) P1(X) P2(Y)).
double epsilon_bd(const TomogramSlice& slice);

/// Kullback-Leibler divergence of the joint from the product of its marginals, in bits.
///
/// Points with P <= floor contribute 0. The log-ratio is formed in log space
/// so that well-resolved tails, where P1 * P2 underflows while P does not,
/// stay finite. A point with P > floor where a marginal is not positive is a
/// support mismatch and raises NumericalError naming the grid point.
double epsilon_kl(const TomogramSlice& slice, double floor = kDefaultDensityFloor);

double evaluate(Indicator indicator, const TomogramSlice& slice);

/// Indicator for one slice of an eigenstate via the nodal-segment rule of
/// NodalSlice. Spectrally accurate in segment_nodes, unlike a uniform grid
/// whose Bhattacharyya error decays only like h^2 once the state has nodes.
double slice_indicator(Indicator indicator, const ProductEigenstate& state, SliceAxis axis,
                       int segment_nodes = kDefaultSegmentNodes);

/// 1 + int P^2 - int P1^2 - int P2^2 on a slice already in dimensionless coordinates.
double ipr_indicator(const TomogramSlice& dimensionless_slice);

/// Dimensionless position slice P(xb1, xb2) = L^2 P(L xb1, L xb2) for a state
/// with L_c = L_r = L. Throws DomainError unless eta = 1/4.
TomogramSlice dimensionless_position_slice(const ProductEigenstate& state,
                                           const QuadratureGrid& dimensionless_grid);

/// IPR-based indicator in the position slice. Only defined at eta = 1/4,
/// where the COM and relative length scales coincide.
double epsilon_ipr(const ProductEigenstate& state, const QuadratureGrid& dimensionless_grid);
double epsilon_ipr(const ProductEigenstate& state, int points = kDefaultGridPoints);

/// Default dimensionless half-width 8 sqrt(max(n_c, n_r) + 1).
double default_dimensionless_half_width(const ProductEigenstate& state);

struct IndicatorResult {
  Indicator indicator = Indicator::Bhattacharyya;
  /// Mean of the position and momentum values.
  double value = 0.0;
  /// {position, momentum}.
  std::vector<double> per_slice;
};

/// Slices sampled on the given grids.
IndicatorResult averaged_indicator(Indicator indicator, const ProductEigenstate& state,
                                   const QuadratureGrid& position, const QuadratureGrid& momentum);
/// Slices integrated with the nodal-segment rule.
IndicatorResult averaged_indicator(Indicator indicator, const ProductEigenstate& state,
                                   int segment_nodes = kDefaultSegmentNodes);

/// Averaged indicator for n_c = 0 and the given n_r along a positive, strictly
/// decreasing eta sequence. The quadrature follows L_c as it grows.
std::vector<double> divergence_probe(Indicator indicator, int n_rel, std::span<const double> etas,
                                     int segment_nodes = kDefaultSegmentNodes);

}  // namespace oscitom
