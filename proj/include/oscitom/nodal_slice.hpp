#pragma once

#include <vector>

#include "oscitom/oscillator_model.hpp"
#include "oscitom/tomogram_slice.hpp"

namespace oscitom {

inline constexpr int kDefaultSegmentNodes = 64;

/// Position or momentum slice of a product eigenstate in rotated coordinates,
/// P(u1, u2) = F(s) G(d) with u1 = a s + b d, u2 = a s - b d and 2ab = 1.
///
/// F and G are squared Hermite functions. Position: s = X, d = x (a = 1, b = 1/2).
/// Momentum: s = p1 + p2, d = (p1 - p2)/2 (a = 1/2, b = 1).
///
/// sqrt(P) has kinks along the nodal lines of F and G, which limits a uniform
/// product grid in (u1, u2) to second-order convergence for the Bhattacharyya
/// integrand. Here integrals over s and d are split at the Hermite zeros and
/// done with composite Gauss-Legendre, so every piece is smooth. Both
/// marginals coincide (F and G are even) and are evaluated pointwise by a
/// Gauss-Hermite rule that is exact for the Gaussian-times-polynomial
/// convolution integrand.
class NodalSlice {
 public:
  NodalSlice(const ProductEigenstate& state, SliceAxis axis, int segment_nodes = kDefaultSegmentNodes);

  SliceAxis axis() const { return axis_; }
  int segment_nodes() const { return segment_nodes_; }

  double joint(double u1, double u2) const;
  /// P1(u) = P2(u).
  double marginal(double u) const;

  /// -log2 of the integral of sqrt(P P1 P2).
  double bhattacharyya() const;
  /// Mutual information in bits, 2 h(P1) - h(F) - h(G) with differential entropies h.
  double kullback_leibler() const;

 private:
  struct Factor {
    int order = 0;
    double scale = 1.0;
    /// Half-line nodes and weights on [0, inf), split at the zeros.
    std::vector<double> nodes;
    std::vector<double> weights;
    double density(double v) const;
  };

  Factor make_factor(int order, double scale) const;
  /// -integral F ln F over the real line.
  double entropy(const Factor& f) const;

  SliceAxis axis_;
  int segment_nodes_;
  double a_;
  double b_;
  Factor sum_;
  Factor diff_;
  std::vector<double> marginal_offsets_;
  std::vector<double> marginal_weights_;
  double marginal_shift_ = 0.0;
  std::vector<double> marginal_nodes_;
  std::vector<double> marginal_node_weights_;
};

}  // namespace oscitom
