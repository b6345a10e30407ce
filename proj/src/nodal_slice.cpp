#include "oscitom/nodal_slice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "oscitom/errors.hpp"
#include "oscitom/quadrature.hpp"
#include "oscitom/special_functions.hpp"

namespace oscitom {

namespace {

// Tail breakpoints beyond the outermost zero, in units of the factor's scale.
constexpr double kTailBreaks[] = {2.0, 4.0, 7.0, 12.0};

void append_panel(const LegendreRule& rule, double lo, double hi, std::vector<double>& nodes,
                  std::vector<double>& weights) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    nodes.push_back(mid + half * rule.nodes[k]);
    weights.push_back(half * rule.weights[k]);
  }
}

// Panel under t = lo + (hi - lo) (3v^2 - 2v^3). The map's derivative vanishes
// at both ends, which softens the (t - z)^2 ln|t - z| behaviour of F ln F at
// the zeros of F.
void append_graded_panel(const LegendreRule& rule, double lo, double hi, std::vector<double>& nodes,
                         std::vector<double>& weights) {
  const double length = hi - lo;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const double v = 0.5 * (rule.nodes[k] + 1.0);
    nodes.push_back(lo + length * v * v * (3.0 - 2.0 * v));
    weights.push_back(0.5 * rule.weights[k] * length * 6.0 * v * (1.0 - v));
  }
}

void check_unit_mass(double mass, double tolerance, const std::string& what) {
  if (std::abs(mass - 1.0) > tolerance) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "nodal slice: " << what << " integrates to " << mass
        << "; too few quadrature nodes per segment";
    throw NumericalError(msg.str());
  }
}

}  // namespace

double NodalSlice::Factor::density(double v) const {
  const double h = hermite_function(order, v / scale);
  return h * h / scale;
}

NodalSlice::Factor NodalSlice::make_factor(int order, double scale) const {
  Factor f;
  f.order = order;
  f.scale = scale;
  const LegendreRule rule = gauss_legendre(segment_nodes_);
  std::vector<double> breaks{0.0};
  for (double z : hermite_zeros(order)) {
    if (z > 0.0) breaks.push_back(z);
  }
  // Panels touching a zero are graded; the remaining tail panels are plain.
  const std::size_t graded = breaks.size();
  const double outer = breaks.back();
  for (double t : kTailBreaks) breaks.push_back(outer + t);
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    auto append = i < graded ? append_graded_panel : append_panel;
    append(rule, scale * breaks[i], scale * breaks[i + 1], f.nodes, f.weights);
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < f.nodes.size(); ++i) mass += 2.0 * f.weights[i] * f.density(f.nodes[i]);
  check_unit_mass(mass, 1e-10, "order-" + std::to_string(order) + " factor density");
  return f;
}

NodalSlice::NodalSlice(const ProductEigenstate& state, SliceAxis axis, int segment_nodes)
    : axis_(axis), segment_nodes_(segment_nodes) {
  if (segment_nodes < 8) throw DomainError("nodal slice: at least 8 nodes per segment");
  const auto& params = state.params();
  const double com_sigma = std::sqrt(state.com_mass() * params.com_frequency());
  const double rel_sigma = std::sqrt(state.relative_mass() * params.relative_frequency());
  if (axis == SliceAxis::Position) {
    a_ = 1.0;
    b_ = 0.5;
    sum_ = make_factor(state.n_com(), 1.0 / com_sigma);
    diff_ = make_factor(state.n_rel(), 1.0 / rel_sigma);
  } else {
    a_ = 0.5;
    b_ = 1.0;
    sum_ = make_factor(state.n_com(), com_sigma);
    diff_ = make_factor(state.n_rel(), rel_sigma);
  }

  // P1(u) = int F(s) G((u - a s)/b) / b ds. The integrand is a Gaussian in s,
  // centred at shift * u with curvature A, times a polynomial of degree
  // 2 (n_s + n_d), so a Gauss-Hermite rule of n_s + n_d + 1 nodes is exact.
  const double ls = sum_.scale;
  const double ld = diff_.scale;
  const double curvature = 1.0 / (ls * ls) + a_ * a_ / (b_ * b_ * ld * ld);
  marginal_shift_ = a_ / (b_ * b_ * ld * ld * curvature);
  const auto rule = make_grid(GridKind::GaussHermite, 1.0 / std::sqrt(curvature),
                              std::max(16, state.n_com() + state.n_rel() + 8));
  marginal_offsets_.assign(rule.nodes().begin(), rule.nodes().end());
  marginal_weights_.assign(rule.weights().begin(), rule.weights().end());

  // Half-line rule for integrals of the marginal; P1 is smooth and positive,
  // varying on a scale no shorter than the wider of a ls and b ld.
  const LegendreRule legendre = gauss_legendre(segment_nodes_);
  const double extent = a_ * sum_.nodes.back() + b_ * diff_.nodes.back();
  const double width = 0.5 * std::max(a_ * ls, b_ * ld);
  const int panels = static_cast<int>(std::ceil(extent / width));
  for (int p = 0; p < panels; ++p) {
    append_panel(legendre, extent * p / panels, extent * (p + 1) / panels, marginal_nodes_,
                 marginal_node_weights_);
  }
  double mass = 0.0;
  for (std::size_t i = 0; i < marginal_nodes_.size(); ++i) {
    mass += 2.0 * marginal_node_weights_[i] * marginal(marginal_nodes_[i]);
  }
  check_unit_mass(mass, 1e-9, "marginal");
}

double NodalSlice::joint(double u1, double u2) const {
  return sum_.density((u1 + u2) / (2.0 * a_)) * diff_.density((u1 - u2) / (2.0 * b_));
}

double NodalSlice::marginal(double u) const {
  const double centre = marginal_shift_ * u;
  double acc = 0.0;
  for (std::size_t k = 0; k < marginal_offsets_.size(); ++k) {
    const double s = centre + marginal_offsets_[k];
    acc += marginal_weights_[k] * sum_.density(s) * diff_.density((u - a_ * s) / b_);
  }
  return acc / b_;
}

double NodalSlice::bhattacharyya() const {
  // The integrand is even in s and in d; integrate one quadrant.
  std::vector<double> root_diff(diff_.nodes.size());
  for (std::size_t j = 0; j < diff_.nodes.size(); ++j) root_diff[j] = std::sqrt(diff_.density(diff_.nodes[j]));
  double coefficient = 0.0;
  for (std::size_t i = 0; i < sum_.nodes.size(); ++i) {
    const double s = sum_.nodes[i];
    const double root_sum = std::sqrt(sum_.density(s));
    if (root_sum == 0.0) continue;
    double row = 0.0;
    for (std::size_t j = 0; j < diff_.nodes.size(); ++j) {
      const double d = diff_.nodes[j];
      row += diff_.weights[j] * root_diff[j] *
             std::sqrt(marginal(a_ * s + b_ * d) * marginal(a_ * s - b_ * d));
    }
    coefficient += sum_.weights[i] * root_sum * row;
  }
  coefficient *= 4.0;
  if (!(coefficient > 0.0) || !std::isfinite(coefficient)) {
    throw NumericalError("nodal slice: Bhattacharyya coefficient is not positive");
  }
  return -std::log2(coefficient);
}

double NodalSlice::entropy(const Factor& f) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const double p = f.density(f.nodes[i]);
    if (p > 0.0) acc -= 2.0 * f.weights[i] * p * std::log(p);
  }
  return acc;
}

double NodalSlice::kullback_leibler() const {
  double marginal_entropy = 0.0;
  for (std::size_t i = 0; i < marginal_nodes_.size(); ++i) {
    const double p = marginal(marginal_nodes_[i]);
    if (p > 0.0) marginal_entropy -= 2.0 * marginal_node_weights_[i] * p * std::log(p);
  }
  return (2.0 * marginal_entropy - entropy(sum_) - entropy(diff_)) / std::numbers::ln2;
}

}  // namespace oscitom
