#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "oscitom/errors.hpp"
#include "oscitom/measures.hpp"
#include "oscitom/tomogram.hpp"

using namespace oscitom;

namespace {

std::vector<double> log_symmetric(double hi, int n) {
  std::vector<double> out(n);
  const int mid = n / 2;
  for (int i = 0; i < n; ++i) out[i] = i == mid ? 1.0 : std::exp(std::log(hi) * (i - mid) / mid);
  return out;
}

std::size_t argmin(const std::vector<double>& v) {
  return static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
}

// Plain Riemann sums over a uniform grid from pointwise density evaluation.
struct RiemannOracle {
  double bd = 0.0;
  double kl = 0.0;
  double r = 0.0;
};

template <class Density>
RiemannOracle riemann(Density&& density, double half_width, int n) {
  const double h = 2.0 * half_width / (n - 1);
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = -half_width + i * h;
  std::vector<double> p(static_cast<std::size_t>(n) * n);
  std::vector<double> m1(n, 0.0), m2(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = density(x[i], x[j]);
      p[i * n + j] = v;
      m1[i] += v * h;
      m2[j] += v * h;
    }
  }
  RiemannOracle out;
  double bc = 0.0, kl = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0, mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v = p[i * n + j];
      bc += std::sqrt(v * m1[i] * m2[j]) * h * h;
      if (v > 0.0) kl += v * std::log2(v / (m1[i] * m2[j])) * h * h;
      mx += v * x[i] * h * h;
      my += v * x[j] * h * h;
      sxx += v * x[i] * x[i] * h * h;
      syy += v * x[j] * x[j] * h * h;
      sxy += v * x[i] * x[j] * h * h;
    }
  }
  out.bd = -std::log2(bc);
  out.kl = kl;
  out.r = (sxy - mx * my) / std::sqrt((sxx - mx * mx) * (syy - my * my));
  return out;
}

double gaussian_kl(double r) { return -0.5 * std::log2(1.0 - r * r); }
// Bhattacharyya distance between a correlated bivariate normal and the product of its marginals.
double gaussian_bd(double r) { return -0.25 * std::log2(1.0 - r * r) + 0.5 * std::log2(1.0 - 0.25 * r * r); }

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = static_cast<double>(std::count_if(v.begin(), v.end(), [&](double y) { return y < v[i]; }));
  }
  return out;
}

double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d2 += (ra[i] - rb[i]) * (ra[i] - rb[i]);
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST_CASE("indicators vanish on the product ground state") {
  const ProductEigenstate state(OscillatorParams::from_ratio(1.0), 0, 0);
  const auto pos = joint_position_density(state, position_grid(state));
  const auto mom = joint_momentum_density(state, momentum_grid(state));
  for (const auto* slice : {&pos, &mom}) {
    CHECK(epsilon_bd(*slice) < 1e-9);
    CHECK(epsilon_kl(*slice) < 1e-9);
    CHECK(epsilon_bd(*slice) >= 0.0);
    CHECK(epsilon_kl(*slice) >= 0.0);
  }
  for (auto indicator : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
    CHECK(averaged_indicator(indicator, state).value < 1e-9);
  }
}

TEST_CASE("Bhattacharyya distance matches a double-resolution Riemann oracle") {
  const ProductEigenstate state(OscillatorParams::from_ratio(4.0), 0, 0);
  const auto grid = position_grid(state, 512);
  const double value = epsilon_bd(joint_position_density(state, grid));
  const auto oracle =
      riemann([&](double a, double b) { return state.position_density(a, b); }, grid.half_width(), 1024);
  CHECK(value > 0.0);
  CHECK(std::abs(value - oracle.bd) < 1e-6);
  // The ground-state slice is a correlated Gaussian with r = (1 - eta) / (1 + eta).
  CHECK(std::abs(oracle.r - (-0.6)) < 1e-9);
  CHECK(std::abs(value - gaussian_bd(oracle.r)) < 1e-6);
}

TEST_CASE("Kullback-Leibler divergence matches the Gaussian mutual information") {
  for (double eta : {2.0, 4.0, 0.3}) {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
    const auto grid = position_grid(state);
    const auto slice = joint_position_density(state, grid);
    const auto oracle =
        riemann([&](double a, double b) { return state.position_density(a, b); }, grid.half_width(), 700);
    INFO("eta = " << eta);
    CHECK(std::abs(epsilon_kl(slice) - gaussian_kl(oracle.r)) < 1e-6);
    CHECK(std::abs(epsilon_kl(slice) - oracle.kl) < 1e-6);
  }
}

TEST_CASE("indicators are nonnegative across states") {
  for (double eta : {0.1, 0.7, 1.0, 1.3, 9.0}) {
    for (int n_r : {0, 1, 4}) {
      for (int n_c : {0, 2}) {
        const ProductEigenstate state(OscillatorParams::from_ratio(eta), n_c, n_r);
        const auto pos = joint_position_density(state, position_grid(state, 512));
        const auto mom = joint_momentum_density(state, momentum_grid(state, 512));
        CHECK(epsilon_bd(pos) >= 0.0);
        CHECK(epsilon_kl(pos) >= 0.0);
        CHECK(epsilon_bd(mom) >= 0.0);
        CHECK(epsilon_kl(mom) >= 0.0);
        CHECK(epsilon_kl(pos) >= epsilon_bd(pos) * 0.0);
      }
    }
  }
}

TEST_CASE("IPR indicator on a factorized Gaussian fixture matches direct sums") {
  const auto grid = make_grid(GridKind::UniformTrapezoid, 12.0, 601);
  const int n = static_cast<int>(grid.size());
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p(i) = std::exp(-0.5 * grid.node(i) * grid.node(i)) / std::sqrt(2.0 * std::numbers::pi);
  const TomogramSlice slice(SliceAxis::Position, grid, grid, p * p.transpose());
  // Independent sums with the same nodes but a plain Riemann rule.
  const double h = grid.spacing();
  double purity = 0.0;
  for (int i = 0; i < n; ++i) purity += p(i) * p(i) * h;
  const double oracle = 1.0 + purity * purity - 2.0 * purity;
  CHECK(std::abs(ipr_indicator(slice) - oracle) < 1e-10);
  // Purity of a unit normal is 1 / (2 sqrt(pi)); the indicator is (1 - purity)^2.
  const double exact_purity = 0.5 / std::sqrt(std::numbers::pi);
  CHECK(ipr_indicator(slice) == doctest::Approx((1.0 - exact_purity) * (1.0 - exact_purity)).epsilon(1e-10));
}

TEST_CASE("IPR indicator grows with n_r at eta = 1/4 and is grid-stable") {
  double previous = -1.0;
  for (int n_r = 0; n_r <= 5; ++n_r) {
    const ProductEigenstate state(OscillatorParams::from_ratio(0.25), 0, n_r);
    const auto grid = make_grid(GridKind::UniformTrapezoid, default_dimensionless_half_width(state), 256);
    const double value = epsilon_ipr(state, grid);
    INFO("n_r = " << n_r);
    CHECK(value > previous);
    CHECK(std::abs(epsilon_ipr(state, refined(grid)) - value) < 1e-7);
    previous = value;
  }
}

TEST_CASE("IPR indicator rejects eta != 1/4") {
  for (double eta : {1.0, 0.2501, 4.0}) {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 1);
    CHECK_THROWS_AS(epsilon_ipr(state, 256), DomainError);
  }
  try {
    epsilon_ipr(ProductEigenstate(OscillatorParams::from_ratio(2.0), 0, 0), 256);
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("L_c = L_r") != std::string::npos);
  }
}

TEST_CASE("dimensionless slice is the physical density rescaled by L^2") {
  const ProductEigenstate state(OscillatorParams::from_ratio(0.25), 0, 2);
  const auto grid = make_grid(GridKind::UniformTrapezoid, default_dimensionless_half_width(state), 128);
  const auto slice = dimensionless_position_slice(state, grid);
  const double length = state.relative_length();
  for (std::size_t i = 0; i < grid.size(); i += 11) {
    for (std::size_t j = 0; j < grid.size(); j += 7) {
      const double expected = length * length * state.position_density(length * grid.node(i), length * grid.node(j));
      CHECK(slice.joint()(i, j) == doctest::Approx(expected).epsilon(1e-10).scale(1e-300));
    }
  }
  CHECK(std::abs(slice.normalization() - 1.0) < 1e-8);
}

TEST_CASE("averaged indicator is the mean of the two slices") {
  const ProductEigenstate state(OscillatorParams::from_ratio(3.0), 0, 2);
  for (auto indicator : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
    const auto result = averaged_indicator(indicator, state);
    REQUIRE(result.per_slice.size() == 2);
    CHECK(result.indicator == indicator);
    CHECK(result.value == 0.5 * (result.per_slice[0] + result.per_slice[1]));
    CHECK(result.per_slice[0] == slice_indicator(indicator, state, SliceAxis::Position));
    CHECK(result.per_slice[1] == slice_indicator(indicator, state, SliceAxis::Momentum));
    const auto gridded = averaged_indicator(indicator, state, position_grid(state, 256), momentum_grid(state, 256));
    CHECK(gridded.per_slice[0] == evaluate(indicator, joint_position_density(state, position_grid(state, 256))));
    CHECK(gridded.per_slice[1] == evaluate(indicator, joint_momentum_density(state, momentum_grid(state, 256))));
  }
  CHECK(to_string(Indicator::Bhattacharyya) == "bd");
  CHECK(to_string(Indicator::KullbackLeibler) == "kl");
}

TEST_CASE("slice minima straddle eta = 1 while the average is minimized there") {
  const auto etas = log_symmetric(20.0, 13);
  const std::size_t mid = etas.size() / 2;
  for (int n_r : {1, 2, 3}) {
    for (auto indicator : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
      std::vector<double> pos, mom, avg;
      for (double eta : etas) {
        const auto r = averaged_indicator(indicator, ProductEigenstate(OscillatorParams::from_ratio(eta), 0, n_r));
        pos.push_back(r.per_slice[0]);
        mom.push_back(r.per_slice[1]);
        avg.push_back(r.value);
      }
      INFO("n_r = " << n_r << ", indicator " << to_string(indicator));
      CHECK(argmin(avg) == mid);
      CHECK(avg[mid] >= 0.0);
      CHECK(avg[mid - 1] > avg[mid]);
      CHECK(avg[mid + 1] > avg[mid]);
      if (indicator == Indicator::Bhattacharyya) {
        CHECK(etas[argmin(pos)] < 1.0);
        CHECK(etas[argmin(mom)] > 1.0);
      }
      // Position at eta equals momentum at 1/eta, hence the average is symmetric.
      for (std::size_t i = 0; i < etas.size(); ++i) {
        CHECK(std::abs(pos[i] - mom[etas.size() - 1 - i]) < 1e-6);
        CHECK(std::abs(avg[i] - avg[etas.size() - 1 - i]) < 1e-6);
      }
    }
  }
}

TEST_CASE("indicators diverge as eta -> 0") {
  const std::vector<double> etas{1.0, 1e-1, 1e-2, 1e-3};
  const auto kl = divergence_probe(Indicator::KullbackLeibler, 0, etas);
  const auto bd = divergence_probe(Indicator::Bhattacharyya, 0, etas);
  CHECK(kl[0] < 1e-9);
  CHECK(bd[0] < 1e-9);
  for (std::size_t i = 1; i < etas.size(); ++i) {
    CHECK(kl[i] > kl[i - 1]);
    CHECK(bd[i] > bd[i - 1]);
    // n_r = 0 slices are Gaussians with |r| = |1 - eta| / (1 + eta) in both representations.
    const double r = (1.0 - etas[i]) / (1.0 + etas[i]);
    CHECK(std::abs(kl[i] - gaussian_kl(r)) < 1e-6);
    CHECK(std::abs(bd[i] - gaussian_bd(r)) < 1e-6);
  }
  const std::vector<double> unordered{0.1, 0.2};
  CHECK_THROWS_AS(divergence_probe(Indicator::Bhattacharyya, 0, unordered), DomainError);
  const std::vector<double> negative{0.1, -0.2};
  CHECK_THROWS_AS(divergence_probe(Indicator::Bhattacharyya, 0, negative), DomainError);
}

TEST_CASE("KL reports a support mismatch at the offending grid point") {
  const auto grid = make_grid(GridKind::UniformTrapezoid, 5.0, 32);
  const Eigen::VectorXd w = weight_vector(grid);
  const int n = static_cast<int>(grid.size());
  Eigen::VectorXd p(n);
  for (int i = 0; i < n; ++i) p(i) = std::exp(-grid.node(i) * grid.node(i));
  p /= w.dot(p);
  Eigen::MatrixXd joint = p * p.transpose();
  joint.row(0).setZero();
  joint(0, 5) = 1e-13;  // positive where the first marginal will be given as zero
  Eigen::VectorXd m1 = joint * w;
  Eigen::VectorXd m2 = joint.transpose() * w;
  m1(0) = 0.0;
  const auto slice = TomogramSlice::from_components(SliceAxis::Position, grid, grid, joint, m1, m2);
  CHECK_THROWS_AS(epsilon_kl(slice), NumericalError);
  try {
    epsilon_kl(slice);
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("(0, 5)") != std::string::npos);
  }
  // Entries at or below the floor are skipped.
  CHECK_NOTHROW(epsilon_kl(slice, 1e-12));
  // Inconsistent marginals are rejected at construction.
  Eigen::VectorXd bad = m2;
  bad(3) += 1e-6;
  CHECK_THROWS_AS(TomogramSlice::from_components(SliceAxis::Position, grid, grid, joint, m1, bad), NumericalError);
}

TEST_CASE("slices validate normalization and sign") {
  const auto grid = make_grid(GridKind::UniformTrapezoid, 5.0, 32);
  Eigen::MatrixXd joint = Eigen::MatrixXd::Constant(32, 32, 0.05);
  CHECK_THROWS_AS(TomogramSlice(SliceAxis::Position, grid, grid, joint), GridError);
  Eigen::MatrixXd negative = Eigen::MatrixXd::Zero(32, 32);
  negative(3, 3) = -1.0;
  CHECK_THROWS(TomogramSlice(SliceAxis::Position, grid, grid, negative));
}

TEST_CASE("indicators are stable when the quadrature is refined") {
  for (double eta : {2.7, 0.2}) {
    for (int n_r : {1, 3, 6}) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 1, n_r);
      for (auto axis : {SliceAxis::Position, SliceAxis::Momentum}) {
        for (auto indicator : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
          INFO("eta = " << eta << ", n_r = " << n_r << ", " << to_string(indicator));
          const double coarse = slice_indicator(indicator, state, axis, 32);
          const double fine = slice_indicator(indicator, state, axis, 64);
          CHECK(std::abs(coarse - fine) < 1e-6);
        }
      }
    }
  }
  // Smooth (nodeless) slices converge spectrally on the uniform grid as well.
  const ProductEigenstate ground(OscillatorParams::from_ratio(2.7), 0, 0);
  const auto pg = position_grid(ground, 256);
  for (auto indicator : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
    const double value = evaluate(indicator, joint_position_density(ground, pg));
    CHECK(std::abs(value - evaluate(indicator, joint_position_density(ground, refined(pg)))) < 1e-6);
  }
}

TEST_CASE("nodal rule reproduces the Gaussian closed forms for n_r = 0") {
  for (double eta : {0.01, 0.3, 1.0, 2.0, 50.0}) {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
    const double r = (1.0 - eta) / (1.0 + eta);
    for (auto axis : {SliceAxis::Position, SliceAxis::Momentum}) {
      INFO("eta = " << eta);
      const NodalSlice slice(state, axis);
      CHECK(std::abs(slice.kullback_leibler() - gaussian_kl(r)) < 1e-9);
      CHECK(std::abs(slice.bhattacharyya() - gaussian_bd(r)) < 1e-9);
    }
  }
}

TEST_CASE("nodal joint and marginal agree with the physical densities") {
  const ProductEigenstate state(OscillatorParams::from_ratio(0.4), 2, 3);
  const NodalSlice pos(state, SliceAxis::Position);
  const NodalSlice mom(state, SliceAxis::Momentum);
  const auto grid = position_grid(state, 512);
  const auto slice = joint_position_density(state, grid);
  for (std::size_t i = 0; i < grid.size(); i += 37) {
    const double x = grid.node(i);
    CHECK(pos.joint(x, 0.3) == doctest::Approx(state.position_density(x, 0.3)).epsilon(1e-12).scale(1e-300));
    CHECK(mom.joint(x, -0.2) == doctest::Approx(state.momentum_density(x, -0.2)).epsilon(1e-12).scale(1e-300));
    // The grid marginal is a trapezoid sum of a smooth, rapidly decaying integrand.
    CHECK(std::abs(pos.marginal(x) - slice.marginal1()(static_cast<Eigen::Index>(i))) < 1e-9);
    CHECK(pos.marginal(x) == doctest::Approx(pos.marginal(-x)).epsilon(1e-13).scale(1e-300));
  }
}

TEST_CASE("uniform grids converge to the nodal value only at second order") {
  const ProductEigenstate state(OscillatorParams::from_ratio(0.2), 0, 1);
  const double exact = slice_indicator(Indicator::Bhattacharyya, state, SliceAxis::Position);
  std::vector<double> errors;
  for (int points : {256, 512, 1024}) {
    errors.push_back(std::abs(evaluate(Indicator::Bhattacharyya, joint_position_density(state, position_grid(state, points))) - exact));
  }
  // Halving the spacing divides the error by roughly four.
  CHECK(errors[0] / errors[1] > 3.0);
  CHECK(errors[0] / errors[1] < 5.0);
  CHECK(errors[1] / errors[2] > 3.0);
  CHECK(errors[1] / errors[2] < 5.0);
  CHECK(errors[2] < 2e-4);
}

TEST_CASE("nodal rule rejects too few nodes per segment") {
  const ProductEigenstate state(OscillatorParams::from_ratio(0.5), 12, 0);
  CHECK_THROWS_AS(NodalSlice(state, SliceAxis::Position, 4), DomainError);
  CHECK_THROWS_AS(NodalSlice(state, SliceAxis::Position, 12), NumericalError);
  try {
    NodalSlice(state, SliceAxis::Position, 12);
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("order-12") != std::string::npos);
  }
}

TEST_CASE("averaged Bhattacharyya distance tracks the von Neumann entropy") {
  const std::vector<double> etas{1.0, 2.0, 4.0, 8.0};
  for (int n_r : {1, 2}) {
    std::vector<double> bd, svne;
    for (double eta : etas) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, n_r);
      bd.push_back(averaged_indicator(Indicator::Bhattacharyya, state).value);
      svne.push_back(entropies(schmidt_svd(state, position_grid(state, 512))).svne);
    }
    INFO("n_r = " << n_r);
    CHECK(spearman(bd, svne) == 1.0);
  }
}
