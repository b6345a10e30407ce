#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscitom/errors.hpp"
#include "oscitom/quadrature.hpp"
#include "oscitom/special_functions.hpp"

using namespace oscitom;

namespace {

double gaussian(double x) { return std::exp(-x * x) / std::sqrt(std::numbers::pi); }

void check_grid_invariants(const QuadratureGrid& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.weight(i) > 0.0);
    if (i > 0) CHECK(grid.node(i) > grid.node(i - 1));
  }
}

}  // namespace

TEST_CASE("trapezoid grid: spacing and end weights") {
  const auto grid = make_grid(GridKind::UniformTrapezoid, 10.0, 401);
  CHECK(grid.size() == 401);
  CHECK(grid.spacing() == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(grid.node(0) == -10.0);
  CHECK(grid.node(400) == 10.0);
  CHECK(grid.node(200) == 0.0);
  CHECK(grid.weight(0) == doctest::Approx(0.025).epsilon(1e-14));
  CHECK(grid.weight(1) == doctest::Approx(0.05).epsilon(1e-14));
  check_grid_invariants(grid);
}

TEST_CASE("gauss-hermite grid: de-scaled weights sum to sqrt(pi)") {
  const auto grid = make_grid(GridKind::GaussHermite, 1.0, 64);
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) sum += grid.weight(i) * std::exp(-grid.node(i) * grid.node(i));
  CHECK(sum == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-13));
  check_grid_invariants(grid);
  // Symmetric about the origin.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(grid.node(i) == -grid.node(grid.size() - 1 - i));
    CHECK(grid.weight(i) == grid.weight(grid.size() - 1 - i));
  }
}

TEST_CASE("both kinds integrate the normalized Gaussian to 1") {
  for (auto kind : {GridKind::GaussHermite, GridKind::UniformTrapezoid}) {
    for (int points : {64, 128, 257, 1024}) {
      const double half_width = kind == GridKind::GaussHermite ? 1.0 : 10.0;
      const auto grid = make_grid(kind, half_width, points);
      INFO(to_string(kind) << " with " << points << " points");
      CHECK(std::abs(grid.integrate(gaussian) - 1.0) < 1e-10);
    }
  }
}

TEST_CASE("gauss-hermite length scale stretches the rule") {
  const double scale = 3.0;
  const auto grid = make_grid(GridKind::GaussHermite, scale, 48);
  const double value = grid.integrate([&](double x) { return gaussian(x / scale) / scale; });
  CHECK(std::abs(value - 1.0) < 1e-12);
  // Second moment of a Gaussian with variance 1/2; polynomial times weight at unit scale.
  const auto unit = make_grid(GridKind::GaussHermite, 1.0, 16);
  const double second = unit.integrate([](double x) { return x * x * gaussian(x); });
  CHECK(second == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrate over tabulated values matches the callable form") {
  const auto grid = make_grid(GridKind::UniformTrapezoid, 8.0, 333);
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = std::cos(grid.node(i)) * gaussian(grid.node(i));
  CHECK(grid.integrate(values) == doctest::Approx(grid.integrate([](double x) {
                                    return std::cos(x) * gaussian(x);
                                  })).epsilon(1e-15));
  CHECK(grid.integrate(values) == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
  std::vector<double> wrong(grid.size() - 1);
  CHECK_THROWS_AS(grid.integrate(wrong), DomainError);
}

TEST_CASE("grid refinement changes norm integrals by less than 1e-9") {
  for (int n : {0, 3, 12}) {
    const auto grid = make_grid(GridKind::UniformTrapezoid, 8.0 * std::sqrt(n + 1.0), 256);
    const double change = refinement_change(grid, [n](const QuadratureGrid& g) {
      return g.integrate([n](double u) { const double h = hermite_function(n, u); return h * h; });
    });
    CHECK(change < 1e-9);
  }
  const auto gh = make_grid(GridKind::GaussHermite, 1.0, 64);
  CHECK(refined(gh).size() == 128);
  CHECK(refined(gh).kind() == GridKind::GaussHermite);
  const auto tr = make_grid(GridKind::UniformTrapezoid, 5.0, 100);
  CHECK(refined(tr).node(0) == tr.node(0));
  CHECK(refined(tr).node(refined(tr).size() - 1) == tr.node(tr.size() - 1));
}

TEST_CASE("grid construction errors") {
  CHECK_THROWS_AS(make_grid(GridKind::UniformTrapezoid, 0.0, 64), DomainError);
  CHECK_THROWS_AS(make_grid(GridKind::UniformTrapezoid, -1.0, 64), DomainError);
  CHECK_THROWS_AS(make_grid(GridKind::GaussHermite, -2.0, 64), DomainError);
  CHECK_THROWS_AS(make_grid(GridKind::UniformTrapezoid, 5.0, 15), DomainError);
  CHECK_NOTHROW(make_grid(GridKind::UniformTrapezoid, 5.0, 16));
  CHECK_THROWS(QuadratureGrid(GridKind::UniformTrapezoid, 1.0, {0.0, 1.0}, {1.0, -1.0}));
  CHECK_THROWS(QuadratureGrid(GridKind::UniformTrapezoid, 1.0, {1.0, 0.0}, {1.0, 1.0}));
  CHECK_THROWS(QuadratureGrid(GridKind::UniformTrapezoid, 1.0, {0.0, 1.0}, {1.0}));
}
