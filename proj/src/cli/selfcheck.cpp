#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

#include "oscitom/cli.hpp"
#include "oscitom/measures.hpp"
#include "oscitom/tomogram.hpp"

namespace oscitom::cli {

namespace {

struct Tolerance {
  double max_error = 0.0;
  double limit = 0.0;
  bool ok() const { return max_error < limit; }
  std::string detail() const { return "max error " + format_value(max_error) + " (limit " + format_value(limit) + ")"; }
};

template <class Body>
SelfcheckResult run_check(std::string name, Body&& body) {
  SelfcheckResult result{std::move(name), false, ""};
  try {
    body(result);
  } catch (const std::exception& e) {
    result.passed = false;
    result.detail = e.what();
  }
  return result;
}

void set(SelfcheckResult& result, const Tolerance& tol) {
  result.passed = tol.ok();
  result.detail = tol.detail();
}

}  // namespace

bool SelfcheckReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::string SelfcheckReport::table() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  std::string out;
  auto line = [&](const std::string& name, const std::string& status, const std::string& detail) {
    out += name + std::string(width - name.size() + 2, ' ') + status + "  " + detail + "\n";
  };
  line("check", "status", "detail");
  for (const auto& c : checks) line(c.name, c.passed ? "PASS  " : "FAIL  ", c.detail);
  int failed = 0;
  for (const auto& c : checks) failed += c.passed ? 0 : 1;
  out += std::to_string(checks.size() - failed) + "/" + std::to_string(checks.size()) + " checks passed\n";
  return out;
}

SelfcheckReport cmd_selfcheck(int points) {
  SelfcheckReport report;
  auto& checks = report.checks;
  const int nodes = std::max(32, points / 16);
  const auto etas = log_spaced(kDefaultEtaLow, kDefaultEtaHigh, 9);

  checks.push_back(run_check("slice normalization", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-6};
    for (double eta : {0.5, 2.0}) {
      for (int n_rel : {0, 3}) {
        const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, n_rel);
        const auto pos = joint_position_density(state, position_grid(state, points));
        const auto mom = joint_momentum_density(state, momentum_grid(state, points));
        tol.max_error = std::max({tol.max_error, std::abs(pos.normalization() - 1.0),
                                  std::abs(mom.normalization() - 1.0)});
      }
    }
    set(r, tol);
  }));

  checks.push_back(run_check("reduced kernel trace", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-6};
    for (double eta : {0.5, 2.0}) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 1, 2);
      const auto grid = position_grid(state, points);
      const Eigen::MatrixXd kernel = reduced_density_kernel(state, grid);
      double trace = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) trace += grid.weight(i) * kernel(i, i);
      tol.max_error = std::max(tol.max_error, std::abs(trace - 1.0));
    }
    set(r, tol);
  }));

  checks.push_back(run_check("ground-state SLE, numeric vs closed form", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-6};
    for (double eta : etas) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
      const double numeric = entropies(schmidt_svd(state, position_grid(state, points))).sle;
      tol.max_error = std::max(tol.max_error, std::abs(numeric - sle_ground_closed(eta)));
    }
    set(r, tol);
  }));

  checks.push_back(run_check("ground-state SVNE, numeric vs closed form", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-5};
    for (double eta : etas) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
      const double numeric = entropies(schmidt_svd(state, position_grid(state, points))).svne;
      tol.max_error = std::max(tol.max_error, std::abs(numeric - svne_ground_closed(eta)));
    }
    set(r, tol);
  }));

  checks.push_back(run_check("heat-bath spectrum vs closed forms", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-10};
    for (double eta : etas) {
      const auto bath = heat_bath_map(OscillatorParams::from_ratio(eta));
      const auto geometric = entropies(SchmidtSpectrum(bath.spectrum(), 0.0));
      for (double v : {std::abs(geometric.sle - sle_ground_closed(eta)), std::abs(geometric.svne - svne_ground_closed(eta)),
                       std::abs(bath.sle() - sle_ground_closed(eta)), std::abs(bath.svne() - svne_ground_closed(eta))}) {
        tol.max_error = std::max(tol.max_error, v);
      }
    }
    set(r, tol);
  }));

  checks.push_back(run_check("uncoupled spectrum vs closed forms", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-10};
    for (int nu = 0; nu <= 30; ++nu) {
      const auto e = entropies(schmidt_uncoupled(0, nu));
      tol.max_error = std::max({tol.max_error, std::abs(e.sle - sle_uncoupled(nu)), std::abs(e.svne - svne_uncoupled(nu))});
    }
    set(r, tol);
    const bool spots = std::abs(sle_uncoupled(1) - 0.5) < 1e-12 && std::abs(sle_uncoupled(2) - 0.625) < 1e-12 &&
                       std::abs(svne_uncoupled(1) - std::numbers::ln2) < 1e-12;
    if (!spots) {
      r.passed = false;
      r.detail += "; spot values SLE(1), SLE(2), SVNE(1) off";
    }
  }));

  checks.push_back(run_check("eta = 1 numeric spectrum vs combinatorial", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-8};
    for (int n_rel = 0; n_rel <= 6; ++n_rel) {
      const ProductEigenstate state(OscillatorParams::from_ratio(1.0), 0, n_rel);
      const auto numeric = schmidt_svd(state, position_grid(state, points));
      const auto exact = schmidt_uncoupled(0, n_rel);
      for (std::size_t k = 0; k < std::max(numeric.size(), exact.size()); ++k) {
        const double a = k < numeric.size() ? numeric[k] : 0.0;
        const double b = k < exact.size() ? exact[k] : 0.0;
        tol.max_error = std::max(tol.max_error, std::abs(a - b));
      }
    }
    set(r, tol);
  }));

  checks.push_back(run_check("SLE large-nu_r asymptote", [&](SelfcheckResult& r) {
    const double at100 = sle_asymptote_check(100);
    const double at1000 = sle_asymptote_check(1000);
    r.passed = at100 < 2e-3 && at1000 < 1e-4;
    r.detail = "deviation " + format_value(at100) + " at 100, " + format_value(at1000) + " at 1000";
  }));

  checks.push_back(run_check("indicators vanish on the product state", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-8};
    const ProductEigenstate state(OscillatorParams::from_ratio(1.0), 0, 0);
    for (auto ind : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
      const auto result = averaged_indicator(ind, state, nodes);
      tol.max_error = std::max({tol.max_error, result.value, result.per_slice[0], result.per_slice[1]});
    }
    set(r, tol);
  }));

  checks.push_back(run_check("Gaussian KL from the quadrature covariance", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-6};
    for (double eta : {2.0, 4.0}) {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
      const auto grid = position_grid(state, points);
      const auto slice = joint_position_density(state, grid);
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
          const double w = grid.weight(i) * grid.weight(j) * slice.joint()(i, j);
          sxx += w * grid.node(i) * grid.node(i);
          sxy += w * grid.node(i) * grid.node(j);
        }
      }
      const double corr = sxy / sxx;
      tol.max_error = std::max(tol.max_error, std::abs(epsilon_kl(slice) + 0.5 * std::log2(1.0 - corr * corr)));
    }
    set(r, tol);
  }));

  checks.push_back(run_check("position at eta equals momentum at 1/eta", [&](SelfcheckResult& r) {
    Tolerance tol{0.0, 1e-9};
    for (double eta : {0.2, 3.0}) {
      const ProductEigenstate a(OscillatorParams::from_ratio(eta), 0, 2);
      const ProductEigenstate b(OscillatorParams::from_ratio(1.0 / eta), 0, 2);
      for (auto ind : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
        tol.max_error = std::max(tol.max_error, std::abs(slice_indicator(ind, a, SliceAxis::Position, nodes) -
                                                          slice_indicator(ind, b, SliceAxis::Momentum, nodes)));
      }
    }
    set(r, tol);
  }));

  checks.push_back(run_check("averaged indicators are minimal at eta = 1", [&](SelfcheckResult& r) {
    const auto grid = log_spaced(0.2, 5.0, 7);
    std::string failures;
    for (auto ind : {Indicator::Bhattacharyya, Indicator::KullbackLeibler}) {
      std::vector<double> avg;
      for (double eta : grid) avg.push_back(averaged_indicator(ind, ProductEigenstate(OscillatorParams::from_ratio(eta), 0, 1), nodes).value);
      const auto best = std::min_element(avg.begin(), avg.end()) - avg.begin();
      if (best != 3 || !(avg[2] > avg[3]) || !(avg[4] > avg[3])) failures += std::string(to_string(ind)) + " ";
    }
    r.passed = failures.empty();
    r.detail = failures.empty() ? "n_r = 1, bd and kl" : "minimum misplaced for " + failures;
  }));

  checks.push_back(run_check("IPR indicator increases with n_r", [&](SelfcheckResult& r) {
    double previous = -1.0;
    std::string values;
    bool increasing = true;
    for (int n_rel = 0; n_rel <= 5; ++n_rel) {
      const ProductEigenstate state(OscillatorParams::from_ratio(0.25), 0, n_rel);
      const double v = epsilon_ipr(state, make_grid(GridKind::UniformTrapezoid, default_dimensionless_half_width(state), points));
      increasing = increasing && v > previous;
      previous = v;
      values += (n_rel ? " " : "") + format_value(v);
    }
    r.passed = increasing;
    r.detail = "values " + values;
  }));

  return report;
}

}  // namespace oscitom::cli
