#include "oscitom/measures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>

#include "oscitom/errors.hpp"
#include "oscitom/special_functions.hpp"

namespace oscitom {

namespace {

constexpr double kNegativeEigenvalueLimit = -1e-8;

void check_eta(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError("frequency ratio eta must be positive, got " + std::to_string(eta));
  }
}

}  // namespace

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> raw, double cutoff) {
  coefficients_.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = raw[i];
    if (!std::isfinite(v) || v < kNegativeEigenvalueLimit) {
      std::ostringstream msg;
      msg << "Schmidt coefficient " << i << " = " << v
          << " is below roundoff tolerance; grid or state is inconsistent";
      throw NumericalError(msg.str());
    }
    if (v >= cutoff) coefficients_.push_back(v);
  }
  std::sort(coefficients_.begin(), coefficients_.end(), std::greater<>());
}

double SchmidtSpectrum::sum() const {
  double acc = 0.0;
  // Ascending accumulation keeps the small tail from being swamped.
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc += *it;
  return acc;
}

EntropyPair entropies(const SchmidtSpectrum& spectrum) {
  double purity = 0.0;
  double svne = 0.0;
  const auto& c = spectrum.coefficients();
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    purity += *it * *it;
    if (*it > 0.0) svne -= *it * std::log(*it);
  }
  return {1.0 - purity, svne};
}

std::vector<double> HeatBathEquivalent::spectrum(double cutoff) const {
  if (zero_temperature()) return {1.0};
  const double q = std::exp(-*reduced_beta);
  const double ground = -std::expm1(-*reduced_beta);
  std::vector<double> out;
  for (double lambda = ground; lambda >= cutoff && lambda > 0.0; lambda *= q) {
    out.push_back(lambda);
  }
  return out;
}

double HeatBathEquivalent::sle() const {
  if (zero_temperature()) return 0.0;
  return 1.0 - std::tanh(0.5 * *reduced_beta);
}

double HeatBathEquivalent::svne() const {
  if (zero_temperature()) return 0.0;
  const double b = *reduced_beta;
  const double q = std::exp(-b);
  return -std::log1p(-q) + b * q / (-std::expm1(-b));
}

HeatBathEquivalent heat_bath_map(const OscillatorParams& params) {
  HeatBathEquivalent out;
  out.effective_frequency = std::sqrt(params.com_frequency() * params.relative_frequency());
  const double eta = params.ratio();
  if (eta == 1.0) return out;
  // The reduced spectrum is invariant under eta -> 1/eta; use the branch below 1.
  const double s = std::sqrt(std::min(eta, 1.0 / eta));
  out.reduced_beta = 2.0 * (std::log1p(s) - std::log1p(-s));
  return out;
}

SchmidtSpectrum schmidt_uncoupled(int nu_c, int nu_r) {
  if (nu_c < 0 || nu_r < 0) throw DomainError("quantum numbers must be nonnegative");
  if (nu_c + nu_r > 60) {
    throw OutOfRangeError("schmidt_uncoupled supports nu_c + nu_r <= 60, got " +
                          std::to_string(nu_c + nu_r));
  }
  const int total = nu_c + nu_r;
  // Pascal's triangle up to row 60 is exact in 64 bits.
  std::vector<std::vector<std::int64_t>> binom(total + 1);
  for (int n = 0; n <= total; ++n) {
    binom[n].assign(n + 1, 1);
    for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  std::vector<double> coefficients;
  coefficients.reserve(total + 1);
  // <nu1, nu2 | nu_c, nu_r> = sqrt(nu1! nu2! / (nu_c! nu_r! 2^total)) S with
  // S = sum_{k + k' = nu2} (-1)^k' C(nu_r, k) C(nu_c, k'). |S| <= C(total, nu2),
  // so the alternating sum is exact in integers and no cancellation is lost.
  for (int nu2 = 0; nu2 <= total; ++nu2) {
    std::int64_t sum = 0;
    for (int k = std::max(0, nu2 - nu_c); k <= std::min(nu_r, nu2); ++k) {
      const int kp = nu2 - k;
      const std::int64_t term = binom[nu_r][k] * binom[nu_c][kp];
      sum += (kp % 2 == 0) ? term : -term;
    }
    const long double s = static_cast<long double>(sum);
    const long double value = s * s * static_cast<long double>(binom[total][nu_c]) /
                              (static_cast<long double>(binom[total][nu2]) * std::ldexp(1.0L, total));
    coefficients.push_back(static_cast<double>(value));
  }
  return SchmidtSpectrum(std::move(coefficients), 0.0);
}

double sle_uncoupled(int nu_r) {
  if (nu_r < 0) throw DomainError("nu_r must be nonnegative");
  const double log_central = log_binomial(2 * static_cast<std::int64_t>(nu_r), nu_r) -
                             2.0 * nu_r * std::numbers::ln2;
  return -std::expm1(log_central);
}

double svne_uncoupled(int nu_r) {
  if (nu_r < 0) throw DomainError("nu_r must be nonnegative");
  const double log_norm = nu_r * std::numbers::ln2;
  double weighted = 0.0;
  for (int l = 0; l <= nu_r; ++l) {
    const double log_c = log_binomial(nu_r, l);
    weighted += std::exp(log_c - log_norm) * log_c;
  }
  return log_norm - weighted;
}

double sle_ground_closed(double eta) {
  check_eta(eta);
  const double s = std::sqrt(eta);
  return (1.0 - s) * (1.0 - s) / (1.0 + eta);
}

double svne_ground_closed(double eta) {
  check_eta(eta);
  if (eta == 1.0) return 0.0;
  const double s = std::sqrt(eta);
  const double log_ratio_sq = 2.0 * std::log(std::abs((1.0 + s) / (1.0 - s)));
  return -std::log(4.0 * s / ((1.0 + s) * (1.0 + s))) + (1.0 - s) * (1.0 - s) / (4.0 * s) * log_ratio_sq;
}

SchmidtSpectrum schmidt_numeric(const Eigen::MatrixXd& kernel, const QuadratureGrid& grid,
                                double cutoff) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  if (kernel.rows() != n || kernel.cols() != n) {
    throw DomainError("schmidt_numeric: kernel shape does not match grid");
  }
  const double asymmetry = (kernel - kernel.transpose()).cwiseAbs().maxCoeff();
  if (asymmetry > 1e-10) {
    std::ostringstream msg;
    msg << "schmidt_numeric: kernel asymmetry " << asymmetry << " exceeds 1e-10";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd w = weight_vector(grid);
  const double trace = w.dot(kernel.diagonal());
  if (std::abs(trace - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "schmidt_numeric: kernel trace " << trace << " deviates from 1 by more than 1e-6";
    throw NumericalError(msg.str());
  }
  const Eigen::VectorXd root_w = w.cwiseSqrt();
  const Eigen::MatrixXd weighted = root_w.asDiagonal() * kernel * root_w.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(weighted, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("schmidt_numeric: eigensolver failed");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  return SchmidtSpectrum(std::vector<double>(ev.data(), ev.data() + ev.size()), cutoff);
}

SchmidtSpectrum schmidt_svd(const ProductEigenstate& state, const QuadratureGrid& grid,
                            double cutoff) {
  const Eigen::VectorXd root_w = weight_vector(grid).cwiseSqrt();
  Eigen::MatrixXd amplitude =
      root_w.asDiagonal() * position_amplitude_matrix(state, grid) * root_w.asDiagonal();
  const Eigen::VectorXd row_mass = amplitude.rowwise().squaredNorm();
  const double total = row_mass.sum();
  if (std::abs(total - 1.0) > 1e-6) {
    std::ostringstream msg;
    msg << "schmidt_svd: amplitude norm " << total << " on half-width " << grid.half_width()
        << " with " << grid.size() << " points deviates from 1 by more than 1e-6";
    throw GridError(msg.str());
  }

  // Rows (and, by the exchange symmetry of psi, the same columns) carrying
  // less than 1e-30 of the norm are dropped before decomposing.
  Eigen::Index lo = 0;
  Eigen::Index hi = amplitude.rows() - 1;
  while (lo < hi && row_mass(lo) < 1e-30 && row_mass(amplitude.rows() - 1 - lo) < 1e-30) ++lo;
  hi = amplitude.rows() - 1 - lo;
  const Eigen::Index len = hi - lo + 1;
  const Eigen::MatrixXd core = amplitude.block(lo, lo, len, len);

  std::vector<double> raw(static_cast<std::size_t>(len));
  if (state.n_rel() % 2 == 0) {
    // psi(x2, x1) = psi(x1, x2): singular values are |eigenvalues|.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(core, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("schmidt_svd: eigensolver failed");
    for (Eigen::Index i = 0; i < len; ++i) raw[i] = solver.eigenvalues()(i) * solver.eigenvalues()(i);
  } else {
    // psi(x2, x1) = -psi(x1, x2): A^T A = -A^2 is symmetric and its eigenvalues
    // are the squared singular values themselves. BDCSVD was seen to return
    // NaN on some of these antisymmetric matrices.
    const Eigen::MatrixXd gram = core.transpose() * core;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("schmidt_svd: eigensolver failed");
    for (Eigen::Index i = 0; i < len; ++i) raw[i] = solver.eigenvalues()(i);
  }
  return SchmidtSpectrum(std::move(raw), cutoff);
}

double sle_asymptote_check(int nu_r) {
  if (nu_r < 1) throw DomainError("sle_asymptote_check requires nu_r >= 1");
  return std::abs(sle_uncoupled(nu_r) - (1.0 - 1.0 / std::sqrt(std::numbers::pi * nu_r)));
}

}  // namespace oscitom
