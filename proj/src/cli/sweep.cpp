#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "oscitom/cli.hpp"

namespace oscitom::cli {

namespace {

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw UsageError("--format must be csv or json, got '" + std::string(text) + "'");
}

SliceChoice parse_slice(std::string_view text) {
  if (text == "position") return SliceChoice::Position;
  if (text == "momentum") return SliceChoice::Momentum;
  if (text == "average") return SliceChoice::Average;
  throw UsageError("--slice must be position, momentum or average, got '" + std::string(text) + "'");
}

IndicatorChoice parse_indicator(std::string_view text) {
  if (text == "bd") return IndicatorChoice::Bhattacharyya;
  if (text == "kl") return IndicatorChoice::KullbackLeibler;
  if (text == "ipr") return IndicatorChoice::Ipr;
  throw UsageError("--indicator must be bd, kl or ipr, got '" + std::string(text) + "'");
}

std::string_view to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

std::string_view to_string(SliceChoice slice) {
  switch (slice) {
    case SliceChoice::Position: return "position";
    case SliceChoice::Momentum: return "momentum";
    case SliceChoice::Average: return "average";
  }
  return "";
}

std::string_view to_string(IndicatorChoice indicator) {
  switch (indicator) {
    case IndicatorChoice::Bhattacharyya: return "bd";
    case IndicatorChoice::KullbackLeibler: return "kl";
    case IndicatorChoice::Ipr: return "ipr";
  }
  return "";
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UsageError("eta range bounds must be positive and finite");
  }
  if (count < 1) throw UsageError("eta range needs at least one point");
  if (count == 1) {
    if (lo != hi) throw UsageError("a one-point eta range needs lo == hi");
    return {lo};
  }
  if (!(lo < hi)) throw UsageError("eta range needs lo < hi");
  const double log_lo = std::log(lo);
  const double log_hi = std::log(hi);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = std::exp(log_lo + (log_hi - log_lo) * i / (count - 1));
  out.front() = lo;
  out.back() = hi;
  if (std::abs(log_lo + log_hi) < 1e-9 * (log_hi - log_lo)) {
    for (int i = 0; i < count / 2; ++i) out[count - 1 - i] = 1.0 / out[i];
    if (count % 2 == 1) out[count / 2] = 1.0;
  }
  return out;
}

std::vector<double> parse_eta_range(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw UsageError("--eta-range expects lo:hi:n, got '" + std::string(text) + "'");
  }
  const double lo = parse_number<double>(text.substr(0, first), "--eta-range lo");
  const double hi = parse_number<double>(text.substr(first + 1, second - first - 1), "--eta-range hi");
  const int count = parse_number<int>(text.substr(second + 1), "--eta-range n");
  return log_spaced(lo, hi, count);
}

std::vector<double> default_eta_grid() { return log_spaced(kDefaultEtaLow, kDefaultEtaHigh, kDefaultEtaCount); }

void SweepSpec::validate() const {
  if (etas.empty()) throw UsageError("no eta values given");
  for (double eta : etas) {
    if (!(eta > 0.0) || !std::isfinite(eta)) {
      throw UsageError("eta must be positive and finite, got " + format_value(eta));
    }
  }
  if (n_rel.empty()) throw UsageError("no n_r values given");
  for (int n : n_rel) {
    if (n < 0) throw UsageError("n_r must be nonnegative, got " + std::to_string(n));
  }
  if (n_com < 0) throw UsageError("n_c must be nonnegative, got " + std::to_string(n_com));
  if (points < kMinSweepPoints) {
    throw UsageError("--points must be at least " + std::to_string(kMinSweepPoints) + ", got " +
                     std::to_string(points));
  }
  if (half_width && !(*half_width > 0.0)) throw UsageError("--half-width must be positive");
  if (jobs < 0) throw UsageError("--jobs must be nonnegative");
}

int SweepSpec::segment_nodes() const { return std::max(32, points / 16); }

int SweepSpec::resolved_jobs() const {
  if (jobs > 0) return jobs;
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

std::optional<int> points_from_env() {
  const char* raw = std::getenv(kPointsEnvVar);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  return parse_number<int>(raw, kPointsEnvVar);
}

SweepOutcome parallel_sweep(std::size_t count, int jobs,
                            const std::function<FigureDataset::Row(std::size_t)>& task) {
  SweepOutcome outcome;
  outcome.rows.resize(count);
  outcome.errors.resize(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        outcome.rows[i] = task(i);
      } catch (const std::exception& e) {
        outcome.errors[i] = e.what();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(1, jobs)), count);
  if (threads <= 1) {
    worker();
    return outcome;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return outcome;
}

}  // namespace oscitom::cli
