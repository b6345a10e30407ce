#pragma once

#include <functional>
#include <json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oscitom/oscillator_model.hpp"

namespace oscitom::cli {

/// Bad command-line input or a request outside a command's contract. Raised
/// before any computation starts.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };
enum class SliceChoice { Position, Momentum, Average };
enum class IndicatorChoice { Bhattacharyya, KullbackLeibler, Ipr };

OutputFormat parse_format(std::string_view text);
SliceChoice parse_slice(std::string_view text);
IndicatorChoice parse_indicator(std::string_view text);
std::string_view to_string(OutputFormat format);
std::string_view to_string(SliceChoice slice);
std::string_view to_string(IndicatorChoice indicator);

inline constexpr double kDefaultEtaLow = 0.05;
inline constexpr double kDefaultEtaHigh = 20.0;
inline constexpr int kDefaultEtaCount = 49;
inline constexpr int kMinSweepPoints = 64;
inline constexpr const char* kPointsEnvVar = "OSCITOM_POINTS";

/// count points spaced evenly in log between lo and hi inclusive. When the
/// range is symmetric in log about 1 the upper half is the reciprocal of the
/// lower half and an odd count puts exactly 1 in the middle, so eta and 1/eta
/// pairs are exact.
std::vector<double> log_spaced(double lo, double hi, int count);

/// "lo:hi:n" -> log_spaced(lo, hi, n).
std::vector<double> parse_eta_range(std::string_view text);

/// The default figure grid, 49 points in [0.05, 20].
std::vector<double> default_eta_grid();

struct SweepSpec {
  std::vector<double> etas;
  std::vector<int> n_rel{0};
  int n_com = 0;
  /// Uniform grid size for Schmidt and IPR evaluations.
  int points = kDefaultGridPoints;
  /// Overrides the automatic grid half-width (Schmidt and IPR grids only).
  std::optional<double> half_width;
  OutputFormat format = OutputFormat::Csv;
  /// Output file; empty writes to stdout. For `figures` this is a directory.
  std::string out;
  /// Concurrent sweep points; 0 means all available cores.
  int jobs = 0;

  /// Throws UsageError unless every eta > 0, every n_r >= 0, n_c >= 0 and points >= 64.
  void validate() const;
  /// Nodes per segment of the nodal rule used for BD and KL, max(32, points / 16).
  int segment_nodes() const;
  int resolved_jobs() const;
};

/// Grid size from the environment, if set and an integer.
std::optional<int> points_from_env();

struct Column {
  std::string name;
  std::string unit;
};

/// A table of one figure's data. Empty cells are std::nullopt.
class FigureDataset {
 public:
  using Row = std::vector<std::optional<double>>;

  FigureDataset(std::string id, std::vector<Column> columns);

  const std::string& id() const { return id_; }
  const std::vector<Column>& columns() const { return columns_; }
  const std::vector<Row>& rows() const { return rows_; }
  /// Index of a column by name; throws std::out_of_range if absent.
  std::size_t column(std::string_view name) const;

  /// Rejects rows of the wrong width, non-finite cells and nonpositive eta cells.
  void add_row(Row row);

  nlohmann::ordered_json& manifest() { return manifest_; }
  const nlohmann::ordered_json& manifest() const { return manifest_; }

  /// Rows that failed to compute, one message each.
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }
  void add_diagnostic(std::string message) { diagnostics_.push_back(std::move(message)); }

 private:
  std::string id_;
  std::vector<Column> columns_;
  std::vector<Row> rows_;
  nlohmann::ordered_json manifest_ = nlohmann::ordered_json::object();
  std::vector<std::string> diagnostics_;
};

/// 12 significant digits, shortest form, '.' decimal point whatever the locale; -0 prints as 0.
std::string format_value(double value);

/// Header "name [unit]" per column, LF line endings.
std::string to_csv(const FigureDataset& dataset);
/// {"manifest": ..., "columns": [...], "rows": [[...]]}; cells are the CSV values.
std::string to_json(const FigureDataset& dataset);
std::string render(const FigureDataset& dataset, OutputFormat format);

/// Inverse of to_csv for the cell values. Column units are recovered from the header.
FigureDataset parse_csv(std::string_view id, std::string_view text);

/// Writes text to path, throwing std::runtime_error naming the path on failure.
void write_file(const std::string& path, std::string_view text);

/// Runs task(i) for i in [0, count) on up to `jobs` threads. Rows come back in
/// index order; a task that throws leaves std::nullopt and a message in errors[i].
struct SweepOutcome {
  std::vector<std::optional<FigureDataset::Row>> rows;
  std::vector<std::string> errors;
};
SweepOutcome parallel_sweep(std::size_t count, int jobs,
                            const std::function<FigureDataset::Row(std::size_t)>& task);

/// Columns eta, n_r, sle_closed, svne_closed, sle_numeric, svne_numeric.
/// Closed forms are filled for the ground state (n_c = n_r = 0) and at eta = 1.
FigureDataset cmd_measures(const SweepSpec& spec);

/// Columns eta, n_r, value; for ipr n_r, eta, value. ipr needs the position
/// slice and eta = 1/4 throughout, checked before anything is computed.
FigureDataset cmd_tei(const SweepSpec& spec, IndicatorChoice indicator, SliceChoice slice);

/// Figure defaults: the 49-point eta grid and n_r = 1..5.
SweepSpec figure_defaults();

/// Writes fig1..fig6 and manifest.json into spec.out. Returns the datasets.
std::vector<FigureDataset> cmd_figures(const SweepSpec& spec);

/// Builds the six figure datasets without writing them.
std::vector<FigureDataset> build_figures(const SweepSpec& spec);

struct SelfcheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelfcheckReport {
  std::vector<SelfcheckResult> checks;
  bool passed() const;
  /// Fixed-width pass/fail table.
  std::string table() const;
};

inline constexpr int kSelfcheckPoints = 256;

/// Cross-validation suite at reduced resolution. Every grid-based check uses
/// `points` nodes; points below 64 are accepted so the failure paths can be exercised.
SelfcheckReport cmd_selfcheck(int points = kSelfcheckPoints);

}  // namespace oscitom::cli
