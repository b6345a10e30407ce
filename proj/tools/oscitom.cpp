#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "oscitom/cli.hpp"

using namespace oscitom::cli;

namespace {

constexpr int kExitRowsSkipped = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::vector<double> etas;
  std::string eta_range;
  std::vector<int> n_rel;
  int n_com = 0;
  std::optional<int> points;
  std::optional<double> half_width;
  std::string format = "csv";
  std::string out;
  int jobs = 0;
  std::string indicator = "bd";
  std::string slice = "average";
};

void add_sweep_flags(CLI::App& cmd, Options& opt, bool with_eta) {
  if (with_eta) {
    cmd.add_option("--eta", opt.etas, "Explicit eta values (comma separated or repeated)")->delimiter(',');
    cmd.add_option("--eta-range", opt.eta_range, "Log-spaced eta values, lo:hi:n");
    cmd.add_option("--nc", opt.n_com, "COM quantum number n_c");
  }
  cmd.add_option("--nr", opt.n_rel, "Relative quantum numbers n_r (comma separated)")->delimiter(',');
  cmd.add_option("--points", opt.points, "Uniform grid points (overrides OSCITOM_POINTS)");
  cmd.add_option("--half-width", opt.half_width, "Grid half-width override");
  cmd.add_option("--format", opt.format, "Output format, csv or json");
  cmd.add_option("--jobs", opt.jobs, "Concurrent sweep points (0 = all cores)");
}

// Command-line values over defaults; --points wins over the environment.
SweepSpec build_spec(const Options& opt, SweepSpec spec) {
  if (!opt.etas.empty() && !opt.eta_range.empty()) throw UsageError("give --eta or --eta-range, not both");
  if (!opt.etas.empty()) spec.etas = opt.etas;
  if (!opt.eta_range.empty()) spec.etas = parse_eta_range(opt.eta_range);
  if (!opt.n_rel.empty()) spec.n_rel = opt.n_rel;
  spec.n_com = opt.n_com;
  if (const auto env = points_from_env()) spec.points = *env;
  if (opt.points) spec.points = *opt.points;
  spec.half_width = opt.half_width;
  spec.format = parse_format(opt.format);
  if (!opt.out.empty()) spec.out = opt.out;
  spec.jobs = opt.jobs;
  spec.validate();
  return spec;
}

int emit(const FigureDataset& dataset, const SweepSpec& spec) {
  const std::string text = render(dataset, spec.format);
  if (spec.out.empty()) {
    std::cout << text << std::flush;
  } else {
    write_file(spec.out, text);
  }
  for (const auto& d : dataset.diagnostics()) std::cerr << "skipped row: " << d << "\n";
  return dataset.diagnostics().empty() ? 0 : kExitRowsSkipped;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement measures and tomographic indicators for two coupled oscillators"};
  app.require_subcommand(1);
  Options opt;

  auto* measures = app.add_subcommand("measures", "SLE and SVNE, closed form and numeric Schmidt");
  add_sweep_flags(*measures, opt, true);
  measures->add_option("--out", opt.out, "Output file (default stdout)");

  auto* tei = app.add_subcommand("tei", "Tomographic entanglement indicators");
  add_sweep_flags(*tei, opt, true);
  tei->add_option("--out", opt.out, "Output file (default stdout)");
  tei->add_option("--indicator", opt.indicator, "bd, kl or ipr");
  tei->add_option("--slice", opt.slice, "position, momentum or average");

  auto* figures = app.add_subcommand("figures", "Write the six figure datasets and manifest.json");
  add_sweep_flags(*figures, opt, true);
  figures->add_option("--out", opt.out, "Output directory (default ./figures)");

  auto* selfcheck = app.add_subcommand("selfcheck", "Run the cross-validation suite at reduced resolution");
  selfcheck->add_option("--points", opt.points, "Grid points for grid-based checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*measures) {
      SweepSpec defaults;
      defaults.etas = default_eta_grid();
      const auto spec = build_spec(opt, defaults);
      return emit(cmd_measures(spec), spec);
    }
    if (*tei) {
      const auto indicator = parse_indicator(opt.indicator);
      SweepSpec defaults;
      if (indicator == IndicatorChoice::Ipr) {
        defaults.etas = {0.25};
        defaults.n_rel = {0, 1, 2, 3, 4, 5};
        if (tei->count("--slice") == 0) opt.slice = "position";
      } else {
        defaults.etas = default_eta_grid();
      }
      const auto spec = build_spec(opt, defaults);
      return emit(cmd_tei(spec, indicator, parse_slice(opt.slice)), spec);
    }
    if (*figures) {
      const auto spec = build_spec(opt, figure_defaults());
      const auto datasets = cmd_figures(spec);
      int status = 0;
      for (const auto& fig : datasets) {
        for (const auto& d : fig.diagnostics()) {
          std::cerr << "skipped row: " << d << "\n";
          status = kExitRowsSkipped;
        }
      }
      std::cout << "wrote " << datasets.size() << " datasets and manifest.json to " << spec.out << "\n";
      return status;
    }
    int points = kSelfcheckPoints;
    if (const auto env = points_from_env()) points = *env;
    if (opt.points) points = *opt.points;
    if (points < 16) throw UsageError("selfcheck needs --points >= 16");
    const auto report = cmd_selfcheck(points);
    std::cout << report.table();
    return report.passed() ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
