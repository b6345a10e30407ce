#include <cmath>
#include <filesystem>
#include <numbers>
#include <string>

#include "oscitom/cli.hpp"
#include "oscitom/measures.hpp"
#include "oscitom/tomogram.hpp"

namespace oscitom::cli {

namespace {

constexpr double kIprEta = 0.25;
constexpr int kFig1MaxOrder = 30;
constexpr int kFig6MaxOrder = 5;

nlohmann::ordered_json grid_manifest(const SweepSpec& spec) {
  nlohmann::ordered_json out;
  out["grid"] = "uniform trapezoid";
  out["points"] = spec.points;
  if (spec.half_width) {
    out["half_width"] = *spec.half_width;
  } else {
    out["half_width"] = "auto";
  }
  out["nodal_segment_nodes"] = spec.segment_nodes();
  return out;
}

nlohmann::ordered_json sweep_manifest(const std::string& id, const SweepSpec& spec) {
  nlohmann::ordered_json out;
  out["id"] = id;
  out["eta"] = spec.etas;
  out["n_r"] = spec.n_rel;
  out["n_c"] = spec.n_com;
  out["quadrature"] = grid_manifest(spec);
  return out;
}

std::string point_label(double eta, int n_rel) {
  return "eta=" + format_value(eta) + ", n_r=" + std::to_string(n_rel);
}

// Runs one row per (n_r, eta), n_r outermost, and appends them in that order.
void sweep_rows(FigureDataset& dataset, const SweepSpec& spec, const std::vector<double>& etas,
                const std::vector<int>& n_rel,
                const std::function<FigureDataset::Row(double eta, int n_rel)>& row) {
  const std::size_t count = etas.size() * n_rel.size();
  const auto outcome = parallel_sweep(count, spec.resolved_jobs(), [&](std::size_t i) {
    return row(etas[i % etas.size()], n_rel[i / etas.size()]);
  });
  for (std::size_t i = 0; i < count; ++i) {
    const double eta = etas[i % etas.size()];
    const int n = n_rel[i / etas.size()];
    std::string error = outcome.errors[i];
    if (outcome.rows[i]) {
      try {
        dataset.add_row(*outcome.rows[i]);
        continue;
      } catch (const std::exception& e) {
        error = e.what();
      }
    }
    dataset.add_diagnostic(dataset.id() + ": " + point_label(eta, n) + ": " + error);
  }
}

std::optional<EntropyPair> closed_entropies(const OscillatorParams& params, int n_com, int n_rel) {
  if (n_com == 0 && n_rel == 0) {
    return EntropyPair{sle_ground_closed(params.ratio()), svne_ground_closed(params.ratio())};
  }
  if (params.ratio() != 1.0) return std::nullopt;
  if (n_com == 0) return EntropyPair{sle_uncoupled(n_rel), svne_uncoupled(n_rel)};
  if (n_com + n_rel <= 60) return entropies(schmidt_uncoupled(n_com, n_rel));
  return std::nullopt;
}

EntropyPair numeric_entropies(const ProductEigenstate& state, const SweepSpec& spec) {
  return entropies(schmidt_svd(state, position_grid(state, spec.points, spec.half_width)));
}

FigureDataset::Row indicator_row(Indicator indicator, const ProductEigenstate& state, int segment_nodes) {
  const auto result = averaged_indicator(indicator, state, segment_nodes);
  return {state.params().ratio(), static_cast<double>(state.n_rel()), result.per_slice[0],
          result.per_slice[1], result.value};
}

double ipr_value(const ProductEigenstate& state, const SweepSpec& spec) {
  const double half_width = spec.half_width.value_or(default_dimensionless_half_width(state));
  return epsilon_ipr(state, make_grid(GridKind::UniformTrapezoid, half_width, spec.points));
}

const std::vector<Column> kMeasureColumns{{"eta", ""},         {"n_r", ""},
                                          {"sle_closed", ""},  {"svne_closed", "nats"},
                                          {"sle_numeric", ""}, {"svne_numeric", "nats"}};

}  // namespace

FigureDataset cmd_measures(const SweepSpec& spec) {
  spec.validate();
  FigureDataset dataset("measures", kMeasureColumns);
  dataset.manifest() = sweep_manifest("measures", spec);
  sweep_rows(dataset, spec, spec.etas, spec.n_rel, [&](double eta, int n_rel) -> FigureDataset::Row {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), spec.n_com, n_rel);
    const auto closed = closed_entropies(state.params(), spec.n_com, n_rel);
    const auto numeric = numeric_entropies(state, spec);
    FigureDataset::Row row{eta, static_cast<double>(n_rel), std::nullopt, std::nullopt, numeric.sle,
                           numeric.svne};
    if (closed) {
      row[2] = closed->sle;
      row[3] = closed->svne;
    }
    return row;
  });
  return dataset;
}

FigureDataset cmd_tei(const SweepSpec& spec, IndicatorChoice indicator, SliceChoice slice) {
  spec.validate();
  const std::string id = "tei_" + std::string(to_string(indicator));
  if (indicator == IndicatorChoice::Ipr) {
    if (slice != SliceChoice::Position) {
      throw UsageError("ipr is defined on the position slice only, got --slice " + std::string(to_string(slice)));
    }
    for (double eta : spec.etas) {
      if (eta != kIprEta) {
        throw UsageError("ipr needs eta = 0.25, where L_c = L_r; got eta = " + format_value(eta));
      }
    }
    FigureDataset dataset(id, {{"n_r", ""}, {"eta", ""}, {"value", ""}});
    dataset.manifest() = sweep_manifest(id, spec);
    dataset.manifest()["indicator"] = "ipr";
    dataset.manifest()["slice"] = "position";
    sweep_rows(dataset, spec, spec.etas, spec.n_rel, [&](double eta, int n_rel) -> FigureDataset::Row {
      const ProductEigenstate state(OscillatorParams::from_ratio(eta), spec.n_com, n_rel);
      return {static_cast<double>(n_rel), eta, ipr_value(state, spec)};
    });
    return dataset;
  }

  const Indicator measure =
      indicator == IndicatorChoice::Bhattacharyya ? Indicator::Bhattacharyya : Indicator::KullbackLeibler;
  FigureDataset dataset(id, {{"eta", ""}, {"n_r", ""}, {"value", "bits"}});
  dataset.manifest() = sweep_manifest(id, spec);
  dataset.manifest()["indicator"] = to_string(indicator);
  dataset.manifest()["slice"] = to_string(slice);
  const int nodes = spec.segment_nodes();
  sweep_rows(dataset, spec, spec.etas, spec.n_rel, [&](double eta, int n_rel) -> FigureDataset::Row {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), spec.n_com, n_rel);
    double value = 0.0;
    switch (slice) {
      case SliceChoice::Position: value = slice_indicator(measure, state, SliceAxis::Position, nodes); break;
      case SliceChoice::Momentum: value = slice_indicator(measure, state, SliceAxis::Momentum, nodes); break;
      case SliceChoice::Average: value = averaged_indicator(measure, state, nodes).value; break;
    }
    return {eta, static_cast<double>(n_rel), value};
  });
  return dataset;
}

SweepSpec figure_defaults() {
  SweepSpec spec;
  spec.etas = default_eta_grid();
  spec.n_rel = {1, 2, 3, 4, 5};
  spec.out = "figures";
  return spec;
}

std::vector<FigureDataset> build_figures(const SweepSpec& spec) {
  spec.validate();
  std::vector<FigureDataset> figures;

  FigureDataset fig1("fig1", {{"nu_r", ""}, {"sle", ""}, {"svne", "nats"}, {"sle_asymptote", ""}});
  fig1.manifest() = {{"id", "fig1"},
                     {"description", "uncoupled eta = 1, nu_c = 0: closed-form SLE and SVNE vs nu_r"},
                     {"nu_r", {0, kFig1MaxOrder}}};
  for (int nu = 0; nu <= kFig1MaxOrder; ++nu) {
    std::optional<double> asymptote;
    if (nu > 0) asymptote = 1.0 - 1.0 / std::sqrt(std::numbers::pi * nu);
    fig1.add_row({static_cast<double>(nu), sle_uncoupled(nu), svne_uncoupled(nu), asymptote});
  }
  figures.push_back(std::move(fig1));

  FigureDataset fig2("fig2", {{"eta", ""},
                              {"sle_closed", ""},
                              {"svne_closed", "nats"},
                              {"sle_numeric", ""},
                              {"svne_numeric", "nats"}});
  fig2.manifest() = sweep_manifest("fig2", spec);
  fig2.manifest()["n_r"] = {0};
  fig2.manifest()["description"] = "ground state SLE and SVNE vs eta";
  sweep_rows(fig2, spec, spec.etas, {0}, [&](double eta, int) -> FigureDataset::Row {
    const ProductEigenstate state(OscillatorParams::from_ratio(eta), 0, 0);
    const auto numeric = numeric_entropies(state, spec);
    return {eta, sle_ground_closed(eta), svne_ground_closed(eta), numeric.sle, numeric.svne};
  });
  figures.push_back(std::move(fig2));

  FigureDataset fig3("fig3", {{"eta", ""}, {"n_r", ""}, {"sle", ""}, {"svne", "nats"}});
  fig3.manifest() = sweep_manifest("fig3", spec);
  fig3.manifest()["description"] = "numeric-Schmidt SLE and SVNE vs eta, n_c = 0";
  sweep_rows(fig3, spec, spec.etas, spec.n_rel, [&](double eta, int n_rel) -> FigureDataset::Row {
    const auto numeric = numeric_entropies(ProductEigenstate(OscillatorParams::from_ratio(eta), 0, n_rel), spec);
    return {eta, static_cast<double>(n_rel), numeric.sle, numeric.svne};
  });
  figures.push_back(std::move(fig3));

  const int nodes = spec.segment_nodes();
  for (auto [id, indicator] : {std::pair{"fig4", Indicator::Bhattacharyya}, std::pair{"fig5", Indicator::KullbackLeibler}}) {
    FigureDataset fig(id, {{"eta", ""}, {"n_r", ""}, {"position", "bits"}, {"momentum", "bits"}, {"average", "bits"}});
    fig.manifest() = sweep_manifest(id, spec);
    fig.manifest()["indicator"] = to_string(indicator);
    fig.manifest()["description"] = "tomographic indicator on the position and momentum slices and their average, n_c = 0";
    sweep_rows(fig, spec, spec.etas, spec.n_rel, [&](double eta, int n_rel) {
      return indicator_row(indicator, ProductEigenstate(OscillatorParams::from_ratio(eta), 0, n_rel), nodes);
    });
    figures.push_back(std::move(fig));
  }

  FigureDataset fig6("fig6", {{"n_r", ""}, {"ipr", ""}});
  std::vector<int> orders;
  for (int n = 0; n <= kFig6MaxOrder; ++n) orders.push_back(n);
  fig6.manifest() = {{"id", "fig6"},
                     {"description", "IPR indicator on the position slice at eta = 0.25, n_c = 0"},
                     {"eta", kIprEta},
                     {"n_r", orders},
                     {"quadrature", grid_manifest(spec)}};
  sweep_rows(fig6, spec, {kIprEta}, orders, [&](double eta, int n_rel) -> FigureDataset::Row {
    return {static_cast<double>(n_rel), ipr_value(ProductEigenstate(OscillatorParams::from_ratio(eta), 0, n_rel), spec)};
  });
  figures.push_back(std::move(fig6));
  return figures;
}

std::vector<FigureDataset> cmd_figures(const SweepSpec& spec) {
  auto figures = build_figures(spec);
  const std::filesystem::path dir(spec.out.empty() ? "figures" : spec.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "': " + ec.message());
  const std::string extension = spec.format == OutputFormat::Csv ? ".csv" : ".json";
  nlohmann::ordered_json manifest;
  manifest["format"] = to_string(spec.format);
  manifest["float_format"] = "12 significant digits";
  auto entries = nlohmann::ordered_json::array();
  for (const auto& fig : figures) {
    const std::string file = fig.id() + extension;
    write_file((dir / file).string(), render(fig, spec.format));
    auto entry = fig.manifest();
    entry["file"] = file;
    auto columns = nlohmann::ordered_json::array();
    for (const auto& c : fig.columns()) columns.push_back({{"name", c.name}, {"unit", c.unit}});
    entry["columns"] = std::move(columns);
    entry["rows"] = fig.rows().size();
    entry["skipped_rows"] = fig.diagnostics().size();
    entries.push_back(std::move(entry));
  }
  manifest["figures"] = std::move(entries);
  write_file((dir / "manifest.json").string(), manifest.dump(2) + "\n");
  return figures;
}

}  // namespace oscitom::cli
