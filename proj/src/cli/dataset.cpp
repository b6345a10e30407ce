#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>

#include "oscitom/cli.hpp"

namespace oscitom::cli {

namespace {

constexpr int kSignificantDigits = 12;

double parse_cell(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw std::runtime_error("csv: bad cell '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

FigureDataset::FigureDataset(std::string id, std::vector<Column> columns)
    : id_(std::move(id)), columns_(std::move(columns)) {}

std::size_t FigureDataset::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (columns_[i].name == name) return i;
  }
  throw std::out_of_range(id_ + ": no column '" + std::string(name) + "'");
}

void FigureDataset::add_row(Row row) {
  if (row.size() != columns_.size()) {
    throw std::invalid_argument(id_ + ": row has " + std::to_string(row.size()) + " cells, expected " +
                                std::to_string(columns_.size()));
  }
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (!row[i]) continue;
    if (!std::isfinite(*row[i])) {
      throw std::invalid_argument(id_ + ": non-finite value in column " + columns_[i].name);
    }
    if (columns_[i].name == "eta" && !(*row[i] > 0.0)) {
      throw std::invalid_argument(id_ + ": eta must be positive");
    }
  }
  rows_.push_back(std::move(row));
}

std::string format_value(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, kSignificantDigits);
  if (ec != std::errc{}) throw std::runtime_error("format_value: conversion failed");
  return std::string(buf.data(), ptr);
}

std::string to_csv(const FigureDataset& dataset) {
  std::string out;
  const auto& columns = dataset.columns();
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i > 0) out += ',';
    out += columns[i].name;
    if (!columns[i].unit.empty()) out += " [" + columns[i].unit + "]";
  }
  out += '\n';
  for (const auto& row : dataset.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out += ',';
      if (row[i]) out += format_value(*row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const FigureDataset& dataset) {
  nlohmann::ordered_json doc;
  doc["manifest"] = dataset.manifest();
  auto columns = nlohmann::ordered_json::array();
  for (const auto& c : dataset.columns()) columns.push_back({{"name", c.name}, {"unit", c.unit}});
  doc["columns"] = std::move(columns);
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : dataset.rows()) {
    auto cells = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (cell) {
        cells.push_back(parse_cell(format_value(*cell)));
      } else {
        cells.push_back(nullptr);
      }
    }
    rows.push_back(std::move(cells));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string render(const FigureDataset& dataset, OutputFormat format) {
  return format == OutputFormat::Csv ? to_csv(dataset) : to_json(dataset);
}

FigureDataset parse_csv(std::string_view id, std::string_view text) {
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw std::runtime_error("csv: missing header");
  std::vector<Column> columns;
  for (auto field : split(lines.front(), ',')) {
    const auto open = field.find(" [");
    if (open != std::string_view::npos && field.back() == ']') {
      columns.push_back({std::string(field.substr(0, open)),
                         std::string(field.substr(open + 2, field.size() - open - 3))});
    } else {
      columns.push_back({std::string(field), ""});
    }
  }
  FigureDataset dataset{std::string(id), columns};
  for (std::size_t l = 1; l < lines.size(); ++l) {
    FigureDataset::Row row;
    for (auto cell : split(lines[l], ',')) {
      row.push_back(cell.empty() ? std::nullopt : std::optional<double>(parse_cell(cell)));
    }
    dataset.add_row(std::move(row));
  }
  return dataset;
}

void write_file(const std::string& path, std::string_view text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open '" + path + "' for writing");
  file.write(text.data(), static_cast<std::streamsize>(text.size()));
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace oscitom::cli
