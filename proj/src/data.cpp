#include "akm/data.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace akm {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto begin = cell.find_first_not_of(" \t\r");
    const auto end = cell.find_last_not_of(" \t\r");
    cells.push_back(begin == std::string::npos ? std::string{} : cell.substr(begin, end - begin + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !cell.empty();
}

bool parse_int(const std::string& cell, long long& out) {
  const char* first = cell.data();
  const char* last = first + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !cell.empty();
}

int resolve_label_column(int requested, std::size_t columns, const std::filesystem::path& path) {
  const int resolved = requested == -1 ? static_cast<int>(columns) - 1 : requested;
  if (resolved < 0 || resolved >= static_cast<int>(columns))
    throw std::invalid_argument("load_csv: label column " + std::to_string(requested) +
                                " out of range for " + path.string());
  return resolved;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, std::optional<int> label_column) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_csv: cannot open " + path.string());

  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(split_row(line));
    row_lines.push_back(line_no);
  }
  if (rows.empty()) throw std::runtime_error("load_csv: empty file " + path.string());

  const std::size_t columns = rows.front().size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != columns)
      throw std::runtime_error("load_csv: ragged row at line " + std::to_string(row_lines[r]) +
                               " of " + path.string() + " (" + std::to_string(rows[r].size()) +
                               " cells, expected " + std::to_string(columns) + ")");

  const int label_col =
      label_column ? resolve_label_column(*label_column, columns, path) : -1;

  // Header detection: the first row is a header when any cell outside the
  // label column fails to parse as a number.
  std::size_t first_data = 0;
  {
    double unused;
    for (std::size_t c = 0; c < columns; ++c) {
      if (static_cast<int>(c) == label_col) continue;
      if (!parse_double(rows[0][c], unused)) {
        first_data = 1;
        break;
      }
    }
  }
  if (first_data >= rows.size())
    throw std::runtime_error("load_csv: no data rows in " + path.string());

  const std::size_t n = rows.size() - first_data;
  const std::size_t d = label_col >= 0 ? columns - 1 : columns;
  if (d == 0) throw std::runtime_error("load_csv: no feature columns in " + path.string());

  Dataset out;
  out.points.resize(static_cast<Index>(n), static_cast<Index>(d));
  LabelVector labels;
  std::unordered_map<std::string, int> label_ids;
  bool labels_all_integer = true;
  std::vector<std::string> raw_labels;

  for (std::size_t r = first_data; r < rows.size(); ++r) {
    std::size_t feature = 0;
    for (std::size_t c = 0; c < columns; ++c) {
      if (static_cast<int>(c) == label_col) {
        raw_labels.push_back(rows[r][c]);
        long long as_int;
        if (!parse_int(rows[r][c], as_int)) labels_all_integer = false;
        continue;
      }
      double value;
      if (!parse_double(rows[r][c], value))
        throw std::runtime_error("load_csv: non-numeric feature cell '" + rows[r][c] +
                                 "' at line " + std::to_string(row_lines[r]) + ", column " +
                                 std::to_string(c + 1) + " of " + path.string());
      if (!std::isfinite(value))
        throw std::runtime_error("load_csv: non-finite feature at line " +
                                 std::to_string(row_lines[r]) + " of " + path.string());
      out.points(static_cast<Index>(r - first_data), static_cast<Index>(feature++)) = value;
    }
  }

  if (label_col >= 0) {
    labels.reserve(n);
    for (const std::string& raw : raw_labels) {
      if (labels_all_integer) {
        long long as_int = 0;
        parse_int(raw, as_int);
        labels.push_back(static_cast<int>(as_int));
      } else {
        auto [it, inserted] = label_ids.try_emplace(raw, static_cast<int>(label_ids.size()));
        labels.push_back(it->second);
        (void)inserted;
      }
    }
    out.labels = std::move(labels);
  }
  out.name = path.stem().string();
  return out;
}

void write_csv(const Dataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
  out.precision(17);
  for (Index c = 0; c < dataset.dim(); ++c) out << (c ? "," : "") << 'f' << c;
  if (dataset.labels) out << ",label";
  out << '\n';
  for (Index i = 0; i < dataset.size(); ++i) {
    for (Index c = 0; c < dataset.dim(); ++c) out << (c ? "," : "") << dataset.points(i, c);
    if (dataset.labels) out << ',' << (*dataset.labels)[static_cast<std::size_t>(i)];
    out << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

Dataset gen_norm(int num_centers, int points_per_center, int dim, Scalar side, Scalar variance,
                 std::uint64_t seed) {
  if (num_centers < 1 || points_per_center < 1 || dim < 1)
    throw std::invalid_argument("gen_norm: counts must be >= 1");
  if (!(side > 0.0)) throw std::invalid_argument("gen_norm: side must be positive");
  if (variance < 0.0) throw std::invalid_argument("gen_norm: variance must be nonnegative");

  Rng rng(seed);
  std::uniform_real_distribution<Scalar> in_box(0.0, side);
  Matrix centers(num_centers, dim);
  for (Index c = 0; c < num_centers; ++c)
    for (Index f = 0; f < dim; ++f) centers(c, f) = in_box(rng);

  const Index n = static_cast<Index>(num_centers) * points_per_center;
  Dataset out;
  out.points.resize(n, dim);
  LabelVector labels(static_cast<std::size_t>(n));
  std::normal_distribution<Scalar> noise(0.0, std::sqrt(variance));
  Index row = 0;
  for (Index c = 0; c < num_centers; ++c)
    for (int p = 0; p < points_per_center; ++p, ++row) {
      for (Index f = 0; f < dim; ++f)
        out.points(row, f) = centers(c, f) + (variance > 0.0 ? noise(rng) : 0.0);
      labels[static_cast<std::size_t>(row)] = static_cast<int>(c);
    }
  out.labels = std::move(labels);
  out.name = "norm" + std::to_string(num_centers);
  return out;
}

Dataset gen_blobs(int k, int per_cluster, int dim, Scalar separation, Scalar variance,
                  std::uint64_t seed) {
  if (k < 1 || per_cluster < 1 || dim < 1)
    throw std::invalid_argument("gen_blobs: counts must be >= 1");
  if (!(separation > 0.0)) throw std::invalid_argument("gen_blobs: separation must be positive");
  if (variance < 0.0) throw std::invalid_argument("gen_blobs: variance must be nonnegative");

  Rng rng(seed);
  const Scalar side = separation * static_cast<Scalar>(std::max(2, k));
  std::uniform_real_distribution<Scalar> in_box(0.0, side);

  Matrix centers(k, dim);
  int placed = 0;
  for (int attempt = 0; placed < k && attempt < 10000; ++attempt) {
    Vector candidate(dim);
    for (Index f = 0; f < dim; ++f) candidate(f) = in_box(rng);
    bool ok = true;
    for (int c = 0; c < placed && ok; ++c)
      ok = (centers.row(c).transpose() - candidate).norm() >= separation;
    if (ok) centers.row(placed++) = candidate.transpose();
  }
  if (placed < k)
    throw std::runtime_error("gen_blobs: could not place " + std::to_string(k) +
                             " centers at separation " + std::to_string(separation));

  const Index n = static_cast<Index>(k) * per_cluster;
  Dataset out;
  out.points.resize(n, dim);
  LabelVector labels(static_cast<std::size_t>(n));
  std::normal_distribution<Scalar> noise(0.0, std::sqrt(variance));
  Index row = 0;
  for (int c = 0; c < k; ++c)
    for (int p = 0; p < per_cluster; ++p, ++row) {
      for (Index f = 0; f < dim; ++f)
        out.points(row, f) = centers(c, f) + (variance > 0.0 ? noise(rng) : 0.0);
      labels[static_cast<std::size_t>(row)] = c;
    }
  out.labels = std::move(labels);
  out.name = "blobs" + std::to_string(k);
  return out;
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_manifest: cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("load_manifest: invalid JSON in " + path.string() + ": " + e.what());
  }
  DatasetManifest m;
  if (!j.contains("path")) throw std::runtime_error("load_manifest: missing \"path\" in " + path.string());
  std::filesystem::path data_path = j.at("path").get<std::string>();
  if (data_path.is_relative()) data_path = path.parent_path() / data_path;
  m.path = data_path.string();
  if (j.contains("label_col") && !j.at("label_col").is_null())
    m.label_column = j.at("label_col").get<int>();
  m.k = j.value("k", 0);
  m.name = j.value("name", std::filesystem::path(m.path).stem().string());
  return m;
}

}  // namespace akm
