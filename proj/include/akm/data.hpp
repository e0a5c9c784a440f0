#pragma once

#include "akm/types.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace akm {

struct Dataset {
  Matrix points;  // n x d feature matrix
  std::optional<LabelVector> labels;
  std::string name;

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Loads a rectangular numeric CSV. An optional header row is detected by a
/// non-numeric cell outside the label column. `label_column` is a 0-based
/// column index; -1 addresses the last column. Label cells may be arbitrary
/// strings; non-integer alphabets are mapped to ids in first-appearance
/// order. Ragged rows, non-numeric feature cells and empty files each raise
/// a distinct error naming the offending row.
Dataset load_csv(const std::filesystem::path& path, std::optional<int> label_column = {});

/// Writes features (and the label column last, when present) with a header
/// row; load_csv(write_csv(ds)) reproduces the dataset bit for bit.
void write_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Gaussian mixture with centers drawn uniformly from [0, side]^dim and
/// isotropic per-coordinate variance. Labels are center indices.
Dataset gen_norm(int num_centers, int points_per_center, int dim, Scalar side, Scalar variance,
                 std::uint64_t seed);

/// k Gaussian blobs whose centers are at least `separation` apart.
/// Labels are blob indices. Throws when the separation cannot be met after
/// bounded retries.
Dataset gen_blobs(int k, int per_cluster, int dim, Scalar separation, Scalar variance,
                  std::uint64_t seed);

struct DatasetManifest {
  std::string path;  // CSV path, relative paths resolved against the manifest
  std::optional<int> label_column;
  int k = 0;
  std::string name;
};

/// Reads a JSON manifest: {"path": ..., "label_col": ..., "k": ..., "name": ...}.
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace akm
