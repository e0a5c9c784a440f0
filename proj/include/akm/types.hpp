#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace akm {

using Scalar = double;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

using Rng = std::mt19937_64;
using IndexList = std::vector<Index>;
using LabelVector = std::vector<int>;

inline constexpr Scalar kInfinity = std::numeric_limits<Scalar>::infinity();

// Number of unordered pairs over n points.
inline std::uint64_t pair_count(Index n) {
  return n < 2 ? 0 : static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
}

// First `count` elements of a seeded Fisher-Yates shuffle of 0..n-1.
inline IndexList sample_indices(Index n, Index count, Rng& rng) {
  IndexList all(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  for (Index i = 0; i < count; ++i) {
    std::uniform_int_distribution<Index> pick(i, n - 1);
    std::swap(all[static_cast<std::size_t>(i)], all[static_cast<std::size_t>(pick(rng))]);
  }
  all.resize(static_cast<std::size_t>(count));
  return all;
}

}  // namespace akm
