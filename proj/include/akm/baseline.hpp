#pragma once

#include "akm/distance_book.hpp"
#include "akm/kmedoids.hpp"
#include "akm/oracle.hpp"

#include <utility>

namespace akm {

/// In-place all-pairs shortest paths over a dense symmetric matrix with +inf
/// for missing edges and a zero diagonal. Symmetry is preserved throughout.
template <class Derived>
void floyd_warshall_in_place(Eigen::MatrixBase<Derived>& dist) {
  using S = typename Derived::Scalar;
  const Index n = dist.rows();
  typename Eigen::Matrix<S, Eigen::Dynamic, 1> through(n);
  for (Index k = 0; k < n; ++k) {
    through = dist.col(k);
    for (Index j = 0; j < n; ++j) {
      const S via = through(j);
      if (!std::isfinite(via)) continue;
      dist.derived().col(j) =
          dist.derived().col(j).array().min(through.array() + via).matrix();
    }
  }
}

/// Fills every non-exact entry with the shortest-path distance over the graph
/// of exact entries; unreachable pairs stay Unknown. Exact entries are left
/// untouched, and an exact entry undercut by a path (beyond summation
/// round-off) signals a non-metric oracle and throws.
void floyd_warshall(DistanceBook& book);

/// Budget-sized prefix of a seeded shuffle of all C(n,2) unordered pairs.
/// The same seed yields nested pair sets as the budget grows.
std::vector<std::pair<Index, Index>> sample_pairs(Index n, std::uint64_t budget,
                                                  std::uint64_t seed);

struct RandomRivalResult {
  ClusteringResult clustering;
  DistanceBook book;
  std::uint64_t asked_pairs = 0;
};

/// Queries `budget` distinct random pairs, completes the matrix with shortest
/// paths, then clusters on the estimates.
RandomRivalResult random_rival(DistanceOracle& oracle, int k, std::uint64_t budget,
                               int max_iterations, std::uint64_t seed);

/// Same, over a caller-supplied list of distinct pairs (used by budget sweeps
/// that share one shuffled pair order across steps).
RandomRivalResult random_rival_with_pairs(DistanceOracle& oracle, int k,
                                          const std::vector<std::pair<Index, Index>>& pairs,
                                          int max_iterations, std::uint64_t seed);

}  // namespace akm
