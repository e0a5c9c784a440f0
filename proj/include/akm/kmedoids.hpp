#pragma once

#include "akm/types.hpp"

#include <span>

namespace akm {

struct KmedoidsParams {
  int k = 2;
  int max_iterations = 100;
  std::uint64_t seed = 42;
  // Minimize the sum of squared distances instead of the plain sum.
  bool squared_objective = false;
};

struct ClusteringResult {
  std::vector<int> assignment;    // per-point cluster id in 0..k-1
  IndexList medoids;              // k distinct point indices
  Scalar objective = 0.0;         // sum over points of d(point, its medoid)
  int iterations_run = 0;
  std::vector<Scalar> objective_trace;  // objective after each assignment pass
};

/// Voronoi-iteration k-medoids over a dense distance matrix: alternate
/// nearest-medoid assignment with per-cluster medoid re-selection until the
/// medoid set is stable or max_iterations is reached.
///
/// +inf entries are legal and sort after every finite distance; a point whose
/// distance to every medoid is +inf lands in cluster 0. Ties go to the lowest
/// medoid index on assignment and the lowest point index on update.
ClusteringResult kmedoids_run(const Matrix& distances, const KmedoidsParams& params);

/// Sum of distances from each point to its cluster's medoid. Throws when a
/// medoid is not assigned to its own cluster or sizes disagree.
Scalar clustering_objective(const Matrix& distances, std::span<const int> assignment,
                            std::span<const Index> medoids, bool squared = false);

}  // namespace akm
