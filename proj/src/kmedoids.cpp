#include "akm/kmedoids.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace akm {

namespace {

Scalar entry(const Matrix& d, Index i, Index j, bool squared) {
  const Scalar v = d(i, j);
  return squared ? v * v : v;
}

// Distance-proportional seeding: first medoid uniform, each further medoid
// drawn with probability proportional to the squared distance to the nearest
// medoid so far. Uniform random starts routinely drop two seeds into one
// cluster and Voronoi iteration cannot always recover; spreading the seeds
// removes that failure mode while staying deterministic under the rng.
IndexList seed_medoids(const Matrix& d, int k, Rng& rng) {
  const Index n = d.rows();
  IndexList medoids;
  medoids.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<Index> uniform(0, n - 1);
  medoids.push_back(uniform(rng));

  std::vector<Scalar> nearest(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) nearest[static_cast<std::size_t>(i)] = d(i, medoids[0]);

  std::vector<char> taken(static_cast<std::size_t>(n), 0);
  taken[static_cast<std::size_t>(medoids[0])] = 1;

  while (static_cast<int>(medoids.size()) < k) {
    double total = 0.0;
    bool has_unreached = false;
    for (Index i = 0; i < n; ++i) {
      if (taken[static_cast<std::size_t>(i)]) continue;
      const Scalar v = nearest[static_cast<std::size_t>(i)];
      if (std::isinf(v))
        has_unreached = true;
      else
        total += v * v;
    }

    Index pick = -1;
    if (has_unreached) {
      // Unreachable points come first; choose uniformly among them.
      Index count = 0;
      for (Index i = 0; i < n; ++i)
        if (!taken[static_cast<std::size_t>(i)] && std::isinf(nearest[static_cast<std::size_t>(i)]))
          ++count;
      std::uniform_int_distribution<Index> which(0, count - 1);
      Index want = which(rng);
      for (Index i = 0; i < n && pick < 0; ++i)
        if (!taken[static_cast<std::size_t>(i)] && std::isinf(nearest[static_cast<std::size_t>(i)]))
          if (want-- == 0) pick = i;
    } else if (total > 0.0) {
      std::uniform_real_distribution<double> spin(0.0, total);
      double remaining = spin(rng);
      for (Index i = 0; i < n && pick < 0; ++i) {
        if (taken[static_cast<std::size_t>(i)]) continue;
        const Scalar v = nearest[static_cast<std::size_t>(i)];
        remaining -= v * v;
        if (remaining <= 0.0) pick = i;
      }
      if (pick < 0)  // numerical leftover; take the last free point
        for (Index i = n - 1; i >= 0 && pick < 0; --i)
          if (!taken[static_cast<std::size_t>(i)]) pick = i;
    } else {
      // Every free point coincides with a medoid; fall back to uniform.
      Index count = 0;
      for (Index i = 0; i < n; ++i)
        if (!taken[static_cast<std::size_t>(i)]) ++count;
      std::uniform_int_distribution<Index> which(0, count - 1);
      Index want = which(rng);
      for (Index i = 0; i < n && pick < 0; ++i)
        if (!taken[static_cast<std::size_t>(i)])
          if (want-- == 0) pick = i;
    }

    taken[static_cast<std::size_t>(pick)] = 1;
    medoids.push_back(pick);
    for (Index i = 0; i < n; ++i) {
      const Scalar v = d(i, pick);
      if (v < nearest[static_cast<std::size_t>(i)]) nearest[static_cast<std::size_t>(i)] = v;
    }
  }
  return medoids;
}

// Nearest-medoid assignment. A medoid always stays in its own cluster (its
// self-distance of zero can only be tied, never beaten). Other ties break
// toward the lowest medoid point index; a point at +inf from every medoid
// goes to cluster 0.
std::vector<int> assign_points(const Matrix& d, const IndexList& medoids) {
  const Index n = d.rows();
  const int k = static_cast<int>(medoids.size());
  std::vector<int> assignment(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    int forced = -1;
    for (int c = 0; c < k; ++c)
      if (medoids[static_cast<std::size_t>(c)] == i) {
        forced = c;
        break;
      }
    if (forced >= 0) {
      assignment[static_cast<std::size_t>(i)] = forced;
      continue;
    }
    int best_cluster = 0;
    Scalar best_dist = d(i, medoids[0]);
    Index best_medoid = medoids[0];
    for (int c = 1; c < k; ++c) {
      const Scalar dist = d(i, medoids[static_cast<std::size_t>(c)]);
      const Index m = medoids[static_cast<std::size_t>(c)];
      if (dist < best_dist || (dist == best_dist && m < best_medoid)) {
        best_cluster = c;
        best_dist = dist;
        best_medoid = m;
      }
    }
    assignment[static_cast<std::size_t>(i)] = std::isinf(best_dist) ? 0 : best_cluster;
  }
  return assignment;
}

// Reseeds each empty cluster with the point farthest from the largest
// cluster's medoid, moving that point over. Mutates medoids and assignment.
void repair_empty_clusters(const Matrix& d, IndexList& medoids, std::vector<int>& assignment) {
  const int k = static_cast<int>(medoids.size());
  for (;;) {
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (int c : assignment) ++counts[static_cast<std::size_t>(c)];

    int empty = -1;
    for (int c = 0; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] == 0) {
        empty = c;
        break;
      }
    if (empty < 0) return;

    int biggest = 0;
    for (int c = 1; c < k; ++c)
      if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(biggest)]) biggest = c;

    const Index big_medoid = medoids[static_cast<std::size_t>(biggest)];
    Index farthest = -1;
    Scalar far_dist = -1.0;
    for (Index i = 0; i < d.rows(); ++i) {
      if (assignment[static_cast<std::size_t>(i)] != biggest || i == big_medoid) continue;
      const Scalar dist = d(i, big_medoid);
      if (dist > far_dist) {
        far_dist = dist;
        farthest = i;
      }
    }
    if (farthest < 0)
      throw std::logic_error("kmedoids: cannot repair empty cluster (largest cluster has no spare point)");
    medoids[static_cast<std::size_t>(empty)] = farthest;
    assignment[static_cast<std::size_t>(farthest)] = empty;
  }
}

// Per-cluster medoid re-selection: the member minimizing the within-cluster
// distance sum, lowest point index on ties.
IndexList update_medoids(const Matrix& d, const std::vector<int>& assignment, int k, bool squared) {
  const Index n = d.rows();
  std::vector<IndexList> members(static_cast<std::size_t>(k));
  for (Index i = 0; i < n; ++i)
    members[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])].push_back(i);

  IndexList medoids(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    const IndexList& pts = members[static_cast<std::size_t>(c)];
    if (pts.empty()) throw std::logic_error("kmedoids: empty cluster reached medoid update");
    Index best = pts.front();
    Scalar best_sum = kInfinity;
    bool first = true;
    for (Index cand : pts) {
      Scalar sum = 0.0;
      for (Index other : pts) sum += entry(d, other, cand, squared);
      if (first || sum < best_sum) {
        best = cand;
        best_sum = sum;
        first = false;
      }
    }
    medoids[static_cast<std::size_t>(c)] = best;
  }
  return medoids;
}

}  // namespace

Scalar clustering_objective(const Matrix& distances, std::span<const int> assignment,
                            std::span<const Index> medoids, bool squared) {
  const Index n = distances.rows();
  if (distances.cols() != n) throw std::invalid_argument("clustering_objective: matrix not square");
  if (static_cast<Index>(assignment.size()) != n)
    throw std::invalid_argument("clustering_objective: assignment length mismatch");
  const int k = static_cast<int>(medoids.size());
  for (int c = 0; c < k; ++c) {
    const Index m = medoids[static_cast<std::size_t>(c)];
    if (m < 0 || m >= n) throw std::out_of_range("clustering_objective: medoid index out of bounds");
    if (assignment[static_cast<std::size_t>(m)] != c)
      throw std::logic_error("clustering_objective: medoid not assigned to its own cluster");
  }
  Scalar total = 0.0;
  for (Index i = 0; i < n; ++i) {
    const int c = assignment[static_cast<std::size_t>(i)];
    if (c < 0 || c >= k) throw std::out_of_range("clustering_objective: cluster id out of range");
    total += entry(distances, i, medoids[static_cast<std::size_t>(c)], squared);
  }
  return total;
}

ClusteringResult kmedoids_run(const Matrix& d, const KmedoidsParams& params) {
  const Index n = d.rows();
  if (d.cols() != n) throw std::invalid_argument("kmedoids_run: matrix not square");
  if (params.k <= 0) throw std::invalid_argument("kmedoids_run: k must be positive");
  if (static_cast<Index>(params.k) > n) throw std::invalid_argument("kmedoids_run: k exceeds point count");
  if (params.max_iterations < 1) throw std::invalid_argument("kmedoids_run: max_iterations must be >= 1");
  if (!d.diagonal().isZero(0.0)) throw std::invalid_argument("kmedoids_run: nonzero diagonal");

  Rng rng(params.seed);
  IndexList medoids = seed_medoids(d, params.k, rng);
  std::sort(medoids.begin(), medoids.end());

  ClusteringResult result;
  result.assignment = assign_points(d, medoids);
  repair_empty_clusters(d, medoids, result.assignment);
  result.objective_trace.push_back(
      clustering_objective(d, result.assignment, medoids, params.squared_objective));

  for (int iter = 1; iter <= params.max_iterations; ++iter) {
    result.iterations_run = iter;
    IndexList next = update_medoids(d, result.assignment, params.k, params.squared_objective);
    const bool changed = next != medoids;
    medoids = std::move(next);
    result.assignment = assign_points(d, medoids);
    repair_empty_clusters(d, medoids, result.assignment);
    result.objective_trace.push_back(
        clustering_objective(d, result.assignment, medoids, params.squared_objective));
    if (!changed) break;
  }

  result.medoids = std::move(medoids);
  result.objective = result.objective_trace.back();
  return result;
}

}  // namespace akm
