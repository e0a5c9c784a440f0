#pragma once

#include "akm/distance_book.hpp"
#include "akm/kmedoids.hpp"
#include "akm/oracle.hpp"

namespace akm {

struct ActiveParams {
  int k = 2;
  int b = 2;                 // branching factor
  Index leaf_threshold = 0;  // t_h; 0 resolves to k * (s + 1)
  int s = 1;                 // random picks per cluster beside the medoid
  int max_iterations = 100;  // per k-medoids run
  std::uint64_t seed = 42;
  bool squared_objective = false;
  // Split the points in their given order (contiguous ranges, the workflow
  // the recursion-tree figure shows). Shuffling first withstands adversarial
  // orderings but discards the locality that good input orders carry.
  bool shuffle_order = false;

  Index resolved_leaf_threshold() const {
    return leaf_threshold > 0 ? leaf_threshold
                              : static_cast<Index>(k) * static_cast<Index>(s + 1);
  }
  /// Throws unless k >= 1, b >= 2, s >= 0, t_h >= k(s+1) and n >= k.
  void validate(Index n) const;
};

/// One node of the divisive recursion: its (sorted) member indices, the b
/// child groups when split, and the prominent points picked after the node's
/// own clustering.
struct GroupNode {
  IndexList members;
  std::vector<GroupNode> children;
  IndexList chosen;

  bool is_leaf() const { return children.empty(); }
  std::size_t node_count() const;
  std::size_t leaf_count() const;
};

struct ActiveResult {
  ClusteringResult clustering;
  DistanceBook book;
  GroupNode tree;
  std::uint64_t asked_pairs = 0;
  double asked_ratio = 0.0;
};

/// Query-budgeted k-medoids: recursively split the points into b near-equal
/// groups until a group fits 2*t_h, ask all pairs inside those leaves,
/// cluster each group, and at every merge ask only the pairwise distances
/// between each group's prominent points (its medoids plus s random members
/// per cluster), upper-bounding all remaining cross-group pairs through
/// three-leg paths. The final clustering runs on the estimated matrix over
/// all points; the oracle's ledger holds the exact query count.
ActiveResult active_kmedoids(DistanceOracle& oracle, const ActiveParams& params);

/// Contiguous near-equal split preserving order; the first size % b parts
/// take one extra element. Throws when b exceeds the member count.
std::vector<IndexList> partition_groups(const IndexList& members, int b);

/// The medoids of a group's local clustering plus s distinct non-medoid
/// members sampled per cluster (all members when a cluster is smaller).
/// `members` maps the local indices of `local` back to global point indices.
IndexList select_prominent(const ClusteringResult& local, const IndexList& members, int s,
                           Rng& rng);

/// Tightens every cross-group pair (a in groups[i], b in groups[j], i < j) to
/// min over x in chosen[i], y in chosen[j] of book(a,x) + book(x,y) + book(y,b).
/// The cross legs x-y must be exact; within-group legs may be estimates.
void estimate_cross_group(DistanceBook& book, const std::vector<IndexList>& groups,
                          const std::vector<IndexList>& chosen);

/// Relaxes every pair among `members` to its shortest-path distance over the
/// exact entries between members. Chaining through estimates compounds their
/// slack level by level; paths over queried edges do not, so the recursion
/// runs this after each node's prominent-pair queries.
void tighten_within_group(DistanceBook& book, const IndexList& members);

/// Closed-form approximation of the fraction of pairs the active algorithm
/// asks; the query ledger is the ground truth. Throws for n < 2.
double predict_query_ratio(std::int64_t n, int k, int b, int s, std::int64_t leaf_threshold);

}  // namespace akm
