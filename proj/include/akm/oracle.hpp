#pragma once

#include "akm/types.hpp"

#include <unordered_set>

namespace akm {

enum class Metric { Euclidean };

/// Set of unordered point pairs that have been asked so far.
class QueryLedger {
 public:
  explicit QueryLedger(Index n);

  /// Records {i, j}; returns true when the pair was not asked before.
  bool record(Index i, Index j);
  bool contains(Index i, Index j) const;

  std::uint64_t asked_count() const { return asked_.size(); }
  std::uint64_t total_pairs() const { return pair_count(n_); }

  /// asked / C(n, 2). Throws for n < 2 where the ratio is undefined.
  double asked_ratio() const;

  Index size() const { return n_; }

 private:
  Index n_;
  std::unordered_set<std::uint64_t> asked_;

  std::uint64_t key(Index i, Index j) const;
};

/// Answers pairwise-distance queries from an in-memory vectorized dataset,
/// counting every distinct pair asked. Returned values form a metric for the
/// shipped Euclidean choice; plugging another metric keeps the accounting but
/// the estimation guarantees elsewhere assume metricity.
class DistanceOracle {
 public:
  explicit DistanceOracle(Matrix points, Metric metric = Metric::Euclidean);

  Index size() const { return points_.rows(); }
  Index dim() const { return points_.cols(); }

  /// Metric distance between points i and j; records the pair in the ledger.
  /// query(i, i) returns 0 without recording anything.
  Scalar query(Index i, Index j);

  double asked_ratio() const { return ledger_.asked_ratio(); }
  const QueryLedger& ledger() const { return ledger_; }
  const Matrix& points() const { return points_; }

 private:
  Matrix points_;
  Metric metric_;
  QueryLedger ledger_;
};

/// Euclidean distance between rows i and j of a point matrix.
inline Scalar point_distance(const Matrix& points, Index i, Index j) {
  return (points.row(i) - points.row(j)).norm();
}

/// Full n x n Euclidean distance matrix. Touches no ledger; intended for
/// full-information runs and for test oracles.
Matrix pairwise_distances(const Matrix& points);

}  // namespace akm
