#include "akm/oracle.hpp"

#include <stdexcept>
#include <string>

namespace akm {

QueryLedger::QueryLedger(Index n) : n_(n) {
  if (n < 0) throw std::invalid_argument("QueryLedger: negative size");
}

std::uint64_t QueryLedger::key(Index i, Index j) const {
  const auto lo = static_cast<std::uint64_t>(i < j ? i : j);
  const auto hi = static_cast<std::uint64_t>(i < j ? j : i);
  return (lo << 32) | hi;
}

bool QueryLedger::record(Index i, Index j) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j)
    throw std::out_of_range("QueryLedger::record: invalid pair");
  return asked_.insert(key(i, j)).second;
}

bool QueryLedger::contains(Index i, Index j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_ || i == j) return false;
  return asked_.count(key(i, j)) > 0;
}

double QueryLedger::asked_ratio() const {
  if (n_ < 2) throw std::logic_error("QueryLedger::asked_ratio: undefined for n < 2");
  return static_cast<double>(asked_.size()) / static_cast<double>(total_pairs());
}

DistanceOracle::DistanceOracle(Matrix points, Metric metric)
    : points_(std::move(points)), metric_(metric), ledger_(points_.rows()) {
  if (!points_.allFinite())
    throw std::invalid_argument("DistanceOracle: dataset contains non-finite features");
}

Scalar DistanceOracle::query(Index i, Index j) {
  if (i < 0 || i >= size() || j < 0 || j >= size())
    throw std::out_of_range("DistanceOracle::query: index out of bounds (" + std::to_string(i) +
                            "," + std::to_string(j) + ")");
  if (i == j) return 0.0;
  ledger_.record(i, j);
  switch (metric_) {
    case Metric::Euclidean:
      return point_distance(points_, i, j);
  }
  throw std::logic_error("DistanceOracle::query: unhandled metric");
}

Matrix pairwise_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix out(n, n);
  for (Index i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const Scalar d = point_distance(points, i, j);
      out(i, j) = d;
      out(j, i) = d;
    }
  }
  return out;
}

}  // namespace akm
