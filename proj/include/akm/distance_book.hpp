#pragma once

#include "akm/types.hpp"

#include <cstdint>
#include <iosfwd>

namespace akm {

enum class DistStatus : std::uint8_t { Unknown = 0, Estimate = 1, Exact = 2 };

const char* to_string(DistStatus status);

/// Symmetric store of the pairwise distances over n points.
///
/// Every off-diagonal entry starts Unknown (+inf) and can move to Estimate or
/// Exact. Exact values are immutable once written; estimates only ever
/// tighten downward. The diagonal is implicitly Exact zero. Storage is a
/// packed strict upper triangle with a parallel status array.
class DistanceBook {
 public:
  explicit DistanceBook(Index n);

  Index size() const { return n_; }

  Scalar value(Index i, Index j) const;
  DistStatus status(Index i, Index j) const;
  bool is_exact(Index i, Index j) const { return status(i, j) == DistStatus::Exact; }

  /// Records an oracle answer. Throws if d is negative or non-finite, if
  /// i == j, or if the pair already holds a different exact value.
  void set_exact(Index i, Index j, Scalar d);

  /// Lowers the stored upper bound to min(current, candidate) unless the
  /// entry is Exact. Returns the stored value after the update.
  Scalar relax_upper(Index i, Index j, Scalar candidate);

  std::uint64_t exact_count() const;
  std::uint64_t finite_count() const;

  /// Dense n x n matrix view: zero diagonal, +inf where Unknown.
  Matrix full_matrix() const;

  /// Dense submatrix over the given point indices, in the given order.
  Matrix submatrix(const IndexList& ids) const;

  /// Debug dump: one "i,j,value,status" row per unordered pair.
  void dump_csv(std::ostream& os) const;

 private:
  Index n_;
  Vector values_;
  std::vector<DistStatus> status_;

  // Packed index of (i, j) with i < j.
  std::size_t pack(Index i, Index j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * n_ - i - 1) / 2 +
           static_cast<std::size_t>(j - i - 1);
  }
  void check_pair(Index i, Index j) const;
};

/// True iff truth(i, j) <= book value + tol for every pair. `truth` must be a
/// square matrix matching the book's size.
bool upper_bound_valid(const DistanceBook& book, const Matrix& truth, Scalar tol = 0.0);

}  // namespace akm
