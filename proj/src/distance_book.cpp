#include "akm/distance_book.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace akm {

const char* to_string(DistStatus status) {
  switch (status) {
    case DistStatus::Unknown:
      return "UNKNOWN";
    case DistStatus::Estimate:
      return "ESTIMATE";
    case DistStatus::Exact:
      return "EXACT";
  }
  return "?";
}

DistanceBook::DistanceBook(Index n) : n_(n) {
  if (n < 0) throw std::invalid_argument("DistanceBook: negative size");
  const std::size_t pairs = pair_count(n);
  values_ = Vector::Constant(static_cast<Index>(pairs), kInfinity);
  status_.assign(pairs, DistStatus::Unknown);
}

void DistanceBook::check_pair(Index i, Index j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_)
    throw std::out_of_range("DistanceBook: index out of bounds (" + std::to_string(i) + "," +
                            std::to_string(j) + ") for n=" + std::to_string(n_));
}

Scalar DistanceBook::value(Index i, Index j) const {
  check_pair(i, j);
  if (i == j) return 0.0;
  if (i > j) std::swap(i, j);
  return values_[static_cast<Index>(pack(i, j))];
}

DistStatus DistanceBook::status(Index i, Index j) const {
  check_pair(i, j);
  if (i == j) return DistStatus::Exact;
  if (i > j) std::swap(i, j);
  return status_[pack(i, j)];
}

void DistanceBook::set_exact(Index i, Index j, Scalar d) {
  check_pair(i, j);
  if (i == j) throw std::invalid_argument("DistanceBook::set_exact: i == j");
  if (!(d >= 0.0) || !std::isfinite(d))
    throw std::invalid_argument("DistanceBook::set_exact: distance must be a nonnegative real");
  if (i > j) std::swap(i, j);
  const std::size_t idx = pack(i, j);
  if (status_[idx] == DistStatus::Exact && values_[static_cast<Index>(idx)] != d)
    throw std::logic_error("DistanceBook::set_exact: conflicting exact values for pair (" +
                           std::to_string(i) + "," + std::to_string(j) + "): oracle inconsistency");
  values_[static_cast<Index>(idx)] = d;
  status_[idx] = DistStatus::Exact;
}

Scalar DistanceBook::relax_upper(Index i, Index j, Scalar candidate) {
  check_pair(i, j);
  if (i == j) throw std::invalid_argument("DistanceBook::relax_upper: i == j");
  if (std::isnan(candidate) || candidate < 0.0)
    throw std::invalid_argument("DistanceBook::relax_upper: candidate must be nonnegative");
  if (i > j) std::swap(i, j);
  const std::size_t idx = pack(i, j);
  if (status_[idx] == DistStatus::Exact) return values_[static_cast<Index>(idx)];
  Scalar& stored = values_[static_cast<Index>(idx)];
  if (candidate < stored) stored = candidate;
  if (std::isfinite(stored)) status_[idx] = DistStatus::Estimate;
  return stored;
}

std::uint64_t DistanceBook::exact_count() const {
  std::uint64_t count = 0;
  for (DistStatus st : status_)
    if (st == DistStatus::Exact) ++count;
  return count;
}

std::uint64_t DistanceBook::finite_count() const {
  std::uint64_t count = 0;
  for (DistStatus st : status_)
    if (st != DistStatus::Unknown) ++count;
  return count;
}

Matrix DistanceBook::full_matrix() const {
  Matrix out(n_, n_);
  out.diagonal().setZero();
  for (Index i = 0; i < n_; ++i)
    for (Index j = i + 1; j < n_; ++j) {
      const Scalar v = values_[static_cast<Index>(pack(i, j))];
      out(i, j) = v;
      out(j, i) = v;
    }
  return out;
}

Matrix DistanceBook::submatrix(const IndexList& ids) const {
  const Index m = static_cast<Index>(ids.size());
  Matrix out(m, m);
  for (Index a = 0; a < m; ++a) {
    out(a, a) = 0.0;
    for (Index b = a + 1; b < m; ++b) {
      const Scalar v = value(ids[static_cast<std::size_t>(a)], ids[static_cast<std::size_t>(b)]);
      out(a, b) = v;
      out(b, a) = v;
    }
  }
  return out;
}

void DistanceBook::dump_csv(std::ostream& os) const {
  const auto precision = os.precision(17);
  os << "i,j,value,status\n";
  for (Index i = 0; i < n_; ++i)
    for (Index j = i + 1; j < n_; ++j)
      os << i << ',' << j << ',' << values_[static_cast<Index>(pack(i, j))] << ','
         << to_string(status_[pack(i, j)]) << '\n';
  os.precision(precision);
}

bool upper_bound_valid(const DistanceBook& book, const Matrix& truth, Scalar tol) {
  if (truth.rows() != book.size() || truth.cols() != book.size())
    throw std::invalid_argument("upper_bound_valid: dimension mismatch");
  for (Index i = 0; i < book.size(); ++i)
    for (Index j = i + 1; j < book.size(); ++j)
      if (truth(i, j) > book.value(i, j) + tol) return false;
  return true;
}

}  // namespace akm
