#include "akm/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace akm {

void floyd_warshall(DistanceBook& book) {
  const Index n = book.size();
  Matrix dist = book.full_matrix();
  floyd_warshall_in_place(dist);

  constexpr Scalar kPathTol = 1e-9;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) {
      const Scalar path = dist(i, j);
      if (book.status(i, j) == DistStatus::Exact) {
        const Scalar edge = book.value(i, j);
        if (path < edge - kPathTol * (1.0 + edge))
          throw std::logic_error("floyd_warshall: shortest path undercuts an exact entry; "
                                 "oracle distances are not a metric");
        continue;  // keep the exact value bit for bit
      }
      if (std::isfinite(path)) book.relax_upper(i, j, path);
    }
}

std::vector<std::pair<Index, Index>> sample_pairs(Index n, std::uint64_t budget,
                                                  std::uint64_t seed) {
  const std::uint64_t total = pair_count(n);
  if (budget > total) throw std::invalid_argument("sample_pairs: budget exceeds C(n,2)");

  std::vector<std::pair<Index, Index>> pairs;
  pairs.reserve(total);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  Rng rng(seed);
  for (std::uint64_t i = 0; i < budget; ++i) {
    std::uniform_int_distribution<std::uint64_t> pick(i, total - 1);
    std::swap(pairs[i], pairs[pick(rng)]);
  }
  pairs.resize(budget);
  return pairs;
}

RandomRivalResult random_rival_with_pairs(DistanceOracle& oracle, int k,
                                          const std::vector<std::pair<Index, Index>>& pairs,
                                          int max_iterations, std::uint64_t seed) {
  RandomRivalResult result{
      .clustering = {}, .book = DistanceBook(oracle.size()), .asked_pairs = pairs.size()};
  for (const auto& [i, j] : pairs) result.book.set_exact(i, j, oracle.query(i, j));
  floyd_warshall(result.book);

  KmedoidsParams params;
  params.k = k;
  params.max_iterations = max_iterations;
  params.seed = seed;
  result.clustering = kmedoids_run(result.book.full_matrix(), params);
  return result;
}

RandomRivalResult random_rival(DistanceOracle& oracle, int k, std::uint64_t budget,
                               int max_iterations, std::uint64_t seed) {
  if (budget > pair_count(oracle.size()))
    throw std::invalid_argument("random_rival: budget exceeds C(n,2)");
  const auto pairs = sample_pairs(oracle.size(), budget, seed);
  return random_rival_with_pairs(oracle, k, pairs, max_iterations, seed);
}

}  // namespace akm
