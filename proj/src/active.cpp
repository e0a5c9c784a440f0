#include "akm/active.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <span>
#include <stdexcept>

namespace akm {

void ActiveParams::validate(Index n) const {
  if (k < 1) throw std::invalid_argument("active: k must be >= 1");
  if (b < 2) throw std::invalid_argument("active: branching factor must be >= 2");
  if (s < 0) throw std::invalid_argument("active: s must be >= 0");
  if (max_iterations < 1) throw std::invalid_argument("active: max_iterations must be >= 1");
  const Index t = static_cast<Index>(k) * static_cast<Index>(s + 1);
  if (resolved_leaf_threshold() < t)
    throw std::invalid_argument("active: leaf threshold must be >= k*(s+1) = " + std::to_string(t));
  if (n < static_cast<Index>(k)) throw std::invalid_argument("active: fewer points than clusters");
}

std::size_t GroupNode::node_count() const {
  std::size_t count = 1;
  for (const GroupNode& child : children) count += child.node_count();
  return count;
}

std::size_t GroupNode::leaf_count() const {
  if (is_leaf()) return 1;
  std::size_t count = 0;
  for (const GroupNode& child : children) count += child.leaf_count();
  return count;
}

std::vector<IndexList> partition_groups(const IndexList& members, int b) {
  if (b < 1 || static_cast<std::size_t>(b) > members.size())
    throw std::invalid_argument("partition_groups: need at least b members");
  const std::size_t base = members.size() / static_cast<std::size_t>(b);
  const std::size_t extra = members.size() % static_cast<std::size_t>(b);
  std::vector<IndexList> groups;
  groups.reserve(static_cast<std::size_t>(b));
  std::size_t at = 0;
  for (std::size_t g = 0; g < static_cast<std::size_t>(b); ++g) {
    const std::size_t size = base + (g < extra ? 1 : 0);
    groups.emplace_back(members.begin() + static_cast<std::ptrdiff_t>(at),
                        members.begin() + static_cast<std::ptrdiff_t>(at + size));
    at += size;
  }
  return groups;
}

IndexList select_prominent(const ClusteringResult& local, const IndexList& members, int s,
                           Rng& rng) {
  const int k = static_cast<int>(local.medoids.size());
  IndexList chosen;
  chosen.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(s + 1));
  for (int c = 0; c < k; ++c) {
    const Index medoid_local = local.medoids[static_cast<std::size_t>(c)];
    chosen.push_back(members[static_cast<std::size_t>(medoid_local)]);
    if (s == 0) continue;
    IndexList pool;
    for (std::size_t i = 0; i < local.assignment.size(); ++i)
      if (local.assignment[i] == c && static_cast<Index>(i) != medoid_local)
        pool.push_back(static_cast<Index>(i));
    const Index want = std::min<Index>(s, static_cast<Index>(pool.size()));
    for (Index pick = 0; pick < want; ++pick) {
      std::uniform_int_distribution<Index> dist(pick, static_cast<Index>(pool.size()) - 1);
      std::swap(pool[static_cast<std::size_t>(pick)], pool[static_cast<std::size_t>(dist(rng))]);
      chosen.push_back(members[static_cast<std::size_t>(pool[static_cast<std::size_t>(pick)])]);
    }
  }
  return chosen;
}

void estimate_cross_group(DistanceBook& book, const std::vector<IndexList>& groups,
                          const std::vector<IndexList>& chosen) {
  if (groups.size() != chosen.size())
    throw std::invalid_argument("estimate_cross_group: groups/chosen size mismatch");

  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    for (std::size_t gj = gi + 1; gj < groups.size(); ++gj) {
      const IndexList& left = groups[gi];
      const IndexList& right = groups[gj];
      const IndexList& lx = chosen[gi];
      const IndexList& ry = chosen[gj];
      if (lx.empty() || ry.empty()) continue;
      const Index tl = static_cast<Index>(lx.size());
      const Index tr = static_cast<Index>(ry.size());

      // Exact cross legs between the two chosen sets.
      Matrix cross(tl, tr);
      for (Index x = 0; x < tl; ++x)
        for (Index y = 0; y < tr; ++y) {
          const Index gx = lx[static_cast<std::size_t>(x)];
          const Index gy = ry[static_cast<std::size_t>(y)];
          if (book.status(gx, gy) != DistStatus::Exact)
            throw std::logic_error("estimate_cross_group: cross pair of chosen points not exact");
          cross(x, y) = book.value(gx, gy);
        }

      // Within-group legs; estimates are fine here.
      Matrix to_right(static_cast<Index>(right.size()), tr);
      for (Index bi = 0; bi < static_cast<Index>(right.size()); ++bi)
        for (Index y = 0; y < tr; ++y)
          to_right(bi, y) =
              book.value(right[static_cast<std::size_t>(bi)], ry[static_cast<std::size_t>(y)]);

      Vector left_legs(tl);
      for (Index ai = 0; ai < static_cast<Index>(left.size()); ++ai) {
        const Index a = left[static_cast<std::size_t>(ai)];
        for (Index x = 0; x < tl; ++x)
          left_legs(x) = book.value(a, lx[static_cast<std::size_t>(x)]);
        // best[y] = min over x of (a->x) + (x->y)
        const Vector best = (cross.colwise() + left_legs).colwise().minCoeff().transpose();
        for (Index bi = 0; bi < static_cast<Index>(right.size()); ++bi) {
          const Scalar candidate = (best + to_right.row(bi).transpose()).minCoeff();
          book.relax_upper(a, right[static_cast<std::size_t>(bi)], candidate);
        }
      }
    }
  }
}

void tighten_within_group(DistanceBook& book, const IndexList& members) {
  const Index m = static_cast<Index>(members.size());
  if (m < 3) return;

  // Adjacency over the exact entries between members, in local indices.
  std::vector<std::vector<std::pair<Index, Scalar>>> adjacency(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j)
      if (book.status(members[static_cast<std::size_t>(i)],
                      members[static_cast<std::size_t>(j)]) == DistStatus::Exact) {
        const Scalar w =
            book.value(members[static_cast<std::size_t>(i)], members[static_cast<std::size_t>(j)]);
        adjacency[static_cast<std::size_t>(i)].emplace_back(j, w);
        adjacency[static_cast<std::size_t>(j)].emplace_back(i, w);
      }

  std::vector<Scalar> dist(static_cast<std::size_t>(m));
  using HeapItem = std::pair<Scalar, Index>;
  std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
  for (Index source = 0; source < m; ++source) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    dist[static_cast<std::size_t>(source)] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
      const auto [d, u] = heap.top();
      heap.pop();
      if (d > dist[static_cast<std::size_t>(u)]) continue;
      for (const auto& [v, w] : adjacency[static_cast<std::size_t>(u)]) {
        const Scalar candidate = d + w;
        if (candidate < dist[static_cast<std::size_t>(v)]) {
          dist[static_cast<std::size_t>(v)] = candidate;
          heap.emplace(candidate, v);
        }
      }
    }
    for (Index target = source + 1; target < m; ++target) {
      const Scalar d = dist[static_cast<std::size_t>(target)];
      if (std::isfinite(d))
        book.relax_upper(members[static_cast<std::size_t>(source)],
                         members[static_cast<std::size_t>(target)], d);
    }
  }
}

double predict_query_ratio(std::int64_t n, int k, int b, int s, std::int64_t leaf_threshold) {
  if (n < 2) throw std::invalid_argument("predict_query_ratio: n must be >= 2");
  if (k < 1 || b < 2 || s < 0 || leaf_threshold < 1)
    throw std::invalid_argument("predict_query_ratio: invalid parameters");

  // floor(log_b(n / t_h)), exact in integers while t_h <= n.
  double height = 0.0;
  if (leaf_threshold <= n) {
    std::int64_t reach = leaf_threshold;
    while (reach <= n / b) {
      reach *= b;
      height += 1.0;
    }
  } else {
    height = std::floor(std::log(static_cast<double>(n) / static_cast<double>(leaf_threshold)) /
                        std::log(static_cast<double>(b)));
  }

  const double t = static_cast<double>(k) * static_cast<double>(s + 1);
  const double internal_nodes = (std::pow(static_cast<double>(b), height) - 1.0) /
                                (static_cast<double>(b) - 1.0);
  const double internal_queries = static_cast<double>(b) * static_cast<double>(b) * t * t *
                                  internal_nodes;
  const double leaf_queries = static_cast<double>(n) * static_cast<double>(leaf_threshold);
  const double total = static_cast<double>(pair_count(static_cast<Index>(n)));
  return (internal_queries + leaf_queries) / total;
}

namespace {

struct ActiveRun {
  DistanceOracle& oracle;
  const ActiveParams& params;
  Index leaf_limit;  // 2 * t_h
  DistanceBook book;
  Rng rng;

  ActiveRun(DistanceOracle& o, const ActiveParams& p)
      : oracle(o),
        params(p),
        leaf_limit(2 * p.resolved_leaf_threshold()),
        book(o.size()),
        rng(p.seed) {}

  ClusteringResult cluster_node(const IndexList& members) {
    KmedoidsParams kp;
    kp.k = static_cast<int>(std::min<Index>(params.k, static_cast<Index>(members.size())));
    kp.max_iterations = params.max_iterations;
    kp.seed = params.seed;
    kp.squared_objective = params.squared_objective;
    return kmedoids_run(book.submatrix(members), kp);
  }

  ClusteringResult recurse(std::span<const Index> order, GroupNode& node) {
    node.members.assign(order.begin(), order.end());
    std::sort(node.members.begin(), node.members.end());

    if (static_cast<Index>(node.members.size()) <= leaf_limit) {
      for (std::size_t i = 0; i < node.members.size(); ++i)
        for (std::size_t j = i + 1; j < node.members.size(); ++j)
          book.set_exact(node.members[i], node.members[j],
                         oracle.query(node.members[i], node.members[j]));
      return cluster_node(node.members);
    }

    const IndexList in_order(order.begin(), order.end());
    const std::vector<IndexList> parts = partition_groups(in_order, params.b);

    std::vector<IndexList> group_members;
    std::vector<IndexList> group_chosen;
    group_members.reserve(parts.size());
    group_chosen.reserve(parts.size());
    node.children.resize(parts.size());
    for (std::size_t g = 0; g < parts.size(); ++g) {
      GroupNode& child = node.children[g];
      const ClusteringResult local = recurse(parts[g], child);
      child.chosen = select_prominent(local, child.members, params.s, rng);
      group_members.push_back(child.members);
      group_chosen.push_back(child.chosen);
    }

    for (std::size_t gi = 0; gi < group_chosen.size(); ++gi)
      for (std::size_t gj = gi + 1; gj < group_chosen.size(); ++gj)
        for (Index x : group_chosen[gi])
          for (Index y : group_chosen[gj]) book.set_exact(x, y, oracle.query(x, y));

    estimate_cross_group(book, group_members, group_chosen);
    tighten_within_group(book, node.members);
    return cluster_node(node.members);
  }
};

}  // namespace

ActiveResult active_kmedoids(DistanceOracle& oracle, const ActiveParams& params) {
  const Index n = oracle.size();
  params.validate(n);

  ActiveRun run(oracle, params);
  IndexList order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  if (params.shuffle_order) std::shuffle(order.begin(), order.end(), run.rng);

  ActiveResult result{.clustering = {},
                      .book = DistanceBook(0),
                      .tree = {},
                      .asked_pairs = 0,
                      .asked_ratio = 0.0};
  result.clustering = run.recurse(order, result.tree);
  result.book = std::move(run.book);
  result.asked_pairs = oracle.ledger().asked_count();
  result.asked_ratio = n >= 2 ? oracle.asked_ratio() : 1.0;
  return result;
}

}  // namespace akm
