#include "akm/active.hpp"

#include "akm/data.hpp"
#include "akm/eval.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>
#include <numeric>
#include <set>

using namespace akm;

namespace {

IndexList iota_list(Index n) {
  IndexList out(static_cast<std::size_t>(n));
  std::iota(out.begin(), out.end(), Index{0});
  return out;
}

// All within-group pairs exact, as a leaf leaves them.
void fill_group_exact(DistanceBook& book, const IndexList& group, const Matrix& truth) {
  for (std::size_t i = 0; i < group.size(); ++i)
    for (std::size_t j = i + 1; j < group.size(); ++j)
      book.set_exact(group[i], group[j], truth(group[i], group[j]));
}

}  // namespace

TEST_SUITE("active") {

TEST_CASE("partition_groups splits contiguously into near-equal parts") {
  const auto groups = partition_groups(iota_list(1600), 2);
  REQUIRE(groups.size() == 2);
  CHECK(groups[0].size() == 800);
  CHECK(groups[1].size() == 800);
  CHECK(groups[0].front() == 0);
  CHECK(groups[1].front() == 800);

  const auto uneven = partition_groups(iota_list(7), 2);
  CHECK(uneven[0].size() == 4);
  CHECK(uneven[1].size() == 3);

  SUBCASE("partition property on arbitrary inputs") {
    const IndexList members{9, 4, 11, 2, 7, 0, 5};
    for (int b = 2; b <= 7; ++b) {
      const auto parts = partition_groups(members, b);
      IndexList merged;
      std::size_t max_size = 0, min_size = members.size();
      for (const auto& part : parts) {
        merged.insert(merged.end(), part.begin(), part.end());
        max_size = std::max(max_size, part.size());
        min_size = std::min(min_size, part.size());
      }
      CHECK(merged == members);  // disjoint cover, order preserved
      CHECK(max_size - min_size <= 1);
    }
  }

  CHECK_THROWS_AS(partition_groups(iota_list(3), 4), std::invalid_argument);
}

TEST_CASE("select_prominent picks medoids plus s non-medoids per cluster") {
  ClusteringResult local;
  local.assignment = {0, 0, 0, 1, 1};
  local.medoids = {0, 3};
  const IndexList members{10, 11, 12, 13, 14};
  Rng rng(5);

  SUBCASE("s = 0 returns exactly the medoids") {
    CHECK(select_prominent(local, members, 0, rng) == IndexList{10, 13});
  }
  SUBCASE("forced picks in tiny clusters") {
    const IndexList chosen = select_prominent(local, members, 1, rng);
    CHECK(chosen.size() == 4);  // k(s+1)
    const std::set<Index> set(chosen.begin(), chosen.end());
    CHECK(set.size() == 4);
    CHECK(set.count(10) == 1);
    CHECK(set.count(13) == 1);
    CHECK(set.count(14) == 1);                      // only non-medoid of cluster 1
    CHECK((set.count(11) == 1 || set.count(12) == 1));  // one of b/c
  }
  SUBCASE("singleton cluster contributes just its medoid") {
    ClusteringResult lone;
    lone.assignment = {0, 1, 1, 1, 1};
    lone.medoids = {0, 2};
    const IndexList chosen = select_prominent(lone, members, 3, rng);
    const std::set<Index> set(chosen.begin(), chosen.end());
    CHECK(set.count(10) == 1);
    CHECK(chosen.size() == 1 + 1 + 3);  // medoid + (medoid + 3 others)
  }
}

TEST_CASE("estimate_cross_group chains the three-leg bound") {
  // Groups {a, x} and {y, b}; within-group legs are estimates, cross leg is
  // exact. Indices: a=0, x=1, y=2, b=3.
  DistanceBook book(4);
  book.relax_upper(0, 1, 1.0);
  book.set_exact(1, 2, 2.0);
  book.relax_upper(2, 3, 3.0);
  estimate_cross_group(book, {{0, 1}, {2, 3}}, {{1}, {2}});
  CHECK(book.value(0, 3) == 6.0);
  CHECK(book.status(0, 3) == DistStatus::Estimate);
  // Chosen-chosen pair keeps its exact queried value via the zero-leg chain.
  CHECK(book.value(1, 2) == 2.0);
  CHECK(book.status(1, 2) == DistStatus::Exact);
  // a-y gets 0-leg + exact + 0: the chain through x only.
  CHECK(book.value(0, 2) == 3.0);
}

TEST_CASE("estimate_cross_group requires exact cross legs") {
  DistanceBook book(4);
  book.relax_upper(1, 2, 2.0);  // estimate, not exact
  CHECK_THROWS_AS(estimate_cross_group(book, {{0, 1}, {2, 3}}, {{1}, {2}}), std::logic_error);
}

TEST_CASE("cross estimates dominate truth and the known-edge shortest path") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Index n = 60;
    const Matrix truth = pairwise_distances(akmtest::random_points(n, 3, 700 + seed));
    IndexList left, right;
    for (Index i = 0; i < n; ++i) (i < 30 ? left : right).push_back(i);

    DistanceBook book(n);
    fill_group_exact(book, left, truth);
    fill_group_exact(book, right, truth);

    Rng rng(seed);
    const IndexList lx = sample_indices(30, 4, rng);
    IndexList chosen_left, chosen_right;
    for (Index i : lx) chosen_left.push_back(left[static_cast<std::size_t>(i)]);
    const IndexList ry = sample_indices(30, 4, rng);
    for (Index i : ry) chosen_right.push_back(right[static_cast<std::size_t>(i)]);
    for (Index x : chosen_left)
      for (Index y : chosen_right) book.set_exact(x, y, truth(x, y));

    const Matrix known = akmtest::exact_edges(book);
    estimate_cross_group(book, {left, right}, {chosen_left, chosen_right});

    for (Index a : left) {
      const std::vector<double> bound = akmtest::dijkstra(known, a);
      for (Index b : right) {
        const Scalar estimate = book.value(a, b);
        CHECK(std::isfinite(estimate));
        CHECK(estimate >= truth(a, b) - 1e-9);
        // The three-leg chain cannot beat the full shortest path over the
        // same known edges.
        CHECK(estimate >= bound[static_cast<std::size_t>(b)] - 1e-9);
      }
    }
  }
}

TEST_CASE("predict_query_ratio evaluates the closed form") {
  // n=1600, k=2, b=2, s=1, t_h=400: internal term 4*16*3, leaf term 1600*400,
  // over C(1600,2).
  const double expected = (64.0 * 3.0 + 1600.0 * 400.0) / 1279200.0;
  CHECK(predict_query_ratio(1600, 2, 2, 1, 400) == expected);
  CHECK(predict_query_ratio(1600, 2, 2, 1, 400) == doctest::Approx(0.5004).epsilon(1e-3));

  SUBCASE("single-leaf regime predicts roughly everything") {
    const double ratio = predict_query_ratio(400, 2, 2, 1, 200);
    CHECK(ratio >= 0.95);
    CHECK(ratio <= 1.1);
  }
  SUBCASE("iris-scale prediction is the right order of magnitude") {
    const double ratio = predict_query_ratio(150, 3, 2, 1, 6);
    CHECK(ratio == doctest::Approx(3060.0 / 11175.0));
  }
  CHECK_THROWS_AS(predict_query_ratio(1, 2, 2, 1, 4), std::invalid_argument);
}

TEST_CASE("base case asks every pair and reproduces full k-medoids exactly") {
  const Matrix points = akmtest::random_points(8, 2, 12);
  DistanceOracle oracle(points);
  ActiveParams params;
  params.k = 2;
  params.s = 1;
  params.leaf_threshold = 4;
  params.seed = 31;
  const ActiveResult active = active_kmedoids(oracle, params);

  CHECK(oracle.ledger().asked_count() == 28);
  CHECK(active.asked_ratio == 1.0);
  CHECK(active.tree.is_leaf());

  KmedoidsParams kp;
  kp.k = 2;
  kp.seed = 31;
  const ClusteringResult full = kmedoids_run(pairwise_distances(points), kp);
  CHECK(active.clustering.assignment == full.assignment);
  CHECK(active.clustering.medoids == full.medoids);
  CHECK(active.clustering.objective == full.objective);
}

TEST_CASE("degenerate equivalence holds for every n <= 2*t_h") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Index n = 20 + static_cast<Index>(seed) * 13;
    const Matrix points = akmtest::random_points(n, 3, 50 + seed);
    DistanceOracle oracle(points);
    ActiveParams params;
    params.k = 3;
    params.s = 1;
    params.leaf_threshold = (n + 1) / 2;
    params.seed = seed;
    const ActiveResult active = active_kmedoids(oracle, params);
    KmedoidsParams kp;
    kp.k = 3;
    kp.seed = seed;
    const ClusteringResult full = kmedoids_run(pairwise_distances(points), kp);
    CHECK(active.clustering.assignment == full.assignment);
    CHECK(active.clustering.medoids == full.medoids);
    CHECK(active.clustering.objective == full.objective);
    CHECK(oracle.asked_ratio() == 1.0);
  }
}

TEST_CASE("recursion tree shape for 1600 points at threshold 399") {
  // 1600 -> two 800-groups -> four 400-leaves (400 <= 2*399 stops there).
  const Dataset blobs = gen_blobs(2, 800, 2, 25.0, 1.0, 90);
  DistanceOracle oracle(blobs.points);
  ActiveParams params;
  params.k = 2;
  params.b = 2;
  params.s = 1;
  params.leaf_threshold = 399;
  params.seed = 7;
  const ActiveResult result = active_kmedoids(oracle, params);

  CHECK(result.tree.node_count() == 7);
  CHECK(result.tree.leaf_count() == 4);
  CHECK(result.tree.members.size() == 1600);
  REQUIRE(result.tree.children.size() == 2);
  for (const GroupNode& half : result.tree.children) {
    CHECK(half.members.size() == 800);
    REQUIRE(half.children.size() == 2);
    for (const GroupNode& leaf : half.children) {
      CHECK(leaf.members.size() == 400);
      CHECK(leaf.is_leaf());
    }
  }

  // Children partition their parent.
  IndexList merged;
  for (const GroupNode& half : result.tree.children)
    merged.insert(merged.end(), half.members.begin(), half.members.end());
  std::sort(merged.begin(), merged.end());
  CHECK(merged == result.tree.members);

  // Leaves ask all inner pairs; each internal node asks the 4x4 cross pairs.
  CHECK(oracle.ledger().asked_count() == 4 * pair_count(400) + 3 * 16);
  CHECK(oracle.asked_ratio() < 1.0);

  // Prominent sets have k(s+1) points drawn from the group.
  for (const GroupNode& half : result.tree.children) {
    CHECK(half.chosen.size() == 4);
    for (Index p : half.chosen)
      CHECK(std::binary_search(half.members.begin(), half.members.end(), p));
  }

  // Separable blobs stay perfectly recoverable from the estimates.
  CHECK(nmi(result.clustering.assignment, *blobs.labels) == 1.0);
}

TEST_CASE("book stays a sound upper bound and covers every pair") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Index n = 40 + static_cast<Index>(seed) * 25;
    const Matrix points = akmtest::random_points(n, 2 + static_cast<Index>(seed % 3), 300 + seed);
    const Matrix truth = pairwise_distances(points);
    DistanceOracle oracle(points);
    ActiveParams params;
    params.k = 2 + static_cast<int>(seed % 3);
    params.s = static_cast<int>(seed % 2);
    params.seed = seed;
    const ActiveResult result = active_kmedoids(oracle, params);

    CHECK(upper_bound_valid(result.book, truth, 1e-9));
    CHECK(result.book.finite_count() == pair_count(n));  // coverage
    CHECK(result.asked_pairs == oracle.ledger().asked_count());
    if (n > 2 * params.resolved_leaf_threshold() + 1) CHECK(result.asked_ratio < 1.0);
  }
}

TEST_CASE("deterministic under the seed") {
  const Matrix points = akmtest::random_points(90, 3, 8);
  for (const bool shuffle : {false, true}) {
    ActiveParams params;
    params.k = 3;
    params.seed = 1234;
    params.shuffle_order = shuffle;
    DistanceOracle a(points), b(points);
    const ActiveResult ra = active_kmedoids(a, params);
    const ActiveResult rb = active_kmedoids(b, params);
    CHECK(ra.clustering.assignment == rb.clustering.assignment);
    CHECK(ra.clustering.medoids == rb.clustering.medoids);
    CHECK(ra.clustering.objective == rb.clustering.objective);
    CHECK(ra.asked_pairs == rb.asked_pairs);
  }
}

TEST_CASE("shuffled partition keeps the book sound and covered") {
  const Matrix points = akmtest::random_points(70, 3, 81);
  DistanceOracle oracle(points);
  ActiveParams params;
  params.k = 3;
  params.seed = 5;
  params.shuffle_order = true;
  const ActiveResult result = active_kmedoids(oracle, params);
  CHECK(upper_bound_valid(result.book, pairwise_distances(points), 1e-9));
  CHECK(result.book.finite_count() == pair_count(70));
}

TEST_CASE("tighten_within_group relaxes pairs to known-edge shortest paths") {
  // Chain 0-1-2-3 of exact edges; the 0-3 estimate starts loose.
  DistanceBook book(4);
  book.set_exact(0, 1, 1.0);
  book.set_exact(1, 2, 2.0);
  book.set_exact(2, 3, 1.5);
  book.relax_upper(0, 3, 50.0);
  tighten_within_group(book, {0, 1, 2, 3});
  CHECK(book.value(0, 3) == 4.5);
  CHECK(book.value(0, 2) == 3.0);
  CHECK(book.status(0, 3) == DistStatus::Estimate);
  CHECK(book.value(0, 1) == 1.0);  // exact entries untouched
  CHECK(book.status(0, 1) == DistStatus::Exact);

  SUBCASE("restricted to the given members") {
    DistanceBook partial(4);
    partial.set_exact(0, 1, 1.0);
    partial.set_exact(1, 2, 2.0);
    partial.set_exact(2, 3, 1.5);
    tighten_within_group(partial, {0, 1, 3});  // node without point 2
    CHECK(partial.value(0, 3) == kInfinity);   // no path inside the member set
    CHECK(partial.value(0, 1) == 1.0);
  }
}

#ifdef AKM_TEST_DATA_DIR
TEST_CASE("query-ratio prediction is within 3x of the measured iris ratio") {
  const std::filesystem::path iris_path = std::filesystem::path(AKM_TEST_DATA_DIR) / "iris.csv";
  REQUIRE_MESSAGE(std::filesystem::exists(iris_path),
                  "iris.csv missing; run scripts/get_datasets.py --out-dir <builddir>/data");
  const Dataset iris = load_csv(iris_path, -1);
  DistanceOracle oracle(iris.points);
  ActiveParams params;
  params.k = 3;
  params.s = 1;
  params.leaf_threshold = 6;
  active_kmedoids(oracle, params);
  const double measured = oracle.asked_ratio();
  const double predicted = predict_query_ratio(150, 3, 2, 1, 6);
  CHECK(measured <= 0.12);
  CHECK(predicted <= 3.0 * measured);
  CHECK(measured <= 3.0 * predicted);
}
#endif

TEST_CASE("parameter validation") {
  DistanceOracle oracle(akmtest::random_points(10, 2, 1));
  ActiveParams params;
  params.k = 11;
  CHECK_THROWS_AS(active_kmedoids(oracle, params), std::invalid_argument);
  params.k = 2;
  params.b = 1;
  CHECK_THROWS_AS(active_kmedoids(oracle, params), std::invalid_argument);
  params.b = 2;
  params.s = 2;
  params.leaf_threshold = 3;  // below k(s+1) = 6
  CHECK_THROWS_AS(active_kmedoids(oracle, params), std::invalid_argument);
  params.leaf_threshold = 0;  // resolves to 6
  CHECK(params.resolved_leaf_threshold() == 6);
  CHECK_NOTHROW(active_kmedoids(oracle, params));
}

}  // TEST_SUITE
