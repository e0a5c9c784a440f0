#include "akm/eval.hpp"

#include "test_support.hpp"

#include <doctest.h>

#include <random>

using namespace akm;

namespace {

std::vector<int> random_labels(std::size_t n, int alphabet, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, alphabet - 1);
  std::vector<int> labels(n);
  for (int& l : labels) l = pick(rng);
  return labels;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("identical partitions score exactly one") {
  const std::vector<int> a{0, 0, 1, 1, 2, 2, 2};
  CHECK(nmi(a, a) == 1.0);
}

TEST_CASE("label permutations score exactly one") {
  const std::vector<int> a{0, 0, 1, 1, 2};
  const std::vector<int> b{5, 5, 3, 3, 9};  // same partition, other alphabet
  CHECK(nmi(a, b) == 1.0);
}

TEST_CASE("independent partitions score exactly zero") {
  // Uniform 2x2 contingency table: mutual information vanishes.
  const std::vector<int> a{0, 0, 1, 1};
  const std::vector<int> b{0, 1, 0, 1};
  CHECK(nmi(a, b) == 0.0);
}

TEST_CASE("symmetry is bit-exact") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto a = random_labels(40, 4, seed);
    const auto b = random_labels(40, 3, seed + 1000);
    CHECK(nmi(a, b) == nmi(b, a));
  }
}

TEST_CASE("range within numerical slack") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto a = random_labels(25, 5, seed);
    const auto b = random_labels(25, 4, seed + 500);
    const double value = nmi(a, b);
    CHECK(value >= -1e-12);
    CHECK(value <= 1.0 + 1e-12);
  }
}

TEST_CASE("permutation invariance is bit-exact over 1000 relabelings") {
  const auto a = random_labels(60, 5, 42);
  const auto b = random_labels(60, 4, 43);
  const double base = nmi(a, b);
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> perm_a(5), perm_b(4);
    for (int i = 0; i < 5; ++i) perm_a[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < 4; ++i) perm_b[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm_a.begin(), perm_a.end(), rng);
    std::shuffle(perm_b.begin(), perm_b.end(), rng);
    std::vector<int> ra(a.size()), rb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) ra[i] = perm_a[static_cast<std::size_t>(a[i])];
    for (std::size_t i = 0; i < b.size(); ++i) rb[i] = perm_b[static_cast<std::size_t>(b[i])];
    CHECK(nmi(ra, rb) == base);
  }
}

TEST_CASE("agrees with an independent contingency implementation") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto a = random_labels(30, 4, seed);
    const auto b = random_labels(30, 3, seed + 70);
    CHECK(nmi(a, b) == doctest::Approx(akmtest::reference_nmi(a, b)).epsilon(1e-12));
  }
}

TEST_CASE("zero-entropy conventions") {
  const std::vector<int> flat{7, 7, 7, 7};
  const std::vector<int> split{0, 1, 0, 1};
  CHECK(nmi(flat, flat) == 1.0);
  CHECK(nmi(flat, split) == 0.0);
  CHECK(nmi(split, flat) == 0.0);
  CHECK(nmi(std::vector<int>{3}, std::vector<int>{8}) == 1.0);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(nmi(std::vector<int>{0, 1}, std::vector<int>{0}), std::invalid_argument);
  CHECK_THROWS_AS(nmi(std::vector<int>{}, std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("variants stay in range and agree at equal entropies") {
  const auto a = random_labels(50, 3, 9);
  const auto b = random_labels(50, 3, 10);
  const double vs = nmi(a, b, NmiVariant::Sqrt);
  const double vm = nmi(a, b, NmiVariant::Max);
  const double va = nmi(a, b, NmiVariant::Arithmetic);
  CHECK(vm <= vs + 1e-12);  // max-normalized is the most conservative
  CHECK(vm <= va + 1e-12);
  for (double v : {vs, vm, va}) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
  CHECK(nmi_variant_from_string("max") == NmiVariant::Max);
  CHECK_THROWS_AS(nmi_variant_from_string("median"), std::invalid_argument);
}

}  // TEST_SUITE
