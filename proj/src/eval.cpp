#include "akm/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace akm {

const char* to_string(NmiVariant variant) {
  switch (variant) {
    case NmiVariant::Sqrt:
      return "sqrt";
    case NmiVariant::Max:
      return "max";
    case NmiVariant::Arithmetic:
      return "arithmetic";
  }
  return "?";
}

NmiVariant nmi_variant_from_string(const std::string& name) {
  if (name == "sqrt") return NmiVariant::Sqrt;
  if (name == "max") return NmiVariant::Max;
  if (name == "arithmetic") return NmiVariant::Arithmetic;
  throw std::invalid_argument("unknown NMI variant: " + name);
}

namespace {

// Relabels to 0,1,2,... in order of first appearance. Any permutation of the
// input alphabet canonicalizes to the same vector.
std::vector<int> canonical_labels(std::span<const int> labels) {
  std::vector<int> out(labels.size());
  std::unordered_map<int, int> ids;
  ids.reserve(labels.size());
  int next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], next);
    if (inserted) ++next;
    out[i] = it->second;
  }
  return out;
}

// Entropy of a partition given its cluster sizes, as sum (c/n)(ln n - ln c).
double entropy(const std::vector<std::int64_t>& sizes, double n, double log_n) {
  double h = 0.0;
  for (std::int64_t c : sizes)
    h += (static_cast<double>(c) / n) * (log_n - std::log(static_cast<double>(c)));
  return h;
}

}  // namespace

double nmi(std::span<const int> a, std::span<const int> b, NmiVariant variant) {
  if (a.size() != b.size()) throw std::invalid_argument("nmi: label vectors differ in length");
  if (a.empty()) throw std::invalid_argument("nmi: empty input");

  std::vector<int> ca = canonical_labels(a);
  std::vector<int> cb = canonical_labels(b);
  if (std::lexicographical_compare(cb.begin(), cb.end(), ca.begin(), ca.end())) std::swap(ca, cb);

  const std::size_t n_points = ca.size();
  const int ka = 1 + *std::max_element(ca.begin(), ca.end());
  const int kb = 1 + *std::max_element(cb.begin(), cb.end());

  std::vector<std::int64_t> count_a(static_cast<std::size_t>(ka), 0);
  std::vector<std::int64_t> count_b(static_cast<std::size_t>(kb), 0);
  for (std::size_t i = 0; i < n_points; ++i) {
    ++count_a[static_cast<std::size_t>(ca[i])];
    ++count_b[static_cast<std::size_t>(cb[i])];
  }

  // Contingency cells as sorted runs of (label_a, label_b) pairs.
  std::vector<std::pair<int, int>> cells(n_points);
  for (std::size_t i = 0; i < n_points; ++i) cells[i] = {ca[i], cb[i]};
  std::sort(cells.begin(), cells.end());

  const double n = static_cast<double>(n_points);
  const double log_n = std::log(n);
  const double ha = entropy(count_a, n, log_n);
  const double hb = entropy(count_b, n, log_n);

  if (ha == 0.0 && hb == 0.0) return 1.0;
  if (ha == 0.0 || hb == 0.0) return 0.0;

  double mutual = 0.0;
  for (std::size_t i = 0; i < cells.size();) {
    std::size_t j = i;
    while (j < cells.size() && cells[j] == cells[i]) ++j;
    const double nij = static_cast<double>(j - i);
    const double ni = static_cast<double>(count_a[static_cast<std::size_t>(cells[i].first)]);
    const double nj = static_cast<double>(count_b[static_cast<std::size_t>(cells[i].second)]);
    // Grouped so that diagonal cells of identical partitions reproduce the
    // entropy terms bit for bit, making nmi(a, a) exactly 1.
    mutual += (nij / n) * ((log_n - std::log(ni)) + (std::log(nij) - std::log(nj)));
    i = j;
  }

  double denom = 0.0;
  switch (variant) {
    case NmiVariant::Sqrt:
      denom = ha == hb ? ha : std::sqrt(ha * hb);
      break;
    case NmiVariant::Max:
      denom = std::max(ha, hb);
      break;
    case NmiVariant::Arithmetic:
      denom = 0.5 * (ha + hb);
      break;
  }
  return mutual / denom;
}

}  // namespace akm
