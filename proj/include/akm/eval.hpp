#pragma once

#include "akm/types.hpp"

#include <span>
#include <string>

namespace akm {

enum class NmiVariant { Sqrt, Max, Arithmetic };

const char* to_string(NmiVariant variant);
NmiVariant nmi_variant_from_string(const std::string& name);

/// Normalized mutual information between two labelings of the same points,
/// in [0, 1]. Labels may come from any integer alphabet. Both inputs are
/// relabeled to first-appearance order before counting, which makes the
/// result exactly invariant under label permutations; the two inputs are
/// ordered canonically so nmi(a, b) == nmi(b, a) bit for bit.
///
/// Degenerate partitions: 1 when both entropies are zero, 0 when exactly one
/// is. Throws on length mismatch or empty input.
double nmi(std::span<const int> a, std::span<const int> b, NmiVariant variant = NmiVariant::Sqrt);

}  // namespace akm
