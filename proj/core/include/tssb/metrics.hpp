#pragma once

#include <vector>

namespace tssb {

/// Adjusted Rand index of two labelings of the same items (Hubert-Arabie).
/// Returns 1 when both partitions are identical, including the degenerate
/// single-cluster case. Throws DomainError on a length mismatch or when
/// fewer than two items are given.
[[nodiscard]] double adjusted_rand_index(const std::vector<long> &a,
                                         const std::vector<long> &b);

} // namespace tssb
