#pragma once

// Slow, independent reference implementations used to cross-check the fast
// paths. Nothing here calls into the code it is meant to check.

#include <pmx/matrix.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace pmx::oracle {

// All increasing k-subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> subsets(int n, int k);

// Lexicographically least (rows, then columns) pair of increasing injections
// carrying every 1 of the pattern onto a 1 of the host.
std::optional<Embedding> injection_search(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern);

// Maps strictly increasing, in range, and every 1 lands on a 1.
bool embedding_ok(const ZeroOneMatrix & host, const ZeroOneMatrix & pattern, const Embedding & e);

// Pairs (u rows, t columns) whose induced submatrix is all ones, by direct
// enumeration of both subsets.
std::uint64_t count_all_ones(const ZeroOneMatrix & m, int u, int t);

// Whether the 1-based sorted edge e is cut by 1-based cut points over [n].
bool cuts(const std::vector<int> & e, const std::vector<int> & points, int n);

bool balanced(const ZeroOneMatrix & m, int r);

} // namespace pmx::oracle
