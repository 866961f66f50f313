#pragma once

#include <cstdint>
#include <vector>

namespace magnn {

/// Maximum bipartite matching (Hopcroft-Karp). `adjacency[l]` lists the
/// right vertices in [0, right_count) adjacent to left vertex l. Returns the
/// matching size; `match_of_left`, when given, receives each left vertex's
/// partner or -1.
std::size_t max_bipartite_matching(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   std::size_t right_count,
                                   std::vector<int>* match_of_left = nullptr);

}  // namespace magnn
