#include "magnn/matching.hpp"

#include <limits>
#include <queue>

namespace magnn {

namespace {

constexpr int kInf = std::numeric_limits<int>::max();

struct HopcroftKarp {
  const std::vector<std::vector<std::uint32_t>>& adj;
  std::vector<int> left_match;
  std::vector<int> right_match;
  std::vector<int> dist;

  HopcroftKarp(const std::vector<std::vector<std::uint32_t>>& a, std::size_t right)
      : adj(a), left_match(a.size(), -1), right_match(right, -1), dist(a.size()) {}

  // Layers free left vertices at distance 0; true iff an augmenting path exists.
  bool bfs() {
    std::queue<int> q;
    bool found = false;
    for (std::size_t l = 0; l < adj.size(); ++l) {
      if (left_match[l] < 0) {
        dist[l] = 0;
        q.push(static_cast<int>(l));
      } else {
        dist[l] = kInf;
      }
    }
    while (!q.empty()) {
      int l = q.front();
      q.pop();
      for (std::uint32_t r : adj[l]) {
        int next = right_match[r];
        if (next < 0) {
          found = true;
        } else if (dist[next] == kInf) {
          dist[next] = dist[l] + 1;
          q.push(next);
        }
      }
    }
    return found;
  }

  bool dfs(int l) {
    for (std::uint32_t r : adj[l]) {
      int next = right_match[r];
      if (next < 0 || (dist[next] == dist[l] + 1 && dfs(next))) {
        left_match[l] = static_cast<int>(r);
        right_match[r] = l;
        return true;
      }
    }
    dist[l] = kInf;
    return false;
  }

  std::size_t run() {
    std::size_t size = 0;
    while (bfs())
      for (std::size_t l = 0; l < adj.size(); ++l)
        if (left_match[l] < 0 && dfs(static_cast<int>(l))) ++size;
    return size;
  }
};

}  // namespace

std::size_t max_bipartite_matching(const std::vector<std::vector<std::uint32_t>>& adjacency,
                                   std::size_t right_count, std::vector<int>* match_of_left) {
  HopcroftKarp hk(adjacency, right_count);
  std::size_t size = hk.run();
  if (match_of_left != nullptr) *match_of_left = hk.left_match;
  return size;
}

}  // namespace magnn
