#pragma once

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "seedtrace/rng.hpp"
#include "seedtrace/tree.hpp"

namespace testutil {

using seedtrace::Edge;
using seedtrace::Tree;
using seedtrace::Vertex;

inline Tree make(std::size_t n, std::vector<Edge> edges) { return Tree::from_edges(edges, n); }

inline Tree path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(i - 1, i);
  return make(n, e);
}

inline Tree star(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 1; i < n; ++i) e.emplace_back(0, i);
  return make(n, e);
}

// Uniform labeled tree from a random Pruefer sequence.
inline Tree random_tree(std::size_t n, seedtrace::Rng& rng) {
  if (n == 1) return Tree();
  if (n == 2) return make(2, {{0, 1}});
  std::vector<Vertex> code(n - 2);
  for (auto& c : code) c = static_cast<Vertex>(rng.below(n));
  std::vector<std::size_t> deg(n, 1);
  for (Vertex c : code) ++deg[c];
  std::priority_queue<Vertex, std::vector<Vertex>, std::greater<>> leaves;
  for (Vertex v = 0; v < n; ++v)
    if (deg[v] == 1) leaves.push(v);
  std::vector<Edge> e;
  for (Vertex c : code) {
    const Vertex leaf = leaves.top();
    leaves.pop();
    e.emplace_back(leaf, c);
    if (--deg[c] == 1) leaves.push(c);
  }
  const Vertex a = leaves.top();
  leaves.pop();
  e.emplace_back(a, leaves.top());
  return make(n, e);
}

inline std::vector<Vertex> random_permutation(std::size_t n, seedtrace::Rng& rng) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  for (std::size_t i = n; i > 1; --i) std::swap(p[i - 1], p[rng.below(i)]);
  return p;
}

// Sizes of the components of T - removed, by BFS.
inline std::vector<std::size_t> components_without(const Tree& t, Vertex removed) {
  std::vector<char> seen(t.size(), 0);
  seen[removed] = 1;
  std::vector<std::size_t> sizes;
  for (Vertex s = 0; s < t.size(); ++s) {
    if (seen[s]) continue;
    std::size_t count = 0;
    std::vector<Vertex> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      ++count;
      for (Vertex w : t.neighbors(v))
        if (!seen[w]) seen[w] = 1, stack.push_back(w);
    }
    sizes.push_back(count);
  }
  return sizes;
}

// Size of the component containing v in T - u (u adjacent to v).
inline std::size_t side_size(const Tree& t, Vertex u, Vertex v) {
  std::vector<char> seen(t.size(), 0);
  seen[u] = seen[v] = 1;
  std::vector<Vertex> stack{v};
  std::size_t count = 0;
  while (!stack.empty()) {
    const Vertex x = stack.back();
    stack.pop_back();
    ++count;
    for (Vertex w : t.neighbors(x))
      if (!seen[w]) seen[w] = 1, stack.push_back(w);
  }
  return count;
}

}  // namespace testutil
