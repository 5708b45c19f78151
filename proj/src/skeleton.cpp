#include "seedtrace/skeleton.hpp"

#include <algorithm>

#include "seedtrace/centrality.hpp"
#include "seedtrace/errors.hpp"

namespace seedtrace {

ConfidenceSet skeleton_leaf_set(const Tree& t, std::span<const Vertex> skeleton, std::size_t K) {
  const HangingSizes h = hanging_sizes(t, skeleton);
  std::vector<double> scores(t.size(), 0.0);
  std::vector<char> frontier(t.size(), 0);
  for (Vertex v = 0; v < t.size(); ++v) {
    scores[v] = h.size[v];
    // N(R): first vertex on the way out of the skeleton.
    if (h.parent[v] != kNoVertex && h.owner[v] == h.parent[v]) frontier[v] = 1;
  }
  return top_k(scores, K, Direction::kDescending, [&](Vertex v) { return frontier[v] != 0; });
}

ConfidenceSet star_recover(const Tree& t, std::size_t k, std::size_t m, std::size_t m_prime) {
  if (k < 2) throw ParameterError("a star seed has at least 2 vertices");
  if (m < 1 || m_prime < 1) throw ParameterError("m and m' must be at least 1");

  const ConfidenceSet centers = psi_set(t, m);
  ConfidenceSet out;
  out.target_size = m * (m_prime + 1);
  std::vector<char> added(t.size(), 0);
  const auto add = [&](const Member& member) {
    if (!added[member.vertex]) {
      added[member.vertex] = 1;
      out.members.push_back(member);
    }
  };
  for (const Member& center : centers.members) {
    add(center);
    const Vertex c = center.vertex;
    for (const Member& leaf : skeleton_leaf_set(t, std::span<const Vertex>(&c, 1), m_prime).members) {
      add(leaf);
    }
  }
  return out;
}

}  // namespace seedtrace
