#include "seedtrace/tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "seedtrace/errors.hpp"

namespace seedtrace {

const char* to_string(TreeErrorKind kind) {
  switch (kind) {
    case TreeErrorKind::kEmpty: return "empty";
    case TreeErrorKind::kOutOfRange: return "out-of-range";
    case TreeErrorKind::kSelfLoop: return "self-loop";
    case TreeErrorKind::kDuplicateEdge: return "duplicate-edge";
    case TreeErrorKind::kCycle: return "cycle";
    case TreeErrorKind::kDisconnected: return "disconnected";
    case TreeErrorKind::kParse: return "parse";
  }
  return "unknown";
}

TreeError::TreeError(TreeErrorKind kind, const std::string& what,
                     std::optional<std::size_t> line)
    : InputError(line ? "line " + std::to_string(*line) + ": " + what : what),
      kind_(kind),
      line_(line) {}

namespace {

// Number of vertices reachable from 0, ignoring any vertex past n.
std::size_t reachable_from_zero(const std::vector<std::size_t>& offsets,
                                const std::vector<Vertex>& adjacency) {
  const std::size_t n = offsets.size() - 1;
  std::vector<char> seen(n, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (std::size_t i = offsets[v]; i < offsets[v + 1]; ++i) {
      const Vertex w = adjacency[i];
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count;
}

}  // namespace

Tree::Tree() : offsets_{0, 0} {}

Tree Tree::from_edges(std::span<const Edge> edges, std::size_t n) {
  if (n == 0) throw TreeError(TreeErrorKind::kEmpty, "tree must have at least one vertex");
  if (n - 1 > std::numeric_limits<Vertex>::max() - 1) {
    throw TreeError(TreeErrorKind::kOutOfRange, "vertex count exceeds 32-bit ids");
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    if (u >= n || v >= n) {
      throw TreeError(TreeErrorKind::kOutOfRange,
                      "edge " + std::to_string(i) + " (" + std::to_string(u) + "," +
                          std::to_string(v) + ") has an id outside [0, " +
                          std::to_string(n) + ")");
    }
    if (u == v) {
      throw TreeError(TreeErrorKind::kSelfLoop,
                      "edge " + std::to_string(i) + " is a self-loop at " + std::to_string(u));
    }
  }
  if (edges.size() < n - 1) {
    throw TreeError(TreeErrorKind::kDisconnected,
                    "disconnected: " + std::to_string(edges.size()) + " edges for " +
                        std::to_string(n) + " vertices (need " + std::to_string(n - 1) + ")");
  }

  std::vector<std::size_t> offsets(n + 1, 0);
  for (const auto& [u, v] : edges) {
    ++offsets[u + 1];
    ++offsets[v + 1];
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Vertex> adjacency(offsets.back());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& [u, v] : edges) {
    adjacency[cursor[u]++] = v;
    adjacency[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
    auto last = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw TreeError(TreeErrorKind::kDuplicateEdge, "duplicate edge (" + std::to_string(v) +
                                                         "," + std::to_string(*dup) + ")");
    }
  }
  if (edges.size() > n - 1) {
    throw TreeError(TreeErrorKind::kCycle,
                    "cycle: " + std::to_string(edges.size()) + " edges for " +
                        std::to_string(n) + " vertices (need " + std::to_string(n - 1) + ")");
  }
  // n - 1 simple edges: connected iff acyclic.
  if (const auto reached = reachable_from_zero(offsets, adjacency); reached != n) {
    throw TreeError(TreeErrorKind::kDisconnected,
                    "disconnected: only " + std::to_string(reached) + " of " +
                        std::to_string(n) + " vertices reachable from 0 (input contains a cycle)");
  }
  return Tree(std::move(offsets), std::move(adjacency));
}

Tree Tree::from_parents(std::span<const Vertex> parent) {
  const std::size_t n = parent.size();
  if (n == 0) throw TreeError(TreeErrorKind::kEmpty, "tree must have at least one vertex");
  std::vector<Edge> edges;
  edges.reserve(n - 1);
  for (std::size_t v = 0; v < n; ++v) {
    if (parent[v] == kNoVertex) continue;
    edges.emplace_back(static_cast<Vertex>(v), parent[v]);
  }
  return from_edges(edges, n);
}

bool Tree::adjacent(Vertex u, Vertex v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Tree::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (Vertex u = 0; u < size(); ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

Tree Tree::relabeled(std::span<const Vertex> perm) const {
  const std::size_t n = size();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) offsets[perm[v] + 1] = degree(v);
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  std::vector<Vertex> adjacency(adjacency_.size());
  for (Vertex v = 0; v < n; ++v) {
    auto out = adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[perm[v]]);
    for (Vertex w : neighbors(v)) *out++ = perm[w];
    std::sort(adjacency.begin() + static_cast<std::ptrdiff_t>(offsets[perm[v]]), out);
  }
  return Tree(std::move(offsets), std::move(adjacency));
}

Rooting root_at(const Tree& t, Vertex root) {
  const std::size_t n = t.size();
  if (root >= n) throw ParameterError("root " + std::to_string(root) + " out of range");
  Rooting r;
  r.root = root;
  r.parent.assign(n, kNoVertex);
  r.order.reserve(n);
  std::vector<Vertex> stack{root};
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    r.order.push_back(v);
    const auto nb = t.neighbors(v);
    // Reverse push keeps the preorder visiting neighbors in ascending id.
    for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
      if (*it != r.parent[v]) {
        r.parent[*it] = v;
        stack.push_back(*it);
      }
    }
  }
  return r;
}

std::vector<std::uint32_t> subtree_sizes(const Rooting& r) {
  std::vector<std::uint32_t> size(r.parent.size(), 1);
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    if (r.parent[*it] != kNoVertex) size[r.parent[*it]] += size[*it];
  }
  return size;
}

std::vector<std::uint32_t> subtree_sizes(const Tree& t, Vertex root) {
  return subtree_sizes(root_at(t, root));
}

SeedPlacement SeedPlacement::in(const Tree& t, std::span<const Vertex> vertices) {
  SeedPlacement p;
  p.vertices.assign(vertices.begin(), vertices.end());
  std::sort(p.vertices.begin(), p.vertices.end());
  if (p.vertices.empty()) throw InputError("seed placement is empty");
  if (std::adjacent_find(p.vertices.begin(), p.vertices.end()) != p.vertices.end()) {
    throw InputError("seed placement lists a vertex twice");
  }
  if (p.vertices.back() >= t.size()) {
    throw InputError("seed placement vertex " + std::to_string(p.vertices.back()) +
                     " out of range");
  }
  // Validates connectivity; the induced degrees follow from the adjacency.
  hanging_sizes(t, p.vertices);
  if (p.vertices.size() == 1) {
    p.leaves = p.vertices;
    return p;
  }
  for (Vertex v : p.vertices) {
    std::size_t inside = 0;
    for (Vertex w : t.neighbors(v)) inside += p.contains(w) ? 1 : 0;
    if (inside == 1) p.leaves.push_back(v);
  }
  return p;
}

std::vector<Vertex> SeedPlacement::skeleton() const {
  std::vector<Vertex> out;
  std::set_difference(vertices.begin(), vertices.end(), leaves.begin(), leaves.end(),
                      std::back_inserter(out));
  return out;
}

bool SeedPlacement::contains(Vertex v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

HangingSizes hanging_sizes(const Tree& t, std::span<const Vertex> anchors) {
  const std::size_t n = t.size();
  if (anchors.empty()) throw InputError("anchor set is empty");
  std::vector<char> is_anchor(n, 0);
  for (Vertex a : anchors) {
    if (a >= n) throw InputError("anchor " + std::to_string(a) + " out of range");
    is_anchor[a] = 1;
  }

  // Connectivity of the induced subgraph.
  {
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack{anchors.front()};
    seen[anchors.front()] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : t.neighbors(v)) {
        if (is_anchor[w] && !seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
      }
    }
    const auto distinct = static_cast<std::size_t>(std::count(is_anchor.begin(), is_anchor.end(), 1));
    if (reached != distinct) throw InputError("anchor set does not induce a connected subtree");
  }

  HangingSizes h;
  h.size.assign(n, 1);
  h.owner.assign(n, kNoVertex);
  h.parent.assign(n, kNoVertex);
  h.order.reserve(n);
  for (Vertex a : anchors) {
    if (h.owner[a] == kNoVertex) {
      h.owner[a] = a;
      h.order.push_back(a);
    }
  }
  for (std::size_t head = 0; head < h.order.size(); ++head) {
    const Vertex v = h.order[head];
    for (Vertex w : t.neighbors(v)) {
      if (is_anchor[w] || w == h.parent[v]) continue;
      h.parent[w] = v;
      h.owner[w] = h.owner[v];
      h.order.push_back(w);
    }
  }
  for (auto it = h.order.rbegin(); it != h.order.rend(); ++it) {
    if (h.parent[*it] != kNoVertex) h.size[h.parent[*it]] += h.size[*it];
  }
  return h;
}

bool ConfidenceSet::contains(Vertex v) const {
  return std::any_of(members.begin(), members.end(),
                     [v](const Member& m) { return m.vertex == v; });
}

std::vector<Vertex> ConfidenceSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.vertex);
  return out;
}

ConfidenceSet top_k(std::span<const double> scores, std::size_t K, Direction direction,
                    const Eligibility& eligible, double resolution) {
  ConfidenceSet out;
  out.target_size = K;
  if (K == 0) return out;

  struct Keyed {
    double key;
    Vertex vertex;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(scores.size());
  const double sign = direction == Direction::kAscending ? 1.0 : -1.0;
  for (Vertex v = 0; v < scores.size(); ++v) {
    if (eligible && !eligible(v)) continue;
    double key = sign * scores[v];
    if (resolution > 0.0) key = std::nearbyint(key / resolution);
    keyed.push_back({key, v});
  }
  const auto less = [](const Keyed& a, const Keyed& b) {
    return a.key != b.key ? a.key < b.key : a.vertex < b.vertex;
  };
  const std::size_t take = std::min(K, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(take), keyed.end(),
                    less);
  out.members.reserve(take);
  for (std::size_t i = 0; i < take; ++i) {
    out.members.push_back({keyed[i].vertex, scores[keyed[i].vertex]});
  }
  return out;
}

}  // namespace seedtrace
