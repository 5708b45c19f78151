#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace seedtrace {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;

inline constexpr Vertex kNoVertex = static_cast<Vertex>(-1);

/// Immutable undirected tree on the dense vertex ids 0..n-1.
///
/// Adjacency is stored in compressed-row form with every neighbor list
/// sorted ascending. Construction validates the tree invariants; every
/// Tree object in existence is therefore connected, acyclic and simple.
class Tree {
 public:
  /// Single vertex.
  Tree();

  /// Validates and builds. Throws TreeError naming the first violated
  /// invariant (out-of-range id, self-loop, duplicate edge, cycle,
  /// disconnected input).
  static Tree from_edges(std::span<const Edge> edges, std::size_t n);

  /// Builds from a parent array (parent[root] == kNoVertex). Used on trusted
  /// generator output; checks only that exactly one root exists and that
  /// every parent id is in range and the result is connected.
  static Tree from_parents(std::span<const Vertex> parent);

  std::size_t size() const { return offsets_.size() - 1; }
  std::size_t edge_count() const { return size() - 1; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }
  bool adjacent(Vertex u, Vertex v) const;

  /// Edges (u, v) with u < v, sorted.
  std::vector<Edge> edges() const;

  /// Tree with vertex v renamed to perm[v].
  Tree relabeled(std::span<const Vertex> perm) const;

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  Tree(std::vector<std::size_t> offsets, std::vector<Vertex> adjacency)
      : offsets_(std::move(offsets)), adjacency_(std::move(adjacency)) {}

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
};

/// Same as Tree::from_edges; the name used throughout the CLI and bindings.
inline Tree build_tree(std::span<const Edge> edges, std::size_t n) {
  return Tree::from_edges(edges, n);
}

/// Parent pointers and a preorder of `t` rooted at `root`. The preorder
/// lists every parent before its children, so reverse iteration is a valid
/// bottom-up schedule.
struct Rooting {
  Vertex root = 0;
  std::vector<Vertex> parent;  // parent[root] == kNoVertex
  std::vector<Vertex> order;
};

Rooting root_at(const Tree& t, Vertex root);

/// size[v] = |(T, root)_{v↓}|, the number of vertices in v's subtree when
/// the tree hangs from `root`.
std::vector<std::uint32_t> subtree_sizes(const Tree& t, Vertex root);
std::vector<std::uint32_t> subtree_sizes(const Rooting& r);

/// A connected vertex subset of a host tree together with the leaves of the
/// subtree it induces. A single vertex counts as its own leaf.
struct SeedPlacement {
  std::vector<Vertex> vertices;  // sorted
  std::vector<Vertex> leaves;    // sorted

  /// Validates connectivity in `t` and derives the leaves.
  static SeedPlacement in(const Tree& t, std::span<const Vertex> vertices);

  std::size_t k() const { return vertices.size(); }
  std::size_t ell() const { return leaves.size(); }
  /// Vertices that are not leaves of the induced subtree (the skeleton).
  std::vector<Vertex> skeleton() const;
  bool contains(Vertex v) const;
};

/// Hanging-subtree decomposition of a tree around a connected anchor set S.
struct HangingSizes {
  /// For an anchor u: |(T, S)_{u↓}|. For any other vertex v: the size of the
  /// subtree of v facing away from S.
  std::vector<std::uint32_t> size;
  /// The anchor whose hanging subtree contains v.
  std::vector<Vertex> owner;
  /// Parent of v in the forest hanging off S (kNoVertex for anchors).
  std::vector<Vertex> parent;
  /// Anchors first, then every other vertex after its parent.
  std::vector<Vertex> order;
};

/// Throws InputError when the anchor set is empty, out of range or does not
/// induce a connected subgraph.
HangingSizes hanging_sizes(const Tree& t, std::span<const Vertex> anchors);

enum class Direction { kAscending, kDescending };

struct Member {
  Vertex vertex;
  double score;
  friend bool operator==(const Member&, const Member&) = default;
};

/// Ordered output of every estimator.
struct ConfidenceSet {
  std::vector<Member> members;
  std::size_t target_size = 0;

  std::size_t size() const { return members.size(); }
  bool empty() const { return members.empty(); }
  bool contains(Vertex v) const;
  std::vector<Vertex> vertices() const;
};

using Eligibility = std::function<bool(Vertex)>;

/// The K best eligible vertices under the total order (score, vertex id),
/// scores ascending or descending, ids always ascending. When `resolution`
/// is positive, scores are first snapped to a grid of that spacing, so values
/// closer than floating-point noise tie and fall back to the id.
ConfidenceSet top_k(std::span<const double> scores, std::size_t K, Direction direction,
                    const Eligibility& eligible = {}, double resolution = 0.0);

}  // namespace seedtrace
