#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "seedtrace/tree.hpp"

// Exhaustive reference computations for small trees. Everything here works
// from explicit attachment histories and parenthesized shape strings, and
// shares no code path with the interned canonical codes or the closed-form
// likelihoods it is used to check.
namespace seedtrace::oracle {

using Rational = boost::rational<std::int64_t>;

inline constexpr std::size_t kMaxOracleVertices = 8;

/// Parenthesized AHU string of `t` rooted at `root`, children sorted.
/// When `colors` is non-empty, each vertex's color is written inside its
/// parentheses, making the form invariant only under color-preserving maps.
std::string rooted_shape_string(const Tree& t, Vertex root,
                                const std::vector<std::uint32_t>& colors = {});

/// Lexicographically smallest rooted string over all roots.
std::string free_shape_string(const Tree& t);

/// Pr{(UA(n), u_1) isomorphic to (t, root) as rooted unlabeled trees}, by
/// enumeration of all (n-1)! attachment histories. n <= 8.
Rational rooted_shape_probability(const Tree& t, Vertex root);

/// Number of vertices v with (t, v) isomorphic to (t, root), by string
/// comparison.
std::size_t isomorphic_rootings(const Tree& t, Vertex root);

/// Per-vertex root probability: rooted_shape_probability divided by the
/// number of vertices giving an isomorphic rooting. This is the quantity the
/// rooted likelihood reports.
Rational brute_force_shape_probability(const Tree& t, Vertex root);

/// Probability that the process seeded with the subtree induced by
/// `placement` (seed vertex i identified with placement.vertices[i]) grows
/// into `t` up to relabeling of non-seed vertices, by enumeration of all
/// prod_{i=k}^{n-1} i histories. n <= 8.
Rational brute_force_seed_probability(const Tree& t, const SeedPlacement& placement);

/// One representative (rooted at vertex 0) of every rooted unlabeled tree on
/// n vertices.
std::vector<Tree> rooted_shapes(std::size_t n);

/// One representative of every unrooted unlabeled tree on n vertices.
std::vector<Tree> free_trees(std::size_t n);

/// Calls `visit` with the parent array (parent[0] = kNoVertex) of every
/// attachment history of UA(n).
template <typename Visit>
void for_each_history(std::size_t n, Visit&& visit) {
  std::vector<Vertex> parent(n, 0);
  if (n == 0) return;
  parent[0] = kNoVertex;
  while (true) {
    visit(static_cast<const std::vector<Vertex>&>(parent));
    // Odometer over parent[i] in [0, i); parent[1] is always 0.
    std::size_t i = n - 1;
    while (i >= 1 && parent[i] + 1 >= i) {
      parent[i] = 0;
      --i;
    }
    if (i == 0) return;
    ++parent[i];
  }
}

}  // namespace seedtrace::oracle
