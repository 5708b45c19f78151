#include "seedtrace/oracle.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "seedtrace/errors.hpp"

namespace seedtrace::oracle {

namespace {

void check_small(std::size_t n) {
  if (n > kMaxOracleVertices) {
    throw ParameterError("brute-force oracle supports at most " +
                         std::to_string(kMaxOracleVertices) + " vertices, got " +
                         std::to_string(n));
  }
}

// Shape string of a rooted tree given as parent pointers.
std::string string_from_parents(const std::vector<Vertex>& parent, Vertex root,
                                const std::vector<std::uint32_t>& colors) {
  const std::size_t n = parent.size();
  std::vector<std::vector<Vertex>> children(n);
  for (Vertex v = 0; v < n; ++v) {
    if (parent[v] != kNoVertex) children[parent[v]].push_back(v);
  }
  std::vector<Vertex> order{root};
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex c : children[order[i]]) order.push_back(c);
  }
  std::vector<std::string> form(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    std::vector<std::string> parts;
    for (Vertex c : children[*it]) parts.push_back(std::move(form[c]));
    std::sort(parts.begin(), parts.end());
    std::string s = "(";
    if (!colors.empty()) s += std::to_string(colors[*it]);
    for (auto& p : parts) s += p;
    s += ")";
    form[*it] = std::move(s);
  }
  return form[root];
}

std::vector<Vertex> parents_toward(const Tree& t, Vertex root) {
  std::vector<Vertex> parent(t.size(), kNoVertex);
  std::vector<char> seen(t.size(), 0);
  std::vector<Vertex> queue{root};
  seen[root] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    for (Vertex w : t.neighbors(queue[i])) {
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = queue[i];
        queue.push_back(w);
      }
    }
  }
  return parent;
}

}  // namespace

std::string rooted_shape_string(const Tree& t, Vertex root,
                                const std::vector<std::uint32_t>& colors) {
  return string_from_parents(parents_toward(t, root), root, colors);
}

std::string free_shape_string(const Tree& t) {
  std::string best;
  for (Vertex v = 0; v < t.size(); ++v) {
    auto s = rooted_shape_string(t, v);
    if (v == 0 || s < best) best = std::move(s);
  }
  return best;
}

Rational rooted_shape_probability(const Tree& t, Vertex root) {
  const std::size_t n = t.size();
  check_small(n);
  const std::string target = rooted_shape_string(t, root);
  std::int64_t hits = 0;
  std::int64_t total = 0;
  for_each_history(n, [&](const std::vector<Vertex>& parent) {
    ++total;
    if (string_from_parents(parent, 0, {}) == target) ++hits;
  });
  return {hits, total};
}

std::size_t isomorphic_rootings(const Tree& t, Vertex root) {
  const std::string target = rooted_shape_string(t, root);
  std::size_t count = 0;
  for (Vertex v = 0; v < t.size(); ++v) count += rooted_shape_string(t, v) == target ? 1 : 0;
  return count;
}

Rational brute_force_shape_probability(const Tree& t, Vertex root) {
  return rooted_shape_probability(t, root) /
         Rational(static_cast<std::int64_t>(isomorphic_rootings(t, root)));
}

Rational brute_force_seed_probability(const Tree& t, const SeedPlacement& placement) {
  const std::size_t n = t.size();
  const std::size_t k = placement.k();
  check_small(n);

  // Target: t with seed vertex i colored i + 1, rooted at the first seed vertex.
  std::vector<std::uint32_t> target_colors(n, 0);
  std::vector<Vertex> local(n, kNoVertex);
  for (std::size_t i = 0; i < k; ++i) {
    target_colors[placement.vertices[i]] = static_cast<std::uint32_t>(i + 1);
    local[placement.vertices[i]] = static_cast<Vertex>(i);
  }
  const std::string target = rooted_shape_string(t, placement.vertices.front(), target_colors);

  // The seed on ids 0..k-1, as edges among the placement.
  std::vector<Edge> seed_edges;
  for (Vertex v : placement.vertices) {
    for (Vertex w : t.neighbors(v)) {
      if (local[w] != kNoVertex && v < w) seed_edges.emplace_back(local[v], local[w]);
    }
  }
  if (seed_edges.size() + 1 != k) throw InputError("placement does not induce a tree");

  std::vector<std::uint32_t> colors(n, 0);
  for (std::size_t i = 0; i < k; ++i) colors[i] = static_cast<std::uint32_t>(i + 1);

  std::vector<Vertex> attach(n, 0);  // attach[i] for i >= k
  std::int64_t hits = 0;
  std::int64_t total = 0;
  while (true) {
    ++total;
    std::vector<Edge> edges = seed_edges;
    for (std::size_t i = k; i < n; ++i) edges.emplace_back(static_cast<Vertex>(i), attach[i]);
    const Tree grown = Tree::from_edges(edges, n);
    if (rooted_shape_string(grown, 0, colors) == target) ++hits;

    std::size_t i = n;
    while (i > k && attach[i - 1] + 1 >= i - 1) {
      attach[i - 1] = 0;
      --i;
    }
    if (i == k) break;
    ++attach[i - 1];
  }
  return {hits, total};
}

std::vector<Tree> rooted_shapes(std::size_t n) {
  check_small(n);
  std::set<std::string> seen;
  std::vector<Tree> out;
  for_each_history(n, [&](const std::vector<Vertex>& parent) {
    if (seen.insert(string_from_parents(parent, 0, {})).second) {
      out.push_back(Tree::from_parents(parent));
    }
  });
  return out;
}

std::vector<Tree> free_trees(std::size_t n) {
  std::set<std::string> seen;
  std::vector<Tree> out;
  for (const Tree& t : rooted_shapes(n)) {
    if (seen.insert(free_shape_string(t)).second) out.push_back(t);
  }
  return out;
}

}  // namespace seedtrace::oracle
