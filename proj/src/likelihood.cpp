#include "seedtrace/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seedtrace/centrality.hpp"
#include "seedtrace/errors.hpp"

namespace seedtrace {

namespace {

double log_factorial(std::size_t m) { return std::lgamma(static_cast<double>(m) + 1.0); }

// log of the product of multiplicity factorials of a sorted code sequence.
double log_aut_sorted(std::span<const CodeId> sorted) {
  double total = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i + 1;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    if (j - i > 1) total += log_factorial(j - i);
    i = j;
  }
  return total;
}

std::size_t multiplicity(std::span<const CodeId> sorted, CodeId code) {
  const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), code);
  return static_cast<std::size_t>(hi - lo);
}

struct RootedShape {
  std::vector<std::uint32_t> size;
  std::vector<double> log_aut;
};

RootedShape rooted_shape(const Tree& t, const Rooting& r, CodeTable& table,
                         std::vector<CodeId>* codes_out) {
  const std::size_t n = t.size();
  RootedShape shape{subtree_sizes(r), std::vector<double>(n, 0.0)};
  std::vector<CodeId> code(n, 0);
  std::vector<CodeId> children;
  for (auto it = r.order.rbegin(); it != r.order.rend(); ++it) {
    const Vertex v = *it;
    children.clear();
    for (Vertex w : t.neighbors(v)) {
      if (w != r.parent[v]) children.push_back(code[w]);
    }
    std::sort(children.begin(), children.end());
    shape.log_aut[v] = log_aut_sorted(children);
    code[v] = table.intern(children);
  }
  if (codes_out) *codes_out = std::move(code);
  return shape;
}

}  // namespace

std::size_t CodeTable::Hash::operator()(const std::vector<CodeId>& v) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ v.size();
  for (CodeId c : v) {
    h ^= c + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

CodeId CodeTable::intern(std::vector<CodeId> children) {
  std::sort(children.begin(), children.end());
  const auto next = static_cast<CodeId>(table_.size());
  return table_.try_emplace(std::move(children), next).first->second;
}

std::vector<CodeId> canonical_codes(const Tree& t, Vertex root, CodeTable& table) {
  std::vector<CodeId> codes;
  rooted_shape(t, root_at(t, root), table, &codes);
  return codes;
}

AllRootings all_rootings(const Tree& t) {
  const std::size_t n = t.size();
  AllRootings a;
  a.rooting = root_at(t, 0);
  a.down.assign(n, 0);
  a.up.assign(n, 0);
  a.full.assign(n, 0);
  const auto& parent = a.rooting.parent;

  std::vector<CodeId> scratch;
  for (auto it = a.rooting.order.rbegin(); it != a.rooting.order.rend(); ++it) {
    const Vertex v = *it;
    scratch.clear();
    for (Vertex w : t.neighbors(v)) {
      if (w != parent[v]) scratch.push_back(a.down[w]);
    }
    a.down[v] = a.table.intern(scratch);
  }

  // Top-down: the neighbor multiset of p is its children's down codes plus
  // its own up code; removing one child's down code gives that child's up code.
  a.offsets_.assign(n + 1, 0);
  for (Vertex v = 0; v < n; ++v) a.offsets_[v + 1] = a.offsets_[v] + t.degree(v);
  a.codes_.resize(a.offsets_[n]);
  std::vector<std::pair<CodeId, Vertex>> by_code;
  for (Vertex p : a.rooting.order) {
    by_code.clear();
    auto out = a.codes_.begin() + static_cast<std::ptrdiff_t>(a.offsets_[p]);
    for (Vertex w : t.neighbors(p)) {
      if (w == parent[p]) {
        *out++ = a.up[p];
      } else {
        *out++ = a.down[w];
        by_code.emplace_back(a.down[w], w);
      }
    }
    std::sort(a.codes_.begin() + static_cast<std::ptrdiff_t>(a.offsets_[p]), out);
    const auto multiset = a.neighbor_codes(p);
    a.full[p] = a.table.intern({multiset.begin(), multiset.end()});
    std::sort(by_code.begin(), by_code.end());
    for (std::size_t i = 0; i < by_code.size();) {
      const CodeId code = by_code[i].first;
      scratch.assign(multiset.begin(), multiset.end());
      scratch.erase(std::lower_bound(scratch.begin(), scratch.end(), code));
      const CodeId up_code = a.table.intern(scratch);
      for (; i < by_code.size() && by_code[i].first == code; ++i) a.up[by_code[i].second] = up_code;
    }
  }
  return a;
}

std::size_t aut_bar(const Tree& t, Vertex u) {
  if (u >= t.size()) throw ParameterError("vertex " + std::to_string(u) + " out of range");
  const AllRootings a = all_rootings(t);
  return static_cast<std::size_t>(std::count(a.full.begin(), a.full.end(), a.full[u]));
}

std::vector<double> log_aut(const Tree& t, Vertex root) {
  CodeTable table;
  return rooted_shape(t, root_at(t, root), table, nullptr).log_aut;
}

double log_likelihood_rooted(const Tree& t, Vertex u) {
  const std::size_t n = t.size();
  if (u >= n) throw ParameterError("vertex " + std::to_string(u) + " out of range");
  if (n == 1) return 0.0;
  CodeTable table;
  const RootedShape shape = rooted_shape(t, root_at(t, u), table, nullptr);
  double value = std::log(static_cast<double>(n)) - std::log(static_cast<double>(aut_bar(t, u)));
  for (Vertex v = 0; v < n; ++v) {
    value -= std::log(static_cast<double>(shape.size[v])) + shape.log_aut[v];
  }
  return value;
}

std::vector<double> log_likelihood_all_roots(const Tree& t) {
  const std::size_t n = t.size();
  if (n == 1) return {0.0};
  const AllRootings a = all_rootings(t);
  const auto& parent = a.rooting.parent;
  const auto log_phi = phi_log_all(t);

  // aut_sum[u] = sum_v log Aut(v, (T, u)). Rerooting across edge (p, c)
  // changes only the child multisets of p and c:
  //   aut_sum[c] = aut_sum[p] + log mult_c(up[c]) - log mult_p(down[c]).
  std::vector<double> aut_sum(n, 0.0);
  std::vector<CodeId> children;
  double root_sum = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    children.clear();
    for (Vertex w : t.neighbors(v)) {
      if (w != parent[v]) children.push_back(a.down[w]);
    }
    std::sort(children.begin(), children.end());
    root_sum += log_aut_sorted(children);
  }
  aut_sum[a.rooting.root] = root_sum;

  for (Vertex c : a.rooting.order) {
    const Vertex p = parent[c];
    if (p == kNoVertex) continue;
    const std::size_t in_parent = multiplicity(a.neighbor_codes(p), a.down[c]);
    const std::size_t in_child = multiplicity(a.neighbor_codes(c), a.up[c]);
    aut_sum[c] = aut_sum[p] + std::log(static_cast<double>(in_child)) -
                 std::log(static_cast<double>(in_parent));
  }

  std::unordered_map<CodeId, std::pair<std::size_t, Vertex>> classes;  // count, representative
  for (Vertex v = 0; v < n; ++v) {
    auto [it, inserted] = classes.try_emplace(a.full[v], 0, v);
    ++it->second.first;
  }
  std::vector<double> out(n);
  for (Vertex v = 0; v < n; ++v) {
    const auto& [count, rep] = classes.at(a.full[v]);
    if (rep == v) {
      out[v] = -std::log(static_cast<double>(count)) - log_phi[v] - aut_sum[v];
    }
  }
  for (Vertex v = 0; v < n; ++v) out[v] = out[classes.at(a.full[v]).second];
  return out;
}

RootEstimate mle_root(const Tree& t) {
  const auto values = log_likelihood_all_roots(t);
  RootEstimate best{0, values[0]};
  for (Vertex v = 1; v < values.size(); ++v) {
    if (values[v] > best.log_likelihood) best = {v, values[v]};
  }
  return best;
}

namespace {

struct SeedTerms {
  double log_composition = 0.0;
  double sum_log_shape = 0.0;  // sum over anchors of log rooted-shape probability
  HangingSizes hanging;
};

SeedTerms seed_terms(const Tree& t, const SeedPlacement& placement) {
  const std::size_t n = t.size();
  const std::size_t k = placement.k();
  SeedTerms terms;
  terms.hanging = hanging_sizes(t, placement.vertices);
  const auto& h = terms.hanging;

  terms.log_composition = std::lgamma(static_cast<double>(k)) +
                          std::lgamma(static_cast<double>(n - k) + 1.0) -
                          std::lgamma(static_cast<double>(n));

  CodeTable table;
  std::vector<CodeId> code(n, 0);
  std::vector<CodeId> children;
  double total = 0.0;
  for (auto it = h.order.rbegin(); it != h.order.rend(); ++it) {
    const Vertex v = *it;
    children.clear();
    for (Vertex w : t.neighbors(v)) {
      if (h.owner[w] == w || w == h.parent[v]) continue;  // anchors and the parent
      children.push_back(code[w]);
    }
    std::sort(children.begin(), children.end());
    total -= std::log(static_cast<double>(h.size[v])) + log_aut_sorted(children);
    code[v] = table.intern(children);
  }
  for (Vertex u : placement.vertices) total += std::log(static_cast<double>(h.size[u]));
  terms.sum_log_shape = total;
  return terms;
}

void check_placement(const Tree& t, const SeedPlacement& placement) {
  if (placement.vertices.empty()) throw InputError("seed placement is empty");
  if (placement.vertices.back() >= t.size()) throw InputError("seed placement out of range");
}

}  // namespace

double log_likelihood_seed(const Tree& t, const SeedPlacement& placement) {
  check_placement(t, placement);
  const SeedTerms terms = seed_terms(t, placement);
  return terms.log_composition + terms.sum_log_shape;
}

double log_likelihood_seed_factorized(const Tree& t, const SeedPlacement& placement) {
  check_placement(t, placement);
  const SeedTerms terms = seed_terms(t, placement);
  const auto& h = terms.hanging;
  // Subtract log Autbar(u, (T,S)_{u↓}) for each anchor, which needs each
  // hanging subtree as a standalone tree.
  double correction = 0.0;
  std::vector<Vertex> local(t.size(), kNoVertex);
  for (Vertex u : placement.vertices) {
    std::vector<Vertex> members;
    for (Vertex v : h.order) {
      if (h.owner[v] == u) {
        local[v] = static_cast<Vertex>(members.size());
        members.push_back(v);
      }
    }
    std::vector<Edge> edges;
    for (Vertex v : members) {
      if (h.parent[v] != kNoVertex) edges.emplace_back(local[v], local[h.parent[v]]);
    }
    const Tree sub = Tree::from_edges(edges, members.size());
    correction += std::log(static_cast<double>(aut_bar(sub, 0)));
  }
  return terms.sum_log_shape - correction;
}

namespace {

class PlacementWalker {
 public:
  PlacementWalker(const Tree& t, std::size_t k, std::size_t ell,
                  const std::function<void(const SeedPlacement&)>& visit, std::size_t budget)
      : t_(t), k_(k), ell_(ell), visit_(visit), budget_(budget), in_sub_(t.size(), 0) {}

  void run() {
    for (Vertex v = 0; v < t_.size(); ++v) {
      sub_.assign(1, v);
      in_sub_[v] = 1;
      std::vector<Vertex> extension;
      for (Vertex w : t_.neighbors(v)) {
        if (w > v) extension.push_back(w);
      }
      extend(std::move(extension), v);
      in_sub_[v] = 0;
    }
  }

 private:
  // Extension-set enumeration: every connected subset is produced once, from
  // its smallest vertex. In a tree the exclusive neighborhood of a new vertex
  // w is just N(w) minus the current subset.
  void extend(std::vector<Vertex> extension, Vertex anchor) {
    if (sub_.size() == k_) {
      emit();
      return;
    }
    while (!extension.empty()) {
      const Vertex w = extension.back();
      extension.pop_back();
      std::vector<Vertex> next = extension;
      for (Vertex x : t_.neighbors(w)) {
        if (x > anchor && !in_sub_[x]) next.push_back(x);
      }
      sub_.push_back(w);
      in_sub_[w] = 1;
      extend(std::move(next), anchor);
      in_sub_[w] = 0;
      sub_.pop_back();
    }
  }

  void emit() {
    if (++visited_ > budget_) {
      throw BudgetExceeded("placement enumeration exceeded the budget of " +
                           std::to_string(budget_) + " connected subsets");
    }
    SeedPlacement p;
    p.vertices = sub_;
    std::sort(p.vertices.begin(), p.vertices.end());
    if (k_ == 1) {
      if (ell_ > 1) return;
      p.leaves = p.vertices;
      visit_(p);
      return;
    }
    for (Vertex v : p.vertices) {
      std::size_t inside = 0;
      for (Vertex w : t_.neighbors(v)) inside += in_sub_[w];
      if (inside == 1) p.leaves.push_back(v);
    }
    if (p.leaves.size() == ell_) visit_(p);
  }

  const Tree& t_;
  std::size_t k_;
  std::size_t ell_;
  const std::function<void(const SeedPlacement&)>& visit_;
  std::size_t budget_;
  std::size_t visited_ = 0;
  std::vector<char> in_sub_;
  std::vector<Vertex> sub_;
};

}  // namespace

void for_each_placement(const Tree& t, std::size_t k, std::size_t ell,
                        const std::function<void(const SeedPlacement&)>& visit,
                        std::size_t budget) {
  if (k < 1) throw ParameterError("k must be at least 1");
  if (k > t.size()) return;
  PlacementWalker(t, k, ell, visit, budget).run();
}

std::vector<SeedPlacement> enumerate_placements(const Tree& t, std::size_t k, std::size_t ell,
                                                std::size_t budget) {
  std::vector<SeedPlacement> out;
  for_each_placement(t, k, ell, [&](const SeedPlacement& p) { out.push_back(p); }, budget);
  std::sort(out.begin(), out.end(), [](const SeedPlacement& a, const SeedPlacement& b) {
    return a.vertices < b.vertices;
  });
  return out;
}

SeedEstimate mle_seed(const Tree& t, std::size_t k, std::size_t ell, std::size_t budget) {
  SeedEstimate best;
  bool found = false;
  for_each_placement(
      t, k, ell,
      [&](const SeedPlacement& p) {
        ++best.placements;
        const double value = log_likelihood_seed(t, p);
        const double tolerance = 1e-12 * std::max(1.0, std::abs(value));
        if (!found || value > best.log_likelihood + tolerance ||
            (value >= best.log_likelihood - tolerance && p.vertices < best.placement.vertices)) {
          best.placement = p;
          best.log_likelihood = value;
          found = true;
        }
      },
      budget);
  if (!found) {
    throw InputError("no placement with k = " + std::to_string(k) + " and ell = " +
                     std::to_string(ell) + " exists in the tree");
  }
  return best;
}

}  // namespace seedtrace
