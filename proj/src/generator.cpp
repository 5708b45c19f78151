#include "seedtrace/generator.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "seedtrace/errors.hpp"
#include "seedtrace/rng.hpp"

namespace seedtrace {

namespace {

// Fenwick tree over attachment weights with prefix-descent sampling.
class WeightTree {
 public:
  explicit WeightTree(std::size_t capacity) : tree_(capacity + 1, 0.0) {
    while ((std::size_t{1} << (log_ + 1)) <= capacity) ++log_;
  }

  void add(std::size_t index, double delta) {
    total_ += delta;
    for (std::size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  // Smallest index whose inclusive prefix sum exceeds `target`.
  std::size_t find(double target, std::size_t limit) const {
    std::size_t pos = 0;
    for (std::size_t step = std::size_t{1} << log_; step > 0; step >>= 1) {
      const std::size_t next = pos + step;
      if (next < tree_.size() && tree_[next] <= target) {
        pos = next;
        target -= tree_[next];
      }
    }
    // Rounding can push the descent one past the populated range.
    return std::min(pos, limit - 1);
  }

  double total() const { return total_; }

 private:
  std::vector<double> tree_;
  std::size_t log_ = 0;
  double total_ = 0.0;
};

double weight(std::size_t degree, double alpha) {
  if (degree == 0) return 1.0;
  return std::pow(static_cast<double>(degree), alpha);
}

}  // namespace

std::vector<Vertex> GrowthRecord::presented(std::span<const Vertex> original) const {
  std::vector<Vertex> out;
  out.reserve(original.size());
  for (Vertex v : original) out.push_back(anonymization[v]);
  return out;
}

std::vector<Vertex> GrowthRecord::original_ids() const {
  std::vector<Vertex> inverse(anonymization.size());
  for (Vertex v = 0; v < anonymization.size(); ++v) inverse[anonymization[v]] = v;
  return inverse;
}

SeedPlacement GrowthRecord::presented_seed(const Tree& presented_tree) const {
  return SeedPlacement::in(presented_tree, presented(seed.vertices));
}

Tree GrowthRecord::replay(const Tree& seed_tree) const {
  const std::size_t k = seed_tree.size();
  std::vector<Edge> edges = seed_tree.edges();
  edges.reserve(k + parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) {
    edges.emplace_back(static_cast<Vertex>(k + i), parent[i]);
  }
  for (auto& [u, v] : edges) {
    u = anonymization[u];
    v = anonymization[v];
  }
  return Tree::from_edges(edges, k + parent.size());
}

Generated generate(const Tree& seed_tree, std::size_t n, double alpha, std::uint64_t rng_seed,
                   const GenerateOptions& options) {
  const std::size_t k = seed_tree.size();
  if (n < k) {
    throw ParameterError("n = " + std::to_string(n) + " is smaller than the seed (" +
                         std::to_string(k) + " vertices)");
  }
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw ParameterError("alpha must be a finite value >= 0");
  }

  GrowthRecord record;
  record.alpha = alpha;
  record.rng_seed = rng_seed;
  {
    std::vector<Vertex> all(k);
    std::iota(all.begin(), all.end(), Vertex{0});
    record.seed = SeedPlacement::in(seed_tree, all);
  }
  record.parent.resize(n - k);
  record.arrival_order.resize(n - k);
  std::iota(record.arrival_order.begin(), record.arrival_order.end(), static_cast<Vertex>(k));

  Rng rng(derive_seed(rng_seed, 0));
  if (alpha == 0.0) {
    for (std::size_t i = k; i < n; ++i) {
      record.parent[i - k] = static_cast<Vertex>(rng.below(i));
    }
  } else {
    WeightTree weights(n);
    std::vector<std::uint32_t> degree(n, 0);
    for (Vertex v = 0; v < k; ++v) {
      degree[v] = static_cast<std::uint32_t>(seed_tree.degree(v));
      weights.add(v, weight(degree[v], alpha));
    }
    for (std::size_t i = k; i < n; ++i) {
      const auto target = static_cast<Vertex>(weights.find(rng.uniform01() * weights.total(), i));
      record.parent[i - k] = target;
      weights.add(target, weight(degree[target] + 1, alpha) - weight(degree[target], alpha));
      ++degree[target];
      degree[i] = 1;
      weights.add(i, weight(1, alpha));
    }
  }

  std::vector<Edge> edges = seed_tree.edges();
  edges.reserve(n - 1);
  for (std::size_t i = k; i < n; ++i) edges.emplace_back(static_cast<Vertex>(i), record.parent[i - k]);
  Tree original = Tree::from_edges(edges, n);

  std::optional<std::uint64_t> anon_seed;
  if (options.anonymize) anon_seed = derive_seed(rng_seed, 1);
  Tree presented = anonymize(original, record, anon_seed);
  return {std::move(presented), std::move(record)};
}

Tree anonymize(const Tree& t, GrowthRecord& record, std::optional<std::uint64_t> rng_seed) {
  const std::size_t n = t.size();
  record.anonymization.resize(n);
  std::iota(record.anonymization.begin(), record.anonymization.end(), Vertex{0});
  if (!rng_seed) return t;
  Rng rng(*rng_seed);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(record.anonymization[i - 1], record.anonymization[j]);
  }
  return t.relabeled(record.anonymization);
}

namespace seeds {

Tree single_vertex() { return Tree(); }

Tree path(std::size_t k) {
  if (k == 0) throw ParameterError("path needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < k; ++i) edges.emplace_back(static_cast<Vertex>(i - 1), static_cast<Vertex>(i));
  return Tree::from_edges(edges, k);
}

Tree star(std::size_t k) {
  if (k == 0) throw ParameterError("star needs at least one vertex");
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < k; ++i) edges.emplace_back(0, static_cast<Vertex>(i));
  return Tree::from_edges(edges, k);
}

Tree spider(std::span<const std::size_t> leg_lengths) {
  std::vector<Edge> edges;
  Vertex next = 1;
  for (std::size_t length : leg_lengths) {
    Vertex prev = 0;
    for (std::size_t j = 0; j < length; ++j) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Tree::from_edges(edges, next);
}

}  // namespace seeds

}  // namespace seedtrace
