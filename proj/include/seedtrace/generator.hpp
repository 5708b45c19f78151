#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seedtrace/tree.hpp"

namespace seedtrace {

/// Ground truth of one attachment process.
///
/// "Original" ids are arrival times: the seed occupies 0..k-1 with the ids
/// of the seed tree it was built from, and vertex i >= k is the i-th vertex
/// to arrive. "Presented" ids are what estimators see after anonymization.
struct GrowthRecord {
  SeedPlacement seed;                // original ids
  std::vector<Vertex> parent;        // parent[i - k] = attachment target of vertex i
  std::vector<Vertex> arrival_order; // original ids of non-seed vertices, by arrival
  std::vector<Vertex> anonymization; // original id -> presented id
  double alpha = 0.0;
  std::uint64_t rng_seed = 0;

  std::size_t n() const { return seed.k() + parent.size(); }
  std::size_t k() const { return seed.k(); }

  Vertex presented(Vertex original) const { return anonymization[original]; }
  std::vector<Vertex> presented(std::span<const Vertex> original) const;
  /// Inverse of the anonymization.
  std::vector<Vertex> original_ids() const;

  /// Seed placement in presented ids.
  SeedPlacement presented_seed(const Tree& presented_tree) const;
  /// The first seed vertex u_1 in presented ids.
  Vertex presented_root() const { return anonymization[seed.vertices.front()]; }

  /// Rebuilds the presented tree from `seed_tree` and the parent array.
  Tree replay(const Tree& seed_tree) const;
};

struct Generated {
  Tree tree;  // presented
  GrowthRecord record;
};

struct GenerateOptions {
  /// Relabel uniformly at random. When false the presented ids equal the
  /// original ids (identity anonymization).
  bool anonymize = true;
};

/// Grows `seed_tree` to n vertices. Vertex i attaches to u with probability
/// deg(u)^alpha / sum deg^alpha over the i existing vertices; alpha = 0 is
/// uniform attachment. A degree-0 vertex (single-vertex seed, first step)
/// has weight 1 for every alpha.
///
/// Random streams: attachment uses Rng(derive_seed(rng_seed, 0)),
/// anonymization uses Rng(derive_seed(rng_seed, 1)).
Generated generate(const Tree& seed_tree, std::size_t n, double alpha, std::uint64_t rng_seed,
                   const GenerateOptions& options = {});

/// Applies a uniformly random relabeling drawn from `rng_seed` (identity when
/// nullopt), storing the permutation in `record.anonymization`. `t` must be
/// labeled by original ids.
Tree anonymize(const Tree& t, GrowthRecord& record, std::optional<std::uint64_t> rng_seed);

namespace seeds {

Tree single_vertex();
/// Path 0-1-...-(k-1).
Tree path(std::size_t k);
/// Star with center 0 and leaves 1..k-1.
Tree star(std::size_t k);
/// Center 0 with one path per entry of `leg_lengths`, legs numbered in order.
Tree spider(std::span<const std::size_t> leg_lengths);

}  // namespace seeds

}  // namespace seedtrace
