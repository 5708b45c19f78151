#pragma once

#include <vector>

#include "seedtrace/tree.hpp"

namespace seedtrace {

/// A tree whose skeleton vertices (the seed minus its leaves) are known.
struct SkeletonObservation {
  Tree tree;
  std::vector<Vertex> skeleton_ids;
};

/// Among the neighbors u of the skeleton R, the K with the largest
/// |(T, R)_{u↓}|, ids breaking ties. Throws InputError if R is empty, out of
/// range or disconnected.
ConfidenceSet skeleton_leaf_set(const Tree& t, std::span<const Vertex> skeleton, std::size_t K);

inline ConfidenceSet skeleton_leaf_set(const SkeletonObservation& obs, std::size_t K) {
  return skeleton_leaf_set(obs.tree, obs.skeleton_ids, K);
}

/// Whole-star recovery. Candidate centers C = psi_set(t, m); the output is
/// the union over u in C of {u} and skeleton_leaf_set(skeleton = {u}, m'),
/// deduplicated in that order. Size at most m (m' + 1). Member scores are
/// psi(u) for candidate centers and hanging sizes for leaves.
ConfidenceSet star_recover(const Tree& t, std::size_t k, std::size_t m, std::size_t m_prime);

}  // namespace seedtrace
