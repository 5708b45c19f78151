#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "seedtrace/tree.hpp"

namespace seedtrace {

using CodeId = std::uint32_t;

/// Interns rooted-tree shapes. A shape is identified by the sorted sequence
/// of its children's ids, so two codes from the same table are equal exactly
/// when the rooted subtrees are isomorphic. Codes from different tables are
/// not comparable.
class CodeTable {
 public:
  /// `children` need not be sorted.
  CodeId intern(std::vector<CodeId> children);
  std::size_t size() const { return table_.size(); }

 private:
  struct Hash {
    std::size_t operator()(const std::vector<CodeId>& v) const noexcept;
  };
  std::unordered_map<std::vector<CodeId>, CodeId, Hash> table_;
};

/// code[v] = canonical code of v's subtree with the tree hanging from `root`.
std::vector<CodeId> canonical_codes(const Tree& t, Vertex root, CodeTable& table);

/// Rooted codes for every choice of root, from one rooting plus a top-down
/// pass over the reverse edge directions.
struct AllRootings {
  Rooting rooting;             // fixed rooting at vertex 0
  std::vector<CodeId> down;    // code of v's subtree in the fixed rooting
  std::vector<CodeId> up;      // code of the parent side, rooted at the parent, seen from v
  std::vector<CodeId> full;    // code of the whole tree rooted at v
  CodeTable table;

  /// Sorted codes of all neighbor directions of v (v's children when the
  /// tree is rooted at v).
  std::span<const CodeId> neighbor_codes(Vertex v) const {
    return {codes_.data() + offsets_[v], codes_.data() + offsets_[v + 1]};
  }

  std::vector<std::size_t> offsets_;
  std::vector<CodeId> codes_;
};

AllRootings all_rootings(const Tree& t);

/// |{v : (T, v) isomorphic to (T, u) as rooted trees}|.
std::size_t aut_bar(const Tree& t, Vertex u);

/// log Aut(v, (T, root)) for every v: sum over classes of isomorphic child
/// subtrees of log(multiplicity!).
std::vector<double> log_aut(const Tree& t, Vertex root);

/// log L_T(u) = log n - log Autbar(u, T)
///              - sum_v [log |(T, u)_{v↓}| + log Aut(v, (T, u))]
/// in nats: the probability that a uniform random recursive tree has this
/// unlabeled shape with its root at the presented vertex u.
double log_likelihood_rooted(const Tree& t, Vertex u);

/// log L_T(u) for all u in O(n) amortized (rerooting of the Aut sum and of
/// log phi). Vertices with isomorphic rootings receive bit-identical values.
std::vector<double> log_likelihood_all_roots(const Tree& t);

struct RootEstimate {
  Vertex vertex = 0;
  double log_likelihood = 0.0;
};

/// argmax_u L_T(u); ties go to the smallest id.
RootEstimate mle_root(const Tree& t);

/// Exact log-probability that the seeded process started from the subtree
/// induced by `placement` (seed vertices identified with the placement
/// vertices) grows into `t`, up to relabeling of the non-seed vertices:
///
///   log [(k-1)! (n-k)! / (n-1)!]
///     + sum_{u in S} [ log n_u - sum_{v in (T,S)_{u↓}} (log |(T,S)_{v↓}| + log Aut(v)) ]
///
/// with n_u = |(T,S)_{u↓}|. The first term is the probability of the
/// hanging-size composition under the Polya urn; each summand is the
/// probability of the rooted shape of a hanging subtree given its size.
double log_likelihood_seed(const Tree& t, const SeedPlacement& placement);

/// The product of rooted likelihoods of the hanging subtrees,
/// sum_{u in S} log L_{(T,S)_{u↓}}(u). Differs from log_likelihood_seed by
/// the composition term and by sum_u log Autbar(u, (T,S)_{u↓}); kept for
/// comparison against the factorized form.
double log_likelihood_seed_factorized(const Tree& t, const SeedPlacement& placement);

inline constexpr std::size_t kDefaultPlacementBudget = 5'000'000;

/// Calls `visit` for every connected k-vertex subset of `t` whose induced
/// subtree has exactly `ell` leaves (for k = 1, ell must be 0 or 1). Order is
/// the enumeration order of the extension-set algorithm; use
/// enumerate_placements for the sorted order. Throws BudgetExceeded when
/// more than `budget` connected k-subsets are visited.
void for_each_placement(const Tree& t, std::size_t k, std::size_t ell,
                        const std::function<void(const SeedPlacement&)>& visit,
                        std::size_t budget = kDefaultPlacementBudget);

/// All placements, lexicographic on sorted vertex lists.
std::vector<SeedPlacement> enumerate_placements(const Tree& t, std::size_t k, std::size_t ell,
                                                std::size_t budget = kDefaultPlacementBudget);

struct SeedEstimate {
  SeedPlacement placement;
  double log_likelihood = 0.0;
  std::size_t placements = 0;
};

/// argmax over placements of log_likelihood_seed; ties go to the
/// lexicographically smallest vertex list. Throws InputError when no
/// placement with (k, ell) exists.
SeedEstimate mle_seed(const Tree& t, std::size_t k, std::size_t ell,
                      std::size_t budget = kDefaultPlacementBudget);

}  // namespace seedtrace
