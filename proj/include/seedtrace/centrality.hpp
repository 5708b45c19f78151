#pragma once

#include <cstdint>
#include <vector>

#include "seedtrace/tree.hpp"

namespace seedtrace {

/// psi(u): size of the largest component of T - u. Linear time. Returns an
/// empty vector (and emits a warning) for the single-vertex tree, where psi
/// is undefined.
std::vector<std::uint32_t> psi_all(const Tree& t);

/// log phi(u) = sum over v != u of log |(T, u)_{v↓}|, in nats, for every u.
/// One rooted pass plus the rerooting step
///   log phi(w) = log phi(u) + log(n - s) - log(s),  s = |(T, u)_{w↓}|.
/// Empty (with a warning) for n = 1.
std::vector<double> phi_log_all(const Tree& t);

struct CentralityScores {
  std::vector<std::uint32_t> psi;
  std::vector<double> log_phi;
};

CentralityScores centrality_scores(const Tree& t);

/// The K vertices of smallest psi, ids breaking ties. Serves as the
/// intersection estimator, the whole-seed cover estimator and the star
/// center finder; only the success criterion differs.
ConfidenceSet psi_set(const Tree& t, std::size_t K);

/// The K vertices of smallest phi. Log-phi values within 1e-12 (relative to
/// the largest magnitude in the tree) are treated as ties.
ConfidenceSet phi_set(const Tree& t, std::size_t K);

/// Depth-first expansion around each anchor of `intersect_set` (in set
/// order): a vertex v reached from anchor u is added when
/// |(T, u)_{v↓}| >= n * eps / (2 * k * ell), and exploration stops below the
/// threshold. The union is deduplicated and stops growing once it holds
/// `K_cap` vertices. Scores are the hanging sizes seen from the anchor that
/// added the vertex.
ConfidenceSet dfs_cover_set(const Tree& t, const ConfidenceSet& intersect_set, std::size_t k,
                            std::size_t ell, double eps, std::size_t K_cap);

/// The threshold used by dfs_cover_set.
double dfs_threshold(std::size_t n, std::size_t k, std::size_t ell, double eps);

}  // namespace seedtrace
