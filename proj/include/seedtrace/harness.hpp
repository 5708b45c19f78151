#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seedtrace/generator.hpp"
#include "seedtrace/likelihood.hpp"
#include "seedtrace/stats.hpp"
#include "seedtrace/tree.hpp"

namespace seedtrace {

enum class Method {
  kPsi,       // psi_set(K)
  kPhi,       // phi_set(K)
  kMleRoot,   // single most likely root
  kPsiCover,  // psi_set(K), scored as a whole-seed cover
  kDfs,       // dfs_cover_set over psi_set(anchor_K) with cap K
  kMleSeed,   // most likely placement with the seed's (k, ell)
  kSkeleton,  // skeleton_leaf_set(K) given the true skeleton
  kStar,      // star_recover(k, m, m')
  kAll,       // every vertex (reference)
};

enum class Criterion {
  kRoot,         // u_1 in H
  kIntersect,    // |V(S) & H| >= 1
  kCover,        // V(S) subset of H
  kCoverLeaves,  // L(S) subset of H
};

inline constexpr std::size_t kCriterionCount = 4;

Method parse_method(std::string_view text);
std::string_view to_string(Method m);
Criterion parse_criterion(std::string_view text);
std::string_view to_string(Criterion c);

struct EstimatorSpec {
  Method method = Method::kPsi;
  std::size_t K = 1;         // set size, or the cap for kDfs
  std::size_t anchor_K = 1;  // kDfs: size of the psi anchor set
  double eps = 0.1;          // kDfs threshold parameter
  std::size_t m = 1;         // kStar
  std::size_t m_prime = 1;   // kStar
  std::size_t budget = kDefaultPlacementBudget;  // kMleSeed

  /// The size parameter reported in the K column of results.
  std::size_t reported_K(std::size_t n, std::size_t k) const;
};

/// What an estimator may know besides the anonymized tree.
struct EstimatorContext {
  std::size_t k = 1;
  std::size_t ell = 1;
  std::vector<Vertex> skeleton;  // presented ids; only kSkeleton reads it
};

ConfidenceSet run_estimator(const Tree& t, const EstimatorSpec& spec, const EstimatorContext& ctx);

struct ExperimentConfig {
  Tree seed_tree;
  std::string seed_label = "custom";
  std::size_t n = 1;
  double alpha = 0.0;
  EstimatorSpec estimator;
  Criterion criterion = Criterion::kRoot;
  std::size_t trials = 1;
  std::uint64_t master_seed = 0;
  std::size_t jobs = 1;
  bool anonymize = true;
  /// Estimator wall time goes to the runtime_ms column only when set, since
  /// timings would break byte-identical output across runs.
  bool record_runtime = false;
  double z = 1.96;
  /// Check-style experiments fail when p_hat falls below this value.
  std::optional<double> threshold;
  /// Trials whose index is a multiple of this are replayed from their
  /// GrowthRecord and rescored (0 disables).
  std::size_t replay_every = 100;
};

/// Throws ParameterError on inconsistent configurations (estimator and
/// criterion mismatch, n smaller than the seed, zero trials, ...).
void validate(const ExperimentConfig& cfg);

struct SuccessFlags {
  std::array<bool, kCriterionCount> by_criterion{};
  std::size_t seed_hits = 0;  // |V(S) & H|
  std::size_t leaf_hits = 0;  // |L(S) & H|

  bool operator[](Criterion c) const { return by_criterion[static_cast<std::size_t>(c)]; }
};

/// Scores an estimator output against ground truth (presented ids).
SuccessFlags score(const ConfidenceSet& output, const SeedPlacement& seed, Vertex root);

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t rng_seed = 0;
  bool success = false;
  SuccessFlags flags;
  std::size_t intersection_size = 0;
  double runtime_ms = 0.0;
};

struct ExperimentSummary {
  std::size_t trials = 0;
  std::size_t successes = 0;
  double p_hat = 0.0;
  Interval ci;
};

struct ExperimentResult {
  std::vector<TrialOutcome> outcomes;  // sorted by trial index
  ExperimentSummary summary;
};

/// Per-trial seed: derive_seed(master_seed, trial).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

ExperimentSummary summarize(const std::vector<TrialOutcome>& outcomes, double z);

/// Header: trial_id,n,k,ell,alpha,method,K,criterion,success,intersection_size,runtime_ms,rng_seed
void write_outcomes_csv(std::ostream& out, const ExperimentConfig& cfg,
                        const ExperimentResult& result);

struct CurvePoint {
  std::size_t K = 0;
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p_hat = 0.0;
  Interval ci;
};

struct KSearchResult {
  std::vector<CurvePoint> curve;
  /// Smallest grid K whose Wilson lower bound reaches the target (for a
  /// target of 1, the smallest K with no failures). Empty when not reached.
  std::optional<std::size_t> chosen;
  double target = 0.0;
};

/// Evaluates every grid K on the same trees (common random numbers). psi and
/// phi sets are ranked once per tree and truncated, so per-trial success is
/// monotone in K for them. The grid must be non-empty and ascending.
KSearchResult minimal_k_search(const ExperimentConfig& cfg, Criterion criterion, double target,
                               std::span<const std::size_t> grid);

/// Header: K,p_hat,ci_lo,ci_hi
void write_curve_csv(std::ostream& out, const KSearchResult& result);
void write_curve_svg(std::ostream& out, const KSearchResult& result, std::string_view title);

enum class DistCheckKind { kDirichletMarginal, kSpacings, kConditionalUrrt, kNakedLeaf };

DistCheckKind parse_dist_check(std::string_view text);
std::string_view to_string(DistCheckKind kind);

/// Zero-valued fields take the per-kind defaults:
///   dirichlet-marginal  path seed k=3, n=20000, trials=1000
///   spacings            k=5, j=2, trials=2000
///   conditional-urrt    path seed k=2, n=8, m=4, trials=14000
///   naked-leaf          star seed k=4, final size K=13, trials=10000
struct DistCheckConfig {
  DistCheckKind kind = DistCheckKind::kDirichletMarginal;
  std::size_t trials = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t K = 0;
  std::size_t m = 0;
  std::size_t j = 0;
  std::uint64_t master_seed = 1;
};

struct DistCheckResult {
  DistCheckKind kind = DistCheckKind::kDirichletMarginal;
  double statistic = 0.0;
  double critical = 0.0;
  bool pass = false;
  std::size_t samples = 0;
  /// What the statistic measures and against which reference.
  std::string detail;
  /// Extra numbers worth reporting (p-value, p_hat, expected value, ...).
  std::vector<std::pair<std::string, double>> extras;
};

/// KS or chi-square check of a distributional property of the process.
/// Rejects configurations with fewer than 50 trials.
DistCheckResult distribution_check(DistCheckConfig cfg);

}  // namespace seedtrace
