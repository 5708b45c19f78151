#pragma once

#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "seedtrace/harness.hpp"

namespace seedtrace {

/// A seed tree plus a short label for reports.
struct SeedSpec {
  Tree tree;
  std::string label;
};

/// Compact seed notation: "single", "path:K", "star:K", "spider:L1,L2,...".
/// Throws ParameterError on anything else.
SeedSpec parse_seed_shape(std::string_view text);

struct KSearchSpec {
  std::vector<std::size_t> grid;
  double target = 0.9;
  std::optional<Criterion> criterion;  // defaults to the experiment's criterion
};

struct ExperimentSpec {
  ExperimentConfig config;
  std::optional<KSearchSpec> k_search;
  bool has_master_seed = false;  // the config named one explicitly
};

/// Reads an experiment from JSON text. Seed files named in the config are
/// resolved against `base_dir`. Malformed JSON or wrongly typed fields throw
/// InputError; the result is checked with validate().
///
///   {
///     "seed": {"shape": "path", "k": 3}            shape: single|path|star|spider
///           | {"shape": "spider", "legs": [2, 2, 1]}
///           | {"edges": [[0, 1], [1, 2]], "n": 3}
///           | {"file": "seed.tree"},
///     "n": 5000, "alpha": 0.0,
///     "estimator": {"method": "psi", "K": 58, "anchor_K": 1, "eps": 0.1,
///                   "m": 1, "m_prime": 1, "budget": 5000000},
///     "criterion": "root",                          root|intersect|cover|cover-leaves
///     "trials": 1000, "master_seed": 1, "jobs": 1,
///     "anonymize": true, "record_runtime": false, "z": 1.96,
///     "threshold": 0.55, "replay_every": 100,
///     "k_search": {"grid": [1, 2, 4, 8], "target": 0.9, "criterion": "intersect"}
///   }
///
/// Only "seed", "n" and "estimator.method" are required.
ExperimentSpec parse_experiment(std::string_view json_text,
                                const std::filesystem::path& base_dir = ".");
ExperimentSpec load_experiment(const std::filesystem::path& path);

}  // namespace seedtrace
