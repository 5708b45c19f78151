#include "seedtrace/cli.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "seedtrace/bounds.hpp"
#include "seedtrace/centrality.hpp"
#include "seedtrace/config.hpp"
#include "seedtrace/errors.hpp"
#include "seedtrace/generator.hpp"
#include "seedtrace/harness.hpp"
#include "seedtrace/likelihood.hpp"
#include "seedtrace/skeleton.hpp"
#include "seedtrace/tree_io.hpp"

namespace seedtrace::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSeedEnv = "SEEDTRACE_RNG_SEED";
constexpr const char* kKNote =
    "K values are measured for the implemented estimators only and are upper bounds on the "
    "smallest size achievable by any algorithm";

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParameterError(what + ": expected an unsigned 64-bit integer, got '" + text + "'");
  }
  return v;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv(kSeedEnv);
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  return parse_u64(raw, kSeedEnv);
}

Tree load_tree(const std::string& path) {
  if (path == "-") return read_tree(std::cin);
  return read_tree_file(path);
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

json set_json(const ConfidenceSet& set) {
  json vertices = json::array();
  json scores = json::array();
  for (const auto& m : set.members) {
    vertices.push_back(m.vertex);
    scores.push_back(m.score);
  }
  return {{"target_size", set.target_size}, {"size", set.size()}, {"vertices", vertices},
          {"scores", scores}};
}

std::vector<Vertex> parse_vertex_list(const std::string& text) {
  std::vector<Vertex> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string::npos ? text.size() : comma;
    const std::uint64_t v = parse_u64(text.substr(start, end - start), "--skeleton");
    out.push_back(static_cast<Vertex>(v));
    start = end + 1;
  }
  return out;
}

void open_output(std::ofstream& file, const std::string& path) {
  file.open(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
}

struct Options {
  // shared
  std::string tree_path;
  std::string seed_shape;
  std::string seed_file;
  std::string method;
  std::size_t K = 1;
  std::size_t k = 0;
  std::size_t ell = 0;
  double eps = 0.1;
  std::optional<std::string> rng_seed;
  std::size_t jobs = 0;
  // gen
  std::size_t n = 0;
  double alpha = 0.0;
  bool no_anonymize = false;
  std::string out_path;
  std::string record_path;
  // find-seed
  std::size_t anchor_K = 1;
  std::size_t budget = kDefaultPlacementBudget;
  // find-leaves
  std::string skeleton;
  // find-star
  std::size_t m = 1;
  std::size_t m_prime = 1;
  // bounds
  std::string bound_name;
  std::size_t k_star = 0;
  double constant = 1.0;
  bool plain = false;
  // experiment
  std::string config_path;
  std::optional<std::size_t> trials;
  std::string csv_path;
  std::string svg_path;
  // check-dist
  std::string kind;
  std::size_t check_trials = 0;
  std::size_t check_n = 0;
  std::size_t check_K = 0;
  std::size_t check_m = 0;
  std::size_t check_j = 0;
};

int run_gen(const Options& o, std::ostream& out) {
  if (o.seed_shape.empty() == o.seed_file.empty()) {
    throw ParameterError("gen: give exactly one of --seed or --seed-file");
  }
  std::uint64_t rng_seed = 0;
  if (o.rng_seed) {
    rng_seed = parse_u64(*o.rng_seed, "--rng-seed");
  } else if (auto e = env_seed()) {
    rng_seed = *e;
  } else {
    throw ParameterError(std::string("gen: no --rng-seed given and ") + kSeedEnv + " is unset");
  }
  const Tree seed = o.seed_file.empty() ? parse_seed_shape(o.seed_shape).tree : read_tree_file(o.seed_file);
  const Generated g = generate(seed, o.n, o.alpha, rng_seed, {!o.no_anonymize});
  const SeedPlacement truth = g.record.presented_seed(g.tree);

  json j{{"n", g.tree.size()},   {"k", truth.k()},       {"ell", truth.ell()},
         {"alpha", o.alpha},     {"rng_seed", rng_seed}, {"root", g.record.presented_root()},
         {"seed_vertices", truth.vertices}, {"seed_leaves", truth.leaves}};
  if (o.out_path.empty()) {
    json edges = json::array();
    for (const auto& [u, v] : g.tree.edges()) edges.push_back({u, v});
    j["edges"] = edges;
  } else {
    write_tree_file(o.out_path, g.tree);
    j["tree_file"] = o.out_path;
  }
  if (!o.record_path.empty()) {
    std::ofstream f;
    open_output(f, o.record_path);
    const GrowthRecord& rec = g.record;
    f << json{{"k", rec.k()},
              {"seed_vertices", rec.seed.vertices},
              {"parent", rec.parent},
              {"arrival_order", rec.arrival_order},
              {"anonymization", rec.anonymization},
              {"alpha", rec.alpha},
              {"rng_seed", rec.rng_seed}}
             .dump(2)
      << '\n';
    j["record_file"] = o.record_path;
  }
  write_json(out, j);
  return kOk;
}

int run_find_root(const Options& o, std::ostream& out) {
  if (o.method != "psi" && o.method != "phi" && o.method != "mle") {
    throw ParameterError("find-root: --method must be psi, phi or mle");
  }
  const Tree t = load_tree(o.tree_path);
  ConfidenceSet set;
  if (o.method == "psi") {
    set = psi_set(t, o.K);
  } else if (o.method == "phi") {
    set = phi_set(t, o.K);
  } else {
    const RootEstimate r = mle_root(t);
    set = {{{r.vertex, r.log_likelihood}}, 1};
  }
  write_json(out, {{"method", o.method}, {"n", t.size()}, {"set", set_json(set)}});
  return kOk;
}

int run_find_seed(const Options& o, std::ostream& out) {
  if (o.method != "dfs" && o.method != "mle" && o.method != "psi-cover") {
    throw ParameterError("find-seed: --method must be psi-cover, dfs or mle");
  }
  if (o.method != "psi-cover" && (o.k == 0 || o.ell == 0)) {
    throw ParameterError("find-seed: --k and --ell are required for dfs and mle");
  }
  const Tree t = load_tree(o.tree_path);
  json j{{"method", o.method}, {"n", t.size()}};
  if (o.method == "psi-cover") {
    j["set"] = set_json(psi_set(t, o.K));
  } else if (o.method == "dfs") {
    const std::size_t cap = o.K == 0 ? t.size() : o.K;
    j["threshold"] = dfs_threshold(t.size(), o.k, o.ell, o.eps);
    j["set"] = set_json(dfs_cover_set(t, psi_set(t, o.anchor_K), o.k, o.ell, o.eps, cap));
  } else {
    const SeedEstimate est = mle_seed(t, o.k, o.ell, o.budget);
    j["placement"] = est.placement.vertices;
    j["leaves"] = est.placement.leaves;
    j["log_likelihood"] = est.log_likelihood;
    j["placements_examined"] = est.placements;
  }
  write_json(out, j);
  return kOk;
}

int run_find_leaves(const Options& o, std::ostream& out) {
  const std::vector<Vertex> skeleton = parse_vertex_list(o.skeleton);
  const Tree t = load_tree(o.tree_path);
  write_json(out, {{"n", t.size()}, {"skeleton", skeleton},
                   {"set", set_json(skeleton_leaf_set(t, skeleton, o.K))}});
  return kOk;
}

int run_find_star(const Options& o, std::ostream& out) {
  if (o.k < 2) throw ParameterError("find-star: --k must be at least 2");
  if (o.m == 0 || o.m_prime == 0) throw ParameterError("find-star: --m and --m-prime must be positive");
  const Tree t = load_tree(o.tree_path);
  write_json(out, {{"n", t.size()}, {"k", o.k}, {"m", o.m}, {"m_prime", o.m_prime},
                   {"set", set_json(star_recover(t, o.k, o.m, o.m_prime))}});
  return kOk;
}

int run_bounds(const Options& o, std::ostream& out) {
  BoundParams p;
  p.eps = o.eps;
  p.k = o.k;
  p.ell = o.ell;
  p.k_star = o.k_star;
  p.constant = o.constant;
  const BoundResult r = compute_bound(parse_bound_name(o.bound_name), p);
  if (o.plain) {
    out << r.K << '\n';
    return kOk;
  }
  write_json(out, {{"name", to_string(r.name)},
                   {"value", r.K},
                   {"raw", r.value},
                   {"relation", r.at_most ? "K <= value" : "K >= value"},
                   {"constant_free", r.constant_free},
                   {"formula", r.formula}});
  return kOk;
}

json summary_json(const ExperimentSummary& s) {
  return {{"trials", s.trials}, {"successes", s.successes}, {"p_hat", s.p_hat},
          {"ci_lo", s.ci.lo}, {"ci_hi", s.ci.hi}};
}

int run_experiment_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  ExperimentSpec spec = load_experiment(o.config_path);
  ExperimentConfig& cfg = spec.config;
  if (o.trials) cfg.trials = *o.trials;
  if (o.jobs > 0) cfg.jobs = o.jobs;
  if (o.rng_seed) {
    cfg.master_seed = parse_u64(*o.rng_seed, "--master-seed");
  } else if (!spec.has_master_seed) {
    if (auto e = env_seed()) cfg.master_seed = *e;
  }
  validate(cfg);
  if (!o.svg_path.empty() && !spec.k_search) {
    throw ParameterError("experiment: --svg needs a config with a k_search block");
  }

  json j{{"seed", cfg.seed_label},
         {"n", cfg.n},
         {"alpha", cfg.alpha},
         {"method", to_string(cfg.estimator.method)},
         {"master_seed", cfg.master_seed}};

  if (spec.k_search) {
    const Criterion c = spec.k_search->criterion.value_or(cfg.criterion);
    const KSearchResult r = minimal_k_search(cfg, c, spec.k_search->target, spec.k_search->grid);
    json curve = json::array();
    for (const auto& p : r.curve) {
      curve.push_back({{"K", p.K}, {"p_hat", p.p_hat}, {"ci_lo", p.ci.lo}, {"ci_hi", p.ci.hi}});
    }
    j["criterion"] = to_string(c);
    j["target"] = r.target;
    j["trials"] = cfg.trials;
    j["chosen_K"] = r.chosen ? json(*r.chosen) : json("not reached");
    j["curve"] = curve;
    j["note"] = kKNote;
    if (!o.csv_path.empty()) {
      std::ofstream f;
      open_output(f, o.csv_path);
      write_curve_csv(f, r);
    }
    if (!o.svg_path.empty()) {
      std::ofstream f;
      open_output(f, o.svg_path);
      write_curve_svg(f, r, std::string(to_string(cfg.estimator.method)) + " / " +
                                std::string(to_string(c)) + ", n = " + std::to_string(cfg.n));
    }
    write_json(out, j);
    return kOk;
  }

  const ExperimentResult r = run_experiment(cfg);
  j["criterion"] = to_string(cfg.criterion);
  j["K"] = cfg.estimator.reported_K(cfg.n, cfg.seed_tree.size());
  j["summary"] = summary_json(r.summary);
  if (!o.csv_path.empty()) {
    std::ofstream f;
    open_output(f, o.csv_path);
    write_outcomes_csv(f, cfg, r);
  }
  int code = kOk;
  if (cfg.threshold) {
    const bool pass = r.summary.p_hat >= *cfg.threshold;
    j["threshold"] = *cfg.threshold;
    j["pass"] = pass;
    if (!pass) {
      err << "experiment: p_hat " << r.summary.p_hat << " is below the threshold "
          << *cfg.threshold << '\n';
      code = kCheckFailed;
    }
  }
  write_json(out, j);
  return code;
}

int run_check_dist(const Options& o, std::ostream& out, std::ostream& err) {
  DistCheckConfig c;
  c.kind = parse_dist_check(o.kind);
  c.trials = o.check_trials;
  c.n = o.check_n;
  c.k = o.k;
  c.K = o.check_K;
  c.m = o.check_m;
  c.j = o.check_j;
  if (o.rng_seed) {
    c.master_seed = parse_u64(*o.rng_seed, "--master-seed");
  } else if (auto e = env_seed()) {
    c.master_seed = *e;
  }
  const DistCheckResult r = distribution_check(c);
  json extras = json::object();
  for (const auto& [key, value] : r.extras) extras[key] = value;
  write_json(out, {{"kind", to_string(r.kind)},
                   {"statistic", r.statistic},
                   {"critical", r.critical},
                   {"pass", r.pass},
                   {"samples", r.samples},
                   {"detail", r.detail},
                   {"extras", extras}});
  if (!r.pass) {
    err << "check-dist: " << to_string(r.kind) << " statistic " << r.statistic
        << " exceeds the critical value " << r.critical << '\n';
    return kCheckFailed;
  }
  return kOk;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Seed and root recovery for trees grown by uniform and preferential attachment",
               "seedtrace"};
  app.require_subcommand(1);
  app.footer("Exit codes: 0 ok, 1 internal error, 2 usage, 3 input data, 4 check failed.\n" +
             std::string(kSeedEnv) + " supplies the random seed when none is given.");
  Options o;

  auto* gen = app.add_subcommand("gen", "Grow a seed tree to n vertices and anonymize it");
  gen->add_option("--seed", o.seed_shape, "Seed shape: single, path:K, star:K, spider:L1,L2,...");
  gen->add_option("--seed-file", o.seed_file, "Seed tree file (first line n, then `u v` edges)");
  gen->add_option("--n", o.n, "Final number of vertices")->required();
  gen->add_option("--alpha", o.alpha, "Attachment exponent; 0 is uniform attachment")
      ->capture_default_str();
  gen->add_option("--rng-seed", o.rng_seed, "Random seed (falls back to SEEDTRACE_RNG_SEED)");
  gen->add_flag("--no-anonymize", o.no_anonymize, "Keep arrival-order ids");
  gen->add_option("--out", o.out_path, "Write the tree to this file instead of inlining edges");
  gen->add_option("--record-out", o.record_path,
                  "Write the ground truth (parents, permutation, alpha, seed) as JSON");

  auto* root = app.add_subcommand("find-root", "Confidence set for the first vertex");
  root->add_option("--tree", o.tree_path, "Tree file, or - for stdin")->required();
  root->add_option("--method", o.method, "psi, phi or mle")->required();
  root->add_option("--K", o.K, "Set size (ignored by mle)")->capture_default_str();

  auto* seed = app.add_subcommand("find-seed", "Vertex set meant to contain the whole seed");
  seed->add_option("--tree", o.tree_path, "Tree file, or - for stdin")->required();
  seed->add_option("--method", o.method, "psi-cover, dfs or mle")->required();
  seed->add_option("--k", o.k, "Seed size");
  seed->add_option("--ell", o.ell, "Number of seed leaves");
  seed->add_option("--eps", o.eps, "dfs: failure probability")->capture_default_str();
  seed->add_option("--K", o.K, "psi-cover: set size; dfs: cap on the output (0 = no cap)")
      ->capture_default_str();
  seed->add_option("--anchor-K", o.anchor_K, "dfs: size of the psi anchor set")
      ->capture_default_str();
  seed->add_option("--budget", o.budget, "mle: maximum connected k-subsets to visit")
      ->capture_default_str();

  auto* leaves = app.add_subcommand("find-leaves", "Seed leaves given the seed skeleton");
  leaves->add_option("--tree", o.tree_path, "Tree file, or - for stdin")->required();
  leaves->add_option("--skeleton", o.skeleton, "Comma-separated skeleton vertex ids")->required();
  leaves->add_option("--K", o.K, "Set size")->capture_default_str();

  auto* star = app.add_subcommand("find-star", "Whole-seed set for a star seed");
  star->add_option("--tree", o.tree_path, "Tree file, or - for stdin")->required();
  star->add_option("--k", o.k, "Seed size")->required();
  star->add_option("--m", o.m, "Number of candidate centers")->capture_default_str();
  star->add_option("--m-prime,--mprime", o.m_prime, "Leaves taken per candidate center")
      ->capture_default_str();

  auto* bounds = app.add_subcommand("bounds", "Evaluate a confidence-set size formula");
  bounds->add_option("--name", o.bound_name, "root-psi, skeleton, cover, leaf-exist, heart-upper, center-star or whole-upper")
      ->required();
  bounds->add_option("--eps", o.eps, "Failure probability in (0, 1)")->required();
  bounds->add_option("--k", o.k, "Seed size");
  bounds->add_option("--ell", o.ell, "Number of seed leaves");
  bounds->add_option("--k-star", o.k_star, "cover: size of the intersecting set");
  bounds->add_option("--constant", o.constant, "Constant for the constant-free forms")
      ->capture_default_str();
  bounds->add_flag("--plain", o.plain, "Print only the rounded value");

  auto* exp = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a JSON config");
  exp->add_option("--config", o.config_path, "Experiment config (JSON)")->required();
  exp->add_option("--jobs", o.jobs, "Worker threads (overrides the config)");
  exp->add_option("--trials", o.trials, "Number of trials (overrides the config)");
  exp->add_option("--master-seed", o.rng_seed, "Master seed (overrides the config)");
  exp->add_option("--csv", o.csv_path, "Write per-trial outcomes, or the K curve, as CSV");
  exp->add_option("--svg", o.svg_path, "Write the K curve as an SVG plot");

  auto* check = app.add_subcommand("check-dist", "Distributional check of the growth process");
  check->add_option("--kind", o.kind, "dirichlet-marginal, spacings, conditional-urrt or naked-leaf")
      ->required();
  check->add_option("--trials", o.check_trials, "Trials (0 = default for the kind)");
  check->add_option("--n", o.check_n, "Tree size");
  check->add_option("--k", o.k, "Seed size");
  check->add_option("--K", o.check_K, "naked-leaf: final size");
  check->add_option("--m", o.check_m, "conditional-urrt: conditioned hanging size");
  check->add_option("--j", o.check_j, "spacings: number of summed spacings");
  check->add_option("--master-seed", o.rng_seed, "Master seed (falls back to SEEDTRACE_RNG_SEED)");

  std::vector<std::string> argv_store{"seedtrace"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (gen->parsed()) return run_gen(o, out);
    if (root->parsed()) return run_find_root(o, out);
    if (seed->parsed()) return run_find_seed(o, out);
    if (leaves->parsed()) return run_find_leaves(o, out);
    if (star->parsed()) return run_find_star(o, out);
    if (bounds->parsed()) return run_bounds(o, out);
    if (exp->parsed()) return run_experiment_cmd(o, out, err);
    if (check->parsed()) return run_check_dist(o, out, err);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace seedtrace::cli
