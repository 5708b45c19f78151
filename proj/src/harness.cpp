#include "seedtrace/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <string>
#include <thread>
#include <unordered_map>

#include "seedtrace/centrality.hpp"
#include "seedtrace/errors.hpp"
#include "seedtrace/oracle.hpp"
#include "seedtrace/rng.hpp"
#include "seedtrace/skeleton.hpp"

namespace seedtrace {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 9> kMethodNames{{
    {Method::kPsi, "psi"},
    {Method::kPhi, "phi"},
    {Method::kMleRoot, "mle-root"},
    {Method::kPsiCover, "psi-cover"},
    {Method::kDfs, "dfs"},
    {Method::kMleSeed, "mle-seed"},
    {Method::kSkeleton, "skeleton"},
    {Method::kStar, "star"},
    {Method::kAll, "all"},
}};

constexpr std::array<std::pair<Criterion, std::string_view>, kCriterionCount> kCriterionNames{{
    {Criterion::kRoot, "root"},
    {Criterion::kIntersect, "intersect"},
    {Criterion::kCover, "cover"},
    {Criterion::kCoverLeaves, "cover-leaves"},
}};

constexpr std::array<std::pair<DistCheckKind, std::string_view>, 4> kDistNames{{
    {DistCheckKind::kDirichletMarginal, "dirichlet-marginal"},
    {DistCheckKind::kSpacings, "spacings"},
    {DistCheckKind::kConditionalUrrt, "conditional-urrt"},
    {DistCheckKind::kNakedLeaf, "naked-leaf"},
}};

template <typename E, std::size_t N>
E parse_name(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view text,
             std::string_view what) {
  for (const auto& [value, name] : table) {
    if (name == text) return value;
  }
  std::string known;
  for (const auto& [value, name] : table) {
    if (!known.empty()) known += ", ";
    known += name;
  }
  throw ParameterError("unknown " + std::string(what) + " '" + std::string(text) +
                       "' (expected one of: " + known + ")");
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, name] : table) {
    if (v == value) return name;
  }
  return "?";
}

bool allows(Method m, Criterion c) {
  switch (m) {
    case Method::kPsi:
    case Method::kPhi:
    case Method::kMleRoot:
      return c == Criterion::kRoot || c == Criterion::kIntersect;
    case Method::kPsiCover:
    case Method::kDfs:
      return c == Criterion::kCover;
    case Method::kSkeleton:
      return c == Criterion::kCoverLeaves;
    case Method::kStar:
      return c == Criterion::kCover || c == Criterion::kCoverLeaves;
    case Method::kMleSeed:
    case Method::kAll:
      return true;
  }
  return false;
}

// Grid search ranks once at the largest K and truncates.
bool nested(Method m) { return m == Method::kPsi || m == Method::kPhi || m == Method::kPsiCover; }

ConfidenceSet prefix(const ConfidenceSet& set, std::size_t K) {
  ConfidenceSet out;
  out.target_size = K;
  out.members.assign(set.members.begin(),
                     set.members.begin() + static_cast<std::ptrdiff_t>(std::min(K, set.size())));
  return out;
}

struct SeedInfo {
  std::size_t k = 0;
  std::size_t ell = 0;
};

SeedInfo seed_info(const Tree& seed_tree) {
  std::vector<Vertex> all(seed_tree.size());
  std::iota(all.begin(), all.end(), Vertex{0});
  const SeedPlacement p = SeedPlacement::in(seed_tree, all);
  return {p.k(), p.ell()};
}

// Runs fn(trial) for every trial on `jobs` threads. fn must only write to
// per-trial slots. The first exception is rethrown after all workers stop.
template <typename Fn>
void parallel_trials(std::size_t trials, std::size_t jobs, Fn&& fn) {
  jobs = std::max<std::size_t>(1, std::min(jobs, trials));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= trials || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

struct TrialWorld {
  Generated generated;
  SeedPlacement truth;
  Vertex root = 0;
  EstimatorContext ctx;
};

TrialWorld make_world(const ExperimentConfig& cfg, const SeedInfo& info, std::uint64_t rng_seed) {
  TrialWorld w;
  w.generated = generate(cfg.seed_tree, cfg.n, cfg.alpha, rng_seed, {cfg.anonymize});
  w.truth = w.generated.record.presented_seed(w.generated.tree);
  w.root = w.generated.record.presented_root();
  w.ctx.k = info.k;
  w.ctx.ell = info.ell;
  if (cfg.estimator.method == Method::kSkeleton) w.ctx.skeleton = w.truth.skeleton();
  return w;
}

// Recomputes the flags from the stored record alone: rebuild the tree from
// the parent array, map the seed through the stored permutation, rescore.
void verify_replay(const ExperimentConfig& cfg, const TrialWorld& w, const ConfidenceSet& output,
                   const SuccessFlags& flags, std::size_t trial) {
  const GrowthRecord& rec = w.generated.record;
  const Tree rebuilt = rec.replay(cfg.seed_tree);
  const SeedPlacement truth = rec.presented_seed(rebuilt);
  const SuccessFlags again = score(output, truth, rec.presented_root());
  if (!(rebuilt == w.generated.tree) || again.by_criterion != flags.by_criterion ||
      again.seed_hits != flags.seed_hits || again.leaf_hits != flags.leaf_hits) {
    throw Error("replay verification failed for trial " + std::to_string(trial));
  }
}

std::string format_double(double x, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, x);
  return buf;
}

}  // namespace

Method parse_method(std::string_view text) { return parse_name(kMethodNames, text, "method"); }
std::string_view to_string(Method m) { return name_of(kMethodNames, m); }
Criterion parse_criterion(std::string_view text) {
  return parse_name(kCriterionNames, text, "criterion");
}
std::string_view to_string(Criterion c) { return name_of(kCriterionNames, c); }
DistCheckKind parse_dist_check(std::string_view text) {
  return parse_name(kDistNames, text, "distribution check");
}
std::string_view to_string(DistCheckKind kind) { return name_of(kDistNames, kind); }

std::size_t EstimatorSpec::reported_K(std::size_t n, std::size_t k) const {
  switch (method) {
    case Method::kMleRoot:
      return 1;
    case Method::kMleSeed:
      return k;
    case Method::kStar:
      return m * (m_prime + 1);
    case Method::kAll:
      return n;
    default:
      return K;
  }
}

ConfidenceSet run_estimator(const Tree& t, const EstimatorSpec& spec, const EstimatorContext& ctx) {
  switch (spec.method) {
    case Method::kPsi:
    case Method::kPsiCover:
      return psi_set(t, spec.K);
    case Method::kPhi:
      return phi_set(t, spec.K);
    case Method::kMleRoot: {
      const RootEstimate r = mle_root(t);
      return {{{r.vertex, r.log_likelihood}}, 1};
    }
    case Method::kDfs:
      return dfs_cover_set(t, psi_set(t, spec.anchor_K), ctx.k, ctx.ell, spec.eps, spec.K);
    case Method::kMleSeed: {
      const SeedEstimate est = mle_seed(t, ctx.k, ctx.ell, spec.budget);
      ConfidenceSet out;
      out.target_size = ctx.k;
      for (Vertex v : est.placement.vertices) out.members.push_back({v, est.log_likelihood});
      return out;
    }
    case Method::kSkeleton:
      return skeleton_leaf_set(t, ctx.skeleton, spec.K);
    case Method::kStar:
      return star_recover(t, ctx.k, spec.m, spec.m_prime);
    case Method::kAll: {
      ConfidenceSet out;
      out.target_size = t.size();
      for (Vertex v = 0; v < t.size(); ++v) out.members.push_back({v, 0.0});
      return out;
    }
  }
  throw ParameterError("unhandled estimator method");
}

void validate(const ExperimentConfig& cfg) {
  const std::size_t k = cfg.seed_tree.size();
  if (k == 0) throw ParameterError("seed tree is empty");
  if (cfg.n < k) {
    throw ParameterError("n = " + std::to_string(cfg.n) + " is smaller than the seed (" +
                         std::to_string(k) + " vertices)");
  }
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) {
    throw ParameterError("alpha must be a finite value >= 0");
  }
  if (cfg.trials == 0) throw ParameterError("trials must be at least 1");
  if (cfg.jobs == 0) throw ParameterError("jobs must be at least 1");
  if (!(cfg.z > 0.0)) throw ParameterError("z must be positive");
  if (cfg.threshold && !(*cfg.threshold >= 0.0 && *cfg.threshold <= 1.0)) {
    throw ParameterError("threshold must lie in [0, 1]");
  }
  const Method m = cfg.estimator.method;
  if (!allows(m, cfg.criterion)) {
    throw ParameterError("estimator '" + std::string(to_string(m)) +
                         "' does not produce sets for criterion '" +
                         std::string(to_string(cfg.criterion)) + "'");
  }
  if (m == Method::kSkeleton && seed_info(cfg.seed_tree).k <= seed_info(cfg.seed_tree).ell) {
    throw ParameterError("the skeleton estimator needs a seed with a non-empty skeleton (k >= 3)");
  }
  if (m == Method::kDfs && !(cfg.estimator.eps > 0.0 && cfg.estimator.eps < 1.0)) {
    throw ParameterError("dfs: eps must lie in (0, 1)");
  }
  if (m == Method::kStar && (cfg.estimator.m == 0 || cfg.estimator.m_prime == 0)) {
    throw ParameterError("star: m and m' must be positive");
  }
}

SuccessFlags score(const ConfidenceSet& output, const SeedPlacement& seed, Vertex root) {
  std::vector<Vertex> h = output.vertices();
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  auto in_h = [&](Vertex v) { return std::binary_search(h.begin(), h.end(), v); };

  SuccessFlags f;
  for (Vertex v : seed.vertices) f.seed_hits += in_h(v) ? 1 : 0;
  for (Vertex v : seed.leaves) f.leaf_hits += in_h(v) ? 1 : 0;
  f.by_criterion[static_cast<std::size_t>(Criterion::kRoot)] = in_h(root);
  f.by_criterion[static_cast<std::size_t>(Criterion::kIntersect)] = f.seed_hits >= 1;
  f.by_criterion[static_cast<std::size_t>(Criterion::kCover)] = f.seed_hits == seed.k();
  f.by_criterion[static_cast<std::size_t>(Criterion::kCoverLeaves)] = f.leaf_hits == seed.ell();
  return f;
}

ExperimentSummary summarize(const std::vector<TrialOutcome>& outcomes, double z) {
  ExperimentSummary s;
  s.trials = outcomes.size();
  for (const auto& o : outcomes) s.successes += o.success ? 1 : 0;
  if (s.trials > 0) {
    s.p_hat = static_cast<double>(s.successes) / static_cast<double>(s.trials);
    s.ci = wilson_interval(s.successes, s.trials, z);
  }
  return s;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const SeedInfo info = seed_info(cfg.seed_tree);
  ExperimentResult result;
  result.outcomes.resize(cfg.trials);

  parallel_trials(cfg.trials, cfg.jobs, [&](std::size_t trial) {
    TrialOutcome& o = result.outcomes[trial];
    o.trial = trial;
    o.rng_seed = derive_seed(cfg.master_seed, trial);
    const TrialWorld w = make_world(cfg, info, o.rng_seed);

    const auto start = std::chrono::steady_clock::now();
    const ConfidenceSet output = run_estimator(w.generated.tree, cfg.estimator, w.ctx);
    const auto stop = std::chrono::steady_clock::now();
    if (cfg.record_runtime) {
      o.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }

    o.flags = score(output, w.truth, w.root);
    o.success = o.flags[cfg.criterion];
    o.intersection_size = o.flags.seed_hits;
    if (cfg.replay_every > 0 && trial % cfg.replay_every == 0) {
      verify_replay(cfg, w, output, o.flags, trial);
    }
  });

  result.summary = summarize(result.outcomes, cfg.z);
  return result;
}

void write_outcomes_csv(std::ostream& out, const ExperimentConfig& cfg,
                        const ExperimentResult& result) {
  const SeedInfo info = seed_info(cfg.seed_tree);
  const std::string alpha = format_double(cfg.alpha, "%.17g");
  const std::string method(to_string(cfg.estimator.method));
  const std::string criterion(to_string(cfg.criterion));
  const std::size_t K = cfg.estimator.reported_K(cfg.n, info.k);
  out << "trial_id,n,k,ell,alpha,method,K,criterion,success,intersection_size,runtime_ms,rng_seed\n";
  for (const auto& o : result.outcomes) {
    out << o.trial << ',' << cfg.n << ',' << info.k << ',' << info.ell << ',' << alpha << ','
        << method << ',' << K << ',' << criterion << ',' << (o.success ? 1 : 0) << ','
        << o.intersection_size << ',' << format_double(o.runtime_ms, "%.3f") << ',' << o.rng_seed
        << '\n';
  }
}

KSearchResult minimal_k_search(const ExperimentConfig& cfg, Criterion criterion, double target,
                               std::span<const std::size_t> grid) {
  if (grid.empty()) throw ParameterError("K grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw ParameterError("K grid must be strictly ascending");
  }
  if (!(target >= 0.0 && target <= 1.0)) throw ParameterError("target must lie in [0, 1]");
  ExperimentConfig base = cfg;
  base.criterion = criterion;
  base.estimator.K = grid.back();
  validate(base);
  const SeedInfo info = seed_info(cfg.seed_tree);

  const std::size_t G = grid.size();
  std::vector<std::uint8_t> hits(cfg.trials * G, 0);
  parallel_trials(cfg.trials, cfg.jobs, [&](std::size_t trial) {
    const TrialWorld w = make_world(base, info, derive_seed(cfg.master_seed, trial));
    const Tree& t = w.generated.tree;
    std::uint8_t* row = hits.data() + trial * G;
    if (nested(base.estimator.method)) {
      const ConfidenceSet full = run_estimator(t, base.estimator, w.ctx);
      for (std::size_t g = 0; g < G; ++g) {
        row[g] = score(prefix(full, grid[g]), w.truth, w.root)[criterion];
      }
    } else {
      EstimatorSpec spec = base.estimator;
      for (std::size_t g = 0; g < G; ++g) {
        spec.K = grid[g];
        row[g] = score(run_estimator(t, spec, w.ctx), w.truth, w.root)[criterion];
      }
    }
  });

  KSearchResult r;
  r.target = target;
  for (std::size_t g = 0; g < G; ++g) {
    CurvePoint p;
    p.K = grid[g];
    p.trials = cfg.trials;
    for (std::size_t t = 0; t < cfg.trials; ++t) p.successes += hits[t * G + g];
    p.p_hat = static_cast<double>(p.successes) / static_cast<double>(p.trials);
    p.ci = wilson_interval(p.successes, p.trials, cfg.z);
    // The Wilson lower bound stays below 1, so a target of 1 asks for a
    // failure-free K instead.
    const bool reached = target >= 1.0 ? p.successes == p.trials : p.ci.lo >= target;
    if (reached && !r.chosen) r.chosen = p.K;
    r.curve.push_back(p);
  }
  return r;
}

void write_curve_csv(std::ostream& out, const KSearchResult& result) {
  out << "K,p_hat,ci_lo,ci_hi\n";
  for (const auto& p : result.curve) {
    out << p.K << ',' << format_double(p.p_hat, "%.6f") << ',' << format_double(p.ci.lo, "%.6f")
        << ',' << format_double(p.ci.hi, "%.6f") << '\n';
  }
}

void write_curve_svg(std::ostream& out, const KSearchResult& result, std::string_view title) {
  constexpr double W = 640, H = 400, L = 60, R = 20, T = 40, B = 50;
  const double kmin = result.curve.empty() ? 0.0 : static_cast<double>(result.curve.front().K);
  double kmax = result.curve.empty() ? 1.0 : static_cast<double>(result.curve.back().K);
  if (kmax <= kmin) kmax = kmin + 1.0;
  auto x = [&](double K) { return L + (K - kmin) / (kmax - kmin) * (W - L - R); };
  auto y = [&](double p) { return T + (1.0 - p) * (H - T - B); };
  auto f = [](double v) { return format_double(v, "%.2f"); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << f(W / 2) << "\" y=\"20\" text-anchor=\"middle\">" << title << "</text>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
  for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    out << "<text x=\"" << L - 8 << "\" y=\"" << f(y(p) + 4) << "\" text-anchor=\"end\">"
        << format_double(p, "%.2f") << "</text>\n";
  }
  out << "<text x=\"" << f(kmin == kmax ? L : x(kmin)) << "\" y=\"" << H - B + 18
      << "\" text-anchor=\"middle\">" << kmin << "</text>\n";
  out << "<text x=\"" << f(x(kmax)) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\">"
      << kmax << "</text>\n";
  out << "<text x=\"" << f(W / 2) << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\">K</text>\n";
  if (result.target > 0.0) {
    out << "<line x1=\"" << L << "\" y1=\"" << f(y(result.target)) << "\" x2=\"" << W - R
        << "\" y2=\"" << f(y(result.target)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  }
  if (!result.curve.empty()) {
    // CI band: upper edge left to right, lower edge back.
    out << "<polygon fill=\"steelblue\" fill-opacity=\"0.2\" points=\"";
    for (const auto& p : result.curve) out << f(x(p.K)) << ',' << f(y(p.ci.hi)) << ' ';
    for (auto it = result.curve.rbegin(); it != result.curve.rend(); ++it) {
      out << f(x(it->K)) << ',' << f(y(it->ci.lo)) << ' ';
    }
    out << "\"/>\n<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
    for (const auto& p : result.curve) out << f(x(p.K)) << ',' << f(y(p.p_hat)) << ' ';
    out << "\"/>\n";
    for (const auto& p : result.curve) {
      out << "<circle cx=\"" << f(x(p.K)) << "\" cy=\"" << f(y(p.p_hat))
          << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
  }
  if (result.chosen) {
    out << "<line x1=\"" << f(x(*result.chosen)) << "\" y1=\"" << T << "\" x2=\""
        << f(x(*result.chosen)) << "\" y2=\"" << H - B
        << "\" stroke=\"firebrick\" stroke-dasharray=\"2 3\"/>\n";
  }
  out << "</svg>\n";
}

namespace {

constexpr std::size_t kMinDistTrials = 50;

DistCheckResult ks_check(DistCheckKind kind, std::vector<double> sample, BetaIntParams beta,
                         std::string detail) {
  std::sort(sample.begin(), sample.end());
  DistCheckResult r;
  r.kind = kind;
  r.samples = sample.size();
  r.statistic = ks_statistic(sample, [&](double x) { return beta_cdf_int(beta, x); });
  r.critical = ks_critical_value(sample.size());
  r.pass = r.statistic < r.critical;
  r.detail = std::move(detail);
  r.extras = {{"beta_a", beta.a}, {"beta_b", beta.b}};
  return r;
}

// Rooted shape string of the hanging subtree of `anchor`.
std::string hanging_shape(const HangingSizes& hs, Vertex anchor) {
  std::unordered_map<Vertex, Vertex> local;
  local.emplace(anchor, 0);
  std::vector<Edge> edges;
  for (Vertex v : hs.order) {
    if (v == anchor || hs.owner[v] != anchor) continue;
    const auto id = static_cast<Vertex>(local.size());
    local.emplace(v, id);
    edges.emplace_back(local.at(hs.parent[v]), id);
  }
  return oracle::rooted_shape_string(Tree::from_edges(edges, local.size()), 0);
}

}  // namespace

DistCheckResult distribution_check(DistCheckConfig cfg) {
  auto dflt = [](std::size_t& field, std::size_t value) {
    if (field == 0) field = value;
  };
  switch (cfg.kind) {
    case DistCheckKind::kDirichletMarginal:
      dflt(cfg.k, 3), dflt(cfg.n, 20000), dflt(cfg.trials, 1000);
      break;
    case DistCheckKind::kSpacings:
      dflt(cfg.k, 5), dflt(cfg.j, 2), dflt(cfg.trials, 2000);
      break;
    case DistCheckKind::kConditionalUrrt:
      dflt(cfg.k, 2), dflt(cfg.n, 8), dflt(cfg.m, 4), dflt(cfg.trials, 14000);
      break;
    case DistCheckKind::kNakedLeaf:
      dflt(cfg.k, 4), dflt(cfg.K, 13), dflt(cfg.trials, 10000);
      break;
  }
  if (cfg.trials < kMinDistTrials) {
    throw ParameterError("distribution checks need at least " + std::to_string(kMinDistTrials) +
                         " trials (got " + std::to_string(cfg.trials) + ")");
  }

  switch (cfg.kind) {
    case DistCheckKind::kDirichletMarginal: {
      if (cfg.k < 2 || cfg.n <= cfg.k) throw ParameterError("dirichlet-marginal: need 2 <= k < n");
      const Tree seed = seeds::path(cfg.k);
      std::vector<double> fractions(cfg.trials);
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        const Generated g = generate(seed, cfg.n, 0.0, derive_seed(cfg.master_seed, i), {false});
        const std::vector<Vertex> anchors(g.record.seed.vertices);
        const HangingSizes hs = hanging_sizes(g.tree, anchors);
        fractions[i] = static_cast<double>(hs.size[0]) / static_cast<double>(cfg.n);
      }
      return ks_check(cfg.kind, std::move(fractions),
                      {1, static_cast<unsigned>(cfg.k - 1)},
                      "KS distance of |T_u1|/n against Beta(1, k-1)");
    }
    case DistCheckKind::kSpacings: {
      if (cfg.j == 0 || cfg.j >= cfg.k) throw ParameterError("spacings: need 1 <= j < k");
      std::vector<double> sums(cfg.trials);
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        Rng rng(derive_seed(cfg.master_seed, i));
        const std::vector<double> s = uniform_spacings(cfg.k, rng);
        sums[i] = std::accumulate(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(cfg.j), 0.0);
      }
      return ks_check(cfg.kind, std::move(sums),
                      {static_cast<unsigned>(cfg.j), static_cast<unsigned>(cfg.k - cfg.j)},
                      "KS distance of the sum of j of k uniform spacings against Beta(j, k-j)");
    }
    case DistCheckKind::kConditionalUrrt: {
      if (cfg.k < 1 || cfg.m < 2 || cfg.m > oracle::kMaxOracleVertices ||
          cfg.n < cfg.k + cfg.m - 1) {
        throw ParameterError("conditional-urrt: need 2 <= m <= " +
                             std::to_string(oracle::kMaxOracleVertices) + " and n >= k + m - 1");
      }
      const std::vector<Tree> shapes = oracle::rooted_shapes(cfg.m);
      std::vector<std::string> keys;
      std::vector<double> probs;
      for (const Tree& s : shapes) {
        keys.push_back(oracle::rooted_shape_string(s, 0));
        probs.push_back(boost::rational_cast<double>(oracle::rooted_shape_probability(s, 0)));
      }
      std::vector<std::size_t> counts(shapes.size(), 0);
      const Tree seed = seeds::path(cfg.k);
      std::size_t accepted = 0;
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        const Generated g = generate(seed, cfg.n, 0.0, derive_seed(cfg.master_seed, i), {false});
        const HangingSizes hs = hanging_sizes(g.tree, g.record.seed.vertices);
        if (hs.size[0] != cfg.m) continue;
        const std::string key = hanging_shape(hs, 0);
        const auto it = std::find(keys.begin(), keys.end(), key);
        if (it == keys.end()) throw Error("conditional-urrt: unknown rooted shape " + key);
        ++counts[static_cast<std::size_t>(it - keys.begin())];
        ++accepted;
      }
      if (accepted < kMinDistTrials) {
        throw ParameterError("conditional-urrt: only " + std::to_string(accepted) +
                             " trials met the size condition; increase trials");
      }
      const ChiSquareResult chi = chi_square_gof(counts, probs);
      DistCheckResult r;
      r.kind = cfg.kind;
      r.samples = accepted;
      r.statistic = chi.statistic;
      r.critical = chi_square_critical(chi.degrees_of_freedom, 0.01);
      r.pass = chi.p_value > 0.01;
      r.detail = "chi-square of hanging-subtree shapes given |T_u1| = m against exact UA(m)";
      r.extras = {{"p_value", chi.p_value},
                  {"degrees_of_freedom", static_cast<double>(chi.degrees_of_freedom)},
                  {"shapes", static_cast<double>(shapes.size())}};
      return r;
    }
    case DistCheckKind::kNakedLeaf: {
      if (cfg.k < 2 || cfg.K <= cfg.k) throw ParameterError("naked-leaf: need 2 <= k < K");
      const Tree seed = seeds::star(cfg.k);
      std::size_t naked = 0;
      for (std::size_t i = 0; i < cfg.trials; ++i) {
        const Generated g = generate(seed, cfg.K, 0.0, derive_seed(cfg.master_seed, i), {false});
        // Leaf 1 of the star is naked when nothing attached to it.
        naked += g.tree.degree(1) == 1 ? 1 : 0;
      }
      const double expected =
          static_cast<double>(cfg.k - 1) / static_cast<double>(cfg.K - 1);
      const double p_hat = static_cast<double>(naked) / static_cast<double>(cfg.trials);
      const double sigma =
          std::sqrt(expected * (1.0 - expected) / static_cast<double>(cfg.trials));
      DistCheckResult r;
      r.kind = cfg.kind;
      r.samples = cfg.trials;
      r.statistic = std::abs(p_hat - expected);
      r.critical = 3.5 * sigma;
      r.pass = r.statistic <= r.critical;
      r.detail = "|p_hat - (k-1)/(K-1)| for a fixed seed leaf, critical 3.5 standard errors";
      r.extras = {{"p_hat", p_hat}, {"expected", expected}, {"std_error", sigma}};
      return r;
    }
  }
  throw ParameterError("unhandled distribution check");
}

}  // namespace seedtrace
