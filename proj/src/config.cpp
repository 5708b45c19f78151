#include "seedtrace/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "seedtrace/errors.hpp"
#include "seedtrace/generator.hpp"
#include "seedtrace/tree_io.hpp"

namespace seedtrace {

namespace {

using nlohmann::json;

std::size_t parse_count(std::string_view token, std::string_view context) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw ParameterError("seed '" + std::string(context) + "': expected a positive integer, got '" +
                         std::string(token) + "'");
  }
  return value;
}

template <typename T>
T get(const json& j, const char* key, T fallback) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("config field '") + key + "' has the wrong type");
  }
}

template <typename T>
T require(const json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("config is missing '") + key + "'");
  return get<T>(j, key, T{});
}

SeedSpec seed_from_json(const json& s, const std::filesystem::path& base_dir) {
  if (!s.is_object()) throw InputError("config field 'seed' must be an object");
  if (s.contains("file")) {
    std::filesystem::path p = require<std::string>(s, "file");
    if (p.is_relative()) p = base_dir / p;
    return {read_tree_file(p), p.filename().string()};
  }
  if (s.contains("edges")) {
    const auto raw = require<std::vector<std::array<std::size_t, 2>>>(s, "edges");
    const auto n = get<std::size_t>(s, "n", raw.size() + 1);
    std::vector<Edge> edges;
    for (const auto& [u, v] : raw) edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    return {Tree::from_edges(edges, n), "edges:" + std::to_string(n)};
  }
  const auto shape = require<std::string>(s, "shape");
  if (shape == "spider") {
    const auto legs = require<std::vector<std::size_t>>(s, "legs");
    std::string label = "spider:";
    for (std::size_t i = 0; i < legs.size(); ++i) label += (i ? "," : "") + std::to_string(legs[i]);
    return {seeds::spider(legs), label};
  }
  if (shape == "single") return parse_seed_shape(shape);
  return parse_seed_shape(shape + ":" + std::to_string(require<std::size_t>(s, "k")));
}

}  // namespace

SeedSpec parse_seed_shape(std::string_view text) {
  if (text == "single") return {seeds::single_vertex(), "single"};
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParameterError("unknown seed '" + std::string(text) +
                         "' (expected single, path:K, star:K or spider:L1,L2,...)");
  }
  const std::string_view kind = text.substr(0, colon);
  const std::string_view rest = text.substr(colon + 1);
  if (kind == "path" || kind == "star") {
    const std::size_t k = parse_count(rest, text);
    if (k == 0) throw ParameterError("seed '" + std::string(text) + "' needs k >= 1");
    return {kind == "path" ? seeds::path(k) : seeds::star(k), std::string(text)};
  }
  if (kind == "spider") {
    std::vector<std::size_t> legs;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto end = comma == std::string_view::npos ? rest.size() : comma;
      legs.push_back(parse_count(rest.substr(start, end - start), text));
      start = end + 1;
    }
    return {seeds::spider(legs), std::string(text)};
  }
  throw ParameterError("unknown seed shape '" + std::string(kind) + "'");
}

ExperimentSpec parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("config must be a JSON object");

  ExperimentSpec spec;
  ExperimentConfig& c = spec.config;
  if (!j.contains("seed")) throw InputError("config is missing 'seed'");
  SeedSpec seed = seed_from_json(j["seed"], base_dir);
  c.seed_tree = std::move(seed.tree);
  c.seed_label = std::move(seed.label);
  c.n = require<std::size_t>(j, "n");
  c.alpha = get<double>(j, "alpha", 0.0);

  if (!j.contains("estimator") || !j["estimator"].is_object()) {
    throw InputError("config is missing the 'estimator' object");
  }
  const json& e = j["estimator"];
  EstimatorSpec& est = c.estimator;
  est.method = parse_method(require<std::string>(e, "method"));
  est.K = get<std::size_t>(e, "K", est.K);
  est.anchor_K = get<std::size_t>(e, "anchor_K", est.anchor_K);
  est.eps = get<double>(e, "eps", est.eps);
  est.m = get<std::size_t>(e, "m", est.m);
  est.m_prime = get<std::size_t>(e, "m_prime", est.m_prime);
  est.budget = get<std::size_t>(e, "budget", est.budget);

  c.criterion = parse_criterion(get<std::string>(j, "criterion", "root"));
  c.trials = get<std::size_t>(j, "trials", c.trials);
  spec.has_master_seed = j.contains("master_seed") && !j["master_seed"].is_null();
  c.master_seed = get<std::uint64_t>(j, "master_seed", c.master_seed);
  c.jobs = get<std::size_t>(j, "jobs", c.jobs);
  c.anonymize = get<bool>(j, "anonymize", c.anonymize);
  c.record_runtime = get<bool>(j, "record_runtime", c.record_runtime);
  c.z = get<double>(j, "z", c.z);
  c.replay_every = get<std::size_t>(j, "replay_every", c.replay_every);
  if (j.contains("threshold") && !j["threshold"].is_null()) {
    c.threshold = get<double>(j, "threshold", 0.0);
  }

  if (j.contains("k_search")) {
    const json& ks = j["k_search"];
    if (!ks.is_object()) throw InputError("config field 'k_search' must be an object");
    KSearchSpec s;
    s.grid = require<std::vector<std::size_t>>(ks, "grid");
    s.target = get<double>(ks, "target", s.target);
    if (ks.contains("criterion")) s.criterion = parse_criterion(require<std::string>(ks, "criterion"));
    spec.k_search = std::move(s);
  }
  validate(c);
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str(), path.parent_path().empty() ? "." : path.parent_path());
}

}  // namespace seedtrace
