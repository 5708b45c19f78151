#include "seedtrace/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seedtrace/diagnostics.hpp"
#include "seedtrace/errors.hpp"

namespace seedtrace {

namespace {

constexpr double kLogPhiTieResolution = 1e-12;

}  // namespace

std::vector<std::uint32_t> psi_all(const Tree& t) {
  const std::size_t n = t.size();
  if (n < 2) {
    warn("psi is undefined on a single-vertex tree");
    return {};
  }
  const Rooting r = root_at(t, 0);
  const auto size = subtree_sizes(r);
  std::vector<std::uint32_t> psi(n, 0);
  for (Vertex v : r.order) {
    if (r.parent[v] != kNoVertex) {
      psi[v] = std::max<std::uint32_t>(psi[v], static_cast<std::uint32_t>(n) - size[v]);
      psi[r.parent[v]] = std::max(psi[r.parent[v]], size[v]);
    }
  }
  return psi;
}

std::vector<double> phi_log_all(const Tree& t) {
  const std::size_t n = t.size();
  if (n < 2) {
    warn("phi is undefined on a single-vertex tree");
    return {};
  }
  const Rooting r = root_at(t, 0);
  const auto size = subtree_sizes(r);
  std::vector<double> log_phi(n, 0.0);
  double root_value = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    if (v != r.root) root_value += std::log(static_cast<double>(size[v]));
  }
  log_phi[r.root] = root_value;
  const double dn = static_cast<double>(n);
  for (Vertex v : r.order) {
    if (v == r.root) continue;
    const double s = size[v];
    log_phi[v] = log_phi[r.parent[v]] + std::log(dn - s) - std::log(s);
  }
  return log_phi;
}

CentralityScores centrality_scores(const Tree& t) { return {psi_all(t), phi_log_all(t)}; }

ConfidenceSet psi_set(const Tree& t, std::size_t K) {
  if (t.size() == 1) {
    ConfidenceSet out;
    out.target_size = K;
    if (K > 0) out.members.push_back({0, 0.0});
    return out;
  }
  const auto psi = psi_all(t);
  const std::vector<double> scores(psi.begin(), psi.end());
  return top_k(scores, K, Direction::kAscending);
}

ConfidenceSet phi_set(const Tree& t, std::size_t K) {
  if (t.size() == 1) {
    ConfidenceSet out;
    out.target_size = K;
    if (K > 0) out.members.push_back({0, 0.0});
    return out;
  }
  const auto log_phi = phi_log_all(t);
  double scale = 1.0;
  for (double x : log_phi) scale = std::max(scale, std::abs(x));
  return top_k(log_phi, K, Direction::kAscending, {}, kLogPhiTieResolution * scale);
}

double dfs_threshold(std::size_t n, std::size_t k, std::size_t ell, double eps) {
  return static_cast<double>(n) * eps / (2.0 * static_cast<double>(k) * static_cast<double>(ell));
}

ConfidenceSet dfs_cover_set(const Tree& t, const ConfidenceSet& intersect_set, std::size_t k,
                            std::size_t ell, double eps, std::size_t K_cap) {
  if (!(eps > 0.0 && eps < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  if (k < 1) throw ParameterError("k must be at least 1");
  if (ell < 1) throw ParameterError("ell must be at least 1");

  ConfidenceSet out;
  out.target_size = K_cap;
  if (intersect_set.empty()) {
    warn("dfs_cover_set: empty anchor set, returning an empty set");
    return out;
  }

  const std::size_t n = t.size();
  const double threshold = dfs_threshold(n, k, ell, eps);
  // One fixed rooting answers every directed size query:
  // moving from v to a child w sees size[w], moving to the parent sees n - size[v].
  const Rooting r = root_at(t, 0);
  const auto size = subtree_sizes(r);

  std::vector<char> added(n, 0);
  struct Step {
    Vertex vertex;
    Vertex from;
  };
  std::vector<Step> stack;
  for (const Member& anchor : intersect_set.members) {
    if (out.size() >= K_cap) break;
    if (anchor.vertex >= n) throw InputError("anchor " + std::to_string(anchor.vertex) + " out of range");
    stack.push_back({anchor.vertex, kNoVertex});
    while (!stack.empty() && out.size() < K_cap) {
      const auto [v, from] = stack.back();
      stack.pop_back();
      const std::uint32_t hanging =
          from == kNoVertex ? static_cast<std::uint32_t>(n)
          : r.parent[v] == from ? size[v]
                                : static_cast<std::uint32_t>(n) - size[from];
      if (static_cast<double>(hanging) < threshold) continue;
      if (!added[v]) {
        added[v] = 1;
        out.members.push_back({v, static_cast<double>(hanging)});
      }
      const auto nb = t.neighbors(v);
      for (auto it = nb.rbegin(); it != nb.rend(); ++it) {
        if (*it != from) stack.push_back({*it, v});
      }
    }
    stack.clear();
  }
  return out;
}

}  // namespace seedtrace
