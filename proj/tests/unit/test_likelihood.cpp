#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "seedtrace/errors.hpp"
#include "seedtrace/generator.hpp"
#include "seedtrace/likelihood.hpp"
#include "seedtrace/oracle.hpp"

using namespace seedtrace;
using testutil::make;

namespace {

double as_double(const oracle::Rational& r) { return boost::rational_cast<double>(r); }

// Connected k-subsets with ell induced leaves, by scanning all bitmasks.
std::vector<std::vector<Vertex>> brute_placements(const Tree& t, std::size_t k, std::size_t ell) {
  std::vector<std::vector<Vertex>> out;
  const std::size_t n = t.size();
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    std::vector<Vertex> vs;
    for (Vertex v = 0; v < n; ++v)
      if (mask >> v & 1) vs.push_back(v);
    std::size_t inner_edges = 0, leaves = 0;
    for (Vertex v : vs) {
      std::size_t d = 0;
      for (Vertex w : t.neighbors(v)) d += mask >> w & 1;
      inner_edges += d;
      leaves += d <= 1;
    }
    if (inner_edges / 2 != k - 1) continue;  // a forest with k - 1 edges is a tree
    if (leaves != ell) continue;
    out.push_back(vs);
  }
  return out;
}

}  // namespace

TEST_CASE("canonical codes") {
  CodeTable table;
  const auto p3 = canonical_codes(testutil::path(3), 1, table);
  CHECK(p3[0] == p3[2]);
  CHECK(p3[1] != p3[0]);

  const auto s5 = canonical_codes(testutil::star(5), 0, table);
  CHECK(s5[1] == s5[2]);
  CHECK(s5[2] == s5[3]);
  CHECK(s5[3] == s5[4]);

  Rng rng(4);
  for (int rep = 0; rep < 50; ++rep) {
    const Tree t = testutil::random_tree(2 + rng.below(60), rng);
    const Vertex root = static_cast<Vertex>(rng.below(t.size()));
    const auto p1 = testutil::random_permutation(t.size(), rng);
    const auto p2 = testutil::random_permutation(t.size(), rng);
    CHECK(canonical_codes(t.relabeled(p1), p1[root], table)[p1[root]] ==
          canonical_codes(t.relabeled(p2), p2[root], table)[p2[root]]);
  }
}

TEST_CASE("codes agree with parenthesized strings") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    const Tree t = testutil::random_tree(2 + rng.below(9), rng);
    CodeTable table;
    std::map<CodeId, std::string> seen;
    for (Vertex r = 0; r < t.size(); ++r) {
      const CodeId c = canonical_codes(t, r, table)[r];
      const std::string s = oracle::rooted_shape_string(t, r);
      auto [it, fresh] = seen.emplace(c, s);
      CHECK(it->second == s);
      for (auto& [c2, s2] : seen) CHECK((c2 == c) == (s2 == s));
    }
  }
}

TEST_CASE("Aut and Autbar") {
  const Tree s5 = testutil::star(5);
  const auto la = log_aut(s5, 0);
  CHECK(la[0] == doctest::Approx(std::log(24.0)));
  CHECK(la[1] == 0.0);
  CHECK(aut_bar(s5, 0) == 1);
  CHECK(aut_bar(s5, 3) == 4);
  CHECK(aut_bar(testutil::path(2), 0) == 2);

  Rng rng(19);
  for (int rep = 0; rep < 100; ++rep) {
    const Tree t = testutil::random_tree(1 + rng.below(8), rng);
    for (Vertex u = 0; u < t.size(); ++u) {
      CHECK(aut_bar(t, u) >= 1);
      CHECK(aut_bar(t, u) == oracle::isomorphic_rootings(t, u));
    }
  }
}

TEST_CASE("rooted likelihood examples") {
  const Tree p2 = testutil::path(2);
  CHECK(std::exp(log_likelihood_rooted(p2, 0)) == doctest::Approx(0.5));
  CHECK(std::exp(log_likelihood_rooted(p2, 1)) == doctest::Approx(0.5));

  const Tree p3 = testutil::path(3);
  CHECK(std::exp(log_likelihood_rooted(p3, 1)) == doctest::Approx(0.5));
  CHECK(std::exp(log_likelihood_rooted(p3, 0)) == doctest::Approx(0.25));

  CHECK(log_likelihood_rooted(Tree(), 0) == 0.0);
  CHECK(log_likelihood_all_roots(Tree()) == std::vector<double>{0.0});
}

TEST_CASE("rooted likelihood matches the brute-force oracle") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (const Tree& t : oracle::free_trees(n)) {
      const auto all = log_likelihood_all_roots(t);
      double total = 0.0;
      for (Vertex u = 0; u < n; ++u) {
        const double want = as_double(oracle::brute_force_shape_probability(t, u));
        CHECK(std::exp(log_likelihood_rooted(t, u)) == doctest::Approx(want).epsilon(1e-12));
        CHECK(std::exp(all[u]) == doctest::Approx(want).epsilon(1e-12));
        total += want;
        CHECK(log_likelihood_rooted(t, u) <= 0.0);
      }
      // the per-vertex values add up to the probability of the free shape
      oracle::Rational free_prob = 0;
      const std::string key = oracle::free_shape_string(t);
      oracle::for_each_history(n, [&](const std::vector<Vertex>& parent) {
        if (oracle::free_shape_string(Tree::from_parents(parent)) == key) free_prob += 1;
      });
      std::int64_t histories = 1;
      for (std::size_t i = 2; i < n; ++i) histories *= static_cast<std::int64_t>(i);
      CHECK(total == doctest::Approx(as_double(free_prob / histories)).epsilon(1e-12));
    }
  }
}

TEST_CASE("rerooted likelihoods agree with direct evaluation") {
  Rng rng(101);
  for (int rep = 0; rep < 60; ++rep) {
    const Tree t = testutil::random_tree(2 + rng.below(300), rng);
    const auto all = log_likelihood_all_roots(t);
    const AllRootings ar = all_rootings(t);
    for (Vertex u = 0; u < t.size(); u += 1 + static_cast<Vertex>(t.size() / 25)) {
      CHECK(all[u] == doctest::Approx(log_likelihood_rooted(t, u)).epsilon(1e-10));
    }
    for (Vertex u = 0; u < t.size(); ++u)
      for (Vertex v = u + 1; v < t.size(); ++v)
        if (ar.full[u] == ar.full[v]) CHECK(all[u] == all[v]);
  }
}

TEST_CASE("mle_root") {
  CHECK(mle_root(testutil::path(3)).vertex == 1);
  CHECK(mle_root(testutil::star(5)).vertex == 0);
  // brute force for the star at n = 5
  const Tree s5 = testutil::star(5);
  CHECK((oracle::brute_force_shape_probability(s5, 0) > oracle::brute_force_shape_probability(s5, 1)));
  CHECK(mle_root(testutil::path(4)).vertex == 1);  // tie between 1 and 2
}

TEST_CASE("seed likelihood examples") {
  const Tree p3 = testutil::path(3);
  const auto ab = SeedPlacement::in(p3, std::vector<Vertex>{0, 1});
  const auto bc = SeedPlacement::in(p3, std::vector<Vertex>{1, 2});
  CHECK(std::exp(log_likelihood_seed(p3, ab)) == doctest::Approx(0.5));
  CHECK(std::exp(log_likelihood_seed(p3, bc)) == doctest::Approx(0.5));

  // t equal to the seed
  const Tree s4 = testutil::star(4);
  const auto whole = SeedPlacement::in(s4, std::vector<Vertex>{0, 1, 2, 3});
  CHECK(log_likelihood_seed(s4, whole) == 0.0);

  const Tree s5 = testutil::star(5);
  const auto edge = SeedPlacement::in(s5, std::vector<Vertex>{0, 1});
  CHECK(std::exp(log_likelihood_seed(s5, edge)) ==
        doctest::Approx(as_double(oracle::brute_force_seed_probability(s5, edge))));
  // every new vertex attaches to the center: 1/2 * 1/3 * 1/4
  CHECK((oracle::brute_force_seed_probability(s5, edge) == oracle::Rational(1, 24)));
}

TEST_CASE("seed likelihood matches the seeded oracle on every placement") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const Tree& t : oracle::free_trees(n)) {
      for (std::size_t k = 1; k <= n; ++k) {
        for (std::size_t ell = 1; ell <= k; ++ell) {
          for (const auto& p : enumerate_placements(t, k, ell)) {
            const double want = as_double(oracle::brute_force_seed_probability(t, p));
            CHECK(std::exp(log_likelihood_seed(t, p)) == doctest::Approx(want).epsilon(1e-12));
          }
        }
      }
    }
  }
}

TEST_CASE("the factorized product differs from the seeded probability") {
  // Seed {0, 1} of the path 0-1-2-3: the exact probability is 1/6, the
  // product of hanging-subtree root likelihoods is 1/4.
  const Tree p4 = testutil::path(4);
  const auto p = SeedPlacement::in(p4, std::vector<Vertex>{0, 1});
  CHECK((oracle::brute_force_seed_probability(p4, p) == oracle::Rational(1, 6)));
  CHECK(std::exp(log_likelihood_seed(p4, p)) == doctest::Approx(1.0 / 6.0));
  CHECK(std::exp(log_likelihood_seed_factorized(p4, p)) == doctest::Approx(0.25));
}

TEST_CASE("placement enumeration") {
  const Tree p4 = testutil::path(4);
  auto edges = enumerate_placements(p4, 2, 2);
  REQUIRE(edges.size() == 3);
  CHECK(edges[0].vertices == std::vector<Vertex>{0, 1});
  CHECK(edges[2].vertices == std::vector<Vertex>{2, 3});
  CHECK(enumerate_placements(testutil::star(4), 3, 2).size() == 3);
  CHECK(enumerate_placements(p4, 3, 3).empty());
  CHECK(enumerate_placements(p4, 1, 1).size() == 4);

  Rng rng(8);
  for (int rep = 0; rep < 150; ++rep) {
    const Tree t = testutil::random_tree(1 + rng.below(12), rng);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(t.size(), 6));
    const std::size_t ell = k <= 2 ? k : 2 + rng.below(k - 2);
    auto want = brute_placements(t, k, ell);
    std::sort(want.begin(), want.end());
    const auto got = enumerate_placements(t, k, ell);
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].vertices == want[i]);
  }
}

TEST_CASE("mle_seed") {
  const Tree s4 = testutil::star(4);
  CHECK(mle_seed(s4, 4, 3).placement.vertices == std::vector<Vertex>{0, 1, 2, 3});

  const auto tie = mle_seed(testutil::path(3), 2, 2);
  CHECK(tie.placement.vertices == std::vector<Vertex>{0, 1});
  CHECK(tie.placements == 2);

  CHECK_THROWS_AS(mle_seed(testutil::path(4), 3, 3), InputError);
  CHECK_THROWS_AS(mle_seed(testutil::star(30), 4, 3, 100), BudgetExceeded);
}

TEST_CASE("mle_seed on grown stars usually hits the seed") {
  const Tree seed = seeds::star(5);
  const std::size_t trials = 200;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const Generated g = generate(seed, 300, 0.0, derive_seed(3, i));
    const SeedPlacement truth = g.record.presented_seed(g.tree);
    const SeedEstimate est = mle_seed(g.tree, 5, 4);
    bool hit = false;
    for (Vertex v : est.placement.vertices) hit = hit || truth.contains(v);
    hits += hit;
  }
  CHECK(2 * hits > trials);
}
