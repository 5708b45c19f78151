#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "seedtrace/config.hpp"
#include "seedtrace/errors.hpp"

using namespace seedtrace;

TEST_CASE("seed shape notation") {
  CHECK(parse_seed_shape("single").tree.size() == 1);
  CHECK(parse_seed_shape("path:4").tree == testutil::path(4));
  CHECK(parse_seed_shape("star:5").tree == testutil::star(5));
  const auto spider = parse_seed_shape("spider:2,2,1");
  CHECK(spider.tree.size() == 6);
  CHECK(spider.label == "spider:2,2,1");
  CHECK_THROWS_AS(parse_seed_shape("ring:4"), ParameterError);
  CHECK_THROWS_AS(parse_seed_shape("path:x"), ParameterError);
}

TEST_CASE("experiment config parsing") {
  const auto spec = parse_experiment(R"({
    "seed": {"shape": "spider", "legs": [2, 2, 1]},
    "n": 500, "alpha": 0.5,
    "estimator": {"method": "skeleton", "K": 45},
    "criterion": "cover-leaves",
    "trials": 20, "master_seed": 9, "jobs": 2,
    "k_search": {"grid": [1, 5, 10], "target": 0.8}
  })");
  const auto& c = spec.config;
  CHECK(c.seed_tree.size() == 6);
  CHECK(c.n == 500);
  CHECK(c.alpha == 0.5);
  CHECK(c.estimator.method == Method::kSkeleton);
  CHECK(c.estimator.K == 45);
  CHECK(c.criterion == Criterion::kCoverLeaves);
  CHECK(c.trials == 20);
  CHECK(c.master_seed == 9);
  CHECK(spec.has_master_seed);
  REQUIRE(spec.k_search.has_value());
  CHECK(spec.k_search->grid == std::vector<std::size_t>{1, 5, 10});
  CHECK(spec.k_search->target == 0.8);

  const auto edges = parse_experiment(
      R"({"seed": {"edges": [[0, 1], [1, 2]], "n": 3}, "n": 10, "estimator": {"method": "psi"}})");
  CHECK(edges.config.seed_tree == testutil::path(3));
  CHECK_FALSE(edges.has_master_seed);
}

TEST_CASE("experiment config errors") {
  CHECK_THROWS_AS(parse_experiment("{"), InputError);
  CHECK_THROWS_AS(parse_experiment(R"({"seed": {"shape": "path", "k": 3}, "n": "ten",
                                       "estimator": {"method": "psi"}})"),
                  InputError);
  CHECK_THROWS_AS(parse_experiment(R"({"n": 10, "estimator": {"method": "psi"}})"), InputError);
  CHECK_THROWS_AS(parse_experiment(R"({"seed": {"edges": [[0, 1], [2, 3]], "n": 4}, "n": 10,
                                       "estimator": {"method": "psi"}})"),
                  InputError);
  CHECK_THROWS_AS(parse_experiment(R"({"seed": {"shape": "path", "k": 3}, "n": 10,
                                       "estimator": {"method": "psi", "K": 2},
                                       "criterion": "cover"})"),
                  ParameterError);
}

TEST_CASE("seed files resolve against the config directory") {
  const auto dir = std::filesystem::temp_directory_path() / "seedtrace_config_test";
  std::filesystem::create_directories(dir);
  std::ofstream(dir / "p3.tree") << "3\n0 1\n1 2\n";
  std::ofstream(dir / "exp.json")
      << R"({"seed": {"file": "p3.tree"}, "n": 50, "estimator": {"method": "phi", "K": 3}})";
  const auto spec = load_experiment(dir / "exp.json");
  CHECK(spec.config.seed_tree == testutil::path(3));
  CHECK_THROWS_AS(load_experiment(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}
