#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seedtrace/cli.hpp"

using seedtrace::cli::dispatch;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("seedtrace_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

}  // namespace

TEST_CASE("bounds prints the rounded value") {
  auto r = run({"bounds", "--name", "root-psi", "--eps", "0.1", "--plain"});
  CHECK(r.code == 0);
  CHECK(r.out == "58\n");
  r = run({"bounds", "--name", "root-psi", "--eps", "0.1"});
  CHECK(nlohmann::json::parse(r.out)["value"] == 58);
  r = run({"bounds", "--name", "skeleton", "--eps", "0.1", "--k", "6", "--ell", "3", "--plain"});
  CHECK(r.out == "45\n");
  r = run({"bounds", "--name", "leaf-exist", "--eps", "0.25", "--k", "4", "--ell", "3", "--plain"});
  CHECK(r.out == "12\n");
}

TEST_CASE("find-root on a path picks the middle") {
  TempDir d;
  const auto p5 = d.file("p5.tree", "5\n0 1\n1 2\n2 3\n3 4\n");
  for (const char* method : {"psi", "phi", "mle"}) {
    const auto r = run({"find-root", "--tree", p5, "--method", method, "--K", "1"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["set"]["vertices"] == nlohmann::json::array({2}));
  }
}

TEST_CASE("gen is deterministic") {
  TempDir d;
  const auto p2 = d.file("p2.tree", "2\n0 1\n");
  const auto a = (d.path / "a.tree").string(), b = (d.path / "b.tree").string();
  CHECK(run({"gen", "--seed-file", p2, "--n", "3", "--alpha", "0", "--rng-seed", "7", "--out", a}).code == 0);
  CHECK(run({"gen", "--seed-file", p2, "--n", "3", "--alpha", "0", "--rng-seed", "7", "--out", b}).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto r1 = run({"gen", "--seed", "path:3", "--n", "40", "--rng-seed", "3"});
  const auto r2 = run({"gen", "--seed", "path:3", "--n", "40", "--rng-seed", "3"});
  CHECK(r1.out == r2.out);
  const auto j = nlohmann::json::parse(r1.out);
  CHECK(j["n"] == 40);
  CHECK(j["edges"].size() == 39);
  CHECK(j["seed_vertices"].size() == 3);
}

TEST_CASE("gen writes a growth record") {
  TempDir d;
  const auto rec = (d.path / "rec.json").string();
  CHECK(run({"gen", "--seed", "star:4", "--n", "30", "--rng-seed", "1", "--record-out", rec}).code == 0);
  const auto j = nlohmann::json::parse(slurp(rec));
  CHECK(j["k"] == 4);
  CHECK(j["parent"].size() == 26);
  CHECK(j["anonymization"].size() == 30);
}

TEST_CASE("the environment supplies a fallback seed") {
  unsetenv("SEEDTRACE_RNG_SEED");
  CHECK(run({"gen", "--seed", "single", "--n", "5"}).code == 2);
  setenv("SEEDTRACE_RNG_SEED", "12", 1);
  const auto env = run({"gen", "--seed", "single", "--n", "30"});
  unsetenv("SEEDTRACE_RNG_SEED");
  CHECK(env.code == 0);
  CHECK(env.out == run({"gen", "--seed", "single", "--n", "30", "--rng-seed", "12"}).out);
}

TEST_CASE("estimator subcommands") {
  TempDir d;
  const auto s5 = d.file("s5.tree", "5\n0 1\n0 2\n0 3\n0 4\n");
  auto r = run({"find-leaves", "--tree", s5, "--skeleton", "0", "--K", "4"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["set"]["size"] == 4);

  r = run({"find-star", "--tree", s5, "--k", "5", "--m", "1", "--mprime", "4"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["set"]["size"] == 5);

  r = run({"find-seed", "--tree", s5, "--method", "mle", "--k", "3", "--ell", "2"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["placement"] == nlohmann::json::array({0, 1, 2}));

  r = run({"find-seed", "--tree", s5, "--method", "dfs", "--k", "2", "--ell", "2", "--eps", "0.5"});
  CHECK(r.code == 0);
}

TEST_CASE("exit codes") {
  TempDir d;
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"bounds", "--name", "root-psi"}).code == 2);
  CHECK(run({"bounds", "--name", "root-psi", "--eps", "2"}).code == 2);
  CHECK(run({"find-root", "--tree", (d.path / "none.tree").string(), "--method", "psi"}).code == 3);
  const auto bad = d.file("bad.tree", "4\n0 1\n2 3\n");
  const auto r = run({"find-root", "--tree", bad, "--method", "psi"});
  CHECK(r.code == 3);
  CHECK(r.err.find("expected 3 edges") != std::string::npos);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"gen", "--help"}).code == 0);
}

TEST_CASE("experiment and thresholds") {
  TempDir d;
  const auto pass = d.file("pass.json", R"({"seed": {"shape": "path", "k": 3}, "n": 100,
      "estimator": {"method": "all"}, "criterion": "cover", "trials": 20, "threshold": 1.0})");
  const auto csv = (d.path / "out.csv").string();
  auto r = run({"experiment", "--config", pass, "--csv", csv, "--jobs", "3"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["summary"]["p_hat"] == 1.0);
  CHECK(slurp(csv).rfind("trial_id,", 0) == 0);

  const auto fail = d.file("fail.json", R"({"seed": {"shape": "path", "k": 3}, "n": 100,
      "estimator": {"method": "psi", "K": 0}, "criterion": "root", "trials": 20, "threshold": 0.5})");
  CHECK(run({"experiment", "--config", fail}).code == 4);

  const auto curve = d.file("curve.json", R"({"seed": {"shape": "single"}, "n": 200,
      "estimator": {"method": "psi"}, "criterion": "root", "trials": 50,
      "k_search": {"grid": [1, 10, 200], "target": 1.0}})");
  const auto svg = (d.path / "c.svg").string();
  r = run({"experiment", "--config", curve, "--svg", svg, "--master-seed", "4"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["chosen_K"] == 200);
  CHECK(j["curve"].size() == 3);
  CHECK(slurp(svg).find("<svg") != std::string::npos);
}

TEST_CASE("check-dist") {
  auto r = run({"check-dist", "--kind", "naked-leaf", "--master-seed", "2"});
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["pass"] == true);
  CHECK(run({"check-dist", "--kind", "naked-leaf", "--trials", "10"}).code == 2);
  CHECK(run({"check-dist", "--kind", "bogus"}).code == 2);
}
