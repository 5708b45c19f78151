#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "seedtrace/bounds.hpp"
#include "seedtrace/centrality.hpp"
#include "seedtrace/config.hpp"
#include "seedtrace/errors.hpp"
#include "seedtrace/generator.hpp"
#include "seedtrace/harness.hpp"
#include "seedtrace/likelihood.hpp"
#include "seedtrace/skeleton.hpp"
#include "seedtrace/stats.hpp"
#include "seedtrace/tree_io.hpp"

namespace py = pybind11;
using namespace seedtrace;

namespace {

py::dict summary_dict(const ExperimentSummary& s) {
  py::dict d;
  d["trials"] = s.trials;
  d["successes"] = s.successes;
  d["p_hat"] = s.p_hat;
  d["ci"] = py::make_tuple(s.ci.lo, s.ci.hi);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Seed and root recovery in grown random trees";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParameterError>(m, "ParameterError", base.ptr());
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  py::class_<Tree>(m, "Tree")
      .def(py::init<>())
      .def_static("from_edges",
                  [](const std::vector<Edge>& edges, std::size_t n) { return Tree::from_edges(edges, n); },
                  py::arg("edges"), py::arg("n"))
      .def_static("from_parents",
                  [](const std::vector<Vertex>& parent) { return Tree::from_parents(parent); })
      .def_property_readonly("n", &Tree::size)
      .def("__len__", &Tree::size)
      .def("degree", &Tree::degree)
      .def("neighbors", [](const Tree& t, Vertex v) {
        auto nb = t.neighbors(v);
        return std::vector<Vertex>(nb.begin(), nb.end());
      })
      .def("edges", &Tree::edges)
      .def("relabeled", [](const Tree& t, const std::vector<Vertex>& perm) { return t.relabeled(perm); })
      .def(py::self == py::self)
      .def("__repr__", [](const Tree& t) { return "<Tree n=" + std::to_string(t.size()) + ">"; });

  py::class_<ConfidenceSet>(m, "ConfidenceSet")
      .def_property_readonly("vertices", &ConfidenceSet::vertices)
      .def_property_readonly("scores", [](const ConfidenceSet& s) {
        std::vector<double> out;
        for (const auto& mem : s.members) out.push_back(mem.score);
        return out;
      })
      .def_readonly("target_size", &ConfidenceSet::target_size)
      .def("__len__", &ConfidenceSet::size)
      .def("__contains__", &ConfidenceSet::contains)
      .def("__iter__", [](const ConfidenceSet& s) { return py::iter(py::cast(s.vertices())); });

  py::class_<SeedPlacement>(m, "SeedPlacement")
      .def_readonly("vertices", &SeedPlacement::vertices)
      .def_readonly("leaves", &SeedPlacement::leaves)
      .def_property_readonly("k", &SeedPlacement::k)
      .def_property_readonly("ell", &SeedPlacement::ell);

  py::class_<GrowthRecord>(m, "GrowthRecord")
      .def_readonly("parent", &GrowthRecord::parent)
      .def_readonly("arrival_order", &GrowthRecord::arrival_order)
      .def_readonly("anonymization", &GrowthRecord::anonymization)
      .def_readonly("alpha", &GrowthRecord::alpha)
      .def_readonly("rng_seed", &GrowthRecord::rng_seed)
      .def_property_readonly("root", &GrowthRecord::presented_root)
      .def("presented_seed", &GrowthRecord::presented_seed)
      .def("replay", &GrowthRecord::replay);

  py::class_<Generated>(m, "Generated")
      .def_readonly("tree", &Generated::tree)
      .def_readonly("record", &Generated::record)
      .def_property_readonly("seed", [](const Generated& g) { return g.record.presented_seed(g.tree); })
      .def_property_readonly("root", [](const Generated& g) { return g.record.presented_root(); });

  m.def("generate",
        [](const Tree& seed, std::size_t n, double alpha, std::uint64_t rng_seed, bool anonymize) {
          py::gil_scoped_release release;
          return generate(seed, n, alpha, rng_seed, {anonymize});
        },
        py::arg("seed"), py::arg("n"), py::arg("alpha") = 0.0, py::arg("rng_seed") = 0,
        py::arg("anonymize") = true);
  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("index"));

  auto seeds_m = m.def_submodule("seeds", "Standard seed shapes");
  seeds_m.def("single_vertex", &seeds::single_vertex);
  seeds_m.def("path", &seeds::path, py::arg("k"));
  seeds_m.def("star", &seeds::star, py::arg("k"));
  seeds_m.def("spider", [](const std::vector<std::size_t>& legs) { return seeds::spider(legs); },
              py::arg("legs"));
  seeds_m.def("parse", [](const std::string& text) { return parse_seed_shape(text).tree; });

  m.def("read_tree", [](const std::filesystem::path& p) { return read_tree_file(p); });
  m.def("write_tree", [](const std::filesystem::path& p, const Tree& t) { write_tree_file(p, t); });

  m.def("psi_all", &psi_all);
  m.def("phi_log_all", &phi_log_all);
  m.def("psi_set", &psi_set, py::arg("tree"), py::arg("K"));
  m.def("phi_set", &phi_set, py::arg("tree"), py::arg("K"));
  m.def("dfs_threshold", &dfs_threshold, py::arg("n"), py::arg("k"), py::arg("ell"), py::arg("eps"));
  m.def("dfs_cover_set",
        [](const Tree& t, std::size_t anchor_K, std::size_t k, std::size_t ell, double eps,
           std::optional<std::size_t> cap) {
          return dfs_cover_set(t, psi_set(t, anchor_K), k, ell, eps, cap.value_or(t.size()));
        },
        py::arg("tree"), py::arg("anchor_K"), py::arg("k"), py::arg("ell"), py::arg("eps"),
        py::arg("cap") = py::none());

  m.def("log_likelihood_rooted", &log_likelihood_rooted, py::arg("tree"), py::arg("u"));
  m.def("log_likelihood_all_roots", &log_likelihood_all_roots);
  m.def("aut_bar", &aut_bar, py::arg("tree"), py::arg("u"));
  m.def("mle_root", [](const Tree& t) {
    const RootEstimate r = mle_root(t);
    return py::make_tuple(r.vertex, r.log_likelihood);
  });
  m.def("log_likelihood_seed",
        [](const Tree& t, const std::vector<Vertex>& vertices) {
          return log_likelihood_seed(t, SeedPlacement::in(t, vertices));
        },
        py::arg("tree"), py::arg("vertices"));
  m.def("enumerate_placements",
        [](const Tree& t, std::size_t k, std::size_t ell, std::size_t budget) {
          std::vector<std::vector<Vertex>> out;
          for (const auto& p : enumerate_placements(t, k, ell, budget)) out.push_back(p.vertices);
          return out;
        },
        py::arg("tree"), py::arg("k"), py::arg("ell"), py::arg("budget") = kDefaultPlacementBudget);
  m.def("mle_seed",
        [](const Tree& t, std::size_t k, std::size_t ell, std::size_t budget) {
          SeedEstimate est;
          {
            py::gil_scoped_release release;
            est = mle_seed(t, k, ell, budget);
          }
          return py::make_tuple(est.placement.vertices, est.log_likelihood);
        },
        py::arg("tree"), py::arg("k"), py::arg("ell"), py::arg("budget") = kDefaultPlacementBudget);

  m.def("skeleton_leaf_set",
        [](const Tree& t, const std::vector<Vertex>& skeleton, std::size_t K) {
          return skeleton_leaf_set(t, skeleton, K);
        },
        py::arg("tree"), py::arg("skeleton"), py::arg("K"));
  m.def("star_recover", &star_recover, py::arg("tree"), py::arg("k"), py::arg("m"), py::arg("m_prime"));

  m.def("compute_bound",
        [](const std::string& name, double eps, std::size_t k, std::size_t ell, std::size_t k_star,
           double constant) {
          BoundParams p;
          p.eps = eps;
          p.k = k;
          p.ell = ell;
          p.k_star = k_star;
          p.constant = constant;
          const BoundResult r = compute_bound(parse_bound_name(name), p);
          py::dict d;
          d["K"] = r.K;
          d["value"] = r.value;
          d["at_most"] = r.at_most;
          d["constant_free"] = r.constant_free;
          d["formula"] = r.formula;
          return d;
        },
        py::arg("name"), py::arg("eps"), py::arg("k") = 0, py::arg("ell") = 0, py::arg("k_star") = 0,
        py::arg("constant") = 1.0);

  m.def("beta_cdf_int", [](unsigned a, unsigned b, double x) { return beta_cdf_int({a, b}, x); },
        py::arg("a"), py::arg("b"), py::arg("x"));
  m.def("wilson_interval",
        [](std::size_t s, std::size_t n, double z) {
          const Interval i = wilson_interval(s, n, z);
          return py::make_tuple(i.lo, i.hi);
        },
        py::arg("successes"), py::arg("trials"), py::arg("z") = 1.96);

  m.def("run_experiment",
        [](const std::string& json_text, std::optional<std::uint64_t> master_seed,
           std::optional<std::size_t> jobs) {
          ExperimentSpec spec = parse_experiment(json_text);
          if (master_seed) spec.config.master_seed = *master_seed;
          if (jobs) spec.config.jobs = *jobs;
          validate(spec.config);
          ExperimentResult r;
          {
            py::gil_scoped_release release;
            r = run_experiment(spec.config);
          }
          py::dict d = summary_dict(r.summary);
          std::vector<bool> success;
          for (const auto& o : r.outcomes) success.push_back(o.success);
          d["success"] = success;
          return d;
        },
        py::arg("config_json"), py::arg("master_seed") = py::none(), py::arg("jobs") = py::none());

  m.def("distribution_check",
        [](const std::string& kind, std::size_t trials, std::size_t n, std::size_t k, std::size_t K,
           std::size_t m_size, std::size_t j, std::uint64_t master_seed) {
          DistCheckConfig c;
          c.kind = parse_dist_check(kind);
          c.trials = trials;
          c.n = n;
          c.k = k;
          c.K = K;
          c.m = m_size;
          c.j = j;
          c.master_seed = master_seed;
          DistCheckResult r;
          {
            py::gil_scoped_release release;
            r = distribution_check(c);
          }
          py::dict d;
          d["statistic"] = r.statistic;
          d["critical"] = r.critical;
          d["pass"] = r.pass;
          d["samples"] = r.samples;
          d["detail"] = r.detail;
          for (const auto& [key, value] : r.extras) d[py::str(key)] = value;
          return d;
        },
        py::arg("kind"), py::arg("trials") = 0, py::arg("n") = 0, py::arg("k") = 0, py::arg("K") = 0,
        py::arg("m") = 0, py::arg("j") = 0, py::arg("master_seed") = 1);
}
