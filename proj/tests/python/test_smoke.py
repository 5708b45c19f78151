import math

import pytest

import seedtrace as st


def test_tree_and_errors():
    t = st.Tree.from_edges([(0, 1), (1, 2)], 3)
    assert t.n == 3
    assert t.degree(1) == 2
    assert t.edges() == [(0, 1), (1, 2)]
    with pytest.raises(st.InputError):
        st.Tree.from_edges([(0, 1), (2, 3)], 4)
    with pytest.raises(st.ParameterError):
        st.seeds.path(0)


def test_centrality_on_path():
    p5 = st.seeds.path(5)
    assert st.psi_all(p5) == [4, 3, 2, 3, 4]
    assert st.psi_set(p5, 1).vertices == [2]
    assert 2 in st.phi_set(p5, 1)
    assert st.mle_root(p5)[0] == 2


def test_likelihood_examples():
    p3 = st.seeds.path(3)
    assert math.exp(st.log_likelihood_rooted(p3, 1)) == pytest.approx(0.5)
    assert math.exp(st.log_likelihood_rooted(p3, 0)) == pytest.approx(0.25)
    assert math.exp(st.log_likelihood_seed(p3, [0, 1])) == pytest.approx(0.5)
    assert st.enumerate_placements(st.seeds.path(4), 2, 2) == [[0, 1], [1, 2], [2, 3]]


def test_generate_is_deterministic():
    a = st.generate(st.seeds.star(4), 300, 0.0, 7)
    b = st.generate(st.seeds.star(4), 300, 0.0, 7)
    assert a.tree == b.tree
    assert a.tree.n == 300
    assert a.seed.k == 4
    assert a.record.replay(st.seeds.star(4)) == a.tree


def test_skeleton_and_star():
    s5 = st.seeds.star(5)
    assert sorted(st.skeleton_leaf_set(s5, [0], 4).vertices) == [1, 2, 3, 4]
    assert len(st.star_recover(s5, 5, 1, 4)) == 5


def test_bounds_and_stats():
    assert st.compute_bound("root-psi", 0.1)["K"] == 58
    assert st.compute_bound("skeleton", 0.1, k=6, ell=3)["K"] == 45
    assert st.beta_cdf_int(1, 2, 0.5) == pytest.approx(0.75)
    lo, hi = st.wilson_interval(50, 100)
    assert lo == pytest.approx(0.404, abs=1e-3)
    assert hi == pytest.approx(0.596, abs=1e-3)


def test_experiment_and_checks():
    cfg = '{"seed": {"shape": "path", "k": 3}, "n": 200, "estimator": {"method": "all"}, ' \
          '"criterion": "cover", "trials": 30}'
    r = st.run_experiment(cfg, master_seed=1, jobs=2)
    assert r["p_hat"] == 1.0
    assert len(r["success"]) == 30
    check = st.distribution_check("naked-leaf", master_seed=3)
    assert check["pass"]
