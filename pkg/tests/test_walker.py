import math

import numpy as np
import pytest
from hypothesis import given, settings

from spmrank import (
    Graph,
    enumerate_paths,
    path_measure,
    sample_path,
    simple_random_walk,
    simulate,
    spm_chain,
)
from spmrank.walker import transition_entropy

from conftest import path3, plastic, strong_graphs, triangle
from oracles import walk_count

STEPS = 10**6


def ergodic_bound(pi: np.ndarray, steps: int) -> float:
    return 3 * float(np.sqrt(pi * (1 - pi) / steps).max()) * 5


class TestSample:
    def test_zero_steps(self):
        p = sample_path(spm_chain(triangle()), 1, 0, seed=3)
        assert p.nodes.tolist() == [1]
        assert p.length == 0

    def test_forced_first_step(self):
        chain = spm_chain(path3())
        for seed in range(20):
            assert sample_path(chain, 0, 1, seed).nodes.tolist() == [0, 1]

    def test_fixed_seed_sequence(self):
        chain = spm_chain(triangle())
        first = sample_path(chain, 0, 10, 42).nodes.tolist()
        assert first == sample_path(chain, 0, 10, 42).nodes.tolist()
        # PCG64 stream is stable across numpy releases and platforms
        assert first == [0, 2, 0, 2, 1, 0, 2, 1, 2, 0, 1]

    def test_only_edges_taken(self, synthetic):
        chain = spm_chain(synthetic)
        nodes = sample_path(chain, 0, 5000, 1).nodes
        A = synthetic.dense()
        assert (A[nodes[:-1], nodes[1:]] > 0).all()

    def test_bad_arguments(self):
        chain = spm_chain(triangle())
        with pytest.raises(IndexError):
            sample_path(chain, 5, 10, 0)
        with pytest.raises(ValueError):
            sample_path(chain, 0, -1, 0)


class TestFrequencies:
    def test_counts_and_normalization(self, karate):
        stats = simulate(spm_chain(karate), 1000, seed=9)
        assert sum(stats.visit_counts.values()) == 1001
        assert sum(stats.frequencies.values()) == pytest.approx(1.0, abs=1e-12)
        assert stats.steps == 1000 and stats.seed == 9

    def test_zero_steps_indicator(self, karate):
        stats = simulate(spm_chain(karate), 0, seed=1, start=5)
        assert stats.frequencies[karate.labels[5]] == 1.0
        assert stats.empirical_entropy == 0.0

    def test_triangle(self):
        stats = simulate(spm_chain(triangle()), 10**5, seed=11)
        assert max(abs(f - 1 / 3) for f in stats.frequencies.values()) <= 0.01

    def test_path_graph(self):
        stats = simulate(spm_chain(path3()), STEPS, seed=5)
        np.testing.assert_allclose(list(stats.frequencies.values()), [0.25, 0.5, 0.25], atol=0.005)

    def test_karate(self, karate):
        assert simulate(spm_chain(karate), STEPS, seed=1).max_abs_dev_from_pi <= 0.005

    def test_deterministic(self, toy_b):
        chain = spm_chain(toy_b)
        assert simulate(chain, 20000, seed=4) == simulate(chain, 20000, seed=4)

    @pytest.mark.parametrize("name", ["triangle", "plastic", "toy_b", "karate", "synthetic"])
    def test_ergodic_bound(self, name, request):
        g = {"triangle": triangle, "plastic": plastic}.get(name)
        g = g() if g else request.getfixturevalue(name)
        chain = spm_chain(g)
        stats = simulate(chain, STEPS, seed=2024)
        assert stats.max_abs_dev_from_pi <= ergodic_bound(chain.pi, STEPS)

    @pytest.mark.parametrize("name", ["toy_b", "karate"])
    def test_entropy_rates(self, name, request):
        g = request.getfixturevalue(name)
        chain = spm_chain(g)
        spm_stats = simulate(chain, STEPS, seed=17)
        assert abs(spm_stats.empirical_entropy - chain.topological_entropy) <= 0.01
        srw = simple_random_walk(g)
        nodes = sample_path(srw, 0, STEPS, seed=17).nodes
        assert transition_entropy(nodes, g.n) <= chain.topological_entropy + 0.01

    def test_entropy_estimator_exact_on_deterministic_walk(self):
        nodes = np.array([0, 1, 2] * 10)
        assert transition_entropy(nodes, 3) == 0.0

    def test_entropy_estimator_two_way_split(self):
        nodes = np.array([0, 1, 0, 2, 0, 1, 0, 2, 0])
        # node 0 splits evenly; nodes 1 and 2 always return
        assert transition_entropy(nodes, 3) == pytest.approx(0.5 * math.log(2))


class TestEnumerate:
    def test_triangle_returns(self):
        assert sorted(enumerate_paths(triangle(), 0, 0, 2)) == [(0, 1, 0), (0, 2, 0)]

    def test_path_graph(self):
        assert enumerate_paths(path3(), 0, 2, 2) == [(0, 1, 2)]

    def test_zero_length(self):
        assert enumerate_paths(path3(), 1, 1, 0) == [(1,)]
        assert enumerate_paths(path3(), 0, 1, 0) == []

    def test_length_guard(self):
        with pytest.raises(ValueError):
            enumerate_paths(triangle(), 0, 0, 13)

    @given(strong_graphs(max_n=6, weighted=False, aperiodic=False))
    @settings(max_examples=30, deadline=None)
    def test_counts_match_matrix_powers(self, g):
        A = g.dense()
        for s in range(7):
            for i in range(g.n):
                for j in range(g.n):
                    paths = enumerate_paths(g, i, j, s)
                    assert len(paths) == walk_count(A, i, j, s)
                    assert len(set(paths)) == len(paths)
                    for p in paths:
                        assert p[0] == i and p[-1] == j and len(p) == s + 1
                        assert all(A[a, b] > 0 for a, b in zip(p, p[1:]))


def _spread(values) -> float:
    v = np.asarray(values)
    return float((v.max() - v.min()) / v.max())


@pytest.mark.parametrize("name", ["toy_a", "toy_b"])
def test_equiprobable_all_pairs(name, request):
    g = request.getfixturevalue(name)
    chain = spm_chain(g)
    for s in range(1, 7):
        for i in range(g.n):
            for j in range(g.n):
                paths = enumerate_paths(g, i, j, s)
                if len(paths) > 1:
                    assert _spread([path_measure(chain, p) for p in paths]) <= 1e-10


def test_directed_unweighted_paths_equiprobable():
    # for 0/1 matrices the measure depends only on endpoints and length, directed or not
    g = plastic()
    chain = spm_chain(g)
    paths = enumerate_paths(g, 0, 0, 5)
    assert len(paths) > 1
    assert _spread([path_measure(chain, p) for p in paths]) <= 1e-10


def test_weighted_paths_differ():
    g = Graph.from_edges([(1, 2, 1.0), (2, 3, 1.0), (1, 3, 4.0), (3, 3, 1.0)])
    chain = spm_chain(g)
    paths = enumerate_paths(g, 0, 2, 2)
    assert len(paths) > 1
    assert _spread([path_measure(chain, p) for p in paths]) > 1e-3
