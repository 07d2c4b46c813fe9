import itertools
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from oddhom.errors import InvalidInputError, InvalidParameterError
from oddhom.graph import Graph, complete_graph, cycle_graph, generate_gnp, is_bipartite, path_graph
from oddhom.oracle import (BUDGET_EXCEEDED, FOUND, NONE, circular_chromatic, circulant,
                           farey_candidates, hom_search, is_homomorphism, monotonicity_check,
                           odd_cycle_target)


def brute_hom(g, h):
    hs = set(h.edge_list())
    edges = g.edge_list()
    for f in itertools.product(range(h.n), repeat=g.n):
        if all((min(f[u], f[v]), max(f[u], f[v])) in hs for u, v in edges):
            return True
    return False


graphs = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12)
    .map(lambda es: Graph(n, {(min(u, v), max(u, v)) for u, v in es if u != v})))
targets = st.sampled_from([complete_graph(2), complete_graph(3), cycle_graph(5), circulant(7, 2),
                           circulant(7, 3), path_graph(3), Graph(4, [(0, 1), (2, 3)])])


class TestCirculant:
    def test_examples(self):
        c52 = circulant(5, 2)
        assert c52.edge_list() == sorted([(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)])
        assert circulant(6, 1) == complete_graph(6)
        assert odd_cycle_target(3) == circulant(7, 3)

    @pytest.mark.parametrize("ell", range(1, 7))
    def test_odd_cycle(self, ell):
        h = odd_cycle_target(ell)
        assert h.n == 2 * ell + 1 and h.m == 2 * ell + 1
        assert set(h.degrees.tolist()) == {2}
        assert nx.is_connected(nx.Graph(h.edge_list()))

    def test_rejects(self):
        with pytest.raises(InvalidParameterError):
            circulant(5, 0)


class TestHomSearch:
    def test_c9_to_c3(self):
        res = hom_search(cycle_graph(9), cycle_graph(3))
        assert res.found and is_homomorphism(cycle_graph(9), cycle_graph(3), res.mapping)
        # i -> i mod 3 is itself a homomorphism
        assert is_homomorphism(cycle_graph(9), cycle_graph(3), [i % 3 for i in range(9)])

    def test_k3_to_c5(self):
        assert hom_search(complete_graph(3), cycle_graph(5)).status == NONE
        assert not brute_hom(complete_graph(3), cycle_graph(5))

    def test_c5_to_c7(self):
        assert hom_search(cycle_graph(5), cycle_graph(7)).status == NONE
        assert not brute_hom(cycle_graph(5), cycle_graph(7))

    def test_budget(self):
        g = generate_gnp(40, 8.0, 1)
        res = hom_search(g, complete_graph(3), budget=5)
        assert res.status == BUDGET_EXCEEDED and not res.decided

    def test_isolated_and_trees(self):
        g = Graph(7, [(0, 1), (1, 2), (4, 5)])
        res = hom_search(g, cycle_graph(5))
        assert res.found and is_homomorphism(g, cycle_graph(5), res.mapping)

    @given(graphs, targets)
    @settings(max_examples=300, deadline=None)
    def test_against_brute_force(self, g, h):
        res = hom_search(g, h)
        assert res.found == brute_hom(g, h)
        if res.found:
            assert is_homomorphism(g, h, res.mapping)

    @given(st.integers(1, 8).flatmap(
        lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=20)
        .map(lambda es: Graph(n, {(min(u, v), max(u, v)) for u, v in es if u != v}))))
    @settings(max_examples=200, deadline=None)
    def test_three_colourable(self, g):
        colourable = any(all(f[u] != f[v] for u, v in g.edge_list())
                         for f in itertools.product(range(3), repeat=g.n))
        assert hom_search(g, complete_graph(3)).found == colourable

    @given(st.integers(3, 12), st.integers(1, 6))
    def test_odd_cycles(self, k, ell):
        g = cycle_graph(2 * k + 1)
        assert hom_search(g, odd_cycle_target(ell)).found == (2 * k + 1 >= 2 * ell + 1)

    @given(st.integers(5, 60), st.floats(1.0, 3.0), st.integers(0, 2**32), st.randoms(),
           st.integers(1, 3))
    @settings(max_examples=60, deadline=None)
    def test_label_invariant(self, n, c, seed, rnd, ell):
        g = generate_gnp(n, c, seed)
        perm = list(range(n))
        rnd.shuffle(perm)
        h = odd_cycle_target(ell)
        a, b = hom_search(g, h, 10**6), hom_search(g.relabel(perm), h, 10**6)
        assert a.decided and b.decided and a.status == b.status

    def test_sparse_graph_with_triangle(self):
        # long paths between branch vertices are contracted, so this is instant
        g = generate_gnp(300, 1.5, 11)
        res = hom_search(g, odd_cycle_target(2), 10**5)
        assert res.decided


def brute_chromatic(g):
    for k in range(1, g.n + 1):
        if any(all(f[u] != f[v] for u, v in g.edge_list())
               for f in itertools.product(range(k), repeat=g.n)):
            return k


class TestCircular:
    def test_examples(self):
        assert circular_chromatic(cycle_graph(5)).value == Fraction(5, 2)
        assert circular_chromatic(complete_graph(4)).value == 4
        assert circular_chromatic(cycle_graph(6)).value == 2

    def test_farey(self):
        fr = farey_candidates(5)
        vals = [Fraction(p, q) for p, q in fr]
        assert vals == sorted(vals) and fr[0] == (2, 1) and fr[-1] == (5, 1)
        assert (4, 2) not in fr

    def test_rejects_edgeless(self):
        with pytest.raises(InvalidInputError):
            circular_chromatic(Graph(3, []))

    def test_petersen(self):
        from conftest import petersen
        # circular chromatic number of the Petersen graph is 3
        assert circular_chromatic(petersen()).value == 3

    @pytest.mark.parametrize("ell", [1, 2, 3, 4])
    def test_odd_cycles(self, ell):
        assert circular_chromatic(cycle_graph(2 * ell + 1)).value == 2 + Fraction(1, ell)

    @given(graphs.filter(lambda g: g.m > 0))
    @settings(max_examples=100, deadline=None)
    def test_between_chi_minus_one_and_chi(self, g):
        chi = brute_chromatic(g)
        v = circular_chromatic(g).value
        assert chi - 1 < v <= chi


class TestMonotonicity:
    def test_c7(self):
        r = monotonicity_check(cycle_graph(7), 5)
        assert r.exists == (True, True, True, False, False) and r.downward_closed

    def test_bipartite(self):
        r = monotonicity_check(path_graph(5), 4)
        assert all(r.exists) and r.downward_closed

    def test_k3(self):
        assert monotonicity_check(complete_graph(3), 3).exists == (True, False, False)
