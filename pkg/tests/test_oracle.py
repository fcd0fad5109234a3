"""Tests for flowhom.oracle - rank-only cross-check."""

import random

import pytest

from flowhom.corpus.progenitor import enumerate_digraphs
from flowhom.digraph import Digraph, k_partite_tower, suspension, tower_flow_example, two_cycle
from flowhom.errors import EmptyDigraphError, GuardRailError
from flowhom.homology import betti, h1_generators
from flowhom.metrics import cyclomatic
from flowhom.oracle import _matrix_rank, brute_force_oracle
from flowhom.parse import loop_transform, read_edge_list
from flowhom.verify import random_digraph


class TestOracleAgreement:
    @pytest.mark.parametrize("d", [
        two_cycle(),
        Digraph(("v",)),
        Digraph.from_arcs([("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")]),
        Digraph.from_arcs([("a", "b"), ("b", "c"), ("a", "c")]),
        suspension(two_cycle(), 1),
    ], ids=["two-cycle", "vertex", "square", "transitive-triangle", "suspension"])
    def test_matches_betti(self, d):
        assert brute_force_oracle(d, 3) == betti(d, 3)

    def test_tower_flow_example(self):
        oracle = brute_force_oracle(tower_flow_example(), 2)
        assert oracle.reduced == (0, 1, 1)
        assert oracle == betti(tower_flow_example(), 2)

    def test_all_three_vertex_digraphs(self):
        for d in enumerate_digraphs(3):
            assert brute_force_oracle(d, 3) == betti(d, 3), d.arcs

    def test_random_digraphs(self):
        rng = random.Random(11)
        for _ in range(20):
            d = random_digraph(rng, max_vertices=5, density=0.4)
            assert brute_force_oracle(d, 2) == betti(d, 2), d.arcs


class TestOracleConfirmedValues:
    """Values settled by the oracle rather than by counting cycles."""

    def test_two_loops_on_one_vertex(self):
        # (a, l0, a) - (a, l1, a) lies in Omega_2 and bounds the difference of the 2-cycles
        d = loop_transform(read_edge_list("a a\na a\n", allow_loops=True))
        assert cyclomatic(d) == 2
        assert brute_force_oracle(d, 3).reduced == (0, 1, 0, 0)
        assert betti(d, 3).reduced == (0, 1, 0, 0)

    def test_tower_1_3_1_is_acyclic(self):
        d = k_partite_tower([1, 3, 1])
        assert cyclomatic(d) == 2
        assert brute_force_oracle(d, 3).reduced == (0, 0, 0, 0)
        assert betti(d, 3).reduced == (0, 0, 0, 0)
        assert len(h1_generators(d)) == 0

    @pytest.mark.parametrize("d", [
        Digraph.from_arcs([("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")]),
        tower_flow_example(),
        suspension(two_cycle(), 1),
        Digraph.from_arcs([("a", "b"), ("b", "c"), ("c", "a"), ("a", "d")]),
    ], ids=["diamond", "tower-flow", "suspension", "cycle-with-tail"])
    def test_reversal_invariance(self, d):
        r = d.reversed()
        assert cyclomatic(r) == cyclomatic(d)
        assert betti(r, 3).reduced == betti(d, 3).reduced
        assert brute_force_oracle(r, 3).reduced == betti(d, 3).reduced

    def test_reversal_invariance_random(self):
        rng = random.Random(5)
        for _ in range(15):
            d = random_digraph(rng, max_vertices=6, density=0.35)
            assert betti(d.reversed(), 3).reduced == betti(d, 3).reduced, d.arcs

    def test_zero_rows_do_not_count(self):
        entries = {0: {0: 1, 1: 1}, 5: {0: 2, 1: 2}, 7: {}, 9: {1: 0}}
        assert _matrix_rank(entries, (16, 2)) == 1
        assert _matrix_rank({}, (4, 3)) == 0
        assert _matrix_rank({0: {0: 1}}, (1, 0)) == 0


class TestOracleGuards:
    def test_empty(self):
        with pytest.raises(EmptyDigraphError):
            brute_force_oracle(Digraph(), 2)

    def test_too_many_vertices(self):
        d = Digraph(tuple(str(i) for i in range(11)))
        with pytest.raises(GuardRailError, match="11"):
            brute_force_oracle(d, 1)

    def test_dimension_range(self):
        with pytest.raises(GuardRailError):
            brute_force_oracle(two_cycle(), 0)
        with pytest.raises(GuardRailError):
            brute_force_oracle(two_cycle(), 6)

    def test_custom_rails(self):
        with pytest.raises(GuardRailError):
            brute_force_oracle(two_cycle(), 2, max_vertices=1)
