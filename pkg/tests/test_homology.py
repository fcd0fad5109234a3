"""Tests for flowhom.homology - Betti profiles and H~_1 generators."""

import pytest

from flowhom.digraph import Digraph, k_partite_tower, suspension, tower_flow_example, two_cycle
from flowhom.errors import EmptyDigraphError, PathLimitExceeded
from flowhom.homology import BettiProfile, betti, h1_generators
from flowhom.linalg import Field


def square():
    return Digraph.from_arcs([("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])


def complete_digraph(n):
    labels = [str(i) for i in range(n)]
    return Digraph.from_arcs([(u, v) for u in labels for v in labels if u != v])


class TestBettiSmall:
    """Hand-checked profiles."""

    def test_single_vertex(self):
        profile = betti(Digraph(("v",)))
        assert profile.values == (1, 0, 0, 0)
        assert profile.reduced == (0, 0, 0, 0)
        assert profile.complete

    def test_isolated_vertices(self):
        assert betti(Digraph(("u", "v"))).reduced == (1, 0, 0, 0)

    def test_two_cycle(self):
        assert betti(two_cycle()).reduced == (0, 1, 0, 0)

    def test_directed_triangle(self):
        d = Digraph.from_arcs([("a", "b"), ("b", "c"), ("c", "a")])
        assert betti(d).reduced == (0, 1, 0, 0)

    def test_transitive_triangle_is_filled(self):
        d = Digraph.from_arcs([("a", "b"), ("b", "c"), ("a", "c")])
        assert betti(d).reduced == (0, 0, 0, 0)

    def test_square_is_filled(self):
        profile = betti(square())
        assert profile.reduced == (0, 0, 0, 0)
        assert profile.omega_dims == (4, 4, 1, 0, 0)
        assert profile.euler_characteristic() == profile.omega_euler_characteristic()

    def test_complete_flag(self):
        d = complete_digraph(3)
        assert not betti(d, p_max=1).complete

    def test_guards(self):
        with pytest.raises(EmptyDigraphError):
            betti(Digraph())
        with pytest.raises(ValueError):
            betti(two_cycle(), p_max=0)


class TestBettiKnown:
    """Suspensions, towers and the tower flow graph."""

    def test_suspension_once(self):
        assert betti(suspension(two_cycle(), 1)).reduced == (0, 0, 1, 0)

    def test_suspension_twice(self):
        assert betti(suspension(two_cycle(), 2), p_max=4).reduced == (0, 0, 0, 1, 0)

    def test_suspension_three_times(self):
        assert betti(suspension(two_cycle(), 3), p_max=5).reduced == (0, 0, 0, 0, 1, 0)

    def test_tower_flow_example(self):
        assert betti(tower_flow_example()).reduced == (0, 1, 1, 0)

    @pytest.mark.parametrize("layers, expected", [
        ([3], (2, 0, 0, 0)),
        ([3, 3], (0, 4, 0, 0)),
        ([2, 2, 2], (0, 0, 1, 0)),
        ([2, 1, 2], (0, 0, 0, 0)),
        ([2, 3, 2], (0, 0, 2, 0)),
    ])
    def test_towers(self, layers, expected):
        assert betti(k_partite_tower(layers)).reduced == expected

    def test_prime_field_agrees(self):
        d = tower_flow_example()
        assert betti(d, field=Field.modular(2_147_483_647)).reduced == betti(d).reduced


class TestTruncation:
    def test_partial_profile_attached(self):
        with pytest.raises(PathLimitExceeded) as exc:
            betti(complete_digraph(4), p_max=3, path_limit=50)
        assert exc.value.dimension == 3
        partial = exc.value.partial
        assert partial is not None
        assert partial.p_max == 1
        assert not partial.complete

    def test_no_partial_when_nothing_is_known(self):
        with pytest.raises(PathLimitExceeded) as exc:
            betti(complete_digraph(4), path_limit=5)
        assert exc.value.partial is None


class TestBettiProfile:
    def test_lengths_checked(self):
        with pytest.raises(ValueError):
            BettiProfile((1, 0), (0, 0), p_max=2, complete=True)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            BettiProfile.from_values([0, 1], complete=True)

    def test_reduced_at(self):
        profile = betti(two_cycle())
        assert profile.reduced_at(1) == 1
        assert profile.reduced_at(7) == 0
        incomplete = BettiProfile.from_values([1, 0], complete=False)
        with pytest.raises(IndexError):
            incomplete.reduced_at(2)

    def test_to_dict_and_str(self):
        profile = betti(two_cycle())
        assert profile.to_dict() == {
            "betti": [1, 1, 0, 0],
            "reduced_betti": [0, 1, 0, 0],
            "p_max": 3,
            "complete": True,
            "omega_dims": [2, 2, 0, 0, 0],
        }
        assert str(profile) == "(0,1,0,0,...)"


class TestGenerators:
    def test_two_cycle(self):
        gens = h1_generators(two_cycle())
        assert len(gens) == 1
        assert gens.to_json() == [[[["a", "b"], "1/1"], [["b", "a"], "1/1"]]]
        assert gens.support_arcs == (("a", "b"), ("b", "a"))

    def test_count_matches_beta1(self):
        d = tower_flow_example()
        assert len(h1_generators(d)) == betti(d).reduced[1]

    def test_filled_square_has_none(self):
        assert len(h1_generators(square())) == 0

    def test_empty(self):
        with pytest.raises(EmptyDigraphError):
            h1_generators(Digraph())
