"""Tests for flowhom.paths - allowed paths, Omega bases, boundaries."""

import pytest

from flowhom.digraph import Digraph, two_cycle
from flowhom.errors import DimensionMismatchError, PathLimitExceeded
from flowhom.paths import (
    PathComplex,
    allowed_paths,
    boundary_terms,
    omega_basis,
    raw_boundary_column,
    restricted_boundary,
)


def square():
    return Digraph.from_arcs([("a", "b"), ("b", "d"), ("a", "c"), ("c", "d")])


def transitive_triangle():
    return Digraph.from_arcs([("a", "b"), ("b", "c"), ("a", "c")])


def complete_digraph(n):
    labels = [str(i) for i in range(n)]
    return Digraph.from_arcs([(u, v) for u in labels for v in labels if u != v])


class TestBoundaryTerms:
    def test_two_path(self):
        assert boundary_terms((1, 2, 3)) == {(2, 3): 1, (1, 3): -1, (1, 2): 1}

    def test_vertex(self):
        assert boundary_terms((0,)) == {(): 1}

    def test_repeated_faces_cancel(self):
        # (a, b, a) has faces (b, a), (a, a), (a, b): nothing cancels
        assert len(boundary_terms(("a", "b", "a"))) == 3
        # faces of (a, a, b) at positions 0 and 1 coincide with opposite signs
        assert boundary_terms(("a", "a", "b")) == {("a", "a"): 1}

    def test_labelled_column_needs_a_vertex(self):
        with pytest.raises(ValueError):
            raw_boundary_column(())


class TestAllowedPaths:
    def test_two_cycle(self):
        assert allowed_paths(two_cycle(), 2) == [("a", "b", "a"), ("b", "a", "b")]

    def test_dimension_zero(self):
        assert allowed_paths(square(), 0) == [("a",), ("b",), ("d",), ("c",)]

    def test_lexicographic_by_vertex_order(self):
        assert allowed_paths(square(), 2) == [("a", "b", "d"), ("a", "c", "d")]

    def test_negative_dimension(self):
        with pytest.raises(ValueError):
            PathComplex(square()).paths(-1)

    def test_path_limit(self):
        with pytest.raises(PathLimitExceeded) as exc:
            allowed_paths(complete_digraph(4), 1, path_limit=5)
        assert exc.value.dimension == 1
        assert exc.value.limit == 5
        assert exc.value.count > 5


class TestOmega:
    def test_low_dimensions_are_full(self):
        pc = PathComplex(square())
        assert pc.omega(0).dim == 4
        assert pc.omega(1).dim == 4

    def test_square_difference(self):
        basis = omega_basis(square(), 2)
        assert basis.dim == 1
        assert basis.labelled() == [{("a", "b", "d"): 1, ("a", "c", "d"): -1}]

    def test_transitive_triangle(self):
        basis = omega_basis(transitive_triangle(), 2)
        assert basis.ambient == (("a", "b", "c"),)
        assert basis.dim == 1

    def test_two_cycle_has_no_two_chains(self):
        assert omega_basis(two_cycle(), 2).dim == 0


class TestBoundary:
    def test_augmentation(self):
        m = PathComplex(square()).boundary(0)
        assert m.shape == (1, 4)

    def test_boundary_squares_to_zero(self):
        pc = PathComplex(square())
        assert pc.boundary(1).matmul(pc.boundary(2)).is_zero()

    def test_ranks(self):
        pc = PathComplex(square())
        assert pc.boundary_rank(1) == 3
        assert pc.boundary_rank(2) == 1
        assert pc.boundary_rank(3) == 0

    def test_restricted_boundary_matches_complex(self):
        d = transitive_triangle()
        lower, upper = omega_basis(d, 1), omega_basis(d, 2)
        m = restricted_boundary(d, 2, lower, upper)
        assert m.shape == (3, 1)
        assert m.rank() == 1

    def test_restricted_boundary_dimension_mismatch(self):
        d = transitive_triangle()
        with pytest.raises(DimensionMismatchError):
            restricted_boundary(d, 2, omega_basis(d, 0), omega_basis(d, 2))
        with pytest.raises(DimensionMismatchError):
            restricted_boundary(d, 0, omega_basis(d, 0), omega_basis(d, 0))

    def test_restricted_boundary_bases_from_other_digraph(self):
        d, other = transitive_triangle(), square()
        with pytest.raises(DimensionMismatchError):
            restricted_boundary(d, 2, omega_basis(other, 1), omega_basis(other, 2))
        with pytest.raises(DimensionMismatchError):
            restricted_boundary(other, 2, omega_basis(d, 1), omega_basis(d, 2))
