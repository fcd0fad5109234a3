"""Tests for flowhom.linalg - exact sparse elimination."""

from fractions import Fraction

import pytest

from flowhom.errors import ConfigError
from flowhom.linalg import (
    RATIONALS,
    Field,
    RowReducer,
    SparseMatrix,
    extend_basis,
    kernel,
    rank,
    reduce_rows,
)


class TestField:
    def test_rationals(self):
        f = Field.rationals()
        assert f.is_exact
        assert f.name == "rational"
        assert f.coerce(3) == Fraction(3)
        assert f.inverse(Fraction(2, 3)) == Fraction(3, 2)
        assert f.format(Fraction(-1, 2)) == "-1/2"

    def test_modular(self):
        f = Field.modular(7)
        assert not f.is_exact
        assert f.name == "GF(7)"
        assert f.coerce(-1) == 6
        assert f.coerce(Fraction(1, 2)) == 4
        assert f.inverse(3) == 5
        assert f.format(6) == "6/1"

    def test_non_prime_rejected(self):
        with pytest.raises(ConfigError, match="not prime"):
            Field.modular(8)

    def test_vector_drops_zeros(self):
        assert Field.modular(5).vector({0: 5, 1: 6}) == {1: 1}


class TestRowReducer:
    def test_rank_and_span(self):
        r = RowReducer()
        assert r.add({0: 1, 1: 1})
        assert r.add({1: 1, 2: 1})
        assert not r.add({0: 1, 2: -1})
        assert r.rank == 2
        assert r.contains({0: 2, 1: 2})

    def test_basis_is_reduced(self):
        basis = reduce_rows([{0: 2, 1: 4}, {1: 1}])
        assert basis == [{0: 1}, {1: 1}]

    def test_modular_rank_can_drop(self):
        rows = [{0: 1, 1: 1}, {0: 1, 1: 4}]
        assert rank(rows) == 2
        assert rank(rows, Field.modular(3)) == 1


class TestKernel:
    def test_single_relation(self):
        # columns e0, e0, e1: x0 + x1 = 0, x2 = 0
        basis = kernel([{0: 1}, {0: 1}, {1: 1}])
        assert basis == [{0: 1, 1: -1}]

    def test_full_rank(self):
        assert kernel([{0: 1}, {1: 1}]) == []

    def test_zero_columns(self):
        assert len(kernel([{}, {}])) == 2


class TestExtendBasis:
    def test_returns_candidates_themselves(self):
        chosen = extend_basis([{0: 1}], [{0: 2}, {0: 1, 1: 3}, {1: 1}])
        assert chosen == [{0: 1, 1: 3}]


class TestSparseMatrix:
    def test_shape_check(self):
        with pytest.raises(ValueError):
            SparseMatrix(2, 2, [{}])

    def test_matmul_of_boundaries_is_zero(self):
        # d1: edges (0->1) (1->2) into vertices; d2: path 0->1->2 as combination
        d1 = SparseMatrix(3, 3, [{1: 1, 0: -1}, {2: 1, 1: -1}, {2: 1, 0: -1}])
        d2 = SparseMatrix(3, 1, [{1: 1, 0: 1, 2: -1}])
        assert d1.matmul(d2).is_zero()

    def test_rank(self):
        m = SparseMatrix(2, 3, [{0: 1}, {1: 1}, {0: 1, 1: 1}])
        assert m.rank() == 2

    def test_dense_and_triplets(self):
        m = SparseMatrix(2, 2, [{0: Fraction(1)}, {1: Fraction(-2)}], RATIONALS)
        assert m.to_dense() == [[1, 0], [0, -2]]
        assert m.triplets() == "2 2\n0 0 1\n1 1 -2\n"
