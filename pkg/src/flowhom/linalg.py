"""
Exact sparse linear algebra over Q or GF(p).

Vectors are dicts {index: nonzero value}. Rational entries are Fractions;
prime-field entries are ints in [0, p). All routines pivot on the smallest
index, so echelon forms are reduced and unique for a given span.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import isprime

from flowhom.errors import ConfigError

logger = logging.getLogger(__name__)

Scalar = Union[Fraction, int]
Vector = dict[int, Scalar]


@dataclass(frozen=True)
class Field:
    """Coefficient field: rationals when prime is None, else GF(prime)."""

    prime: int | None = None

    def __post_init__(self) -> None:
        if self.prime is not None and not isprime(self.prime):
            raise ConfigError(f"field characteristic {self.prime} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def modular(cls, prime: int) -> "Field":
        return cls(prime)

    @property
    def is_exact(self) -> bool:
        """Rank over Q; prime fields can under-report rank for unlucky primes."""
        return self.prime is None

    @property
    def name(self) -> str:
        return "rational" if self.prime is None else f"GF({self.prime})"

    def coerce(self, x: int | Fraction) -> Scalar:
        if self.prime is None:
            return Fraction(x)
        x = Fraction(x)
        return x.numerator * pow(x.denominator, -1, self.prime) % self.prime

    def inverse(self, x: Scalar) -> Scalar:
        if self.prime is None:
            return 1 / Fraction(x)
        return pow(int(x), -1, self.prime)

    def format(self, x: Scalar) -> str:
        """Serialize as "num/den"."""
        if self.prime is None:
            x = Fraction(x)
            return f"{x.numerator}/{x.denominator}"
        return f"{int(x) % self.prime}/1"

    def vector(self, entries: dict[int, int | Fraction]) -> Vector:
        """Coerce a dict of numbers into a field vector, dropping zeros."""
        out: Vector = {}
        for k, v in entries.items():
            c = self.coerce(v)
            if c:
                out[k] = c
        return out


RATIONALS = Field()


def axpy(target: Vector, coef: Scalar, source: Vector, prime: int | None = None) -> None:
    """target -= coef * source, in place, keeping target sparse."""
    for k, v in source.items():
        val = target.get(k, 0) - coef * v
        if prime:
            val %= prime
        if val:
            target[k] = val
        else:
            target.pop(k, None)


def scale(vec: Vector, coef: Scalar, prime: int | None = None) -> Vector:
    if prime:
        return {k: v * coef % prime for k, v in vec.items()}
    return {k: v * coef for k, v in vec.items()}


class RowReducer:
    """
    Incrementally maintained reduced row echelon form.

    Every stored row has a leading 1 at its smallest index and zeros at
    every other row's pivot.
    """

    def __init__(self, field: Field = RATIONALS):
        self.field = field
        self.rows: dict[int, Vector] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector) -> Vector:
        """Remainder of vec against the current rows (vec is not modified)."""
        out = dict(vec)
        prime = self.field.prime
        # Stored rows are zero at other pivots, so one sweep suffices.
        for col in [c for c in out if c in self.rows]:
            coef = out.get(col)
            if coef:
                axpy(out, coef, self.rows[col], prime)
        return out

    def add(self, vec: Vector) -> bool:
        """Insert vec; False when it is already in the span."""
        rem = self.reduce(vec)
        if not rem:
            return False
        prime = self.field.prime
        pivot = min(rem)
        rem = scale(rem, self.field.inverse(rem[pivot]), prime)
        for row in self.rows.values():
            coef = row.get(pivot)
            if coef:
                axpy(row, coef, rem, prime)
        self.rows[pivot] = rem
        return True

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)

    def basis(self) -> list[Vector]:
        """Rows sorted by pivot."""
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def reduce_rows(vectors: Iterable[Vector], field: Field = RATIONALS) -> list[Vector]:
    """Reduced echelon basis of the span of vectors."""
    reducer = RowReducer(field)
    for v in vectors:
        reducer.add(v)
    return reducer.basis()


def rank(vectors: Iterable[Vector], field: Field = RATIONALS) -> int:
    """Rank of a matrix given by its rows (or, equally, its columns)."""
    reducer = RowReducer(field)
    for v in vectors:
        reducer.add(v)
    return reducer.rank


def transpose(columns: Sequence[Vector]) -> dict[int, Vector]:
    """Column vectors -> {row index: row vector over column indices}."""
    rows: dict[int, Vector] = {}
    for j, col in enumerate(columns):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
    return rows


def kernel(columns: Sequence[Vector], field: Field = RATIONALS) -> list[Vector]:
    """
    Basis of {x : sum_j x_j columns[j] = 0} in reduced echelon form.

    Kernel vectors are indexed by column position.
    """
    n = len(columns)
    reducer = RowReducer(field)
    for row in transpose(columns).values():
        reducer.add(row)

    pivots = reducer.rows
    free = [j for j in range(n) if j not in pivots]
    prime = field.prime
    raw: list[Vector] = []
    for f in free:
        vec: Vector = {f: field.coerce(1)}
        for p, row in pivots.items():
            coef = row.get(f)
            if coef:
                val = -coef
                vec[p] = val % prime if prime else val
        raw.append(vec)
    logger.debug("kernel: %d columns, rank %d, nullity %d", n, len(pivots), len(free))
    return reduce_rows(raw, field)


def extend_basis(base: Iterable[Vector], candidates: Iterable[Vector], field: Field = RATIONALS) -> list[Vector]:
    """
    Candidates that extend span(base), chosen greedily in the given order.

    Returned vectors are the candidates themselves, not their remainders.
    """
    reducer = RowReducer(field)
    for v in base:
        reducer.add(v)
    return [dict(c) for c in candidates if reducer.add(c)]


@dataclass
class SparseMatrix:
    """Column-major sparse matrix over a field."""

    n_rows: int
    n_cols: int
    columns: list[Vector]
    field: Field = RATIONALS

    def __post_init__(self) -> None:
        if len(self.columns) != self.n_cols:
            raise ValueError(f"expected {self.n_cols} columns, got {len(self.columns)}")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def rank(self) -> int:
        return rank(self.columns, self.field)

    def is_zero(self) -> bool:
        return not any(self.columns)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        """self @ other."""
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        prime = self.field.prime
        out: list[Vector] = []
        for col in other.columns:
            acc: Vector = {}
            for k, coef in col.items():
                axpy(acc, -coef, self.columns[k], prime)
            out.append(acc)
        return SparseMatrix(self.n_rows, other.n_cols, out, self.field)

    def to_dense(self) -> list[list[Scalar]]:
        zero = self.field.coerce(0)
        dense = [[zero] * self.n_cols for _ in range(self.n_rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                dense[i][j] = v
        return dense

    def triplets(self) -> str:
        """Debug dump: a "rows cols" header then one "row col value" line per nonzero."""
        lines = [f"{self.n_rows} {self.n_cols}"]
        for j, col in enumerate(self.columns):
            for i in sorted(col):
                lines.append(f"{i} {j} {col[i]}")
        return "\n".join(lines) + "\n"
