"""
Betti numbers of the path complex and H~_1 generator representatives.

    beta_p = dim Omega_p - rank d_p - rank d_{p+1}

with d_0 = 0 for the plain numbers and the augmentation for the reduced
ones, so beta~_0 = beta_0 - 1 and beta~_p = beta_p above dimension 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any

from flowhom.constants import DEFAULT_P_MAX, DEFAULT_PATH_LIMIT
from flowhom.digraph import Arc, Digraph
from flowhom.errors import EmptyDigraphError, PathLimitExceeded
from flowhom.linalg import RATIONALS, Field, Scalar, Vector, extend_basis, kernel
from flowhom.linalg import rank as _rank
from flowhom.paths import PathComplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BettiProfile:
    """Betti numbers beta_0..beta_{p_max}, plain and reduced."""

    values: tuple[int, ...]
    reduced: tuple[int, ...]
    p_max: int
    complete: bool
    omega_dims: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        object.__setattr__(self, "reduced", tuple(self.reduced))
        object.__setattr__(self, "omega_dims", tuple(self.omega_dims))
        if len(self.values) != self.p_max + 1 or len(self.reduced) != self.p_max + 1:
            raise ValueError("Betti vectors must have p_max + 1 entries")
        if any(b < 0 for b in self.values + self.reduced):
            raise ValueError("Betti numbers are non-negative")

    @classmethod
    def from_values(cls, values: list[int], complete: bool, omega_dims: list[int] = ()) -> "BettiProfile":
        """Build from plain numbers of a nonempty digraph."""
        reduced = [values[0] - 1, *values[1:]]
        return cls(tuple(values), tuple(reduced), len(values) - 1, complete, tuple(omega_dims))

    def reduced_at(self, p: int) -> int:
        """beta~_p, zero above p_max when the profile is complete."""
        if p <= self.p_max:
            return self.reduced[p]
        if self.complete:
            return 0
        raise IndexError(f"dimension {p} is beyond p_max = {self.p_max}")

    def euler_characteristic(self) -> int:
        return sum((-1) ** p * b for p, b in enumerate(self.values))

    def omega_euler_characteristic(self) -> int:
        return sum((-1) ** p * d for p, d in enumerate(self.omega_dims))

    def to_dict(self) -> dict[str, Any]:
        return {
            "betti": list(self.values),
            "reduced_betti": list(self.reduced),
            "p_max": self.p_max,
            "complete": self.complete,
            "omega_dims": list(self.omega_dims),
        }

    def __str__(self) -> str:
        tail = ",..." if self.complete else ",?"
        return "(" + ",".join(map(str, self.reduced)) + tail + ")"


@dataclass(frozen=True)
class GeneratorSet:
    """Representatives of a homology basis; cycles are keyed by arc."""

    dimension: int
    cycles: tuple[dict[Arc, Scalar], ...] = ()
    support_arcs: tuple[Arc, ...] = ()
    base_field: Field = field(default=RATIONALS, compare=False)

    def __len__(self) -> int:
        return len(self.cycles)

    def to_json(self) -> list[list[list]]:
        """[[["u", "v"], "num/den"], ...] per cycle."""
        return [
            [[list(arc), self.base_field.format(coef)] for arc, coef in cycle.items()]
            for cycle in self.cycles
        ]


def rank(vectors: list[Vector], field: Field = RATIONALS) -> int:
    """Exact rank of a matrix given by rows or columns."""
    return _rank(vectors, field)


def betti_from_complex(pc: PathComplex, p_max: int = DEFAULT_P_MAX) -> BettiProfile:
    """
    Betti profile of an existing path complex.

    Raises:
        PathLimitExceeded: with .partial set to the numbers still determined
    """
    omega_dims: list[int] = []
    for p in range(p_max + 2):
        try:
            omega_dims.append(pc.omega(p).dim)
        except PathLimitExceeded as exc:
            exc.partial = _partial_profile(pc, omega_dims)
            raise

    ranks = [0] + [pc.boundary_rank(p) if omega_dims[p] else 0 for p in range(1, p_max + 2)]
    values = [omega_dims[p] - ranks[p] - ranks[p + 1] for p in range(p_max + 1)]
    profile = BettiProfile.from_values(values, omega_dims[p_max + 1] == 0, omega_dims)
    logger.debug("betti %s omega %s", profile.values, profile.omega_dims)
    return profile


def _partial_profile(pc: PathComplex, omega_dims: list[int]) -> BettiProfile | None:
    # beta_p needs Omega_{p+1}; with Omega_0..Omega_{k-1} known, beta up to k-2 is exact.
    top = len(omega_dims) - 2
    if top < 0:
        return None
    ranks = [0] + [pc.boundary_rank(p) if omega_dims[p] else 0 for p in range(1, top + 2)]
    values = [omega_dims[p] - ranks[p] - ranks[p + 1] for p in range(top + 1)]
    return BettiProfile.from_values(values, False, omega_dims)


def betti(
    d: Digraph,
    p_max: int = DEFAULT_P_MAX,
    field: Field = RATIONALS,
    path_limit: int = DEFAULT_PATH_LIMIT,
) -> BettiProfile:
    """
    Betti numbers of d up to p_max.

    Raises:
        EmptyDigraphError: d has no vertices
        PathLimitExceeded: some |A_p| passed path_limit
    """
    if d.is_empty:
        raise EmptyDigraphError("betti")
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    return betti_from_complex(PathComplex(d, field, path_limit), p_max)


def h1_generators_from_complex(pc: PathComplex) -> GeneratorSet:
    """H~_1 representatives: kernel vectors of d_1 that extend im d_2."""
    cycles = kernel(pc.boundary(1).columns, pc.field)
    image = pc.boundary(2).columns if pc.omega(2).dim else []
    chosen = extend_basis(image, cycles, pc.field)

    arcs = pc.paths(1)
    labelled = [
        {pc.labels(arcs[i]): coef for i, coef in sorted(vec.items())}
        for vec in chosen
    ]
    support = {arc for cycle in labelled for arc in cycle}
    ordered_support = tuple(a for a in pc.digraph.arcs if a in support)
    return GeneratorSet(1, tuple(labelled), ordered_support, pc.field)


def h1_generators(
    d: Digraph,
    field: Field = RATIONALS,
    path_limit: int = DEFAULT_PATH_LIMIT,
) -> GeneratorSet:
    """
    Representatives of a basis of H~_1, chosen by lexicographic pivoting.

    Raises:
        EmptyDigraphError: d has no vertices
    """
    if d.is_empty:
        raise EmptyDigraphError("h1_generators")
    return h1_generators_from_complex(PathComplex(d, field, path_limit))
