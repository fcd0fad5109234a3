"""
Independent Betti computation for cross-checking.

Builds the full raw boundary D_p with one row per tuple in V^p (no face
filtering). Ranks come from sympy on a dense QQ matrix of its nonzero rows:

    dim Omega_p = |A_p| - rank N_p        N_p = rows of D_p outside A_{p-1}
    rank d_p    = rank D_p - rank N_p
    beta~_p     = |A_p| - rank D_p - rank D_{p+1} + rank N_{p+1}

D_0 is the augmentation row. Shares nothing with flowhom.paths beyond the
Digraph model.
"""

from __future__ import annotations

import itertools
import logging

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from flowhom.constants import ORACLE_MAX_P, ORACLE_MAX_VERTICES
from flowhom.digraph import Digraph
from flowhom.errors import EmptyDigraphError, GuardRailError
from flowhom.homology import BettiProfile

logger = logging.getLogger(__name__)


def _allowed(d: Digraph, p: int) -> list[tuple[int, ...]]:
    n = d.n_vertices
    arcs = {(d.index[u], d.index[v]) for u, v in d.arcs}
    return [
        t for t in itertools.product(range(n), repeat=p + 1)
        if all((t[i], t[i + 1]) in arcs for i in range(p))
    ]


def _tuple_row(t: tuple[int, ...], n: int) -> int:
    row = 0
    for v in t:
        row = row * n + v
    return row


def _matrix_rank(entries: dict[int, dict[int, int]], shape: tuple[int, int]) -> int:
    """Rank of a dense QQ matrix holding the nonzero rows of entries; zero rows add nothing."""
    n_rows, n_cols = shape
    if n_rows == 0 or n_cols == 0:
        return 0
    dense = [
        [QQ(row.get(j, 0)) for j in range(n_cols)]
        for _, row in sorted(entries.items())
        if any(row.values())
    ]
    if not dense:
        return 0
    return DomainMatrix(dense, (len(dense), n_cols), QQ).rank()


def _raw_boundary(paths: list[tuple[int, ...]], n: int, p: int) -> dict[int, dict[int, int]]:
    """D_p over all of V^p as {row: {column: coefficient}}."""
    entries: dict[int, dict[int, int]] = {}
    for col, path in enumerate(paths):
        if p == 0:
            entries.setdefault(0, {})[col] = 1
            continue
        for j in range(p + 1):
            face = path[:j] + path[j + 1:]
            row = entries.setdefault(_tuple_row(face, n), {})
            row[col] = row.get(col, 0) + (-1) ** j
    return entries


def brute_force_oracle(
    d: Digraph,
    p_max: int,
    max_vertices: int = ORACLE_MAX_VERTICES,
    max_p: int = ORACLE_MAX_P,
) -> BettiProfile:
    """
    Betti profile recomputed from ranks of unfiltered boundary matrices.

    Raises:
        EmptyDigraphError: d has no vertices
        GuardRailError: more than max_vertices vertices or p_max above max_p
    """
    if d.is_empty:
        raise EmptyDigraphError("brute_force_oracle")
    if d.n_vertices > max_vertices:
        raise GuardRailError(f"oracle limited to {max_vertices} vertices, got {d.n_vertices}")
    if not 1 <= p_max <= max_p:
        raise GuardRailError(f"oracle needs 1 <= p_max <= {max_p}, got {p_max}")

    n = d.n_vertices
    paths = [_allowed(d, p) for p in range(p_max + 2)]
    rank_d: list[int] = []
    rank_n: list[int] = []
    for p in range(p_max + 2):
        entries = _raw_boundary(paths[p], n, p)
        n_rows = 1 if p == 0 else n ** p
        shape = (n_rows, len(paths[p]))
        rank_d.append(_matrix_rank(entries, shape))
        if p <= 1:
            rank_n.append(0)
            continue
        allowed_rows = {_tuple_row(t, n) for t in paths[p - 1]}
        outside = {i: r for i, r in entries.items() if i not in allowed_rows}
        rank_n.append(_matrix_rank(outside, shape))

    omega_dims = [len(paths[p]) - rank_n[p] for p in range(p_max + 2)]
    reduced = [
        len(paths[p]) - rank_d[p] - rank_d[p + 1] + rank_n[p + 1]
        for p in range(p_max + 1)
    ]
    values = [reduced[0] + 1, *reduced[1:]]
    logger.debug("oracle ranks D=%s N=%s", rank_d, rank_n)
    return BettiProfile(tuple(values), tuple(reduced), p_max, omega_dims[-1] == 0, tuple(omega_dims))
