"""
Enumeration of small digraph families and 2FG progenitors.

The outdegree-2 family on n vertices: one vertex z with outdegree 0, every
other vertex with two distinct targets. A member is a progenitor at (a, z)
when adding the arc (z, a) makes it strongly connected; adding a source s
with arc (s, a), and optionally a target t with arc (z, t), turns it into a
2FG.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Iterable, Iterator

from flowhom.constants import DEFAULT_P_MAX, DEFAULT_PATH_LIMIT, ENUMERATE_MAX_N, ENUMERATE_MIN_N
from flowhom.digraph import (
    Digraph,
    FlowGraph,
    canonical_code,
    digraph_from_successors,
    fresh_label,
    require_flow_graph,
    strongly_connected,
)
from flowhom.errors import GuardRailError
from flowhom.homology import BettiProfile, betti
from flowhom.linalg import RATIONALS, Field

logger = logging.getLogger(__name__)

# Exhaustive loopless digraphs: 2^(n(n-1)) labelled candidates
ENUMERATE_DIGRAPHS_MAX_N = 4


def _check_family_size(n: int, max_n: int) -> None:
    if not ENUMERATE_MIN_N <= n <= max_n:
        raise GuardRailError(f"family enumeration supports {ENUMERATE_MIN_N} <= n <= {max_n}, got {n}")


def _outdeg2_candidates(n: int) -> Iterator[list[tuple[int, ...]]]:
    # Vertex n-1 is the sink.
    options = [
        list(itertools.combinations([w for w in range(n) if w != v], 2))
        for v in range(n - 1)
    ]
    for choice in itertools.product(*options):
        yield [*choice, ()]


def enumerate_outdeg2_family(n: int, max_n: int = ENUMERATE_MAX_N) -> list[Digraph]:
    """
    Isomorphism classes of the outdegree-2 family on n vertices, each
    relabelled "1".."n" in canonical order, sorted by canonical code.

    Raises:
        GuardRailError: n outside ENUMERATE_MIN_N..max_n
    """
    _check_family_size(n, min(max_n, ENUMERATE_MAX_N))
    classes: dict[tuple, tuple[list[tuple[int, ...]], tuple[int, ...]]] = {}
    seen = 0
    for succ in _outdeg2_candidates(n):
        seen += 1
        code, order = canonical_code(succ)
        if code not in classes:
            classes[code] = (succ, order)
    logger.info("outdegree-2 family n=%d: %d labelled candidates, %d classes", n, seen, len(classes))
    return [digraph_from_successors(succ, order) for _, (succ, order) in sorted(classes.items())]


def enumerate_digraphs(n: int) -> list[Digraph]:
    """
    All loopless digraphs on n vertices up to isomorphism.

    Raises:
        GuardRailError: n outside 1..ENUMERATE_DIGRAPHS_MAX_N
    """
    if not 1 <= n <= ENUMERATE_DIGRAPHS_MAX_N:
        raise GuardRailError(f"digraph enumeration supports 1 <= n <= {ENUMERATE_DIGRAPHS_MAX_N}, got {n}")
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    classes: dict[tuple, tuple[list[list[int]], tuple[int, ...]]] = {}
    for mask in range(1 << len(pairs)):
        succ: list[list[int]] = [[] for _ in range(n)]
        for bit, (u, v) in enumerate(pairs):
            if mask >> bit & 1:
                succ[u].append(v)
        code, order = canonical_code(succ)
        if code not in classes:
            classes[code] = (succ, order)
    return [digraph_from_successors(succ, order) for _, (succ, order) in sorted(classes.items())]


@dataclass(frozen=True)
class ProgenitorRecord:
    """A family member with every (a, z) at which it is a progenitor."""

    digraph: Digraph
    valid_pairs: tuple[tuple[str, str], ...]
    betti: BettiProfile

    @property
    def sink(self) -> str:
        return self.valid_pairs[0][1]

    def to_dict(self) -> dict[str, Any]:
        return {
            **self.digraph.to_dict(),
            "valid_pairs": [list(p) for p in self.valid_pairs],
            **self.betti.to_dict(),
        }


def progenitor_pairs(d: Digraph) -> list[tuple[str, str]]:
    """(a, z) pairs with z the unique sink, a != z with outdegree > 0, d + (z, a) strongly connected."""
    sinks = d.sinks()
    if len(sinks) != 1:
        return []
    z = sinks[0]
    return [
        (a, z)
        for a in d.vertices
        if a != z and d.out_degree(a) > 0 and strongly_connected(d.with_arcs([(z, a)]))
    ]


def progenitor_records(
    family: Iterable[Digraph],
    p_max: int = DEFAULT_P_MAX,
    field: Field = RATIONALS,
    path_limit: int = DEFAULT_PATH_LIMIT,
) -> list[ProgenitorRecord]:
    """Members of family with at least one valid (a, z) pair, with their Betti profiles."""
    records: list[ProgenitorRecord] = []
    for d in family:
        pairs = progenitor_pairs(d)
        if pairs:
            records.append(ProgenitorRecord(d, tuple(pairs), betti(d, p_max, field, path_limit)))
    return records


def enumerate_2fg_progenitors(
    n: int,
    p_max: int = DEFAULT_P_MAX,
    max_n: int = ENUMERATE_MAX_N,
    field: Field = RATIONALS,
    path_limit: int = DEFAULT_PATH_LIMIT,
) -> list[ProgenitorRecord]:
    records = progenitor_records(enumerate_outdeg2_family(n, max_n), p_max, field, path_limit)
    logger.info("n=%d: %d progenitors", n, len(records))
    return records


def progenitor_to_2fg(rec: ProgenitorRecord, pair_index: int = 0, with_target: bool = True) -> FlowGraph:
    """
    Add a source s with arc (s, a) and, when with_target, a target t with
    arc (z, t).

    Raises:
        ValueError: pair_index out of range
        InvalidFlowGraphError: the result is not a flow graph
    """
    if not 0 <= pair_index < len(rec.valid_pairs):
        raise ValueError(
            f"pair index {pair_index} out of range for {len(rec.valid_pairs)} valid pair(s)"
        )
    a, z = rec.valid_pairs[pair_index]
    d = rec.digraph
    taken = set(d.vertices)
    s = fresh_label("s", taken)
    arcs = [(s, a)]
    vertices = [s, *d.vertices]
    if with_target:
        t = fresh_label("t", taken | {s})
        arcs.append((z, t))
        vertices.append(t)
    return require_flow_graph(Digraph.from_arcs([*d.arcs, *arcs], vertices))
