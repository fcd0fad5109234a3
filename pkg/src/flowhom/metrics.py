"""
Cyclomatic complexity and the (nu, beta~_1) comparison.

    nu = |A| - |V| + c        c = number of weak components

Antiparallel arcs count twice, so a directed 2-cycle has nu = 1.
"""

from __future__ import annotations

import csv
import io
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Any, Iterable

from flowhom.constants import DEFAULT_P_MAX, DEFAULT_PATH_LIMIT
from flowhom.digraph import Digraph, weak_components
from flowhom.errors import EmptyDigraphError
from flowhom.homology import BettiProfile, GeneratorSet, betti_from_complex, h1_generators_from_complex
from flowhom.linalg import RATIONALS, Field
from flowhom.paths import PathComplex

logger = logging.getLogger(__name__)

HISTOGRAM_HEADER = ("nu", "beta1", "count")


def cyclomatic(d: Digraph) -> int:
    """nu(d); raises EmptyDigraphError on the empty digraph."""
    if d.is_empty:
        raise EmptyDigraphError("cyclomatic")
    return d.n_arcs - d.n_vertices + len(weak_components(d))


@dataclass(frozen=True)
class MetricReport:
    """nu next to the reduced Betti numbers for one digraph."""

    graph_id: str
    vertices: int
    arcs: int
    cyclomatic: int
    reduced_betti: BettiProfile
    generators: GeneratorSet | None = None

    @property
    def beta1(self) -> int:
        return self.reduced_betti.reduced[1]

    @property
    def divergence(self) -> int:
        return self.cyclomatic - self.beta1

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {
            "graph_id": self.graph_id,
            "vertices": self.vertices,
            "arcs": self.arcs,
            **self.reduced_betti.to_dict(),
            "cyclomatic": self.cyclomatic,
            "divergence": self.divergence,
        }
        if self.generators is not None:
            data["h1_generators"] = self.generators.to_json()
            data["h1_support"] = [list(a) for a in self.generators.support_arcs]
        return data


def compare(
    d: Digraph,
    p_max: int = DEFAULT_P_MAX,
    graph_id: str = "",
    field: Field = RATIONALS,
    path_limit: int = DEFAULT_PATH_LIMIT,
    generators: bool = False,
) -> MetricReport:
    """
    Bundle nu, the Betti profile and (optionally) H~_1 representatives.

    Raises:
        EmptyDigraphError: d has no vertices
        PathLimitExceeded: propagated from the Betti computation
    """
    nu = cyclomatic(d)
    if p_max < 1:
        raise ValueError(f"p_max must be >= 1, got {p_max}")
    pc = PathComplex(d, field, path_limit)
    profile = betti_from_complex(pc, p_max)
    gens = h1_generators_from_complex(pc) if generators else None
    report = MetricReport(graph_id, d.n_vertices, d.n_arcs, nu, profile, gens)
    logger.info("%s: nu=%d beta~=%s", graph_id or "<digraph>", nu, profile)
    return report


def corpus_histogram(reports: Iterable[MetricReport]) -> list[tuple[int, int, int]]:
    """(nu, beta~_1, count) rows sorted by (nu, beta~_1)."""
    counts = Counter((r.cyclomatic, r.beta1) for r in reports)
    return [(nu, b1, n) for (nu, b1), n in sorted(counts.items())]


def histogram_csv(rows: Iterable[tuple[int, int, int]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HISTOGRAM_HEADER)
    writer.writerows(rows)
    return buf.getvalue()
