"""
Digraph data model, flow-graph validation and the standard constructions.

Terminology:
    digraph     = loopless simple directed graph with string vertex labels
    flow graph  = unique source and target, unique entry and exit arcs,
                  strongly connected once the source and target are identified
    suspension  = add two poles receiving arcs from every existing vertex
    tower       = K->_{n_1..n_L}, complete arcs between consecutive layers
    series      = glue the exit arc of one flow graph onto the entry arc of another

Vertex order is first-mention order and every downstream matrix indexes by it,
so identical inputs give identical bases and reports.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import networkx as nx

from flowhom.constants import POLE_NORTH, POLE_SOUTH, SERIES_PREFIX
from flowhom.errors import EmptyDigraphError, InvalidFlowGraphError, SelfLoopError

logger = logging.getLogger(__name__)

Arc = tuple[str, str]


@dataclass(frozen=True)
class Digraph:
    """Immutable loopless digraph with ordered vertices and ordered arcs."""

    vertices: tuple[str, ...] = ()
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple((u, v) for u, v in self.arcs))

        seen: set[str] = set()
        for v in self.vertices:
            if not isinstance(v, str) or not v:
                raise ValueError(f"vertex labels must be non-empty strings, got {v!r}")
            if v in seen:
                raise ValueError(f"duplicate vertex label '{v}'")
            seen.add(v)

        arc_seen: set[Arc] = set()
        for u, v in self.arcs:
            if u == v:
                raise SelfLoopError(u)
            if u not in seen or v not in seen:
                raise ValueError(f"arc ({u}, {v}) has an unregistered endpoint")
            if (u, v) in arc_seen:
                raise ValueError(f"duplicate arc ({u}, {v})")
            arc_seen.add((u, v))

    @classmethod
    def from_arcs(cls, arcs: Iterable[Arc], vertices: Iterable[str] = ()) -> "Digraph":
        """
        Build a digraph from arcs, registering endpoints in first-mention order.

        Explicit vertices come first (in the given order). Duplicate arcs
        collapse; a loop raises SelfLoopError.
        """
        order: dict[str, None] = dict.fromkeys(vertices)
        kept: dict[Arc, None] = {}
        for u, v in arcs:
            if u == v:
                raise SelfLoopError(u)
            order.setdefault(u)
            order.setdefault(v)
            kept.setdefault((u, v))
        return cls(tuple(order), tuple(kept))

    # --- Cached structure ---

    @cached_property
    def index(self) -> dict[str, int]:
        """Label -> position in storage order."""
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arc_set(self) -> frozenset[Arc]:
        return frozenset(self.arcs)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        """Out-neighbours of each vertex, in storage order."""
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            out[u].append(v)
        idx = self.index
        return {v: tuple(sorted(ws, key=idx.__getitem__)) for v, ws in out.items()}

    @cached_property
    def predecessors(self) -> dict[str, tuple[str, ...]]:
        """In-neighbours of each vertex, in storage order."""
        inc: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.arcs:
            inc[v].append(u)
        idx = self.index
        return {v: tuple(sorted(us, key=idx.__getitem__)) for v, us in inc.items()}

    # --- Queries ---

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def has_arc(self, u: str, v: str) -> bool:
        return (u, v) in self.arc_set

    def out_degree(self, v: str) -> int:
        return len(self.successors[v])

    def in_degree(self, v: str) -> int:
        return len(self.predecessors[v])

    def sources(self) -> list[str]:
        """Vertices with indegree 0."""
        return [v for v in self.vertices if not self.predecessors[v]]

    def sinks(self) -> list[str]:
        """Vertices with outdegree 0."""
        return [v for v in self.vertices if not self.successors[v]]

    # --- Derived digraphs ---

    def with_arcs(self, arcs: Iterable[Arc], vertices: Iterable[str] = ()) -> "Digraph":
        """Copy with extra vertices and arcs appended (duplicates collapse)."""
        return Digraph.from_arcs(
            itertools.chain(self.arcs, arcs),
            itertools.chain(self.vertices, vertices),
        )

    def relabel(self, mapping: Mapping[str, str]) -> "Digraph":
        """Rename vertices; unmapped labels are kept. The mapping must stay injective."""
        vertices = tuple(mapping.get(v, v) for v in self.vertices)
        if len(set(vertices)) != len(vertices):
            raise ValueError("relabelling merges distinct vertices")
        arcs = tuple((mapping.get(u, u), mapping.get(v, v)) for u, v in self.arcs)
        return Digraph(vertices, arcs)

    def reversed(self) -> "Digraph":
        """Same vertices, every arc flipped."""
        return Digraph(self.vertices, tuple((v, u) for u, v in self.arcs))

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.arcs)
        return g

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arcs": [list(a) for a in self.arcs],
        }


def fresh_label(base: str, taken: Iterable[str] | set[str]) -> str:
    """Return base, or base_<k> with the smallest k >= 1 not already taken."""
    taken = taken if isinstance(taken, (set, frozenset, dict)) else set(taken)
    if base not in taken:
        return base
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


# ============================================================================
# COMPONENTS
# ============================================================================

def weak_components(d: Digraph) -> list[tuple[str, ...]]:
    """
    Connected components of the underlying undirected graph.

    Each component is listed in storage order; components are ordered by
    their first vertex. The empty digraph has no components.
    """
    if d.is_empty:
        return []
    idx = d.index
    parts = [tuple(sorted(c, key=idx.__getitem__)) for c in nx.weakly_connected_components(d.to_networkx())]
    return sorted(parts, key=lambda c: idx[c[0]])


def strongly_connected(d: Digraph) -> bool:
    """True iff every vertex reaches every other. The empty digraph is not."""
    if d.is_empty:
        return False
    return nx.is_strongly_connected(d.to_networkx())


# ============================================================================
# FLOW GRAPHS
# ============================================================================

class ViolationKind(Enum):
    """Flow-graph clauses a digraph can fail."""

    NO_SOURCE = "no-source"
    MULTIPLE_SOURCES = "multiple-sources"
    NO_TARGET = "no-target"
    MULTIPLE_TARGETS = "multiple-targets"
    ENTRY_ARC = "entry-arc"
    EXIT_ARC = "exit-arc"
    NOT_STRONGLY_CONNECTED = "not-strongly-connected"


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    detail: str

    def __str__(self) -> str:
        return f"{self.kind.value}: {self.detail}"


@dataclass(frozen=True)
class FlowGraph:
    """A digraph together with its identified source, target, entry and exit arcs."""

    digraph: Digraph
    source: str
    target: str
    entry_arc: Arc
    exit_arc: Arc

    def to_dict(self) -> dict:
        return {
            **self.digraph.to_dict(),
            "source": self.source,
            "target": self.target,
            "entry_arc": list(self.entry_arc),
            "exit_arc": list(self.exit_arc),
        }


@dataclass(frozen=True)
class FlowGraphCheck:
    """Outcome of validate_flow_graph: a flow graph, or every clause it violates."""

    flow_graph: FlowGraph | None
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return self.flow_graph is not None

    def kinds(self) -> set[ViolationKind]:
        return {v.kind for v in self.violations}


def _identified(d: Digraph, source: str, target: str) -> nx.DiGraph:
    """The digraph with target merged into source (loops from a direct arc dropped)."""
    g = nx.DiGraph()
    g.add_nodes_from(v for v in d.vertices if v != target)
    for u, v in d.arcs:
        u = source if u == target else u
        v = source if v == target else v
        if u != v:
            g.add_edge(u, v)
    return g


def validate_flow_graph(d: Digraph) -> FlowGraphCheck:
    """
    Check the flow-graph clauses and identify source, target, entry and exit arcs.

    The strong-connectivity clause is only evaluated when the source and the
    target are both unique, since the identification is undefined otherwise.

    Raises:
        EmptyDigraphError: d has no vertices
    """
    if d.is_empty:
        raise EmptyDigraphError("validate_flow_graph")

    violations: list[Violation] = []
    sources = d.sources()
    targets = d.sinks()

    if not sources:
        violations.append(Violation(ViolationKind.NO_SOURCE, "no vertex has indegree 0"))
    elif len(sources) > 1:
        violations.append(Violation(ViolationKind.MULTIPLE_SOURCES, ", ".join(sources)))

    if not targets:
        violations.append(Violation(ViolationKind.NO_TARGET, "no vertex has outdegree 0"))
    elif len(targets) > 1:
        violations.append(Violation(ViolationKind.MULTIPLE_TARGETS, ", ".join(targets)))

    source = sources[0] if len(sources) == 1 else None
    target = targets[0] if len(targets) == 1 else None

    if source is not None and d.out_degree(source) != 1:
        violations.append(Violation(
            ViolationKind.ENTRY_ARC,
            f"source '{source}' has outdegree {d.out_degree(source)}",
        ))
    if target is not None and d.in_degree(target) != 1:
        violations.append(Violation(
            ViolationKind.EXIT_ARC,
            f"target '{target}' has indegree {d.in_degree(target)}",
        ))

    if source is not None and target is not None and source != target:
        if not nx.is_strongly_connected(_identified(d, source, target)):
            violations.append(Violation(
                ViolationKind.NOT_STRONGLY_CONNECTED,
                f"identifying '{source}' with '{target}' does not give a strongly connected digraph",
            ))

    if violations:
        logger.debug("flow-graph rejection: %s", "; ".join(map(str, violations)))
        return FlowGraphCheck(None, tuple(violations))

    entry_arc = (source, d.successors[source][0])
    exit_arc = (d.predecessors[target][0], target)
    return FlowGraphCheck(FlowGraph(d, source, target, entry_arc, exit_arc))


def require_flow_graph(d: Digraph) -> FlowGraph:
    """validate_flow_graph, raising InvalidFlowGraphError on rejection."""
    check = validate_flow_graph(d)
    if check.flow_graph is None:
        raise InvalidFlowGraphError(list(check.violations))
    return check.flow_graph


# ============================================================================
# CONSTRUCTIONS
# ============================================================================

def two_cycle(a: str = "a", b: str = "b") -> Digraph:
    """The directed 2-cycle a <-> b."""
    return Digraph((a, b), ((a, b), (b, a)))


def suspension(d: Digraph, k: int) -> Digraph:
    """
    k-fold suspension: each step adds poles pole<i>_N and pole<i>_S and an arc
    from every vertex present so far to each of them.
    """
    if d.is_empty:
        raise EmptyDigraphError("suspension")
    if k < 1:
        raise ValueError(f"suspension needs k >= 1, got {k}")

    vertices = list(d.vertices)
    arcs = list(d.arcs)
    for step in range(1, k + 1):
        taken = set(vertices)
        north = fresh_label(POLE_NORTH.format(step=step), taken)
        south = fresh_label(POLE_SOUTH.format(step=step), taken | {north})
        for v in vertices:
            arcs.append((v, north))
            arcs.append((v, south))
        vertices.extend((north, south))
    return Digraph(tuple(vertices), tuple(arcs))


def k_partite_tower(layer_sizes: Sequence[int]) -> Digraph:
    """
    K->_{n_1..n_L}: vertices 1..N numbered layer by layer, with every arc from
    layer l to layer l+1.
    """
    if not layer_sizes:
        raise ValueError("a tower needs at least one layer")
    if any(n < 1 for n in layer_sizes):
        raise ValueError(f"layer sizes must be positive, got {list(layer_sizes)}")

    layers: list[list[str]] = []
    start = 1
    for n in layer_sizes:
        layers.append([str(i) for i in range(start, start + n)])
        start += n
    vertices = tuple(v for layer in layers for v in layer)
    arcs = tuple(
        (u, v)
        for lower, upper in zip(layers, layers[1:])
        for u in lower
        for v in upper
    )
    return Digraph(vertices, arcs)


def tower_flow_example() -> Digraph:
    """
    Eight-vertex flow graph around K->_{2,2,2}: entry into the first layer,
    a back arc from the last layer to the first, exit from the last layer.
    Reduced Betti numbers (0, 1, 1, 0, ...), cyclomatic number 4.
    """
    return Digraph.from_arcs([
        ("v1", "v2"),
        ("v2", "v4"), ("v2", "v5"), ("v3", "v4"), ("v3", "v5"),
        ("v4", "v6"), ("v4", "v7"), ("v5", "v6"), ("v5", "v7"),
        ("v6", "v8"),
        ("v7", "v3"),
    ], vertices=[f"v{i}" for i in range(1, 9)])


def series_compose(f1: FlowGraph, f2: FlowGraph) -> FlowGraph:
    """
    Glue the exit arc (z1, t1) of f1 onto the entry arc (s2, a2) of f2.

    s2 becomes z1 and a2 becomes t1; other labels of f2 that collide with
    labels of f1 get the "g2." prefix (repeated until free). The result keeps
    f1's entry arc and f2's exit arc.

    Raises:
        InvalidFlowGraphError: either operand, or the result, is not a flow graph
    """
    for operand in (f1, f2):
        require_flow_graph(operand.digraph)

    z1, t1 = f1.exit_arc
    s2, a2 = f2.entry_arc

    taken = set(f1.digraph.vertices)
    mapping: dict[str, str] = {s2: z1, a2: t1}
    for v in f2.digraph.vertices:
        if v in mapping:
            continue
        label = v
        while label in taken:
            label = SERIES_PREFIX + label
        mapping[v] = label
        taken.add(label)

    glued = Digraph.from_arcs(
        itertools.chain(
            f1.digraph.arcs,
            ((mapping[u], mapping[v]) for u, v in f2.digraph.arcs),
        ),
        itertools.chain(
            f1.digraph.vertices,
            (mapping[v] for v in f2.digraph.vertices),
        ),
    )
    return require_flow_graph(glued)


# ============================================================================
# CANONICAL FORMS
# ============================================================================

def _relabel_dense(signatures: list) -> list[int]:
    keys = {s: i for i, s in enumerate(sorted(set(signatures)))}
    return [keys[s] for s in signatures]


def refined_colours(succ: Sequence[Sequence[int]]) -> list[int]:
    """
    Colour refinement starting from (outdegree, indegree).

    Colours are dense integers assigned from sorted signatures, so they are an
    isomorphism invariant.
    """
    n = len(succ)
    pred: list[list[int]] = [[] for _ in range(n)]
    for u, ws in enumerate(succ):
        for w in ws:
            pred[w].append(u)

    colours = _relabel_dense([(len(succ[i]), len(pred[i])) for i in range(n)])
    while True:
        refined = _relabel_dense([
            (
                colours[i],
                tuple(sorted(colours[w] for w in succ[i])),
                tuple(sorted(colours[u] for u in pred[i])),
            )
            for i in range(n)
        ])
        if len(set(refined)) == len(set(colours)):
            return colours
        colours = refined


def canonical_code(succ: Sequence[Sequence[int]]) -> tuple[tuple, tuple[int, ...]]:
    """
    Canonical code of a digraph given as successor lists over 0..n-1.

    Minimizes the row-bitmask adjacency encoding over every ordering that
    keeps refined colour cells in colour order. Returns (code, ordering).
    Isomorphic inputs give equal codes.
    """
    n = len(succ)
    colours = refined_colours(succ)
    ranked = sorted(range(n), key=colours.__getitem__)
    cells = [tuple(g) for _, g in itertools.groupby(ranked, key=colours.__getitem__)]

    best: tuple[int, ...] | None = None
    best_order: tuple[int, ...] = tuple(ranked)
    for parts in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        order = tuple(v for part in parts for v in part)
        pos = [0] * n
        for k, v in enumerate(order):
            pos[v] = k
        code = tuple(sum(1 << pos[w] for w in succ[v]) for v in order)
        if best is None or code < best:
            best, best_order = code, order

    histogram = tuple(sorted(colours))
    return (histogram, best or ()), best_order


def canonical_form(d: Digraph) -> tuple:
    """Isomorphism-invariant code of d."""
    idx = d.index
    succ = [[idx[w] for w in d.successors[v]] for v in d.vertices]
    code, _ = canonical_code(succ)
    return code


def canonicalize(d: Digraph) -> Digraph:
    """Relabel d to "1".."n" in its canonical vertex order."""
    idx = d.index
    succ = [[idx[w] for w in d.successors[v]] for v in d.vertices]
    _, order = canonical_code(succ)
    return digraph_from_successors(succ, order)


def digraph_from_successors(succ: Sequence[Sequence[int]], order: Sequence[int] | None = None) -> Digraph:
    """
    Build a digraph labelled "1".."n" from successor lists over 0..n-1,
    numbering vertices by their position in order (identity by default).
    """
    n = len(succ)
    order = tuple(order) if order is not None else tuple(range(n))
    pos = {v: k for k, v in enumerate(order)}
    label = [str(pos[v] + 1) for v in range(n)]
    arcs = [
        (label[v], label[w])
        for v in order
        for w in sorted(succ[v], key=pos.__getitem__)
    ]
    return Digraph(tuple(str(k + 1) for k in range(n)), tuple(arcs))
