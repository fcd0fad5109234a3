"""
Verification suites: named claims about known Betti numbers, family counts
and corpus behaviour, each returned as a ClaimResult.

Suites:
    paper   suspensions, the tower flow graph, the K-> grid, family counts,
            progenitor profiles, structured (and with full=True, goto) corpora
    oracle  betti() against the rank-only oracle on every digraph with at most
            four vertices and on seeded random digraphs
    series  additivity of reduced Betti numbers under series composition
"""

from __future__ import annotations

import itertools
import logging
import math
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable

from flowhom.config import Settings
from flowhom.corpus.progenitor import (
    ProgenitorRecord,
    enumerate_2fg_progenitors,
    enumerate_digraphs,
    enumerate_outdeg2_family,
    progenitor_to_2fg,
)
from flowhom.corpus.skeleton import gen_goto_skeleton, gen_structured_skeleton
from flowhom.digraph import (
    Digraph,
    k_partite_tower,
    series_compose,
    suspension,
    tower_flow_example,
    two_cycle,
    validate_flow_graph,
)
from flowhom.errors import FlowhomError
from flowhom.homology import betti
from flowhom.metrics import compare
from flowhom.oracle import brute_force_oracle

logger = logging.getLogger(__name__)

FAMILY_COUNTS = {3: 1, 4: 7, 5: 66, 6: 916, 7: 16816}
SUITES = ("paper", "oracle", "series")


@dataclass
class ClaimResult:
    """Outcome of one verification claim."""

    name: str
    passed: bool
    message: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "message": self.message}


@dataclass
class SuiteReport:
    suite: str
    claims: list[ClaimResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    @property
    def failed(self) -> list[ClaimResult]:
        return [c for c in self.claims if not c.passed]


def tower_prediction(layers: list[int], p: int) -> int:
    """delta_{p, L-1} * prod(n_l - 1)."""
    if p != len(layers) - 1:
        return 0
    return math.prod(n - 1 for n in layers)


def random_digraph(rng: random.Random, max_vertices: int = 8, density: float = 0.25) -> Digraph:
    n = rng.randint(1, max_vertices)
    labels = [str(i + 1) for i in range(n)]
    arcs = [
        (labels[u], labels[v])
        for u in range(n)
        for v in range(n)
        if u != v and rng.random() < density
    ]
    return Digraph.from_arcs(arcs, labels)


class ClaimVerifier:
    """Runs verification suites under one set of settings."""

    STRUCTURED_SEEDS = 100
    STRUCTURED_SEEDS_FULL = 1000
    GOTO_SEEDS = 2000
    GOTO_BETA2_MAX_RATE = 0.02
    RANDOM_ORACLE_SAMPLES = 200
    SERIES_PAIRS = 50

    def __init__(self, settings: Settings | None = None, full: bool = False, seed: int = 0):
        self.settings = settings or Settings()
        self.full = full
        self.seed = seed
        self._progenitors: dict[int, list[ProgenitorRecord]] = {}

    def run(self, suite: str) -> SuiteReport:
        runners: dict[str, Callable[[], list[ClaimResult]]] = {
            "paper": self.paper_claims,
            "oracle": self.oracle_claims,
            "series": self.series_claims,
        }
        if suite not in runners:
            raise ValueError(f"unknown suite '{suite}' (choose from {', '.join(SUITES)})")
        return SuiteReport(suite, runners[suite]())

    # --- helpers ---

    @staticmethod
    def _check(name: str, fn: Callable[[], tuple[bool, str]]) -> ClaimResult:
        try:
            passed, message = fn()
        except FlowhomError as exc:
            passed, message = False, f"{type(exc).__name__}: {exc}"
        logger.info("%s %s: %s", "PASS" if passed else "FAIL", name, message)
        return ClaimResult(name, passed, message)

    def _progenitors_for(self, n: int) -> list[ProgenitorRecord]:
        if n not in self._progenitors:
            self._progenitors[n] = enumerate_2fg_progenitors(n, max_n=self.settings.enumerate_max_n)
        return self._progenitors[n]

    # --- paper ---

    def paper_claims(self) -> list[ClaimResult]:
        claims = [
            self._check("two-cycle", self._two_cycle),
            self._check("suspension k=1", lambda: self._suspension(1, (0, 0, 1, 0))),
            self._check("suspension k=2", lambda: self._suspension(2, (0, 0, 0, 1, 0))),
            self._check("tower flow graph", self._tower_flow),
            self._check("K-> grid L<=4 n<=3", self._tower_grid),
        ]
        for n in (3, 4, 5, 6):
            claims.append(self._check(f"family count n={n}", lambda n=n: self._family_count(n)))
        claims.append(self._check("progenitors n=4 with beta2>0", self._progenitors_4))
        claims.append(self._check("progenitors n=5 with beta2>0", self._progenitors_5))
        claims.append(self._check("progenitors n=6 with beta2>0", self._progenitors_6))
        count = self.STRUCTURED_SEEDS_FULL if self.full else self.STRUCTURED_SEEDS
        claims.append(self._check(f"structured skeletons x{count}", lambda: self._structured(count)))
        if self.full:
            claims.append(self._check(f"goto skeletons x{self.GOTO_SEEDS}", self._goto_rate))
        return claims

    def _two_cycle(self) -> tuple[bool, str]:
        got = betti(two_cycle(), 3).reduced
        return got == (0, 1, 0, 0), f"reduced betti {got}"

    def _suspension(self, k: int, expected: tuple[int, ...]) -> tuple[bool, str]:
        d = suspension(two_cycle(), k)
        got = betti(d, len(expected) - 1, path_limit=self.settings.path_limit).reduced
        return got == expected, f"{d.n_vertices} vertices, reduced betti {got}"

    def _tower_flow(self) -> tuple[bool, str]:
        d = tower_flow_example()
        check = validate_flow_graph(d)
        report = compare(d, 3)
        fg = check.flow_graph
        ok = (
            fg is not None
            and (fg.source, fg.target) == ("v1", "v8")
            and report.reduced_betti.reduced == (0, 1, 1, 0)
            and report.cyclomatic == 4
        )
        return ok, f"reduced betti {report.reduced_betti.reduced}, nu {report.cyclomatic}"

    def _tower_grid(self) -> tuple[bool, str]:
        checked = 0
        for length in range(1, 5):
            for layers in itertools.product(range(1, 4), repeat=length):
                layers = list(layers)
                p_max = max(length, 1)
                got = betti(k_partite_tower(layers), p_max).reduced
                want = tuple(tower_prediction(layers, p) for p in range(p_max + 1))
                if got != want:
                    return False, f"layers {layers}: got {got}, expected {want}"
                checked += 1
        return True, f"{checked} towers"

    def _family_count(self, n: int) -> tuple[bool, str]:
        got = len(enumerate_outdeg2_family(n, self.settings.enumerate_max_n))
        return got == FAMILY_COUNTS[n], f"{got} classes (expected {FAMILY_COUNTS[n]})"

    def _beta2_positive(self, n: int) -> list[ProgenitorRecord]:
        return [r for r in self._progenitors_for(n) if r.betti.reduced[2] > 0]

    def _progenitors_4(self) -> tuple[bool, str]:
        # No outdegree-2 member on 4 vertices has beta~_2 > 0, progenitor or not
        family = enumerate_outdeg2_family(4, self.settings.enumerate_max_n)
        members = [d for d in family if betti(d, 2).reduced[2] > 0]
        hits = self._beta2_positive(4)
        return not hits and not members, f"{len(hits)} record(s), {len(members)} family member(s)"

    def _progenitors_5(self) -> tuple[bool, str]:
        hits = self._beta2_positive(5)
        profiles = sorted(r.betti.reduced[:3] for r in hits)
        return profiles == [(0, 0, 1), (0, 1, 1)], f"profiles {profiles}"

    def _progenitors_6(self) -> tuple[bool, str]:
        hits = self._beta2_positive(6)
        beta1 = Counter(r.betti.reduced[1] for r in hits)
        ok = (
            len(hits) == 17
            and all(r.betti.reduced[2] == 1 for r in hits)
            and beta1 == Counter({0: 10, 1: 5, 2: 2})
            and all(r.betti.reduced[0] == 0 and r.betti.reduced[3] == 0 for r in hits)
        )
        return ok, f"{len(hits)} record(s), beta1 multiset {dict(sorted(beta1.items()))}"

    def _structured(self, count: int) -> tuple[bool, str]:
        for seed in range(self.seed, self.seed + count):
            sk = gen_structured_skeleton(seed, 20)
            report = compare(sk.cfg, 2, path_limit=self.settings.path_limit)
            b = sk.predicate_count
            reduced = report.reduced_betti.reduced
            if not (report.cyclomatic == b == reduced[1] and reduced[2] == 0):
                return False, f"seed {seed}: nu={report.cyclomatic} |b|={b} reduced={reduced}"
        return True, f"nu = |b| = beta1 and beta2 = 0 on {count} skeletons"

    def _goto_rate(self) -> tuple[bool, str]:
        hits = 0
        for seed in range(self.seed, self.seed + self.GOTO_SEEDS):
            sk = gen_goto_skeleton(seed, 16, 17)
            if betti(sk.cfg, 2, path_limit=self.settings.path_limit).reduced[2] > 0:
                hits += 1
        rate = hits / self.GOTO_SEEDS
        return 0 < rate <= self.GOTO_BETA2_MAX_RATE, f"{hits}/{self.GOTO_SEEDS} with beta2 > 0"

    # --- oracle ---

    def oracle_claims(self) -> list[ClaimResult]:
        claims = [
            self._check(f"exhaustive n={n}", lambda n=n: self._oracle_exhaustive(n))
            for n in range(1, 5)
        ]
        claims.append(self._check(
            f"random digraphs x{self.RANDOM_ORACLE_SAMPLES}", self._oracle_random
        ))
        return claims

    def _oracle_agrees(self, d: Digraph, p_max: int = 3) -> bool:
        oracle = brute_force_oracle(
            d, p_max, self.settings.oracle_max_vertices, self.settings.oracle_max_p
        )
        return betti(d, p_max) == oracle

    def _oracle_exhaustive(self, n: int) -> tuple[bool, str]:
        graphs = enumerate_digraphs(n)
        for d in graphs:
            if not self._oracle_agrees(d):
                return False, f"mismatch on arcs {list(d.arcs)}"
        return True, f"{len(graphs)} isomorphism classes"

    def _oracle_random(self) -> tuple[bool, str]:
        rng = random.Random(self.seed)
        for i in range(self.RANDOM_ORACLE_SAMPLES):
            d = random_digraph(rng)
            if not self._oracle_agrees(d):
                return False, f"sample {i}: mismatch on arcs {list(d.arcs)}"
        return True, f"{self.RANDOM_ORACLE_SAMPLES} samples"

    # --- series ---

    def series_claims(self) -> list[ClaimResult]:
        return [self._check(f"series additivity x{self.SERIES_PAIRS}", self._series)]

    def random_2fg(self, rng: random.Random):
        pool = self._progenitors_for(4) + self._progenitors_for(5)
        rec = pool[rng.randrange(len(pool))]
        return progenitor_to_2fg(rec, rng.randrange(len(rec.valid_pairs)), with_target=True)

    def _series(self) -> tuple[bool, str]:
        rng = random.Random(self.seed)
        for i in range(self.SERIES_PAIRS):
            f1, f2 = self.random_2fg(rng), self.random_2fg(rng)
            glued = series_compose(f1, f2)
            b1, b2, b = (betti(f.digraph, 3).reduced for f in (f1, f2, glued))
            if b != tuple(x + y for x, y in zip(b1, b2)):
                return False, f"pair {i}: {b1} + {b2} != {b}"
        return True, f"{self.SERIES_PAIRS} pairs"


def run_suite(name: str, settings: Settings | None = None, full: bool = False, seed: int = 0) -> SuiteReport:
    return ClaimVerifier(settings, full, seed).run(name)
