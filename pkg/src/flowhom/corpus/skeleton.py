"""
Program skeletons and their control flow graphs.

Structured skeletons come from the grammar

    S -> S; S
    S -> if b; S; endif
    S -> do while b; S; enddo
    S -> repeat; S; until b

with uniformly chosen nonterminals and productions. Goto skeletons are
chains of conditional jumps to random lines.

CFG conventions (one vertex per line, labelled by 1-based line number):
    stmt, endif, repeat   -> next line
    if b                  -> next line, line after its endif
    do while b            -> next line, line after its enddo
    enddo                 -> its do while
    until b               -> its repeat, next line
    goto k if b           -> line k, next line
    exit                  -> nothing (must be the final line)
A final stmt is the exit vertex. Each predicate line has two
successors and every other non-final line one, so |A| = |V| - 1 + |b|.
The false branch of an if skips its endif: if -> stmt -> endif plus
if -> endif would be a triangle with beta~_1 = 0.
"""

from __future__ import annotations

import logging
import random
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any

from flowhom.digraph import Digraph
from flowhom.errors import SkeletonError

logger = logging.getLogger(__name__)


class LineKind(Enum):
    STMT = "stmt"
    IF = "if"
    ENDIF = "endif"
    DOWHILE = "dowhile"
    ENDDO = "enddo"
    REPEAT = "repeat"
    UNTIL = "until"
    GOTO = "goto"
    EXIT = "exit"


PREDICATES = frozenset({LineKind.IF, LineKind.DOWHILE, LineKind.UNTIL, LineKind.GOTO})

# Opening kind -> closing kind
_BLOCKS = {
    LineKind.IF: LineKind.ENDIF,
    LineKind.DOWHILE: LineKind.ENDDO,
    LineKind.REPEAT: LineKind.UNTIL,
}
_CLOSERS = {close: open_ for open_, close in _BLOCKS.items()}

_TEXT = {
    LineKind.STMT: "stmt",
    LineKind.IF: "if b",
    LineKind.ENDIF: "endif",
    LineKind.DOWHILE: "do while b",
    LineKind.ENDDO: "enddo",
    LineKind.REPEAT: "repeat",
    LineKind.UNTIL: "until b",
    LineKind.EXIT: "exit",
}
_FROM_TEXT = {text: kind for kind, text in _TEXT.items()}
_GOTO_RE = re.compile(r"goto\s+(\d+)\s+if\s+b")


@dataclass(frozen=True)
class SkeletonLine:
    kind: LineKind
    target: int | None = None

    def __post_init__(self) -> None:
        if (self.kind == LineKind.GOTO) != (self.target is not None):
            raise SkeletonError("exactly the goto lines carry a target")

    def __str__(self) -> str:
        if self.kind == LineKind.GOTO:
            return f"goto {self.target} if b"
        return _TEXT[self.kind]


@dataclass(frozen=True)
class Skeleton:
    """A generated program skeleton; cfg is derived on demand."""

    lines: tuple[SkeletonLine, ...]
    seed: int | None = None
    params: dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    @property
    def predicate_count(self) -> int:
        return sum(1 for line in self.lines if line.kind in PREDICATES)

    @cached_property
    def cfg(self) -> Digraph:
        return skeleton_to_cfg(self)

    def kinds(self) -> list[LineKind]:
        return [line.kind for line in self.lines]

    def manifest_fields(self) -> dict[str, Any]:
        return {"seed": self.seed, **self.params, "predicate_count": self.predicate_count}


# ============================================================================
# CFG
# ============================================================================

def _match_blocks(lines: tuple[SkeletonLine, ...]) -> dict[int, int]:
    """0-based index of each opener <-> its closer."""
    partner: dict[int, int] = {}
    stack: list[int] = []
    for i, line in enumerate(lines):
        if line.kind in _BLOCKS:
            stack.append(i)
        elif line.kind in _CLOSERS:
            if not stack or lines[stack[-1]].kind != _CLOSERS[line.kind]:
                raise SkeletonError(f"unmatched '{line}' on line {i + 1}")
            j = stack.pop()
            partner[i] = j
            partner[j] = i
    if stack:
        raise SkeletonError(f"unclosed '{lines[stack[-1]]}' on line {stack[-1] + 1}")
    return partner


def skeleton_to_cfg(sk: Skeleton) -> Digraph:
    """
    One vertex per line, arcs per the module conventions.

    Raises:
        SkeletonError: unmatched delimiters, a misplaced exit, a bad goto
            target, or a line whose successor does not exist
    """
    lines = sk.lines
    if not lines:
        raise SkeletonError("empty skeleton")
    n = len(lines)
    partner = _match_blocks(lines)
    label = [str(i + 1) for i in range(n)]
    arcs: list[tuple[str, str]] = []

    def successor(i: int) -> str:
        if i + 1 >= n:
            raise SkeletonError(f"line {i + 1} ('{lines[i]}') needs a following line")
        return label[i + 1]

    for i, line in enumerate(lines):
        kind = line.kind
        final = i == n - 1
        if kind == LineKind.EXIT:
            if not final:
                raise SkeletonError(f"exit on line {i + 1} is not the final line")
        elif kind in (LineKind.STMT, LineKind.ENDIF):
            if not final:
                arcs.append((label[i], label[i + 1]))
        elif kind == LineKind.REPEAT:
            arcs.append((label[i], successor(i)))
        elif kind == LineKind.IF:
            arcs.append((label[i], successor(i)))
            arcs.append((label[i], successor(partner[i])))
        elif kind == LineKind.DOWHILE:
            arcs.append((label[i], successor(i)))
            arcs.append((label[i], successor(partner[i])))
        elif kind == LineKind.ENDDO:
            arcs.append((label[i], label[partner[i]]))
        elif kind == LineKind.UNTIL:
            arcs.append((label[i], label[partner[i]]))
            arcs.append((label[i], successor(i)))
        elif kind == LineKind.GOTO:
            if not 1 <= line.target <= n or line.target == i + 1:
                raise SkeletonError(f"goto on line {i + 1} has invalid target {line.target}")
            arcs.append((label[i], label[line.target - 1]))
            arcs.append((label[i], successor(i)))
    return Digraph.from_arcs(arcs, label)


# ============================================================================
# GENERATORS
# ============================================================================

_NONTERMINAL = None

# Production right-hand sides; None marks the nonterminal S.
_PRODUCTIONS: tuple[tuple[LineKind | None, ...], ...] = (
    (None, None),
    (LineKind.IF, None, LineKind.ENDIF),
    (LineKind.DOWHILE, None, LineKind.ENDDO),
    (LineKind.REPEAT, None, LineKind.UNTIL),
)


def gen_structured_skeleton(seed: int, n_productions: int) -> Skeleton:
    """
    Apply n_productions uniformly random productions at uniformly random
    nonterminals, starting from S; leftover nonterminals become stmt.

    An exit line is appended unless the last line is a stmt, since endif,
    enddo and until all leave a branch pointing past the end.
    """
    if n_productions < 1:
        raise SkeletonError(f"n_productions must be >= 1, got {n_productions}")
    rng = random.Random(seed)
    form: list[LineKind | None] = [_NONTERMINAL]
    for _ in range(n_productions):
        slots = [i for i, sym in enumerate(form) if sym is _NONTERMINAL]
        at = slots[rng.randrange(len(slots))]
        rhs = _PRODUCTIONS[rng.randrange(len(_PRODUCTIONS))]
        form[at:at + 1] = rhs

    kinds = [LineKind.STMT if sym is _NONTERMINAL else sym for sym in form]
    if kinds[-1] != LineKind.STMT:
        kinds.append(LineKind.EXIT)
    sk = Skeleton(
        tuple(SkeletonLine(k) for k in kinds),
        seed,
        {"n_productions": n_productions},
    )
    logger.debug("structured skeleton seed=%s: %d lines, |b|=%d", seed, len(kinds), sk.predicate_count)
    return sk


def gen_goto_skeleton(seed: int, n_gotos: int, n_lines: int) -> Skeleton:
    """
    Lines 1..n_gotos are conditional gotos, line n_lines is exit, the rest
    are stmt. Goto i jumps to a line drawn uniformly from 1..n_lines
    excluding i and i+1.
    """
    if n_gotos < 0:
        raise SkeletonError(f"n_gotos must be >= 0, got {n_gotos}")
    if n_lines < n_gotos + 1:
        raise SkeletonError(f"need n_lines >= n_gotos + 1, got {n_lines} lines for {n_gotos} gotos")
    if n_gotos > 0 and n_lines < 3:
        raise SkeletonError("a goto needs at least 3 lines to have a jump target")

    rng = random.Random(seed)
    lines: list[SkeletonLine] = []
    for i in range(1, n_lines + 1):
        if i <= n_gotos:
            choices = [t for t in range(1, n_lines + 1) if t not in (i, i + 1)]
            lines.append(SkeletonLine(LineKind.GOTO, choices[rng.randrange(len(choices))]))
        elif i == n_lines:
            lines.append(SkeletonLine(LineKind.EXIT))
        else:
            lines.append(SkeletonLine(LineKind.STMT))
    return Skeleton(tuple(lines), seed, {"n_gotos": n_gotos, "n_lines": n_lines})


# ============================================================================
# TEXT FORMAT
# ============================================================================

def format_skeleton(sk: Skeleton) -> str:
    return "".join(f"{line}\n" for line in sk.lines)


def parse_skeleton(text: str) -> Skeleton:
    """
    Read the skeleton text format; blank lines and "#" comments are skipped.

    Raises:
        SkeletonError: an unknown statement
    """
    lines: list[SkeletonLine] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = " ".join(raw.split())
        if not stripped or stripped.startswith("#"):
            continue
        if stripped in _FROM_TEXT:
            lines.append(SkeletonLine(_FROM_TEXT[stripped]))
            continue
        match = _GOTO_RE.fullmatch(stripped)
        if match:
            lines.append(SkeletonLine(LineKind.GOTO, int(match.group(1))))
            continue
        raise SkeletonError(f"unknown statement '{stripped}' on line {lineno}")
    return Skeleton(tuple(lines))
