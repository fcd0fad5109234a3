"""
Digraph text formats: edge lists and a DOT subset.

Edge list:
    one arc per line "u v" (whitespace separated)
    blank lines and "#" comments ignored
    "#! vertices: a b c" pragma registers vertices in order (isolated ones too)

DOT subset:
    graph      ::= 'strict'? 'digraph' ID? '{' stmt* '}'
    stmt       ::= ID ('->' ID)* attrs? ';'?        edge chain or node statement
                 | ('graph' | 'node' | 'edge') attrs ';'?
                 | ID '=' ID ';'?                    graph attribute, ignored
    attrs      ::= ('[' (ID ('=' ID)? (',' | ';')?)* ']')+
    ID         ::= [A-Za-z0-9_]+ | '"' quoted '"'

Both readers build a ParsedGraph: first-mention vertex order, duplicate arcs
collapsed and counted, self-loops either rejected or recorded for
loop_transform.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterator

from flowhom.constants import DOT_SUFFIX, LOOP_LABEL
from flowhom.digraph import Arc, Digraph
from flowhom.errors import GraphParseError, SelfLoopError

logger = logging.getLogger(__name__)

VERTEX_PRAGMA = "#! vertices:"


@dataclass(frozen=True)
class LoopOccurrence:
    """A self-loop seen by a permissive reader."""

    vertex: str
    line: int


@dataclass
class ParsedGraph:
    """Permissive parse result; loops are recorded instead of rejected."""

    vertices: list[str] = field(default_factory=list)
    arcs: list[Arc] = field(default_factory=list)
    loops: list[LoopOccurrence] = field(default_factory=list)
    collapsed: int = 0

    def to_digraph(self) -> Digraph:
        """Strict view: raises SelfLoopError if any loop was recorded."""
        if self.loops:
            first = self.loops[0]
            raise SelfLoopError(first.vertex, first.line)
        return Digraph(tuple(self.vertices), tuple(self.arcs))


class _GraphBuilder:
    def __init__(self, allow_loops: bool):
        self.allow_loops = allow_loops
        self.graph = ParsedGraph()
        self._seen_vertices: set[str] = set()
        self._seen_arcs: set[Arc] = set()

    def vertex(self, label: str) -> None:
        if label not in self._seen_vertices:
            self._seen_vertices.add(label)
            self.graph.vertices.append(label)

    def arc(self, u: str, v: str, line: int, col: int | None = None) -> None:
        if u == v:
            if not self.allow_loops:
                raise SelfLoopError(u, line, col)
            self.vertex(u)
            self.graph.loops.append(LoopOccurrence(u, line))
            return
        self.vertex(u)
        self.vertex(v)
        if (u, v) in self._seen_arcs:
            self.graph.collapsed += 1
            return
        self._seen_arcs.add((u, v))
        self.graph.arcs.append((u, v))

    def finish(self) -> ParsedGraph:
        if self.graph.collapsed:
            logger.info("collapsed %d duplicate arc(s)", self.graph.collapsed)
        return self.graph


# ============================================================================
# EDGE LISTS
# ============================================================================

def read_edge_list(text: str, allow_loops: bool = False) -> ParsedGraph:
    """
    Read an edge list.

    Raises:
        GraphParseError: a line with other than two tokens
        SelfLoopError: "u u" while allow_loops is False
    """
    builder = _GraphBuilder(allow_loops)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(VERTEX_PRAGMA):
            for label in line[len(VERTEX_PRAGMA):].split():
                builder.vertex(label)
            continue
        if line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) != 2:
            raise GraphParseError(
                f"expected 2 labels per line, got {len(tokens)}", lineno
            )
        builder.arc(tokens[0], tokens[1], lineno)
    return builder.finish()


def parse_edge_list(text: str) -> Digraph:
    """Strict edge-list reader."""
    return read_edge_list(text).to_digraph()


def _check_edge_list_label(label: str) -> None:
    if not label or any(ch.isspace() for ch in label) or label.startswith("#"):
        raise ValueError(f"label {label!r} cannot be written to an edge list")


def to_edge_list(d: Digraph) -> str:
    """
    Serialize to edge-list text.

    The vertex pragma is written whenever arcs alone would lose vertices or
    change their first-mention order.
    """
    for v in d.vertices:
        _check_edge_list_label(v)

    mentioned: dict[str, None] = {}
    for u, v in d.arcs:
        mentioned.setdefault(u)
        mentioned.setdefault(v)

    lines: list[str] = []
    if tuple(mentioned) != d.vertices:
        lines.append(f"{VERTEX_PRAGMA} {' '.join(d.vertices)}")
    lines.extend(f"{u} {v}" for u, v in d.arcs)
    return "\n".join(lines) + "\n" if lines else ""


# ============================================================================
# DOT SUBSET
# ============================================================================

class TokenType(Enum):
    LBRACE = "{"
    RBRACE = "}"
    LBRACKET = "["
    RBRACKET = "]"
    ARROW = "->"
    UNDIRECTED = "--"
    SEMI = ";"
    COMMA = ","
    EQUALS = "="
    ID = "id"
    EOF = "eof"


@dataclass
class Token:
    type: TokenType
    value: str | None
    line: int
    col: int
    quoted: bool = False


class Tokenizer:
    """Tokenize DOT-subset input."""

    ID_CHAR = re.compile(r"[A-Za-z0-9_]")
    PUNCT = {
        "{": TokenType.LBRACE,
        "}": TokenType.RBRACE,
        "[": TokenType.LBRACKET,
        "]": TokenType.RBRACKET,
        ";": TokenType.SEMI,
        ",": TokenType.COMMA,
        "=": TokenType.EQUALS,
    }

    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def _peek(self, offset: int = 0) -> str:
        pos = self.pos + offset
        if pos >= len(self.source):
            return ""
        return self.source[pos]

    def _advance(self) -> str:
        ch = self._peek()
        self.pos += 1
        if ch == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return ch

    def _skip_whitespace_and_comments(self) -> None:
        while self.pos < len(self.source):
            ch = self._peek()
            if ch in " \t\r\n":
                self._advance()
            elif ch == "/" and self._peek(1) == "/":
                while self._peek() and self._peek() != "\n":
                    self._advance()
            elif ch == "#" and self.col == 1:
                while self._peek() and self._peek() != "\n":
                    self._advance()
            elif ch == "/" and self._peek(1) == "*":
                line, col = self.line, self.col
                self._advance()
                self._advance()
                while not (self._peek() == "*" and self._peek(1) == "/"):
                    if not self._peek():
                        raise GraphParseError("unterminated comment", line, col)
                    self._advance()
                self._advance()
                self._advance()
            else:
                break

    def _read_string(self) -> str:
        line, col = self.line, self.col
        self._advance()
        result = []
        while True:
            ch = self._peek()
            if not ch:
                raise GraphParseError("unterminated string", line, col)
            if ch == '"':
                self._advance()
                break
            if ch == "\\" and self._peek(1) in ('"', "\\"):
                self._advance()
            result.append(self._advance())
        return "".join(result)

    def _read_id(self) -> str:
        result = []
        while self.ID_CHAR.match(self._peek()):
            result.append(self._advance())
        return "".join(result)

    def tokenize(self) -> Iterator[Token]:
        while self.pos < len(self.source):
            self._skip_whitespace_and_comments()
            if self.pos >= len(self.source):
                break

            line, col = self.line, self.col
            ch = self._peek()

            if ch in self.PUNCT:
                self._advance()
                yield Token(self.PUNCT[ch], ch, line, col)
            elif ch == "-" and self._peek(1) == ">":
                self._advance()
                self._advance()
                yield Token(TokenType.ARROW, "->", line, col)
            elif ch == "-" and self._peek(1) == "-":
                self._advance()
                self._advance()
                yield Token(TokenType.UNDIRECTED, "--", line, col)
            elif ch == '"':
                yield Token(TokenType.ID, self._read_string(), line, col, quoted=True)
            elif self.ID_CHAR.match(ch):
                yield Token(TokenType.ID, self._read_id(), line, col)
            else:
                raise GraphParseError(f"unexpected character '{ch}'", line, col)

        yield Token(TokenType.EOF, None, self.line, self.col)


class Parser:
    """Parse DOT-subset tokens into a ParsedGraph."""

    STATEMENT_KEYWORDS = {"graph", "node", "edge"}

    def __init__(self, tokens: list[Token], allow_loops: bool = False):
        self.tokens = tokens
        self.pos = 0
        self.builder = _GraphBuilder(allow_loops)

    def _peek(self) -> Token:
        return self.tokens[min(self.pos, len(self.tokens) - 1)]

    def _advance(self) -> Token:
        tok = self._peek()
        self.pos += 1
        return tok

    def _expect(self, ttype: TokenType, what: str | None = None) -> Token:
        tok = self._advance()
        if tok.type != ttype:
            found = tok.value if tok.value is not None else tok.type.value
            raise GraphParseError(
                f"expected {what or ttype.value}, got '{found}'", tok.line, tok.col
            )
        return tok

    def _keyword(self, tok: Token, word: str) -> bool:
        return tok.type == TokenType.ID and not tok.quoted and tok.value.lower() == word

    def parse(self) -> ParsedGraph:
        tok = self._peek()
        if self._keyword(tok, "strict"):
            self._advance()
            tok = self._peek()
        if self._keyword(tok, "graph"):
            raise GraphParseError("undirected graphs are not supported", tok.line, tok.col)
        if not self._keyword(tok, "digraph"):
            found = tok.value if tok.value is not None else "end of input"
            raise GraphParseError(f"expected 'digraph', got '{found}'", tok.line, tok.col)
        self._advance()

        if self._peek().type == TokenType.ID:
            self._advance()
        self._expect(TokenType.LBRACE, "'{'")

        while self._peek().type != TokenType.RBRACE:
            if self._peek().type == TokenType.EOF:
                tok = self._peek()
                raise GraphParseError("missing closing '}'", tok.line, tok.col)
            self._statement()
        self._advance()

        tok = self._peek()
        if tok.type != TokenType.EOF:
            raise GraphParseError("content after closing '}'", tok.line, tok.col)
        return self.builder.finish()

    def _statement(self) -> None:
        tok = self._peek()
        if tok.type == TokenType.SEMI:
            self._advance()
            return

        head = self._expect(TokenType.ID, "a vertex id")
        if not head.quoted and head.value.lower() in self.STATEMENT_KEYWORDS:
            self._attributes()
            self._optional_semi()
            return

        if self._peek().type == TokenType.EQUALS:
            self._advance()
            self._expect(TokenType.ID, "an attribute value")
            self._optional_semi()
            return

        chain = [head]
        while True:
            nxt = self._peek()
            if nxt.type == TokenType.UNDIRECTED:
                raise GraphParseError("undirected edge '--' in a digraph", nxt.line, nxt.col)
            if nxt.type != TokenType.ARROW:
                break
            self._advance()
            chain.append(self._expect(TokenType.ID, "a vertex id after '->'"))

        if len(chain) == 1:
            self.builder.vertex(head.value)
        for u, v in zip(chain, chain[1:]):
            self.builder.arc(u.value, v.value, v.line, v.col)

        self._attributes()
        self._optional_semi()

    def _attributes(self) -> None:
        # Attribute lists carry no meaning here; they are checked and skipped.
        while self._peek().type == TokenType.LBRACKET:
            self._advance()
            while self._peek().type != TokenType.RBRACKET:
                self._expect(TokenType.ID, "an attribute name")
                if self._peek().type == TokenType.EQUALS:
                    self._advance()
                    self._expect(TokenType.ID, "an attribute value")
                if self._peek().type in (TokenType.COMMA, TokenType.SEMI):
                    self._advance()
            self._advance()

    def _optional_semi(self) -> None:
        if self._peek().type == TokenType.SEMI:
            self._advance()


def read_dot(text: str, allow_loops: bool = False) -> ParsedGraph:
    """Read the DOT subset permissively (loops recorded when allow_loops)."""
    tokens = list(Tokenizer(text).tokenize())
    return Parser(tokens, allow_loops).parse()


def parse_dot_subset(text: str) -> Digraph:
    """Strict DOT-subset reader."""
    return read_dot(text).to_digraph()


_BARE_ID = re.compile(r"[A-Za-z0-9_]+")
_RESERVED = {"graph", "digraph", "node", "edge", "strict", "subgraph"}


def _dot_id(label: str) -> str:
    if _BARE_ID.fullmatch(label) and label.lower() not in _RESERVED:
        return label
    escaped = label.replace("\\", "\\\\").replace('"', '\\"')
    return f'"{escaped}"'


def to_dot(d: Digraph, name: str = "G") -> str:
    """Serialize to the DOT subset; node statements fix the vertex order."""
    lines = [f"digraph {_dot_id(name)} {{"]
    lines.extend(f"  {_dot_id(v)};" for v in d.vertices)
    lines.extend(f"  {_dot_id(u)} -> {_dot_id(v)};" for u, v in d.arcs)
    lines.append("}")
    return "\n".join(lines) + "\n"


# ============================================================================
# FILES AND LOOPS
# ============================================================================

def read_graph_file(path: Path, fmt: str | None = None, allow_loops: bool = False) -> ParsedGraph:
    """
    Read a digraph file. Format is "edge-list" or "dot"; when omitted it
    follows the file suffix.
    """
    path = Path(path)
    fmt = fmt or ("dot" if path.suffix == DOT_SUFFIX else "edge-list")
    text = path.read_text(encoding="utf-8")
    if fmt == "dot":
        return read_dot(text, allow_loops)
    if fmt == "edge-list":
        return read_edge_list(text, allow_loops)
    raise ValueError(f"unknown graph format '{fmt}'")


def loop_transform(parsed: ParsedGraph | Digraph) -> Digraph:
    """
    Replace each recorded self-loop (v, v) with a 2-cycle through a fresh
    vertex "<v>__loop<k>", k the smallest free natural number.

    A Digraph is already loopless and comes back unchanged.
    """
    if isinstance(parsed, Digraph):
        return parsed

    vertices = list(parsed.vertices)
    arcs = list(parsed.arcs)
    taken = set(vertices)
    for occurrence in parsed.loops:
        v = occurrence.vertex
        k = 0
        while LOOP_LABEL.format(vertex=v, k=k) in taken:
            k += 1
        fresh = LOOP_LABEL.format(vertex=v, k=k)
        taken.add(fresh)
        vertices.append(fresh)
        arcs.extend(((v, fresh), (fresh, v)))
    if parsed.loops:
        logger.info("rewrote %d self-loop(s) as 2-cycles", len(parsed.loops))
    return Digraph(tuple(vertices), tuple(arcs))
