"""Tests for flowhom.parse - edge lists, the DOT subset, loop handling."""

from pathlib import Path

import pytest

from flowhom.digraph import (
    Digraph,
    k_partite_tower,
    require_flow_graph,
    series_compose,
    suspension,
    tower_flow_example,
    two_cycle,
)
from flowhom.errors import GraphParseError, SelfLoopError
from flowhom.parse import (
    Token,
    TokenType,
    Tokenizer,
    loop_transform,
    parse_dot_subset,
    parse_edge_list,
    read_dot,
    read_edge_list,
    read_graph_file,
    to_dot,
    to_edge_list,
)

DATA = Path(__file__).parent / "data"


class TestEdgeList:
    def test_basic(self):
        d = parse_edge_list("a b\nb c\n")
        assert d.vertices == ("a", "b", "c")
        assert d.arcs == (("a", "b"), ("b", "c"))

    def test_comments_and_blank_lines(self):
        d = parse_edge_list("# header\n\n a   b \n\t# trailing\n")
        assert d.arcs == (("a", "b"),)

    def test_duplicates_collapse(self):
        parsed = read_edge_list("a b\na b\n")
        assert parsed.arcs == [("a", "b")]
        assert parsed.collapsed == 1

    def test_wrong_token_count(self):
        with pytest.raises(GraphParseError, match="line 2") as exc:
            parse_edge_list("a b\na b c\n")
        assert exc.value.line == 2

    def test_self_loop_rejected(self):
        with pytest.raises(SelfLoopError) as exc:
            parse_edge_list("a b\nc c\n")
        assert exc.value.vertex == "c"
        assert exc.value.line == 2

    def test_vertex_pragma(self):
        d = parse_edge_list("#! vertices: z a b\na b\n")
        assert d.vertices == ("z", "a", "b")

    @pytest.mark.parametrize("comment", ["# vertices: counted below", "# vertices:x y", "#vertices: q"])
    def test_ordinary_comment_is_not_a_pragma(self, comment):
        d = parse_edge_list(f"{comment}\na b\nb a\n")
        assert d.vertices == ("a", "b")

    def test_empty_text(self):
        assert parse_edge_list("").is_empty


class TestEdgeListWriter:
    def test_plain(self):
        d = parse_edge_list("a b\nb c\n")
        assert to_edge_list(d) == "a b\nb c\n"

    def test_pragma_when_isolated_vertex(self):
        d = Digraph(("a", "b", "c"), (("a", "b"),))
        text = to_edge_list(d)
        assert text.startswith("#! vertices: a b c\n")
        assert parse_edge_list(text) == d

    def test_pragma_when_order_differs(self):
        d = Digraph(("b", "a"), (("a", "b"),))
        assert parse_edge_list(to_edge_list(d)).vertices == ("b", "a")

    def test_unwritable_label(self):
        with pytest.raises(ValueError):
            to_edge_list(Digraph(("a b",)))

    def test_empty(self):
        assert to_edge_list(Digraph()) == ""

    @pytest.mark.parametrize(
        "build",
        [
            two_cycle,
            lambda: suspension(two_cycle(), 2),
            lambda: k_partite_tower([2, 3, 1]),
            tower_flow_example,
            lambda: series_compose(*[require_flow_graph(tower_flow_example())] * 2).digraph,
        ],
        ids=["two-cycle", "suspension", "tower", "tower-flow", "series"],
    )
    def test_constructions_survive_rewrite(self, build):
        d = build()
        assert parse_edge_list(to_edge_list(d)) == d


class TestTokenizer:
    def test_arrow_and_ids(self):
        tokens = list(Tokenizer("a -> b;").tokenize())
        assert [t.type for t in tokens] == [
            TokenType.ID, TokenType.ARROW, TokenType.ID, TokenType.SEMI, TokenType.EOF,
        ]

    def test_positions(self):
        tokens = list(Tokenizer("digraph {\n  x -> y\n}").tokenize())
        x = tokens[2]
        assert (x.value, x.line, x.col) == ("x", 2, 3)

    def test_quoted(self):
        tokens = list(Tokenizer('"a b" -> c').tokenize())
        assert tokens[0] == Token(TokenType.ID, "a b", 1, 1, quoted=True)

    def test_comments(self):
        tokens = list(Tokenizer("// c1\n/* c2 */ a\n# c3\n").tokenize())
        assert [t.value for t in tokens[:-1]] == ["a"]

    def test_unterminated_string(self):
        with pytest.raises(GraphParseError, match="unterminated string"):
            list(Tokenizer('"abc').tokenize())

    def test_unexpected_character(self):
        with pytest.raises(GraphParseError, match="unexpected character"):
            list(Tokenizer("a @ b").tokenize())


class TestDot:
    def test_edge_chain(self):
        d = parse_dot_subset("digraph G { a -> b -> c; }")
        assert d.arcs == (("a", "b"), ("b", "c"))

    def test_attributes_ignored(self):
        text = 'strict digraph { rankdir=LR; node [shape=box]; a -> b [color="red", weight=2]; }'
        assert parse_dot_subset(text).arcs == (("a", "b"),)

    def test_node_statement_registers_vertex(self):
        d = parse_dot_subset("digraph { lonely; a -> b }")
        assert d.vertices == ("lonely", "a", "b")

    def test_file(self):
        d = read_graph_file(DATA / "square.dot").to_digraph()
        assert d.vertices == ("a", "b", "d", "c")
        assert d.n_arcs == 4

    def test_undirected_graph_rejected(self):
        with pytest.raises(GraphParseError, match="undirected graphs"):
            parse_dot_subset("graph { a -- b }")

    def test_undirected_edge_rejected(self):
        with pytest.raises(GraphParseError, match="undirected edge"):
            parse_dot_subset("digraph { a -- b }")

    def test_missing_brace(self):
        with pytest.raises(GraphParseError, match="missing closing"):
            parse_dot_subset("digraph { a -> b")

    def test_trailing_content(self):
        with pytest.raises(GraphParseError, match="after closing"):
            parse_dot_subset("digraph { a -> b } x")

    def test_not_a_digraph(self):
        with pytest.raises(GraphParseError, match="expected 'digraph'"):
            parse_dot_subset("a -> b")

    def test_loop_recorded_when_allowed(self):
        parsed = read_dot("digraph { a -> a; a -> b }", allow_loops=True)
        assert [occ.vertex for occ in parsed.loops] == ["a"]
        with pytest.raises(SelfLoopError):
            parsed.to_digraph()

    def test_writer_reads_back(self):
        d = Digraph(("node", "x y", "z"), (("node", "x y"),))
        text = to_dot(d)
        assert '"node"' in text
        assert parse_dot_subset(text) == d


class TestLoopTransform:
    def test_loop_becomes_two_cycle(self):
        d = loop_transform(read_graph_file(DATA / "loops.edges", allow_loops=True))
        assert d.vertices == ("w", "x", "x__loop0")
        assert ("x", "x__loop0") in d.arcs
        assert ("x__loop0", "x") in d.arcs

    def test_fresh_label_skips_taken(self):
        parsed = read_edge_list("x x\nx__loop0 y\n", allow_loops=True)
        d = loop_transform(parsed)
        assert "x__loop1" in d.vertices

    def test_each_occurrence_gets_a_vertex(self):
        parsed = read_edge_list("x x\nx x\n", allow_loops=True)
        assert loop_transform(parsed).n_vertices == 3

    def test_digraph_passes_through(self):
        d = parse_edge_list("a b\n")
        assert loop_transform(d) is d

    def test_format_by_suffix(self):
        d = read_graph_file(DATA / "twocycle.edges").to_digraph()
        assert d.arcs == (("a", "b"), ("b", "a"))

    def test_unknown_format(self):
        with pytest.raises(ValueError, match="unknown graph format"):
            read_graph_file(DATA / "twocycle.edges", fmt="gml")
