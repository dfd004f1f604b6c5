"""
Unit tests for the graph core: primitives, path search and file formats.
"""
import pytest
import sys
import os

# Add src to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from graph_core.graph import (Graph, closed_neighborhood, component_of, components, is_anticomplete,
                              is_clique, is_connected, is_hole_cycle, is_induced_path, neighborhood,
                              path_through, satisfies_path_through, shortest_path, vertex_set)
from graph_core.io import infer_format, load_graph, parse_graph, parse_graph6_lines, write_graph
from utils.exceptions import ContractError, ParseError


def cycle_graph(k):
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


class TestGraph:
    """Test the Graph container."""

    def test_basic_counts(self):
        """Test vertex and edge counts, with repeated pairs collapsed."""
        G = Graph(4, [(0, 1), (1, 0), (1, 2), (2, 3)])

        assert G.n == 4
        assert G.m == 3
        assert G.neighbors(1) == (0, 2)
        assert G.degree(3) == 1
        assert G.has_edge(2, 1)
        assert not G.has_edge(0, 3)
        assert G.edges() == [(0, 1), (1, 2), (2, 3)]

    def test_rejects_bad_edges(self):
        """Test self-loops and unknown vertices are contract violations."""
        with pytest.raises(ContractError):
            Graph(3, [(1, 1)])
        with pytest.raises(ContractError):
            Graph(3, [(0, 5)])
        with pytest.raises(ContractError):
            Graph(-1)

    def test_induced_subgraph_keeps_ids(self):
        """Test induced subgraphs report host vertex ids."""
        G = cycle_graph(6)
        H = G.induced_subgraph([1, 2, 3, 5])

        assert H.vertices == (1, 2, 3, 5)
        assert H.edges() == [(1, 2), (2, 3)]
        assert G.delete([0, 4]) == H

        with pytest.raises(ContractError):
            G.induced_subgraph([7])

    def test_relabelled(self):
        """Test dense relabelling and the id mapping."""
        H = cycle_graph(6).induced_subgraph([2, 3, 4])
        dense, order = H.relabelled()

        assert dense.vertices == (0, 1, 2)
        assert order == [2, 3, 4]
        assert dense.edges() == [(0, 1), (1, 2)]

    def test_networkx_roundtrip(self):
        """Test conversion to and from networkx."""
        G = cycle_graph(5)
        g = G.to_networkx()

        assert g.number_of_edges() == 5
        assert Graph.from_networkx(g) == G

    def test_masks(self):
        """Test adjacency bitmasks."""
        G = Graph(3, [(0, 1), (0, 2)])

        assert G.masks() == {0: 0b110, 1: 0b001, 2: 0b001}


class TestPrimitives:
    """Test neighborhoods, components and structural predicates."""

    def test_vertex_set_normalizes(self):
        """Test sorting, deduplication and membership checks."""
        G = cycle_graph(5)

        assert vertex_set(G, [3, 1, 3]) == (1, 3)
        with pytest.raises(ContractError):
            vertex_set(G, [9])

    def test_neighborhoods(self):
        """Test open and closed neighborhoods of sets."""
        G = cycle_graph(6)

        assert neighborhood(G, [0]) == (1, 5)
        assert neighborhood(G, [0, 1]) == (2, 5)
        assert closed_neighborhood(G, [0]) == (0, 1, 5)

    def test_components(self):
        """Test components are sorted by their smallest vertex."""
        G = cycle_graph(6)

        assert components(G, [0, 1, 3, 4]) == [(0, 1), (3, 4)]
        assert component_of(G, 4, [0, 1, 3, 4]) == (3, 4)
        assert is_connected(G)
        assert not is_connected(G, [0, 3])
        assert components(G, []) == []

    def test_clique_and_anticomplete(self):
        """Test clique and anticomplete checks."""
        G = Graph(4, [(0, 1), (0, 2), (1, 2), (2, 3)])

        assert is_clique(G, [0, 1, 2])
        assert is_clique(G, [])
        assert not is_clique(G, [0, 1, 3])
        assert is_anticomplete(G, [0, 1], [3])
        assert not is_anticomplete(G, [0], [2, 3])

    def test_induced_path_and_hole(self):
        """Test induced path and chordless cycle recognition."""
        G = cycle_graph(6)

        assert is_induced_path(G, [0, 1, 2, 3])
        assert not is_induced_path(G, [0, 1, 2, 3, 4, 5])
        assert not is_induced_path(G, [])
        assert is_hole_cycle(G, [0, 1, 2, 3, 4, 5])
        assert not is_hole_cycle(G, [0, 1, 2])

        chorded = Graph(6, cycle_graph(6).edges() + [(0, 3)])
        assert not is_hole_cycle(chorded, [0, 1, 2, 3, 4, 5])
        assert is_hole_cycle(chorded, [0, 1, 2, 3])


class TestPaths:
    """Test shortest paths and paths from X to Z through Y."""

    def test_shortest_path_deterministic(self):
        """Test the lower-id branch wins on ties."""
        G = cycle_graph(6)

        assert shortest_path(G, [0], [3], [1, 2, 4, 5]) == (0, 1, 2, 3)
        assert shortest_path(G, [0], [3], [4, 5]) == (0, 5, 4, 3)
        assert shortest_path(G, [0], [3], [1]) is None

    def test_shortest_path_source_is_target(self):
        """Test a shared source and target yields a single vertex."""
        G = cycle_graph(4)

        assert shortest_path(G, [2], [2], []) == (2,)

    def test_path_through(self):
        """Test the path stops at the first vertex seeing Z."""
        # 8-cycle with a chord pair: 8 sees 0 and 1, 9 sees 7 and 0, 10 sees 8 and 9
        edges = [(i, (i + 1) % 8) for i in range(8)] + [(8, 1), (8, 0), (9, 7), (9, 0), (10, 8), (10, 9)]
        G = Graph(11, edges)

        P = path_through(G, [10], [1, 2, 3], [1, 2, 3, 8])
        assert P == (10, 8)
        assert satisfies_path_through(G, P, [10], [1, 2, 3], [1, 2, 3, 8])

    def test_path_through_single_vertex(self):
        """Test a source already adjacent to Z is a one-vertex path."""
        G = cycle_graph(5)

        assert path_through(G, [0], [1], []) == (0,)

    def test_path_through_none_and_contract(self):
        """Test unreachable targets and overlapping X and Z."""
        G = cycle_graph(6)

        assert path_through(G, [0], [3], [1]) is None
        with pytest.raises(ContractError):
            path_through(G, [0, 3], [3], [1, 2])

    def test_satisfies_rejects_early_contact(self):
        """Test a path touching Z before its last vertex is rejected."""
        G = cycle_graph(6)

        assert not satisfies_path_through(G, (0, 1, 2), [0], [3, 5], [1, 2])
        assert not satisfies_path_through(G, (), [0], [3], [1, 2])


class TestGraphIO:
    """Test edge-list and graph6 parsing and writing."""

    def test_parse_edge_list(self):
        """Test header, comments and blank lines."""
        text = "# a path\n3 2   # header\n\n0 1\n1 2\n"
        G = parse_graph(text, name="path")

        assert G.n == 3
        assert G.edges() == [(0, 1), (1, 2)]
        assert G.name == "path"

    def test_isolated_vertices(self):
        """Test a header with no edges."""
        G = parse_graph("4 0\n")

        assert G.n == 4
        assert G.m == 0

    def test_parse_errors_carry_line_numbers(self):
        """Test each malformed input reports its line."""
        cases = {
            "3 2\n0 1\n0 1\n": 3,
            "3 1\n0 3\n": 2,
            "3 1\n1 1\n": 2,
            "3 1\n0 x\n": 2,
            "3 1\n0 1 2\n": 2,
        }
        for text, line in cases.items():
            with pytest.raises(ParseError) as info:
                parse_graph(text)
            assert info.value.line == line
            assert f"line {line}" in str(info.value)

    def test_header_mismatch(self):
        """Test edge count disagreeing with the header."""
        with pytest.raises(ParseError):
            parse_graph("3 2\n0 1\n")
        with pytest.raises(ParseError):
            parse_graph("")

    def test_write_edge_list(self):
        """Test the canonical edge-list form."""
        assert write_graph(cycle_graph(4)) == "4 4\n0 1\n0 3\n1 2\n2 3\n"

    def test_edge_list_roundtrip(self):
        """Test parse inverts write."""
        G = cycle_graph(7)

        assert parse_graph(write_graph(G)) == G

    def test_graph6(self):
        """Test graph6 reading and writing."""
        K4 = Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])

        assert write_graph(K4, "graph6") == "C~\n"
        assert parse_graph("C~\n", "graph6") == K4
        assert len(parse_graph6_lines("C~\nC~\n\n")) == 2

        with pytest.raises(ParseError):
            parse_graph("\n", "graph6")
        with pytest.raises(ParseError):
            parse_graph("0 0\n", "adjacency")

    def test_load_graph(self, tmp_path):
        """Test loading from disk names the graph after the file."""
        path = tmp_path / "square.txt"
        path.write_text("4 4\n0 1\n1 2\n2 3\n3 0\n")

        G = load_graph(str(path))
        assert G.name == "square"
        assert G == cycle_graph(4)
        assert infer_format("x.g6") == "graph6"
        assert infer_format("x.txt") == "edge-list"


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
