"""
Unit tests for the named graph families and the seeded corpora.
"""
import pytest
import sys
import os

import networkx as nx

# Add src to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from forbidden.detector import is_class_member, recognize_structure
from generators.corpus import build_corpus, random_chordal, random_class_member, random_graph
from generators.families import (FAMILIES, FamilySpec, cube, cycle, generate, k_ladder, k_prism, k_pyramid,
                                 k_theta, k_turtle, ladder_layout, min_prism, turtle_layout)
from utils.exceptions import ContractError


class TestFamilies:
    """Test family sizes, numbering and structure."""

    def test_k_theta(self):
        """Test k-theta sizes and that k=3 is a theta."""
        for k in (1, 2, 3, 4):
            G = k_theta(k)
            assert (G.n, G.m) == (2 * k + 2, 3 * k)
        roles = recognize_structure(k_theta(3), "theta")
        assert (roles["a"], roles["b"]) == (0, 4)

    def test_k_pyramid(self):
        """Test k=3 is a pyramid with triangle b_1 b_2 b_3."""
        G = k_pyramid(3)
        roles = recognize_structure(G, "pyramid")

        assert (G.n, G.m) == (7, 9)
        assert roles["apex"] == 0
        assert roles["triangle"] == [4, 5, 6]

    def test_k_prism(self):
        """Test k=3 is the small prism and k=2 is a square."""
        assert k_prism(3) == min_prism()
        assert k_prism(2).edges() == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_turtle_layout(self):
        """Test the documented numbering."""
        assert turtle_layout(1) == {"a": [0], "b": [4], "P1": [1, 2, 3], "P2": [5, 6, 7], "x": [8], "y": [9]}
        with pytest.raises(ContractError):
            turtle_layout(1, p1_len=2)

    def test_k_turtle(self):
        """Test sizes and custom path lengths."""
        assert k_turtle(2).n == 18
        G = k_turtle(1, p1_len=4)
        assert G.n == 11
        assert recognize_structure(G, "turtle") is not None

    def test_ladder(self):
        """Test the two-rung ladder numbering and size."""
        assert ladder_layout(2) == {
            "bottom": [0, 1, 2],
            "s": [3, 9], "p": [4, 10], "t": [5, 11], "d": [6, 12], "u": [7, 13], "e": [8],
            "top": [14, 15, 16],
        }
        G = k_ladder(2)
        assert (G.n, G.m) == (17, 21)

    def test_cube(self):
        """Test the cube is cubic on eight vertices."""
        G = cube()

        assert (G.n, G.m) == (8, 12)
        assert all(G.degree(v) == 3 for v in G.vertices)


class TestGenerate:
    """Test the FamilySpec front end."""

    def test_generate_families(self):
        """Test parameterized and fixed families."""
        assert generate(FamilySpec("cycle", 7)) == cycle(7)
        assert generate(FamilySpec("cube")) == cube()
        assert generate(FamilySpec("G_tc")).n == 11
        assert generate(FamilySpec("k_turtle", 1, {"p1_len": 4})).n == 11

    def test_labels(self):
        """Test labels with and without k."""
        assert FamilySpec("k_theta", 3).label() == "k_theta(3)"
        assert FamilySpec("cube").label() == "cube"
        assert "G_hub" in FAMILIES
        assert "k_ladder" in FAMILIES

    def test_generate_errors(self):
        """Test unknown families, bad k and bad extras."""
        bad = [
            FamilySpec("petersen"),
            FamilySpec("k_theta"),
            FamilySpec("cycle", 2),
            FamilySpec("k_theta", 2, {"p1_len": 6}),
            FamilySpec("k_turtle", 1, {"width": 3}),
        ]
        for spec in bad:
            with pytest.raises(ContractError):
                generate(spec)


class TestCorpus:
    """Test seeded random graphs and named corpora."""

    def test_random_graph_extremes(self):
        """Test p = 0 and p = 1."""
        assert random_graph(5, 1.0).m == 10
        assert random_graph(5, 0.0).m == 0

    def test_random_graph_seeded(self):
        """Test the same seed gives the same graph."""
        assert random_graph(8, 0.4, seed=3) == random_graph(8, 0.4, seed=3)

    def test_random_graph_errors(self):
        """Test parameter validation."""
        with pytest.raises(ValueError, match="p must be between 0 and 1"):
            random_graph(5, 1.5)
        with pytest.raises(ValueError):
            random_graph(-1, 0.5)

    def test_random_chordal(self):
        """Test the chordal generator produces chordal graphs."""
        for seed in range(5):
            G = random_chordal(9, seed)
            assert G.n == 9
            assert nx.is_chordal(G.to_networkx())

    def test_random_class_member(self):
        """Test an accepted sample is a verified member."""
        G = random_class_member(6, 0.3, seed=0, attempts=20)

        assert G is None or is_class_member(G).is_member

    def test_fixed_corpora(self):
        """Test the cycles and fixtures corpora."""
        assert [G.name for G in build_corpus("cycles")] == [f"C{k}" for k in range(5, 14)]
        assert [G.name for G in build_corpus("fixtures")] == ["C8", "G_tc", "G_hub"]

    def test_sized_corpora(self):
        """Test sizes of the sampled corpora."""
        small = build_corpus("small", size=2)
        assert len(small) == 6
        assert sorted({G.n for G in small}) == [3, 4, 5]

        assert len(build_corpus("random", size=1)) == 5
        assert len(build_corpus("chordal", size=3, max_n=6)) == 3

        members = build_corpus("members", size=2, max_n=7)
        assert all(is_class_member(G).is_member for G in members)

    def test_corpus_reproducible(self):
        """Test corpora are deterministic per seed."""
        assert build_corpus("small", size=3, seed=4) == build_corpus("small", size=3, seed=4)

    def test_unknown_corpus(self):
        """Test an unknown corpus name."""
        with pytest.raises(ValueError):
            build_corpus("planar")


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
