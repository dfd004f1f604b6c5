"""
Unit tests for frames, potentials, richness and butterflies.
"""
import pytest
import sys
import os

# Add src to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

from frames.frame import (L_ADJACENT, R_ADJACENT, Frame, build_butterfly, butterflies, canonical_hole,
                          classify_richness, enumerate_feasible_frames, frame_of, frame_sides,
                          heavy_vertices, is_heavy, light_vertices, optimal_frame, optimal_frame_choice,
                          pair_distance, potential, realize_frame, separator_sides, side_distance)
from generators.families import cycle, g_hub, g_tc
from graph_core.graph import Graph
from holes.classifier import Hole
from utils.exceptions import ContractError

TC_SEPARATOR = (0, 4, 10)
HUB_SEPARATOR = (0, 5, 10)

# (c1, c2, l1', l1, r1, r1', l2', l2, r2, r2')
TC_SHORT_FRAME = Frame(0, 4, 2, 1, 7, 6, 2, 3, 5, 6)
TC_LONG_FRAME = Frame(4, 10, 2, 3, 5, 6, 1, 8, 9, 7)
HUB_FRAME = Frame(0, 5, 2, 1, 9, 8, 3, 4, 6, 7)


class TestSeparatorGeometry:
    """Test sides, pair distances and richness."""

    def test_sides(self):
        """Test L holds the smaller smallest member."""
        assert separator_sides(g_tc(), TC_SEPARATOR) == ((1, 2, 3, 8), (5, 6, 7, 9))
        assert separator_sides(g_hub(), HUB_SEPARATOR) == ((1, 2, 3, 4), (6, 7, 8, 9))

    def test_distances(self):
        """Test shortest paths through each side."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)

        assert side_distance(G, TC_SEPARATOR, L, 0, 4) == 4
        assert side_distance(G, TC_SEPARATOR, L, 0, 10) == 2
        assert pair_distance(G, TC_SEPARATOR, L, R, 4, 10) == 5

        with pytest.raises(ContractError):
            side_distance(G, TC_SEPARATOR, L, 0, 1)

    def test_richness_tc(self):
        """Test G_tc's separator is rich with two long pairs."""
        richness = classify_richness(g_tc(), TC_SEPARATOR)

        assert richness.rich
        assert richness.long_pairs == [(0, 4, 4), (4, 10, 5)]
        assert richness.best_pair == (4, 10, 5)
        assert richness.to_dict()["best_pair"] == [4, 10, 5]

    def test_richness_poor(self):
        """Test a C6 separator is poor."""
        richness = classify_richness(cycle(6), (0, 3))

        assert not richness.rich
        assert richness.best_pair == (0, 3, 3)

    def test_richness_needs_proper_separator(self):
        """Test clique separators are refused."""
        P3 = Graph(3, [(0, 1), (1, 2)])
        with pytest.raises(ContractError):
            classify_richness(P3, (1,))


class TestFrames:
    """Test reading, checking and realizing frames."""

    def test_frame_of_canonical_hole(self):
        """Test the frame read off the C8 hole of G_tc."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)
        H = canonical_hole(G, TC_SEPARATOR, L, R, 0, 4)

        assert H.cycle == tuple(range(8))
        assert frame_of(G, H, 0, 4, left=L) == TC_SHORT_FRAME
        assert frame_of(G, H, 0, 4) == TC_SHORT_FRAME

    def test_frame_accessors(self):
        """Test anchors, primed slots and vertices."""
        F = TC_LONG_FRAME

        assert F.anchors == (4, 10, 3, 5, 8, 9)
        assert F.primed == (2, 1, 6, 7)
        assert F.vertices == (1, 2, 3, 4, 5, 6, 7, 8, 9, 10)
        assert F.to_list() == [4, 10, 2, 3, 5, 6, 1, 8, 9, 7]

    def test_feasible_frames(self):
        """Test each long pair of G_tc has a single feasible frame."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)

        assert enumerate_feasible_frames(G, TC_SEPARATOR, L, R, 0, 4) == [TC_SHORT_FRAME]
        assert enumerate_feasible_frames(G, TC_SEPARATOR, L, R, 4, 10) == [TC_LONG_FRAME]

    def test_realize_frame(self):
        """Test realization returns a hole with the requested frame."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)
        H = realize_frame(G, TC_LONG_FRAME, L, R)

        assert H is not None
        assert set(H.cycle) == {1, 2, 3, 4, 5, 6, 7, 8, 9, 10}
        assert frame_of(G, H, 4, 10, left=L) == TC_LONG_FRAME

    def test_realize_frame_blocked_region(self):
        """Test narrowing the left region can make a frame unrealizable."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)

        assert realize_frame(G, TC_LONG_FRAME, L, R, region_left=[3, 8]) is None

    def test_degenerate_sides(self):
        """Test single-vertex and adjacent-pair sides of C5."""
        G = cycle(5)
        H = Hole.of(G, range(5))
        F = frame_of(G, H, 0, 2, left=[1])

        assert F == Frame(0, 2, 1, 1, 4, 3, 1, 1, 3, 4)
        F.check(G)
        assert realize_frame(G, F, [1], [3, 4]) == H

    def test_poor_frame_of_c6(self):
        """Test the C6 frame with two-vertex sides."""
        G = cycle(6)
        F = optimal_frame(G, (0, 3))

        assert F == Frame(0, 3, 2, 1, 5, 4, 1, 2, 4, 5)
        F.check(G)

    def test_check_rejects_bad_frames(self):
        """Test adjacency invariants."""
        G = cycle(6)
        with pytest.raises(ContractError):
            Frame(0, 1, 2, 1, 5, 4, 1, 2, 4, 5).check(G)
        with pytest.raises(ContractError):
            Frame(0, 3, 2, 2, 5, 4, 1, 2, 4, 5).check(G)

    def test_frame_sides(self):
        """Test sides follow l1 and r1."""
        G = g_tc()

        assert frame_sides(G, TC_LONG_FRAME, TC_SEPARATOR) == ((1, 2, 3, 8), (5, 6, 7, 9))
        swapped = Frame(4, 10, 6, 5, 3, 2, 7, 9, 8, 1)
        with pytest.raises(ContractError):
            frame_sides(G, swapped, TC_SEPARATOR)


class TestPotential:
    """Test heavy vertices, potentials and the optimal frame."""

    def test_heavy_hub(self):
        """Test 0 is heavy on the long hole of G_tc."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)
        H = realize_frame(G, TC_LONG_FRAME, L, R)

        assert is_heavy(G, H, 4, 10, 0)
        assert heavy_vertices(G, H, 4, 10) == (0,)
        with pytest.raises(ContractError):
            is_heavy(G, H, 4, 10, 3)

    def test_potentials(self):
        """Test the two frames of G_tc."""
        G = g_tc()

        assert potential(G, TC_SHORT_FRAME, TC_SEPARATOR) == 0
        assert potential(G, TC_LONG_FRAME, TC_SEPARATOR) == 1

    def test_optimal_frame_tc(self):
        """Test maximum potential picks the long frame."""
        choice = optimal_frame_choice(g_tc(), TC_SEPARATOR)

        assert choice.frame == TC_LONG_FRAME
        assert choice.potential == 1
        assert choice.richness.rich

    def test_optimal_frame_hub(self):
        """Test G_hub's only long pair and its heavy hub."""
        G = g_hub()
        choice = optimal_frame_choice(G, HUB_SEPARATOR)

        assert choice.frame == HUB_FRAME
        assert choice.potential == 1
        assert choice.hole.cycle == tuple(range(10))
        assert heavy_vertices(G, choice.hole, 0, 5) == (10,)


class TestButterflies:
    """Test light vertices and their butterflies."""

    def test_tc_butterfly(self):
        """Test c3 reaches both sides through x and y."""
        G = g_tc()
        L, R = separator_sides(G, TC_SEPARATOR)
        H = Hole.of(G, range(8))

        assert light_vertices(G, TC_SEPARATOR, H, 0, 4) == (10,)
        b = build_butterfly(G, TC_SEPARATOR, L, R, H, 10)
        assert b.left_wing == (10, 8)
        assert b.right_wing == (10, 9)
        assert b.positions == (L_ADJACENT, R_ADJACENT)
        assert not b.is_central
        assert [x.to_dict() for x in butterflies(G, TC_SEPARATOR, L, R, H, 0, 4)] == [b.to_dict()]

    def test_heavy_vertex_has_no_butterfly(self):
        """Test the hub of G_hub is refused."""
        G = g_hub()
        L, R = separator_sides(G, HUB_SEPARATOR)
        H = Hole.of(G, range(10))

        assert light_vertices(G, HUB_SEPARATOR, H, 0, 5) == ()
        with pytest.raises(ContractError):
            build_butterfly(G, HUB_SEPARATOR, L, R, H, 10)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
