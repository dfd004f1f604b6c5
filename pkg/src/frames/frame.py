"""
Frames of proper separators.

For a proper separator C with full components L and R (L holds the smaller
smallest member) and non-adjacent c1 < c2 in C, a (C, c1, c2)-hole runs from
c1 to c2 through L and back through R. Its frame is the 10-tuple of anchor
vertices next to c1 and c2 on each side.
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from graph_core.graph import (Graph, Path, VertexSet, closed_neighborhood, is_induced_path,
                              neighborhood, path_through, shortest_path, vertex_set)
from holes.classifier import Hole, are_distant, classify_vertex
from separators.enumerator import classify_separator, full_components
from utils.exceptions import ContractError, FrameRealizationError

logger = logging.getLogger(__name__)

LONG_PAIR_DISTANCE = 4

L_END = "L_end"
L_ADJACENT = "L_adjacent"
R_END = "R_end"
R_ADJACENT = "R_adjacent"
CENTRAL = "central"


@dataclass(frozen=True, order=True)
class Frame:
    c1: int
    c2: int
    l1p: int
    l1: int
    r1: int
    r1p: int
    l2p: int
    l2: int
    r2: int
    r2p: int

    def as_tuple(self) -> Tuple[int, ...]:
        return (self.c1, self.c2, self.l1p, self.l1, self.r1, self.r1p,
                self.l2p, self.l2, self.r2, self.r2p)

    @property
    def anchors(self) -> Tuple[int, ...]:
        """c1, c2, l1, r1, l2, r2: the vertices whose neighbors G_F deletes."""
        return (self.c1, self.c2, self.l1, self.r1, self.l2, self.r2)

    @property
    def primed(self) -> Tuple[int, ...]:
        return (self.l1p, self.l2p, self.r1p, self.r2p)

    @property
    def vertices(self) -> VertexSet:
        return tuple(sorted(set(self.as_tuple())))

    def to_list(self) -> List[int]:
        return list(self.as_tuple())

    def check(self, G: Graph):
        """Raise ContractError unless the adjacency invariants of a frame hold."""
        if G.has_edge(self.c1, self.c2) or self.c1 == self.c2:
            raise ContractError(f"frame ends {self.c1}, {self.c2} must be distinct and non-adjacent")
        for c, x in ((self.c1, self.l1), (self.c1, self.r1), (self.c2, self.l2), (self.c2, self.r2)):
            if not G.has_edge(c, x):
                raise ContractError(f"frame anchor {x} is not adjacent to {c}")
        for x1p, x1, x2p, x2, end in ((self.l1p, self.l1, self.l2p, self.l2, self.c1),
                                      (self.r1p, self.r1, self.r2p, self.r2, self.c1)):
            if x1 == x2:
                if not (x1p == x1 == x2p):
                    raise ContractError(f"degenerate side {x1} needs both primed slots equal to it")
            elif x1p == end or not G.has_edge(x1, x1p) or not G.has_edge(x2, x2p):
                raise ContractError(f"primed anchors {x1p}, {x2p} are not next to {x1}, {x2}")


@dataclass(frozen=True)
class Butterfly:
    center: int
    left_wing: Path
    right_wing: Path
    positions: Tuple[str, ...]

    @property
    def is_central(self) -> bool:
        return CENTRAL in self.positions

    def to_dict(self) -> Dict[str, Any]:
        return {
            "center": self.center,
            "left_wing": list(self.left_wing),
            "right_wing": list(self.right_wing),
            "positions": list(self.positions),
        }


@dataclass(frozen=True)
class Richness:
    rich: bool
    long_pairs: List[Tuple[int, int, int]]
    best_pair: Tuple[int, int, int]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rich": self.rich,
            "long_pairs": [list(p) for p in self.long_pairs],
            "best_pair": list(self.best_pair),
        }


def separator_sides(G: Graph, C: Iterable[int]) -> Tuple[VertexSet, VertexSet]:
    """The two full components of C, L first (smaller smallest member)."""
    full = full_components(G, C)
    if len(full) < 2:
        raise ContractError(f"{list(C)} is not a minimal separator")
    if len(full) > 2:
        logger.warning(f"separator {list(C)} has {len(full)} full components; using the first two")
    return full[0], full[1]


def _require_full(G: Graph, C: Iterable[int], side: Iterable[int]):
    if set(neighborhood(G, side)) != set(C):
        raise ContractError(f"{sorted(side)} is not a full component of {sorted(C)}")


def _side_path(G: Graph, side: Iterable[int], c1: int, c2: int) -> Optional[Path]:
    return shortest_path(G, [c1], [c2], side)


def side_distance(G: Graph, C: Iterable[int], side: Iterable[int], c1: int, c2: int) -> Optional[int]:
    """Length of a shortest c1-c2 path through ``side``."""
    sep = vertex_set(G, C)
    if c1 not in sep or c2 not in sep or G.has_edge(c1, c2):
        raise ContractError(f"{c1}, {c2} must be non-adjacent members of the separator")
    _require_full(G, sep, side)
    path = _side_path(G, side, c1, c2)
    return None if path is None else len(path) - 1


def pair_distance(G: Graph, C: Sequence[int], L: Sequence[int], R: Sequence[int], c1: int, c2: int) -> int:
    return min(side_distance(G, C, L, c1, c2), side_distance(G, C, R, c1, c2))


def _require_proper(G: Graph, C: Iterable[int]):
    record = classify_separator(G, C)
    if not record.is_proper:
        raise ContractError(f"{list(record.C)} is not a proper separator")


def classify_richness(G: Graph, C: Iterable[int]) -> Richness:
    """Rich (some pair at distance >= 4) or poor, with the farthest pair."""
    sep = vertex_set(G, C)
    _require_proper(G, sep)
    L, R = separator_sides(G, sep)
    scored = [(c1, c2, pair_distance(G, sep, L, R, c1, c2))
              for c1, c2 in itertools.combinations(sep, 2) if not G.has_edge(c1, c2)]
    long_pairs = [p for p in scored if p[2] >= LONG_PAIR_DISTANCE]
    best = max(scored, key=lambda p: (p[2], -p[0], -p[1]))
    return Richness(bool(long_pairs), long_pairs, best)


def canonical_hole(G: Graph, C: Iterable[int], L: Iterable[int], R: Iterable[int], c1: int, c2: int) -> Hole:
    """Shortest c1-c2 paths through L and through R, joined into a hole."""
    left = _side_path(G, L, c1, c2)
    right = _side_path(G, R, c1, c2)
    if left is None or right is None or G.has_edge(c1, c2):
        raise ContractError(f"no ({c1}, {c2}) hole through the given sides")
    return Hole.of(G, list(left) + list(reversed(right[1:-1])))


def side_arc(H: Hole, c1: int, c2: int, side: Iterable[int]) -> Path:
    """The c1..c2 arc of H whose interior lies in ``side``."""
    inside = set(side)
    for path in (H.arc(c1, c2), tuple(reversed(H.arc(c2, c1)))):
        if set(path[1:-1]) <= inside:
            return path
    raise ContractError(f"no arc of the hole from {c1} to {c2} runs through the given side")


def _half(path: Path) -> Tuple[int, int, int, int]:
    """(x1', x1, x2', x2) of a c1..c2 arc."""
    x1, x2 = path[1], path[-2]
    if x1 == x2:
        return x1, x1, x2, x2
    return path[2], x1, path[-3], x2


def frame_of(G: Graph, H: Hole, c1: int, c2: int, left: Optional[Iterable[int]] = None) -> Frame:
    """
    Read the frame off a (C, c1, c2)-hole.

    Args:
        left: the L side; when omitted the arc whose vertex after c1 has the
            smaller id is taken as H_L
    """
    if c1 not in H or c2 not in H:
        raise ContractError(f"{c1} and {c2} must lie on the hole")
    forward = H.arc(c1, c2)
    backward = tuple(reversed(H.arc(c2, c1)))
    if left is not None:
        hl = side_arc(H, c1, c2, left)
        hr = backward if hl == forward else forward
    else:
        hl, hr = sorted((forward, backward), key=lambda p: p[1])
    l1p, l1, l2p, l2 = _half(hl)
    r1p, r1, r2p, r2 = _half(hr)
    return Frame(c1, c2, l1p, l1, r1, r1p, l2p, l2, r2, r2p)


def _half_path(G: Graph, c1: int, c2: int, x1p: int, x1: int, x2p: int, x2: int,
               region: Iterable[int]) -> Optional[Path]:
    """A c1..c2 induced path through ``region`` with the given anchors, or None."""
    if x1 == x2:
        path = (c1, x1, c2)
    elif x1p == x2:
        path = (c1, x1, x2, c2)
    elif x1p == x2p:
        path = (c1, x1, x1p, x2, c2)
    else:
        blocked = set(closed_neighborhood(G, [c1, c2, x1, x2]))
        interior = [v for v in region if v not in blocked]
        middle = shortest_path(G, [x1p], [x2p], interior)
        if middle is None:
            return None
        path = (c1, x1) + middle + (x2, c2)
    if not set(path[1:-1]) <= set(region) or not is_induced_path(G, path):
        return None
    return path


def realize_frame(G: Graph, F: Frame, L: Iterable[int], R: Iterable[int],
                  region_left: Optional[Iterable[int]] = None,
                  region_right: Optional[Iterable[int]] = None) -> Optional[Hole]:
    """
    An F-hole whose side interiors lie in L and R (optionally narrowed to the
    given regions), or None.
    """
    left_region = set(L) if region_left is None else set(region_left) & set(L)
    right_region = set(R) if region_right is None else set(region_right) & set(R)
    hl = _half_path(G, F.c1, F.c2, F.l1p, F.l1, F.l2p, F.l2, left_region)
    hr = _half_path(G, F.c1, F.c2, F.r1p, F.r1, F.r2p, F.r2, right_region)
    if hl is None or hr is None:
        return None
    cycle = list(hl) + list(reversed(hr[1:-1]))
    if len(set(cycle)) != len(cycle):
        return None
    try:
        hole = Hole.of(G, cycle)
    except ContractError:
        return None
    if frame_of(G, hole, F.c1, F.c2, left=L) != F:
        return None
    return hole


def frame_sides(G: Graph, F: Frame, C: Iterable[int]) -> Tuple[VertexSet, VertexSet]:
    """(L, R): the components of G \\ C holding l1 and r1."""
    L, R = separator_sides(G, C)
    if F.l1 not in L or F.r1 not in R:
        raise ContractError(f"frame {F.to_list()} does not put l1 in L and r1 in R")
    return L, R


def is_heavy(G: Graph, H: Hole, c1: int, c2: int, v: int) -> bool:
    """v is major for H and c1, c2 are distant with respect to v."""
    if v in H:
        raise ContractError(f"vertex {v} lies on the hole")
    return classify_vertex(G, H, v).is_major and are_distant(G, H, v, c1, c2)


def heavy_vertices(G: Graph, H: Hole, c1: int, c2: int) -> VertexSet:
    return tuple(v for v in G.vertices if v not in H and is_heavy(G, H, c1, c2, v))


def potential(G: Graph, F: Frame, C: Iterable[int]) -> int:
    """Number of F-heavy vertices, counted on one realized F-hole."""
    L, R = frame_sides(G, F, C)
    hole = realize_frame(G, F, L, R)
    if hole is None:
        raise FrameRealizationError(f"no F-hole for frame {F.to_list()}")
    return len(heavy_vertices(G, hole, F.c1, F.c2))


def _half_frames(G: Graph, c1: int, c2: int, side: Sequence[int]) -> List[Tuple[int, int, int, int]]:
    """Feasible (x1', x1, x2', x2) for one side, sorted."""
    region = set(side)
    out = []
    starts = [x for x in G.neighbors(c1) if x in region]
    ends = [x for x in G.neighbors(c2) if x in region]
    for x1 in starts:
        for x2 in ends:
            if x1 == x2:
                candidates = [(x1, x1)]
            elif G.has_edge(x1, c2) or G.has_edge(x2, c1):
                continue
            elif G.has_edge(x1, x2):
                candidates = [(x2, x1)]
            else:
                firsts = [p for p in G.neighbors(x1) if p in region and p != x2]
                lasts = [p for p in G.neighbors(x2) if p in region and p != x1]
                candidates = [(p, p) for p in firsts if G.has_edge(p, x2)]
                candidates += [(p, q) for p in firsts for q in lasts
                               if p != q and not G.has_edge(p, x2) and not G.has_edge(q, x1)]
            for x1p, x2p in candidates:
                if _half_path(G, c1, c2, x1p, x1, x2p, x2, region) is not None:
                    out.append((x1p, x1, x2p, x2))
    return sorted(set(out))


def enumerate_feasible_frames(G: Graph, C: Iterable[int], L: Sequence[int], R: Sequence[int],
                              c1: int, c2: int) -> List[Frame]:
    """Every frame of (C, c1, c2) realized by some hole; sides are chosen independently."""
    if G.has_edge(c1, c2):
        raise ContractError(f"{c1} and {c2} are adjacent")
    frames = []
    for l1p, l1, l2p, l2 in _half_frames(G, c1, c2, L):
        for r1p, r1, r2p, r2 in _half_frames(G, c1, c2, R):
            frames.append(Frame(c1, c2, l1p, l1, r1, r1p, l2p, l2, r2, r2p))
    return sorted(frames)


@dataclass(frozen=True)
class FrameChoice:
    frame: Frame
    hole: Hole
    potential: int
    richness: Richness


def optimal_frame_choice(G: Graph, C: Iterable[int]) -> FrameChoice:
    """
    Rich: the long frame of maximum potential. Poor: the canonical frame of the
    farthest pair. Ties go to the lexicographically smallest frame.
    """
    sep = vertex_set(G, C)
    richness = classify_richness(G, sep)
    L, R = separator_sides(G, sep)
    if not richness.rich:
        c1, c2, _ = richness.best_pair
        hole = canonical_hole(G, sep, L, R, c1, c2)
        F = frame_of(G, hole, c1, c2, left=L)
        return FrameChoice(F, hole, len(heavy_vertices(G, hole, c1, c2)), richness)
    best = None
    for c1, c2, _ in richness.long_pairs:
        for F in enumerate_feasible_frames(G, sep, L, R, c1, c2):
            hole = realize_frame(G, F, L, R)
            if hole is None:
                continue
            score = len(heavy_vertices(G, hole, c1, c2))
            if best is None or score > best.potential or (score == best.potential and F < best.frame):
                best = FrameChoice(F, hole, score, richness)
    if best is None:
        raise FrameRealizationError(f"no realizable long frame for {list(sep)}")
    logger.debug(f"optimal frame {best.frame.to_list()} with potential {best.potential}")
    return best


def optimal_frame(G: Graph, C: Iterable[int]) -> Frame:
    return optimal_frame_choice(G, C).frame


def build_butterfly(G: Graph, C: Iterable[int], L: Iterable[int], R: Iterable[int],
                    H: Hole, c3: int) -> Butterfly:
    """
    Shortest wings from c3 to H_L* through L and to H_R* through R, with the
    positions of c3 read from its neighborhood.
    """
    sep = set(C)
    left, right = set(L), set(R)
    ends = [c for c in H.cycle if c in sep]
    if c3 not in sep or c3 in H or len(ends) != 2:
        raise ContractError(f"vertex {c3} must be a separator vertex off the (C, c1, c2)-hole")
    if is_heavy(G, H, ends[0], ends[1], c3):
        raise ContractError(f"vertex {c3} is heavy")
    hl_star = [h for h in H.cycle if h in left]
    hr_star = [h for h in H.cycle if h in right]
    left_wing = path_through(G, [c3], hl_star, left)
    right_wing = path_through(G, [c3], hr_star, right)
    if left_wing is None or right_wing is None:
        raise ContractError(f"vertex {c3} has no wing on one side")
    positions = []
    for side, star, end, adjacent in ((left, hl_star, L_END, L_ADJACENT), (right, hr_star, R_END, R_ADJACENT)):
        if G.nbr_set(c3) & set(star):
            positions.append(end)
        elif any(G.nbr_set(x) & set(star) for x in G.nbr_set(c3) & side):
            positions.append(adjacent)
    if not positions:
        positions.append(CENTRAL)
    return Butterfly(c3, left_wing, right_wing, tuple(positions))


def light_vertices(G: Graph, C: Iterable[int], H: Hole, c1: int, c2: int) -> VertexSet:
    return tuple(c for c in sorted(C) if c not in (c1, c2) and not is_heavy(G, H, c1, c2, c))


def butterflies(G: Graph, C: Iterable[int], L: Iterable[int], R: Iterable[int], H: Hole,
                c1: int, c2: int) -> List[Butterfly]:
    return [build_butterfly(G, C, L, R, H, c3) for c3 in light_vertices(G, C, H, c1, c2)]
