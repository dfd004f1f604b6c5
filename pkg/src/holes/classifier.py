"""
Vertices against a hole: minor/major roles, hubs and gem-centers, sectors,
extended neighborhoods, distant pairs, nesting, MNC configurations and
significant paths.

Hole positions are 0-based internally; ``h`` lists in bindings are the hole
read from its first vertex, so ``h[0]`` plays the part of h_1.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import networkx as nx

from graph_core.graph import Graph, Path, is_hole_cycle
from utils.exceptions import ContractError

logger = logging.getLogger(__name__)

NO_NEIGHBOR = "no_neighbor"
PENDANT = "pendant"
CAP = "cap"
CLONE = "clone"
SPLIT_MINOR = "split_minor"
MAJOR = "major"

NESTED = "nested"
STRICTLY_NESTED = "strictly_nested"
CROSS = "cross"


def canonical_cycle(cycle: Sequence[int]) -> Tuple[int, ...]:
    """Rotate to the smallest id and orient towards its smaller neighbor."""
    k = len(cycle)
    i = min(range(k), key=lambda j: cycle[j])
    forward = [cycle[(i + j) % k] for j in range(k)]
    backward = [cycle[(i - j) % k] for j in range(k)]
    return tuple(forward if forward[1] < backward[1] else backward)


@dataclass(frozen=True)
class Hole:
    """An induced cycle of length >= 4 in canonical rotation."""
    cycle: Tuple[int, ...]

    @classmethod
    def of(cls, G: Graph, cycle: Sequence[int]) -> "Hole":
        if not is_hole_cycle(G, cycle):
            raise ContractError(f"{list(cycle)} is not a hole of {G!r}")
        return cls(canonical_cycle(cycle))

    @property
    def length(self) -> int:
        return len(self.cycle)

    @property
    def members(self) -> FrozenSet[int]:
        return frozenset(self.cycle)

    def __contains__(self, v) -> bool:
        return v in self.members

    def index(self, v: int) -> int:
        return self.cycle.index(v)

    def at(self, i: int) -> int:
        return self.cycle[i % len(self.cycle)]

    def succ(self, v: int) -> int:
        return self.at(self.index(v) + 1)

    def pred(self, v: int) -> int:
        return self.at(self.index(v) - 1)

    def arc(self, a: int, b: int) -> Path:
        """Forward path a..b along the canonical orientation."""
        i, j = self.index(a), self.index(b)
        steps = (j - i) % len(self.cycle)
        return tuple(self.at(i + s) for s in range(steps + 1))

    def neighbors_of(self, G: Graph, v: int) -> Tuple[int, ...]:
        """N_H(v) in cyclic order."""
        return tuple(h for h in self.cycle if G.has_edge(v, h))

    def rotations(self) -> List[List[int]]:
        """All 2k labelings h_1..h_k obtained by rotation and reflection."""
        k = len(self.cycle)
        out = []
        for i in range(k):
            out.append([self.at(i + j) for j in range(k)])
        for i in range(k):
            out.append([self.at(i - j) for j in range(k)])
        return out

    def to_list(self) -> List[int]:
        return list(self.cycle)


@dataclass(frozen=True)
class HoleRole:
    variant: str
    neighbors: Tuple[int, ...] = ()
    anchor: Tuple[int, ...] = ()
    is_hub: bool = False
    is_gem_center: bool = False

    @property
    def is_major(self) -> bool:
        return self.variant == MAJOR

    @property
    def is_minor(self) -> bool:
        return self.variant in (PENDANT, CAP, CLONE, SPLIT_MINOR)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "variant": self.variant,
            "neighbors": list(self.neighbors),
            "anchor": list(self.anchor),
            "is_hub": self.is_hub,
            "is_gem_center": self.is_gem_center,
        }


@dataclass(frozen=True)
class MncConfig:
    config_id: int
    bindings: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"config_id": self.config_id, "bindings": self.bindings}


@dataclass(frozen=True)
class HoleEnumeration:
    holes: List[Hole]
    truncated: bool


def enumerate_holes(G: Graph, min_len: int = 4, max_len: Optional[int] = None,
                    limit: Optional[int] = None) -> HoleEnumeration:
    """
    Holes with length in [min_len, max_len], sorted by (length, cycle).

    At most ``limit`` holes are kept; ``truncated`` reports whether more exist.
    """
    if min_len < 4 or (max_len is not None and max_len < min_len):
        raise ContractError(f"bad length window [{min_len}, {max_len}]")
    cycles = nx.chordless_cycles(G.to_networkx(), length_bound=max_len)
    found = set()
    truncated = False
    for cycle in cycles:
        if len(cycle) < min_len:
            continue
        if limit is not None and len(found) >= limit:
            truncated = True
            break
        found.add(canonical_cycle(cycle))
    if truncated:
        logger.warning(f"hole enumeration on {G!r} truncated at {limit}")
    holes = [Hole(c) for c in sorted(found, key=lambda c: (len(c), c))]
    return HoleEnumeration(holes, truncated)


def _positions(H: Hole, nbrs: Sequence[int]) -> List[int]:
    return sorted(H.index(h) for h in nbrs)


def _in_window(H: Hole, positions: Sequence[int], width: int) -> Optional[int]:
    """Start of a window of ``width`` consecutive positions holding all positions."""
    k = H.length
    for start in range(k):
        window = {(start + j) % k for j in range(width)}
        if set(positions) <= window:
            return start
    return None


def _runs(H: Hole, positions: Sequence[int]) -> List[List[int]]:
    """Maximal runs of cyclically consecutive positions."""
    k = H.length
    pos = set(positions)
    if len(pos) == k:
        return [list(range(k))]
    runs = []
    for p in sorted(pos):
        if (p - 1) % k in pos:
            continue
        run = [p]
        while (run[-1] + 1) % k in pos:
            run.append((run[-1] + 1) % k)
        runs.append(run)
    return runs


def classify_vertex(G: Graph, H: Hole, v: int) -> HoleRole:
    """Role of an external vertex v with respect to the hole H."""
    if v in H:
        raise ContractError(f"vertex {v} lies on the hole")
    nbrs = H.neighbors_of(G, v)
    pos = _positions(H, nbrs)
    if not nbrs:
        return HoleRole(NO_NEIGHBOR)
    if len(nbrs) <= 3 and _in_window(H, pos, 3) is not None:
        if len(nbrs) == 1:
            return HoleRole(PENDANT, nbrs, nbrs)
        if len(nbrs) == 2:
            if G.has_edge(nbrs[0], nbrs[1]):
                return HoleRole(CAP, nbrs, nbrs)
            return HoleRole(SPLIT_MINOR, nbrs, nbrs)
        middle = next(h for h in nbrs if sum(G.has_edge(h, o) for o in nbrs) == 2)
        return HoleRole(CLONE, nbrs, (middle,))
    runs = _runs(H, pos)
    is_hub = len(nbrs) == 4 and len(runs) == 2 and all(len(r) == 2 for r in runs)
    is_gem = H.length >= 5 and len(nbrs) == 4 and len(runs) == 1
    return HoleRole(MAJOR, nbrs, (), is_hub, is_gem)


def major_vertices(G: Graph, H: Hole) -> List[int]:
    return [v for v in G.vertices if v not in H and classify_vertex(G, H, v).is_major]


def sectors(G: Graph, H: Hole, u: int) -> List[Path]:
    """u-sectors of H, starting from the neighbor of u with the smallest id."""
    nbrs = H.neighbors_of(G, u)
    if len(nbrs) < 2:
        raise ContractError(f"vertex {u} has fewer than two neighbors on the hole")
    ordered = sorted(nbrs, key=H.index)
    start = ordered.index(min(nbrs))
    ordered = ordered[start:] + ordered[:start]
    return [H.arc(ordered[i], ordered[(i + 1) % len(ordered)]) for i in range(len(ordered))]


def extended_neighborhoods(G: Graph, H: Hole, w: int) -> List[Path]:
    """One extended neighborhood per w-sector: the sector plus any w-adjacent outer ends."""
    if not classify_vertex(G, H, w).is_major:
        raise ContractError(f"vertex {w} is not major for the hole")
    result = []
    for Q in sectors(G, H, w):
        before, after = H.pred(Q[0]), H.succ(Q[-1])
        ext = list(Q)
        if G.has_edge(w, before) and before not in ext:
            ext.insert(0, before)
        if G.has_edge(w, after) and after not in ext:
            ext.append(after)
        result.append(tuple(ext))
    return result


def are_distant(G: Graph, H: Hole, w: int, a: int, b: int) -> bool:
    """True when no extended neighborhood of w contains both a and b."""
    if a not in H or b not in H:
        raise ContractError(f"{a} and {b} must both lie on the hole")
    return not any(a in ext and b in ext for ext in extended_neighborhoods(G, H, w))


def _split_contains(H: Hole, first: set, second: set) -> bool:
    """Some a != b split H into two ab-paths holding first and second respectively."""
    for i in range(H.length):
        for j in range(H.length):
            if i == j:
                continue
            one = set(H.arc(H.at(i), H.at(j)))
            two = set(H.arc(H.at(j), H.at(i)))
            if first <= one and second <= two:
                return True
    return False


def nesting(G: Graph, H: Hole, u: int, v: int) -> str:
    """NESTED, STRICTLY_NESTED or CROSS."""
    if u in H or v in H:
        raise ContractError("both vertices must lie off the hole")
    nu, nv = set(H.neighbors_of(G, u)), set(H.neighbors_of(G, v))
    trivial = {NO_NEIGHBOR, PENDANT, CAP}
    nested = (classify_vertex(G, H, u).variant in trivial
              or classify_vertex(G, H, v).variant in trivial
              or _split_contains(H, nu, nv))
    if not nested:
        return CROSS
    return STRICTLY_NESTED if not (nu & nv) else NESTED


def _mnc_match(k: int, h: List[int], nu: set, nv: set) -> Optional[Tuple[int, Optional[int]]]:
    """Configuration id (and split index) for one labeling h_1..h_k, u, v."""
    whole = set(h)
    if k == 4 and nu == whole and nv == whole:
        return 1, None
    if k == 5 and nu == whole and nv == whole:
        return 2, None
    if k == 6 and nu == {h[0], h[2], h[4]} and nv == {h[1], h[3], h[5]}:
        return 3, None
    first4 = set(h[:4])
    if first4 <= nu and nv == first4 and nu != first4:
        return 4, None
    # h_i is h[i - 1]; 3 < i < k - 1
    for i in range(4, k - 1):
        h1, h2, hi, hi1 = h[0], h[1], h[i - 1], h[i]
        H1 = set(h[i:]) | {h1}
        H2 = set(h[1:i])
        H1_star = set(h[i + 1:])
        H2_star = set(h[2:i - 1])
        quad = {h1, h2, hi, hi1}
        if quad <= nu and quad <= nv:
            if nu != quad and nv != quad and nu <= H1 | {h2, hi} and nv <= H2 | {h1, hi1}:
                return 5, i
            if nv == quad and nu & H1_star and nu & H2_star:
                return 6, i
        trio = {h1, h2, hi}
        if trio <= nu and trio <= nv and nu != trio and nv != trio:
            if nu <= H1 | {h2, hi} and nv <= H2 | {h1}:
                return 7, i
    pair = {h[0], h[1]}
    if pair <= nu and pair <= nv and nu != pair and nv != pair:
        for i in range(4, k - 1):
            H1 = set(h[i:]) | {h[0]}
            H2 = set(h[1:i])
            if nu <= H1 | {h[1]} and nv <= H2 | {h[0]}:
                return 8, i
    return None


def mnc_classify(G: Graph, H: Hole, u: int, v: int) -> Optional[MncConfig]:
    """
    The MNC configuration realized by H with u and v, trying every rotation,
    reflection and both role assignments; smallest configuration id wins.
    """
    if u in H or v in H:
        raise ContractError("both vertices must lie off the hole")
    if G.has_edge(u, v):
        raise ContractError(f"vertices {u} and {v} are adjacent")
    for x in (u, v):
        if not classify_vertex(G, H, x).is_major:
            raise ContractError(f"vertex {x} is not major for the hole")
    best = None
    for first, second in ((u, v), (v, u)):
        nu, nv = set(H.neighbors_of(G, first)), set(H.neighbors_of(G, second))
        for labels in H.rotations():
            match = _mnc_match(H.length, labels, nu, nv)
            if match is None:
                continue
            config_id, i = match
            if best is None or config_id < best.config_id:
                best = MncConfig(config_id, {"u": first, "v": second, "h": labels, "i": i})
    return best


def significant_witness(G: Graph, H: Hole, w: int, P: Sequence[int]) -> Optional[Tuple[int, int]]:
    """(a, b) showing P is (H, w)-significant, or None."""
    if not P:
        raise ContractError("empty path")
    wn = set(H.neighbors_of(G, w))
    starts = sorted(h for h in H.neighbors_of(G, P[0]) if h not in wn)
    ends = sorted(H.neighbors_of(G, P[-1]))
    ext = extended_neighborhoods(G, H, w)
    for a in starts:
        for b in ends:
            if not any(a in e and b in e for e in ext):
                return a, b
    return None


def complete_edge(G: Graph, H: Hole, u: int, v: int) -> Optional[Tuple[int, int]]:
    """An edge of H whose ends are both adjacent to u and to v."""
    for i in range(H.length):
        a, b = H.at(i), H.at(i + 1)
        if all(G.has_edge(x, y) for x in (u, v) for y in (a, b)):
            return a, b
    return None

