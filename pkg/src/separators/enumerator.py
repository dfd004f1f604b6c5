"""
Minimal separator enumeration and classification.

Four enumerators are provided: an exhaustive subset oracle, the
seed-and-expand closure, a clique filter over the closure, and the
creature-bound enumerator that only looks at N(X_A) & N(X_B) for small X_A,
X_B. Every enumerator returns a lexicographically sorted list of sorted
vertex tuples.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Set

from graph_core.graph import Graph, VertexSet, components, is_clique, neighborhood, vertex_set
from utils.exceptions import CapExceededError, ContractError

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 16


@dataclass(frozen=True)
class SeparatorRecord:
    """A vertex set with its full components and classification flags."""
    C: VertexSet
    full_components: List[VertexSet] = field(default_factory=list)
    is_clique: bool = False

    @property
    def is_minimal(self) -> bool:
        return len(self.full_components) >= 2

    @property
    def is_proper(self) -> bool:
        return self.is_minimal and not self.is_clique

    def to_dict(self) -> Dict:
        return {
            "C": list(self.C),
            "full_components": [list(d) for d in self.full_components],
            "is_minimal": self.is_minimal,
            "is_clique": self.is_clique,
            "is_proper": self.is_proper,
        }


def full_components(G: Graph, C: Iterable[int]) -> List[VertexSet]:
    """Components D of G \\ C with N(D) = C."""
    sep = vertex_set(G, C)
    target = set(sep)
    rest = [v for v in G.vertices if v not in target]
    return [D for D in components(G, rest) if set(neighborhood(G, D)) == target]


def is_minimal_separator(G: Graph, C: Iterable[int]) -> bool:
    return len(full_components(G, C)) >= 2


def classify_separator(G: Graph, C: Iterable[int]) -> SeparatorRecord:
    sep = vertex_set(G, C)
    return SeparatorRecord(C=sep, full_components=full_components(G, sep), is_clique=is_clique(G, sep))


def is_proper_separator(G: Graph, C: Iterable[int]) -> bool:
    return classify_separator(G, C).is_proper


# Bitmask kernels. Vertex v is bit v; ids of induced subgraphs stay host ids.

def _bits(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _nbr_mask(masks: Dict[int, int], X: int) -> int:
    out = 0
    for v in _bits(X):
        out |= masks[v]
    return out & ~X


def _full_count(masks: Dict[int, int], everything: int, C: int) -> int:
    """Number of full components of G \\ C, computed on bitmasks."""
    rest = everything & ~C
    count = 0
    while rest:
        comp = rest & -rest
        frontier = comp
        while frontier:
            grow = _nbr_mask(masks, frontier) & rest & ~comp
            comp |= grow
            frontier = grow
        rest &= ~comp
        if _nbr_mask(masks, comp) == C:
            count += 1
    return count


def _is_minimal_mask(G: Graph, C: int) -> bool:
    return _full_count(G.masks(), _to_mask(G.vertices), C) >= 2


def oracle_enumerate(G: Graph, cap: int = DEFAULT_ORACLE_CAP) -> List[VertexSet]:
    """
    Exhaustive subset scan for minimal separators.

    Args:
        G: input graph
        cap: refuse graphs with more than ``cap`` vertices

    Returns:
        all minimal separators, sorted
    """
    if G.n > cap:
        raise CapExceededError("subset oracle", G.n, cap)
    masks = G.masks()
    everything = _to_mask(G.vertices)
    found = []
    for size in range(0, max(G.n - 1, 0)):
        for subset in itertools.combinations(G.vertices, size):
            if _full_count(masks, everything, _to_mask(subset)) >= 2:
                found.append(subset)
    logger.debug(f"oracle found {len(found)} minimal separators in {G!r}")
    return sorted(found)


def expand_enumerate(G: Graph) -> List[VertexSet]:
    """
    Seed-and-expand closure.

    Seeds are N(D) for components D of G \\ N[v]; a separator S is expanded
    through each x in S by the components of G \\ (S u N[x]).
    """
    masks = G.masks()
    everything = _to_mask(G.vertices)
    seen: Set[int] = set()
    queue: List[int] = []

    def offer(S: int):
        if S not in seen and _full_count(masks, everything, S) >= 2:
            seen.add(S)
            queue.append(S)

    for v in G.vertices:
        closed = masks[v] | (1 << v)
        for D in components(G, _bits(everything & ~closed)):
            offer(_nbr_mask(masks, _to_mask(D)))
    while queue:
        S = queue.pop()
        for x in _bits(S):
            removed = S | masks[x] | (1 << x)
            for D in components(G, _bits(everything & ~removed)):
                offer(_nbr_mask(masks, _to_mask(D)))
    result = sorted(tuple(_bits(S)) for S in seen)
    logger.debug(f"expansion closure found {len(result)} minimal separators in {G!r}")
    return result


def clique_minimal_separators(G: Graph) -> List[VertexSet]:
    return [S for S in expand_enumerate(G) if is_clique(G, S)]


def proper_separators(G: Graph) -> List[VertexSet]:
    return [S for S in expand_enumerate(G) if not is_clique(G, S)]


def creature_bound_enumerate(G: Graph, k: int) -> List[VertexSet]:
    """
    Minimal separators of the form N(X_A) & N(X_B) with |X_A|, |X_B| < k.

    Complete whenever G has no induced immature k-creature, in particular for
    k = n + 1.
    """
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    masks = G.masks()
    everything = _to_mask(G.vertices)
    hubs = set()
    for size in range(0, min(k - 1, G.n) + 1):
        for X in itertools.combinations(G.vertices, size):
            hubs.add(_nbr_mask(masks, _to_mask(X)))
    hubs = sorted(hubs)
    candidates = set()
    for i, a in enumerate(hubs):
        for b in hubs[i:]:
            candidates.add(a & b)
    found = sorted(tuple(_bits(C)) for C in candidates
                   if _full_count(masks, everything, C) >= 2)
    logger.debug(f"creature-bound k={k} kept {len(found)} of {len(candidates)} candidates")
    return found
