"""
Exact recognizers and exhaustive detectors for the forbidden induced
structures: theta, pyramid, prism, turtle, cube, k-creature and immature
k-creature.

Recognizers decide whether a concrete graph IS the structure and return the
roles of its vertices. Detectors scan induced subgraphs by increasing size in
lexicographic order and return the first witness; verdicts record whether the
scan covered every subset.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.algorithms import isomorphism

from graph_core.graph import Graph, components, is_hole_cycle, is_induced_path, vertex_set
from utils.exceptions import ContractError

logger = logging.getLogger(__name__)

THETA = "theta"
PYRAMID = "pyramid"
PRISM = "prism"
TURTLE = "turtle"
CUBE = "cube"
CREATURE3 = "creature3"
CREATURE = "creature"
IMMATURE = "immature_creature"

CLASS_KINDS = (THETA, PYRAMID, PRISM, TURTLE)
SUBSET_KINDS = CLASS_KINDS + (CUBE,)
KINDS = SUBSET_KINDS + (CREATURE3, CREATURE, IMMATURE)

DEFAULT_DETECTION_CAP = 14

# smallest order of each subset-detectable structure
MIN_ORDER = {THETA: 5, PYRAMID: 6, PRISM: 6, TURTLE: 8, CUBE: 8}


@dataclass(frozen=True)
class ForbiddenWitness:
    """Vertex-set certificate plus the roles of its vertices."""
    kind: str
    vertices: Tuple[int, ...]
    annotation: Dict[str, Any] = field(default_factory=dict, compare=False, hash=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "vertices": list(self.vertices), "annotation": self.annotation}


@dataclass(frozen=True)
class DetectionResult:
    kind: str
    witness: Optional[ForbiddenWitness]
    exhaustive: bool

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "vertices": list(self.witness.vertices) if self.witness else None,
            "annotation": self.witness.annotation if self.witness else None,
            "exhaustive": self.exhaustive,
        }


@dataclass(frozen=True)
class MembershipVerdict:
    """member, non-member (with witness) or unknown (cap exceeded, nothing found)."""
    status: str
    witness: Optional[ForbiddenWitness] = None
    exhaustive: bool = True

    @property
    def is_member(self) -> bool:
        return self.status == "member"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status,
            "witness": self.witness.to_dict() if self.witness else None,
            "exhaustive": self.exhaustive,
        }


# ---------------------------------------------------------------------------
# recognizers

def _walk(H: Graph, start: int, first: int, stop: set) -> Optional[List[int]]:
    """Follow degree-2 vertices from start through first until a stop vertex."""
    path = [start, first]
    prev, cur = start, first
    seen = {start, first}
    while cur not in stop:
        if H.degree(cur) != 2:
            return None
        nxt = H.neighbors(cur)[0] if H.neighbors(cur)[1] == prev else H.neighbors(cur)[1]
        if nxt in seen and nxt not in stop:
            return None
        path.append(nxt)
        seen.add(nxt)
        prev, cur = cur, nxt
    return path


def _covers_exactly(H: Graph, paths: Sequence[Sequence[int]], shared: Sequence[int]) -> bool:
    """Paths are disjoint apart from ``shared`` vertices and cover H."""
    used = set(shared)
    for p in paths:
        for v in p:
            if v in shared:
                continue
            if v in used:
                return False
            used.add(v)
    return used == set(H.vertices)


def _cycle_of(path_a: Sequence[int], path_b: Sequence[int]) -> List[int]:
    """Cycle from two paths sharing their first vertex, ends joined by an edge or shared."""
    tail = list(reversed(path_b[1:]))
    if path_a[-1] == path_b[-1]:
        tail = tail[1:]
    return list(path_a) + tail


def _recognize_theta(H: Graph) -> Optional[Dict[str, Any]]:
    if H.n < MIN_ORDER[THETA] or H.m != H.n + 1:
        return None
    branch = [v for v in H.vertices if H.degree(v) == 3]
    if len(branch) != 2 or any(H.degree(v) not in (2, 3) for v in H.vertices):
        return None
    a, b = branch
    if H.has_edge(a, b):
        return None
    paths = []
    for first in H.neighbors(a):
        leg = _walk(H, a, first, {a, b})
        if leg is None or leg[-1] != b or not is_induced_path(H, leg):
            return None
        paths.append(leg)
    if not _covers_exactly(H, paths, (a, b)):
        return None
    for p, q in itertools.combinations(paths, 2):
        if not is_hole_cycle(H, _cycle_of(p, q)):
            return None
    return {"a": a, "b": b, "paths": paths}


def _triangles(H: Graph, among: Sequence[int]) -> List[Tuple[int, int, int]]:
    return [t for t in itertools.combinations(sorted(among), 3)
            if H.has_edge(t[0], t[1]) and H.has_edge(t[0], t[2]) and H.has_edge(t[1], t[2])]


def _recognize_pyramid(H: Graph) -> Optional[Dict[str, Any]]:
    if H.n < MIN_ORDER[PYRAMID] or H.m != H.n + 2:
        return None
    if any(H.degree(v) not in (2, 3) for v in H.vertices):
        return None
    branch = [v for v in H.vertices if H.degree(v) == 3]
    if len(branch) != 4:
        return None
    triangles = _triangles(H, branch)
    if len(triangles) != 1:
        return None
    triangle = triangles[0]
    apex = next(v for v in branch if v not in triangle)
    paths = []
    for b in triangle:
        third = next(u for u in H.neighbors(b) if u not in triangle)
        leg = _walk(H, b, third, {apex})
        if leg is None or leg[-1] != apex:
            return None
        leg = list(reversed(leg))
        if not is_induced_path(H, leg):
            return None
        paths.append(leg)
    if sum(1 for p in paths if len(p) == 2) > 1:
        return None
    if not _covers_exactly(H, paths, (apex,)):
        return None
    for p, q in itertools.combinations(paths, 2):
        if not is_hole_cycle(H, _cycle_of(p, q)):
            return None
    return {"apex": apex, "triangle": list(triangle), "paths": paths}


def _recognize_prism(H: Graph) -> Optional[Dict[str, Any]]:
    if H.n < MIN_ORDER[PRISM] or H.m != H.n + 3:
        return None
    if any(H.degree(v) not in (2, 3) for v in H.vertices):
        return None
    branch = [v for v in H.vertices if H.degree(v) == 3]
    if len(branch) != 6:
        return None
    triangles = _triangles(H, branch)
    for top, bottom in itertools.combinations(triangles, 2):
        if set(top) & set(bottom):
            continue
        paths = []
        for a in top:
            third = next(u for u in H.neighbors(a) if u not in top)
            leg = [a, third] if third in bottom else _walk(H, a, third, set(bottom))
            if leg is None or leg[-1] not in bottom or not is_induced_path(H, leg):
                break
            paths.append(leg)
        else:
            if sorted(p[-1] for p in paths) != sorted(bottom):
                continue
            if not _covers_exactly(H, paths, ()):
                continue
            if all(is_hole_cycle(H, list(p) + list(reversed(q)))
                   for p, q in itertools.combinations(paths, 2)):
                return {"triangles": [list(top), [p[-1] for p in paths]], "paths": paths}
    return None


def _cycle_order(H: Graph, cycle_vertices: Sequence[int]) -> Optional[List[int]]:
    """Cyclic order of a vertex set inducing a cycle, or None."""
    inside = set(cycle_vertices)
    start = min(inside)
    nbrs = [u for u in H.neighbors(start) if u in inside]
    if len(nbrs) != 2:
        return None
    order = [start]
    prev, cur = start, nbrs[0]
    while cur != start:
        step = [u for u in H.neighbors(cur) if u in inside]
        if len(step) != 2 or cur in order:
            return None
        order.append(cur)
        prev, cur = cur, step[0] if step[1] == prev else step[1]
    if len(order) != len(inside) or not is_hole_cycle(H, order):
        return None
    return order


def _recognize_turtle(H: Graph) -> Optional[Dict[str, Any]]:
    if H.n < MIN_ORDER[TURTLE] or H.m < H.n + 5:
        return None
    centers = [v for v in H.vertices if H.degree(v) >= 4]
    for x, y in itertools.permutations(centers, 2):
        if not H.has_edge(x, y):
            continue
        hole = _cycle_order(H, [v for v in H.vertices if v not in (x, y)])
        if hole is None:
            continue
        nx_ = {h for h in hole if H.has_edge(x, h)}
        ny_ = {h for h in hole if H.has_edge(y, h)}
        if len(nx_) < 3 or len(ny_) < 3 or nx_ & ny_:
            continue
        split = _split_hole(hole, nx_, ny_)
        if split is None:
            continue
        p1, p2 = split
        return {"hole": hole, "x": x, "y": y, "P1": p1, "P2": p2}
    return None


def _split_hole(hole: List[int], xs: set, ys: set) -> Optional[Tuple[List[int], List[int]]]:
    """
    Cut the hole into P1 containing xs and P2 containing ys, with the ends of
    P1 adjacent to the ends of P2. None when the two sets interleave.
    """
    labels = [("x" if h in xs else "y" if h in ys else None) for h in hole]
    marked = [i for i, lab in enumerate(labels) if lab]
    switches = sum(1 for i, j in zip(marked, marked[1:] + marked[:1]) if labels[i] != labels[j])
    if switches != 2:
        return None
    start = next(i for i in marked if labels[i] == "x" and labels[marked[marked.index(i) - 1]] == "y")
    rotated = hole[start:] + hole[:start]
    first_y = next(i for i, h in enumerate(rotated) if h in ys)
    return rotated[:first_y], list(reversed(rotated[first_y:]))


def _cube_template() -> nx.Graph:
    """6-hole h0..h5 with u=6 on the even positions and v=7 on the odd ones."""
    g = nx.cycle_graph(6)
    g.add_edges_from((6, h) for h in (0, 2, 4))
    g.add_edges_from((7, h) for h in (1, 3, 5))
    return g


def _recognize_cube(H: Graph) -> Optional[Dict[str, Any]]:
    if H.n != 8 or H.m != 12 or any(H.degree(v) != 3 for v in H.vertices):
        return None
    matcher = isomorphism.GraphMatcher(_cube_template(), H.to_networkx())
    mapping = next(matcher.isomorphisms_iter(), None)
    if mapping is None:
        return None
    return {"hole": [mapping[i] for i in range(6)], "u": mapping[6], "v": mapping[7]}


def _matched_pairs(G: Graph, k: int, pool: Optional[Sequence[int]] = None) -> Iterator[List[Tuple[int, int]]]:
    """
    Sequences of k disjoint edges x_i y_i with x_i y_j a non-edge for i != j.
    Each set of edges is produced once; the first edge is oriented with
    x_1 < y_1, the rest in both orientations.
    """
    allowed = set(G.vertices if pool is None else pool)
    edges = [e for e in G.edges() if e[0] in allowed and e[1] in allowed]

    def extend(start: int, chosen: List[Tuple[int, int]], used: set):
        if len(chosen) == k:
            yield list(chosen)
            return
        for idx in range(start, len(edges)):
            u, v = edges[idx]
            if u in used or v in used:
                continue
            orientations = [(u, v)] if not chosen else [(u, v), (v, u)]
            for x, y in orientations:
                if any(G.has_edge(x, yj) or G.has_edge(xj, y) for xj, yj in chosen):
                    continue
                chosen.append((x, y))
                used.update((x, y))
                yield from extend(idx + 1, chosen, used)
                chosen.pop()
                used.difference_update((x, y))

    if k == 0:
        yield []
        return
    yield from extend(0, [], set())


def _creature_roles(G: Graph, A: Sequence[int], B: Sequence[int],
                    pairs: Sequence[Tuple[int, int]]) -> bool:
    """Clauses of the k-creature definition for explicit A, B and pairs."""
    A, B = set(A), set(B)
    if not A or not B or A & B:
        return False
    if len(components(G, A)) != 1 or len(components(G, B)) != 1:
        return False
    if any(G.nbr_set(a) & B for a in A):
        return False
    for i, (x, y) in enumerate(pairs):
        if not G.has_edge(x, y):
            return False
        if not (G.nbr_set(x) & A) or G.nbr_set(x) & B:
            return False
        if not (G.nbr_set(y) & B) or G.nbr_set(y) & A:
            return False
        for j, (xj, yj) in enumerate(pairs):
            if i != j and G.has_edge(x, yj):
                return False
    return True


def _creature_annotation(A, B, pairs) -> Dict[str, Any]:
    return {"A": sorted(A), "B": sorted(B), "x": [p[0] for p in pairs], "y": [p[1] for p in pairs]}


def _recognize_creature(H: Graph, k: int) -> Optional[Dict[str, Any]]:
    if H.n < 2 * k + 2:
        return None
    for pairs in _matched_pairs(H, k):
        used = {v for p in pairs for v in p}
        rest = [v for v in H.vertices if v not in used]
        comps = components(H, rest)
        if len(comps) != 2:
            continue
        for A, B in (comps, comps[::-1]):
            if _creature_roles(H, A, B, pairs):
                return _creature_annotation(A, B, pairs)
    return None


def _recognize_immature(H: Graph, k: Optional[int] = None) -> Optional[Dict[str, Any]]:
    if H.n % 2 or (k is not None and H.n != 2 * k):
        return None
    half = H.n // 2
    for pairs in _matched_pairs(H, half):
        xs = {p[0] for p in pairs}
        ys = {p[1] for p in pairs}
        cross = sum(1 for x in xs for y in H.nbr_set(x) if y in ys)
        if cross == half:
            return {"X": [p[0] for p in pairs], "Y": [p[1] for p in pairs]}
    return None


_RECOGNIZERS = {
    THETA: _recognize_theta,
    PYRAMID: _recognize_pyramid,
    PRISM: _recognize_prism,
    TURTLE: _recognize_turtle,
    CUBE: _recognize_cube,
}


def recognize_structure(H: Graph, kind: str, k: Optional[int] = None) -> Optional[Dict[str, Any]]:
    """
    Decide whether H is exactly a structure of the given kind.

    Args:
        H: the candidate graph, typically an induced subgraph of a host
        kind: one of KINDS
        k: creature size for kind "creature"; "creature3" fixes k = 3

    Returns:
        role annotation, or None when H is not such a structure
    """
    if kind in _RECOGNIZERS:
        return _RECOGNIZERS[kind](H)
    if kind == CREATURE3:
        return _recognize_creature(H, 3)
    if kind == CREATURE:
        if k is None or k < 1:
            raise ContractError("kind 'creature' needs a positive k")
        return _recognize_creature(H, k)
    if kind == IMMATURE:
        return _recognize_immature(H, k)
    raise ContractError(f"unknown structure kind {kind!r}")


# ---------------------------------------------------------------------------
# detectors

def _order_ok(kind: str, size: int, edges: int) -> bool:
    if kind == THETA:
        return edges == size + 1
    if kind == PYRAMID:
        return edges == size + 2
    if kind == PRISM:
        return edges == size + 3
    if kind == TURTLE:
        return edges >= size + 5
    return size == 8 and edges == 12


def _scan(G: Graph, kinds: Sequence[str], cap: int) -> Tuple[Optional[ForbiddenWitness], bool]:
    """First witness of any requested kind, subsets by size then lexicographic."""
    exhaustive = G.n <= cap
    if not exhaustive:
        logger.warning(f"{G!r} exceeds detection cap {cap}; only subsets up to {cap} vertices are scanned")
    masks = G.masks()
    smallest = min(MIN_ORDER[k] for k in kinds)
    for size in range(smallest, min(G.n, cap) + 1):
        live = [k for k in kinds if MIN_ORDER[k] <= size]
        for subset in itertools.combinations(G.vertices, size):
            S = 0
            for v in subset:
                S |= 1 << v
            degs = [(masks[v] & S).bit_count() for v in subset]
            if min(degs) < 2:
                continue
            edges = sum(degs) // 2
            candidates = [k for k in live if _order_ok(k, size, edges)]
            if not candidates:
                continue
            H = G.induced_subgraph(subset)
            if len(components(H, H.vertices)) != 1:
                continue
            for kind in candidates:
                annotation = _RECOGNIZERS[kind](H)
                if annotation is not None:
                    return ForbiddenWitness(kind, tuple(subset), annotation), exhaustive
    return None, exhaustive


def find_structure(G: Graph, kind: str, cap: int = DEFAULT_DETECTION_CAP) -> DetectionResult:
    """
    Search the induced subgraphs of G for a structure of the given kind.

    Returns:
        DetectionResult whose ``exhaustive`` flag is True when every subset was scanned
    """
    if kind not in SUBSET_KINDS:
        raise ContractError(f"find_structure handles {SUBSET_KINDS}, not {kind!r}")
    witness, exhaustive = _scan(G, (kind,), cap)
    return DetectionResult(kind, witness, exhaustive)


def is_class_member(G: Graph, cap: int = DEFAULT_DETECTION_CAP) -> MembershipVerdict:
    """Membership in the (theta, pyramid, prism, turtle)-free class."""
    witness, exhaustive = _scan(G, CLASS_KINDS, cap)
    if witness is not None:
        logger.debug(f"{G!r} contains a {witness.kind} on {list(witness.vertices)}")
        return MembershipVerdict("non-member", witness, exhaustive)
    return MembershipVerdict("member" if exhaustive else "unknown", None, exhaustive)


def _connected_hitters(G: Graph, pool: Sequence[int], targets: Sequence[set]) -> Iterator[Tuple[int, ...]]:
    """
    Inclusion-minimal connected subsets of ``pool`` meeting every target set,
    by increasing size.
    """
    pool_set = set(pool)
    if any(not (t & pool_set) for t in targets):
        return
    found: List[frozenset] = []
    layer = {frozenset([v]) for v in pool_set}
    while layer:
        grown = set()
        for S in sorted(layer, key=lambda s: sorted(s)):
            if any(f <= S for f in found):
                continue
            if all(t & S for t in targets):
                found.append(S)
                yield tuple(sorted(S))
                continue
            for v in S:
                for u in G.neighbors(v):
                    if u in pool_set and u not in S:
                        grown.add(S | {u})
        layer = grown


def find_kcreature(G: Graph, k: int, cap: int = DEFAULT_DETECTION_CAP) -> DetectionResult:
    """
    Search for an induced k-creature: the k matched pairs are chosen first,
    then a minimal connected A on the x side and a connected B avoiding N[A].
    """
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    kind = CREATURE3 if k == 3 else CREATURE
    exhaustive = G.n <= cap
    for pairs in _matched_pairs(G, k):
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        used = set(xs) | set(ys)
        rest = [v for v in G.vertices if v not in used]
        a_pool = [v for v in rest if not any(G.has_edge(v, y) for y in ys)]
        b_pool = [v for v in rest if not any(G.has_edge(v, x) for x in xs)]
        x_targets = [set(G.nbr_set(x)) for x in xs]
        y_targets = [set(G.nbr_set(y)) for y in ys]
        for A in _connected_hitters(G, a_pool, x_targets):
            blocked = set(A)
            for a in A:
                blocked.update(G.nbr_set(a))
            b_free = [v for v in b_pool if v not in blocked]
            B = next(_connected_hitters(G, b_free, y_targets), None)
            if B is None:
                continue
            vertices = tuple(sorted(set(A) | set(B) | used))
            witness = ForbiddenWitness(kind, vertices, _creature_annotation(A, B, pairs))
            logger.debug(f"{k}-creature in {G!r}: {witness.annotation}")
            return DetectionResult(kind, witness, exhaustive)
    return DetectionResult(kind, None, exhaustive)


def find_3creature(G: Graph, cap: int = DEFAULT_DETECTION_CAP) -> DetectionResult:
    return find_kcreature(G, 3, cap)


def find_immature_kcreature(G: Graph, k: int) -> DetectionResult:
    """
    Induced subgraph on 2k vertices whose only X-Y edges are x_i y_i.

    The matched-pair search runs to completion on every graph, so the
    result is always exhaustive.
    """
    if k < 1:
        raise ContractError(f"k must be positive, got {k}")
    exhaustive = True
    for pairs in _matched_pairs(G, k):
        xs = [p[0] for p in pairs]
        ys = [p[1] for p in pairs]
        vertices = tuple(sorted(xs + ys))
        return DetectionResult(IMMATURE, ForbiddenWitness(IMMATURE, vertices, {"X": xs, "Y": ys}), exhaustive)
    return DetectionResult(IMMATURE, None, exhaustive)


def certify(G: Graph, witness: ForbiddenWitness) -> bool:
    """Re-run the recognizer on the induced subgraph of a witness."""
    H = G.induced_subgraph(witness.vertices)
    k = None
    if witness.kind in (CREATURE3, CREATURE):
        k = len(witness.annotation["x"])
    elif witness.kind == IMMATURE:
        k = len(witness.annotation["X"])
    return recognize_structure(H, witness.kind, k) is not None


def witness_even_hole(G: Graph, witness: ForbiddenWitness) -> Optional[List[int]]:
    """An even hole inside a theta, prism or turtle witness (None for other kinds)."""
    if witness.kind not in (THETA, PRISM, TURTLE):
        return None
    H = G.induced_subgraph(vertex_set(G, witness.vertices)).to_networkx()
    for cycle in nx.chordless_cycles(H):
        if len(cycle) >= 4 and len(cycle) % 2 == 0:
            return list(cycle)
    return None
