"""
Graph representation and the elementary neighborhood/path primitives.

Vertices are integer ids. A graph read from a file has dense ids 0..n-1; an
induced subgraph keeps the ids of its host so that witnesses and holes can be
reported in host coordinates.
"""
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from utils.exceptions import ContractError

logger = logging.getLogger(__name__)

VertexSet = Tuple[int, ...]
Path = Tuple[int, ...]


class Graph:
    """Simple undirected graph with sorted adjacency."""

    def __init__(self, n: int, edges: Iterable[Tuple[int, int]] = (),
                 vertices: Optional[Iterable[int]] = None, name: str = ""):
        """
        Build a graph.

        Args:
            n: number of vertices when ``vertices`` is omitted (ids 0..n-1)
            edges: pairs of vertex ids; repeated pairs collapse to one edge
            vertices: explicit vertex ids, used for induced subgraphs
            name: label carried into reports
        """
        if vertices is None:
            if n < 0:
                raise ContractError(f"vertex count must be non-negative, got {n}")
            verts = tuple(range(n))
        else:
            verts = tuple(sorted(set(vertices)))
        self.vertices: Tuple[int, ...] = verts
        self.name = name
        live = set(verts)
        nbrs: Dict[int, set] = {v: set() for v in verts}
        for u, v in edges:
            if u not in live or v not in live:
                raise ContractError(f"edge ({u}, {v}) uses a vertex outside the graph")
            if u == v:
                raise ContractError(f"self-loop at vertex {u}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._adj: Dict[int, Tuple[int, ...]] = {v: tuple(sorted(s)) for v, s in nbrs.items()}
        self._adj_sets: Dict[int, FrozenSet[int]] = {v: frozenset(s) for v, s in nbrs.items()}
        self._masks: Optional[Dict[int, int]] = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self._adj.values()) // 2

    def __contains__(self, v) -> bool:
        return v in self._adj

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"Graph{label}(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self._adj == other._adj

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges())))

    def neighbors(self, v: int) -> Tuple[int, ...]:
        """Sorted neighbors of v."""
        return self._adj[v]

    def nbr_set(self, v: int) -> FrozenSet[int]:
        return self._adj_sets[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets[u]

    def edges(self) -> List[Tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted."""
        return [(u, v) for u in self.vertices for v in self._adj[u] if u < v]

    def masks(self) -> Dict[int, int]:
        """Adjacency bitmasks keyed by vertex id (bit i set when i is a neighbor)."""
        if self._masks is None:
            self._masks = {v: sum(1 << u for u in self._adj[v]) for v in self.vertices}
        return self._masks

    def induced_subgraph(self, keep: Iterable[int]) -> "Graph":
        """G[keep], keeping host vertex ids."""
        kept = set(keep)
        missing = kept - set(self.vertices)
        if missing:
            raise ContractError(f"vertices {sorted(missing)} are not in the graph")
        edges = [(u, v) for u in kept for v in self._adj[u] if u < v and v in kept]
        return Graph(0, edges, vertices=kept, name=self.name)

    def delete(self, drop: Iterable[int]) -> "Graph":
        """G \\ drop."""
        dropped = set(drop)
        return self.induced_subgraph(v for v in self.vertices if v not in dropped)

    def relabelled(self) -> Tuple["Graph", List[int]]:
        """Copy with dense ids 0..n-1 plus the list mapping new id -> old id."""
        order = list(self.vertices)
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges()]
        return Graph(len(order), edges, name=self.name), order

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph, name: str = "") -> "Graph":
        """Convert a networkx graph; non-integer labels are mapped in sorted order."""
        if not all(isinstance(v, int) for v in g.nodes):
            g = nx.convert_node_labels_to_integers(g, ordering="sorted")
        return cls(0, g.edges(), vertices=g.nodes, name=name)


def vertex_set(G: Graph, X: Iterable[int]) -> VertexSet:
    """Normalize X to a sorted duplicate-free tuple of vertices of G."""
    members = tuple(sorted(set(X)))
    for v in members:
        if v not in G:
            raise ContractError(f"vertex {v} is not in {G!r}")
    return members


def neighborhood(G: Graph, X: Iterable[int]) -> VertexSet:
    """N(X): vertices outside X with a neighbor in X."""
    inside = set(vertex_set(G, X))
    out = set()
    for v in inside:
        out.update(G.nbr_set(v))
    return tuple(sorted(out - inside))


def closed_neighborhood(G: Graph, X: Iterable[int]) -> VertexSet:
    inside = vertex_set(G, X)
    return tuple(sorted(set(inside) | set(neighborhood(G, inside))))


def components(G: Graph, X: Iterable[int]) -> List[VertexSet]:
    """Connected components of G[X], each sorted, ordered by smallest member."""
    allowed = set(vertex_set(G, X))
    seen = set()
    result = []
    for start in sorted(allowed):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for u in G.neighbors(v):
                if u in allowed and u not in seen:
                    seen.add(u)
                    comp.append(u)
                    queue.append(u)
        result.append(tuple(sorted(comp)))
    return result


def component_of(G: Graph, v: int, X: Iterable[int]) -> VertexSet:
    """The component of G[X] containing v (v must be in X)."""
    for comp in components(G, X):
        if v in comp:
            return comp
    raise ContractError(f"vertex {v} is not in the given set")


def is_connected(G: Graph, X: Optional[Iterable[int]] = None) -> bool:
    members = G.vertices if X is None else vertex_set(G, X)
    return len(components(G, members)) <= 1


def is_clique(G: Graph, X: Iterable[int]) -> bool:
    members = vertex_set(G, X)
    return all(G.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1:])


def has_neighbor_in(G: Graph, v: int, X: Iterable[int]) -> bool:
    return not G.nbr_set(v).isdisjoint(X)


def is_anticomplete(G: Graph, X: Iterable[int], Y: Iterable[int]) -> bool:
    """True when no edge joins X and Y (X and Y are expected disjoint)."""
    ys = set(Y)
    return all(G.nbr_set(x).isdisjoint(ys) for x in X)


def is_induced_path(G: Graph, seq: Sequence[int]) -> bool:
    """Consecutive vertices adjacent, all other pairs non-adjacent, no repeats."""
    if len(set(seq)) != len(seq) or not seq:
        return False
    for i, u in enumerate(seq):
        for j in range(i + 1, len(seq)):
            if G.has_edge(u, seq[j]) != (j == i + 1):
                return False
    return True


def is_hole_cycle(G: Graph, cycle: Sequence[int]) -> bool:
    """Cyclic sequence of length >= 4 inducing a chordless cycle."""
    k = len(cycle)
    if k < 4 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if G.has_edge(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def shortest_path(G: Graph, sources: Iterable[int], targets: Iterable[int],
                  interior: Iterable[int]) -> Optional[Path]:
    """
    Shortest path from a source to a target whose inner vertices lie in
    ``interior``. Breadth-first search expands sources and neighbors in
    ascending id order, so the result is deterministic. A vertex that is both
    a source and a target yields a one-vertex path.
    """
    target_set = set(targets)
    allowed = set(interior)
    parent: Dict[int, Optional[int]] = {}
    queue = deque()
    for s in sorted(set(sources)):
        parent[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        if v in target_set:
            return _unwind(parent, v)
        for u in G.neighbors(v):
            if u in parent:
                continue
            if u in target_set or u in allowed:
                parent[u] = v
                queue.append(u)
    return None


def path_through(G: Graph, X: Iterable[int], Z: Iterable[int], Y: Iterable[int]) -> Optional[Path]:
    """
    Shortest path p0..pk from X to Z through Y.

    p0 is in X, every later vertex is in Y, only pk has a neighbor in Z. The
    path may be the single vertex p0.

    Returns:
        the path as a tuple, or None when no such path exists
    """
    xs = vertex_set(G, X)
    zs = set(vertex_set(G, Z))
    if zs.intersection(xs):
        raise ContractError(f"X and Z intersect in {sorted(zs.intersection(xs))}")
    ys = set(Y)
    parent: Dict[int, Optional[int]] = {}
    queue = deque()
    for s in xs:
        parent[s] = None
        queue.append(s)
    while queue:
        v = queue.popleft()
        if not G.nbr_set(v).isdisjoint(zs):
            return _unwind(parent, v)
        for u in G.neighbors(v):
            if u not in parent and u in ys and u not in zs:
                parent[u] = v
                queue.append(u)
    return None


def satisfies_path_through(G: Graph, P: Sequence[int], X: Iterable[int], Z: Iterable[int],
                           Y: Iterable[int]) -> bool:
    """Re-check the four clauses of a path from X to Z through Y."""
    if not P or not is_induced_path(G, P):
        return False
    xs, ys, zs = set(X), set(Y), set(Z)
    if P[0] not in xs or not set(P[1:]) <= ys:
        return False
    if any(has_neighbor_in(G, p, zs) for p in P[:-1]) or set(P) & zs:
        return False
    return has_neighbor_in(G, P[-1], zs)


def _unwind(parent: Dict[int, Optional[int]], v: int) -> Path:
    path = [v]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))
