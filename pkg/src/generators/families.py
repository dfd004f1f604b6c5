"""
Deterministic constructors for the named graph families.

Every family documents its vertex numbering so tests and CLI output can name
vertices directly.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple

from graph_core.graph import Graph
from utils.exceptions import ContractError

logger = logging.getLogger(__name__)

Edges = List[Tuple[int, int]]


@dataclass(frozen=True)
class FamilySpec:
    family: str
    k: Optional[int] = None
    extras: Dict[str, int] = field(default_factory=dict)

    def label(self) -> str:
        return self.family if self.k is None else f"{self.family}({self.k})"


def _require_k(spec: FamilySpec, low: int) -> int:
    if spec.k is None or spec.k < low:
        raise ContractError(f"{spec.family} needs k >= {low}, got {spec.k}")
    return spec.k


def _path_edges(seq: List[int]) -> Edges:
    return list(zip(seq, seq[1:]))


def k_theta(k: int) -> Graph:
    """a=0, a_i=i, b=k+1, b_i=k+1+i; edges a-a_i, a_i-b_i, b_i-b."""
    a, b = 0, k + 1
    edges = []
    for i in range(1, k + 1):
        edges += [(a, i), (i, b + i), (b + i, b)]
    return Graph(2 * k + 2, edges, name=f"k_theta({k})")


def k_pyramid(k: int) -> Graph:
    """a=0, a_i=i, b_i=k+i; b_1..b_k is a clique."""
    edges = []
    for i in range(1, k + 1):
        edges += [(0, i), (i, k + i)]
    edges += [(k + i, k + j) for i, j in itertools.combinations(range(1, k + 1), 2)]
    return Graph(2 * k + 1, edges, name=f"k_pyramid({k})")


def k_prism(k: int) -> Graph:
    """a_i=i-1 and b_i=k+i-1: two k-cliques joined by the matching a_i-b_i."""
    edges = [(i, i + k) for i in range(k)]
    for i, j in itertools.combinations(range(k), 2):
        edges += [(i, j), (i + k, j + k)]
    return Graph(2 * k, edges, name=f"k_prism({k})")


def turtle_layout(k: int, p1_len: Optional[int] = None, p2_len: Optional[int] = None) -> Dict[str, List[int]]:
    """
    Numbering of k_turtle: a=0, P1 interior 1..p1_len, b=p1_len+1, P2 interior
    next (listed from the a end), then x_1, y_1, ..., x_k, y_k.
    """
    p1_len = 3 * k if p1_len is None else p1_len
    p2_len = 3 * k if p2_len is None else p2_len
    if p1_len < 3 * k or p2_len < 3 * k:
        raise ContractError(f"k_turtle({k}) needs paths with at least {3 * k} interior vertices")
    a, b = 0, p1_len + 1
    p1 = list(range(1, p1_len + 1))
    p2 = list(range(b + 1, b + 1 + p2_len))
    centers = list(range(b + 1 + p2_len, b + 1 + p2_len + 2 * k))
    return {"a": [a], "b": [b], "P1": p1, "P2": p2, "x": centers[0::2], "y": centers[1::2]}


def _triples(path: List[int], k: int) -> List[List[int]]:
    """k disjoint runs of three, spread along the path, ordered from the a end."""
    step = len(path) // k
    return [path[i * step:i * step + 3] for i in range(k)]


def k_turtle(k: int, p1_len: Optional[int] = None, p2_len: Optional[int] = None) -> Graph:
    """
    Hole a-P1-b-P2-a with x_i on three consecutive P1 vertices, y_i on three
    consecutive P2 vertices and x_i-y_i edges; attachments nested from a.
    """
    lay = turtle_layout(k, p1_len, p2_len)
    a, b = lay["a"][0], lay["b"][0]
    edges = _path_edges([a] + lay["P1"] + [b]) + _path_edges([a] + lay["P2"] + [b])
    for x, y, tx, ty in zip(lay["x"], lay["y"], _triples(lay["P1"], k), _triples(lay["P2"], k)):
        edges.append((x, y))
        edges += [(x, h) for h in tx] + [(y, h) for h in ty]
    n = lay["y"][-1] + 1
    return Graph(n, edges, name=f"k_turtle({k})")


def ladder_layout(k: int) -> Dict[str, List[int]]:
    """
    Numbering of k_ladder. Bottom path b0-b1-b2 is 0, 1, 2. Rung i (from 0)
    starts at 3 + 6i with s, p, t, d, u and, below the last rung, e: the
    left-rail vertex s, the path s-p-t, the triangle t-d-u and the rail vertex
    e between s_i and s_(i+1). The top path s_k-q0-q1-q2-u_k comes last.
    """
    starts = [3 + 6 * i for i in range(k)]
    top = 3 + 6 * k - 1
    return {
        "bottom": [0, 1, 2],
        "s": starts, "p": [r + 1 for r in starts], "t": [r + 2 for r in starts],
        "d": [r + 3 for r in starts], "u": [r + 4 for r in starts], "e": [r + 5 for r in starts[:-1]],
        "top": [top, top + 1, top + 2],
    }


def k_ladder(k: int) -> Graph:
    """
    Transcribed from the drawing, bottom to top:
    b0-b1-b2 and b0-s_1; rung i is s_i-p_i-t_i with triangle t_i d_i u_i;
    left rail s_i-e_i-s_(i+1); right rail b2-d_1 and u_i-d_(i+1);
    top s_k-q0-q1-q2-u_k.
    """
    lay = ladder_layout(k)
    b0, b1, b2 = lay["bottom"]
    q0, q1, q2 = lay["top"]
    s, p, t, d, u, e = (lay[key] for key in ("s", "p", "t", "d", "u", "e"))
    edges = [(b0, b1), (b1, b2), (b0, s[0]), (b2, d[0]), (s[-1], q0), (q0, q1), (q1, q2), (q2, u[-1])]
    for i in range(k):
        edges += [(s[i], p[i]), (p[i], t[i]), (t[i], d[i]), (t[i], u[i]), (d[i], u[i])]
        if i + 1 < k:
            edges += [(s[i], e[i]), (e[i], s[i + 1]), (u[i], d[i + 1])]
    return Graph(q2 + 1, edges, name=f"k_ladder({k})")


def cube() -> Graph:
    """6-hole 0..5 with u=6 on 0, 2, 4 and v=7 on 1, 3, 5."""
    edges = _path_edges(list(range(6)) + [0])
    edges += [(6, h) for h in (0, 2, 4)] + [(7, h) for h in (1, 3, 5)]
    return Graph(8, edges, name="cube")


def cycle(k: int) -> Graph:
    return Graph(k, _path_edges(list(range(k)) + [0]), name=f"C{k}")


def complete(k: int) -> Graph:
    return Graph(k, itertools.combinations(range(k), 2), name=f"K{k}")


def min_theta() -> Graph:
    """K_{2,3}: ends 0, 1 and path middles 2, 3, 4."""
    return Graph(5, [(e, m) for e in (0, 1) for m in (2, 3, 4)], name="min_theta")


def min_pyramid() -> Graph:
    """Apex 0, triangle 1 2 3, paths 0-1, 0-4-2, 0-5-3."""
    edges = [(1, 2), (2, 3), (1, 3), (0, 1), (0, 4), (4, 2), (0, 5), (5, 3)]
    return Graph(6, edges, name="min_pyramid")


def min_prism() -> Graph:
    """Triangles 0 1 2 and 3 4 5 matched i to i+3."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
                 name="min_prism")


def min_turtle() -> Graph:
    """6-hole 0..5, x=6 on 0 1 2, y=7 on 3 4 5, x-y."""
    edges = _path_edges(list(range(6)) + [0])
    edges += [(6, h) for h in (0, 1, 2)] + [(7, h) for h in (3, 4, 5)] + [(6, 7)]
    return Graph(8, edges, name="min_turtle")


G_TC_LABELS = {"c1": 0, "l1": 1, "lm": 2, "l2": 3, "c2": 4, "r2": 5, "rm": 6, "r1": 7, "x": 8, "y": 9, "c3": 10}


def g_tc() -> Graph:
    """
    8-hole c1 l1 lm l2 c2 r2 rm r1 (0..7) with x=8 on c1, l1 and y=9 on c1, r1;
    c3=10 sees only x and y. Separator {c1, c2, c3} = {0, 4, 10}.
    """
    edges = _path_edges(list(range(8)) + [0]) + [(8, 1), (8, 0), (9, 7), (9, 0), (10, 8), (10, 9)]
    return Graph(11, edges, name="G_tc")


G_HUB_LABELS = {"c1": 0, "l1": 1, "lm1": 2, "lm2": 3, "l2": 4, "c2": 5,
                "r2": 6, "rm2": 7, "rm1": 8, "r1": 9, "w": 10}


def g_hub() -> Graph:
    """10-hole 0..9 with the hub w=10 on lm1, lm2, rm2, rm1. Separator {0, 5, 10}."""
    edges = _path_edges(list(range(10)) + [0]) + [(10, h) for h in (2, 3, 7, 8)]
    return Graph(11, edges, name="G_hub")


_BUILDERS: Dict[str, Tuple[int, Callable[..., Graph]]] = {
    "k_theta": (1, k_theta),
    "k_pyramid": (1, k_pyramid),
    "k_prism": (1, k_prism),
    "k_turtle": (1, k_turtle),
    "k_ladder": (1, k_ladder),
    "cycle": (3, cycle),
    "complete": (1, complete),
}

_FIXED: Dict[str, Callable[[], Graph]] = {
    "cube": cube,
    "min_theta": min_theta,
    "min_pyramid": min_pyramid,
    "min_prism": min_prism,
    "min_turtle": min_turtle,
    "G_tc": g_tc,
    "G_hub": g_hub,
}

FAMILIES = tuple(sorted(_BUILDERS) + sorted(_FIXED))


def generate(spec: FamilySpec) -> Graph:
    """
    Build the family graph named by ``spec``.

    Raises:
        ContractError: unknown family, bad k or bad extras
    """
    if spec.family in _FIXED:
        return _FIXED[spec.family]()
    if spec.family not in _BUILDERS:
        raise ContractError(f"unknown family {spec.family!r}; choose from {', '.join(FAMILIES)}")
    low, builder = _BUILDERS[spec.family]
    k = _require_k(spec, low)
    if spec.family == "k_turtle":
        unknown = set(spec.extras) - {"p1_len", "p2_len"}
        if unknown:
            raise ContractError(f"k_turtle extras must be p1_len/p2_len, got {sorted(unknown)}")
        G = k_turtle(k, spec.extras.get("p1_len"), spec.extras.get("p2_len"))
    elif spec.extras:
        raise ContractError(f"{spec.family} takes no extras")
    else:
        G = builder(k)
    logger.debug(f"generated {G!r} for {spec.label()}")
    return G
