"""
Seeded random graphs and the named corpora used by the property runs.
"""
import logging
from typing import Dict, List, Optional

import numpy as np

from forbidden.detector import DEFAULT_DETECTION_CAP, is_class_member
from generators.families import cycle, g_hub, g_tc
from graph_core.graph import Graph

logger = logging.getLogger(__name__)

CORPORA = ("cycles", "chordal", "fixtures", "members", "random", "small")

DEFAULT_SIZES: Dict[str, int] = {
    "chordal": 20,
    "members": 200,
    "random": 1000,
    "small": 50,
}


def _sample(n: int, p: float, rng: np.random.Generator, name: str) -> Graph:
    draws = rng.random(n * (n - 1) // 2)
    iu = np.triu_indices(n, k=1)
    edges = [(int(u), int(v)) for u, v, hit in zip(iu[0], iu[1], draws < p) if hit]
    return Graph(n, edges, name=name)


def random_graph(n: int, p: float, seed: int = 0) -> Graph:
    """
    Erdos-Renyi G(n, p), fixed by ``seed``.

    Raises:
        ValueError: p outside [0, 1] or negative n
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be between 0 and 1")
    if n < 0:
        raise ValueError("n must be non-negative")
    return _sample(n, p, np.random.default_rng(seed), f"gnp_{n}_{p}_{seed}")


def random_class_member(n: int, p: float, seed: int = 0, attempts: int = 100,
                        cap: int = DEFAULT_DETECTION_CAP) -> Optional[Graph]:
    """First of ``attempts`` seeded samples verified as a class member, or None."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must be between 0 and 1")
    rng = np.random.default_rng(seed)
    for attempt in range(attempts):
        G = _sample(n, p, rng, f"member_{n}_{p}_{seed}_{attempt}")
        if is_class_member(G, cap).is_member:
            logger.debug(f"accepted {G!r} after {attempt + 1} samples")
            return G
    logger.info(f"no class member among {attempts} samples of G({n}, {p}) seed {seed}")
    return None


def random_chordal(n: int, seed: int = 0) -> Graph:
    """
    Each new vertex attaches to a random subset of the clique that an earlier
    vertex was born with, so the insertion order reversed is a perfect
    elimination ordering.
    """
    rng = np.random.default_rng(seed)
    birth = {0: [0]}
    edges = []
    for v in range(1, n):
        u = int(rng.integers(v))
        others = [w for w in birth[u] if w != u]
        keep = [w for w, hit in zip(others, rng.random(len(others)) < 0.5) if hit]
        attach = sorted([u] + keep)
        edges += [(w, v) for w in attach]
        birth[v] = attach + [v]
    return Graph(n, edges, name=f"chordal_{n}_{seed}")


def build_corpus(name: str, size: Optional[int] = None, seed: int = 0, max_n: int = 12) -> List[Graph]:
    """
    Named corpus, deterministic per (name, size, seed).

    cycles: C5..C13; chordal: random chordal graphs on 4..max_n vertices;
    fixtures: C8, G_tc, G_hub; members: rejection-sampled class members with
    n <= max_n; random: G(n, p) for n in 4..8; small: G(n, p) for n in 3..5.
    """
    if name not in CORPORA:
        raise ValueError(f"unknown corpus {name!r}; choose from {', '.join(CORPORA)}")
    count = DEFAULT_SIZES.get(name, 0) if size is None else size
    rng = np.random.default_rng(seed)
    graphs: List[Graph] = []
    if name == "cycles":
        graphs = [cycle(k) for k in range(5, 14)]
    elif name == "fixtures":
        graphs = [cycle(8), g_tc(), g_hub()]
    elif name == "chordal":
        graphs = [random_chordal(int(rng.integers(4, max_n + 1)), seed + i) for i in range(count)]
    elif name in ("random", "small"):
        low, high = (4, 8) if name == "random" else (3, 5)
        for n in range(low, high + 1):
            for i in range(count):
                graphs.append(_sample(n, float(rng.uniform(0.2, 0.7)), rng, f"{name}_{n}_{i}"))
    else:
        tries = 0
        while len(graphs) < count and tries < 50 * max(count, 1):
            tries += 1
            n = int(rng.integers(5, max_n + 1))
            G = _sample(n, float(rng.uniform(0.15, 0.45)), rng, f"member_{len(graphs)}")
            if is_class_member(G).is_member:
                graphs.append(G)
        if len(graphs) < count:
            logger.warning(f"members corpus: only {len(graphs)} of {count} after {tries} samples")
    logger.info(f"corpus {name}: {len(graphs)} graphs")
    return graphs
