"""
Separator reconstruction from an 18-slot key.

A proper separator C is rebuilt from its optimal frame F and two 4-slot
tuples M1, M2: F determines the restricted graph G_F, the candidate heavy set
W and an F-hole H; M1 extends the hole sides to C_L and C_R; M2 selects the
separator vertices reached through D = V \\ (H u C_L u C_R).
"""
import itertools
import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from frames.frame import (Frame, build_butterfly, heavy_vertices, is_heavy,
                          optimal_frame_choice, separator_sides, L_ADJACENT, R_ADJACENT)
from graph_core.graph import (Graph, VertexSet, components, is_clique, neighborhood,
                              path_through, shortest_path, vertex_set)
from holes.classifier import Hole, classify_vertex
from separators.enumerator import (clique_minimal_separators,
                                   expand_enumerate, is_minimal_separator)
from utils.exceptions import (CapExceededError, ClassViolationError, ContractError,
                              FrameRealizationError, SeplabError)

logger = logging.getLogger(__name__)

DEFAULT_FULL_TUPLES_CAP = 5

Slots = Tuple[Optional[int], Optional[int], Optional[int], Optional[int]]
EMPTY_SLOTS: Slots = (None, None, None, None)


@dataclass(frozen=True)
class TupleKey:
    """Frame plus M1 = (x1, x2, y1, y2) and M2 = (l_a, l_b, r_a, r_b)."""
    frame: Frame
    m1: Slots = EMPTY_SLOTS
    m2: Slots = EMPTY_SLOTS

    def slots(self) -> Tuple[Optional[int], ...]:
        return self.frame.as_tuple() + self.m1 + self.m2

    def filled(self) -> int:
        return sum(1 for s in self.slots() if s is not None)


@dataclass(frozen=True)
class SideSets:
    C_L: VertexSet
    C_R: VertexSet
    C1: VertexSet
    D: VertexSet

    def to_dict(self) -> Dict[str, Any]:
        return {"C_L": list(self.C_L), "C_R": list(self.C_R), "C1": list(self.C1), "D": list(self.D)}


def _pair_slots(members: Sequence[int]) -> Tuple[Optional[int], Optional[int]]:
    members = sorted(members)
    return (members[0] if members else None, members[1] if len(members) > 1 else None)


def _filled(slots: Iterable[Optional[int]]) -> List[int]:
    return sorted({s for s in slots if s is not None})


def restricted_graph(G: Graph, F: Frame) -> Graph:
    """G_F: G minus the neighbors of the six anchors, primed vertices kept."""
    F.check(G)
    drop = set(neighborhood(G, F.anchors)) - set(F.primed)
    return G.delete(drop)


def is_strong(G: Graph, v: int, c1: int, c2: int) -> bool:
    """c1 and c2 fall in different components of G \\ N[v]; False when N[v] meets them."""
    if v in (c1, c2) or G.has_edge(v, c1) or G.has_edge(v, c2):
        return False
    closed = set(G.nbr_set(v)) | {v}
    rest = [u for u in G.vertices if u not in closed]
    return not any(c1 in comp and c2 in comp for comp in components(G, rest))


def candidate_heavy_W(G: Graph, F: Frame) -> VertexSet:
    """X1 u X2: strong vertices of G_F, then strong vertices of G_F \\ X1."""
    GF = restricted_graph(G, F)
    X1 = [v for v in GF.vertices if is_strong(GF, v, F.c1, F.c2)]
    rest = GF.delete(X1)
    X2 = [v for v in rest.vertices if is_strong(rest, v, F.c1, F.c2)]
    W = tuple(sorted(set(X1) | set(X2)))
    logger.debug(f"W(F) for {F.to_list()}: X1={X1} X2={X2}")
    return W


def hole_sides(H: Hole, F: Frame) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """(H_L, H_R) as c1..c2 paths; H_L is the arc through l1."""
    forward = H.arc(F.c1, F.c2)
    backward = tuple(reversed(H.arc(F.c2, F.c1)))
    return (forward, backward) if forward[1] == F.l1 else (backward, forward)


def _frame_matches(H: Hole, F: Frame) -> bool:
    if F.c1 not in H or F.c2 not in H:
        return False
    hl, hr = hole_sides(H, F)
    if hl[1] != F.l1 or hr[1] != F.r1:
        return False
    for path, x1p, x1, x2p, x2 in ((hl, F.l1p, F.l1, F.l2p, F.l2), (hr, F.r1p, F.r1, F.r2p, F.r2)):
        if path[-2] != x2:
            return False
        if x1 == x2:
            if not (x1p == x2p == x1):
                return False
        elif path[2] != x1p or path[-3] != x2p:
            return False
    return True


def _side_of(GF: Graph, c1: int, c2: int, x1p: int, x1: int, x2p: int, x2: int,
             region: Set[int]) -> Optional[Tuple[int, ...]]:
    if x1 == x2:
        return (c1, x1, c2)
    if x1p == x2:
        return (c1, x1, x2, c2)
    if x1p == x2p:
        return (c1, x1, x1p, x2, c2)
    middle = shortest_path(GF, [x1p], [x2p], region)
    if middle is None:
        return None
    return (c1, x1) + middle + (x2, c2)


def construct_F_hole(G: Graph, F: Frame, W: Optional[Iterable[int]] = None) -> Hole:
    """
    V(F) joined by shortest l1'-l2' and r1'-r2' paths through G_F \\ W \\ V(F).

    Raises:
        FrameRealizationError: the result is not an F-hole
    """
    if W is None:
        W = candidate_heavy_W(G, F)
    GF = restricted_graph(G, F)
    region = set(GF.vertices) - set(W) - set(F.vertices)
    hl = _side_of(GF, F.c1, F.c2, F.l1p, F.l1, F.l2p, F.l2, region)
    hr = _side_of(GF, F.c1, F.c2, F.r1p, F.r1, F.r2p, F.r2, region)
    if hl is None or hr is None:
        raise FrameRealizationError("frame not optimal or graph not in class: no side path")
    cycle = list(hl) + list(reversed(hr[1:-1]))
    try:
        hole = Hole.of(G, cycle)
    except ContractError:
        raise FrameRealizationError(f"frame not optimal or graph not in class: {cycle} is not a hole")
    if not _frame_matches(hole, F):
        raise FrameRealizationError(f"frame not optimal or graph not in class: frame of {cycle} differs")
    return hole


def _minimal_hitting(candidates: Sequence[int], must_hit: Dict[int, Set[int]]) -> List[int]:
    """Greedy removal in ascending id, keeping every must_hit set met."""
    chosen = sorted(candidates)
    for v in list(chosen):
        trial = [c for c in chosen if c != v]
        if all(hits & set(trial) for hits in must_hit.values()):
            chosen = trial
    return chosen


def compute_M1(G: Graph, C: Iterable[int], L: Iterable[int], R: Iterable[int], H: Hole, F: Frame) -> Slots:
    """
    Minimal X in N(H_L*) & L meeting every L-adjacent light vertex, and Y
    symmetrically; returned as (x1, x2, y1, y2).

    Raises:
        ClassViolationError: X or Y needs more than two vertices
    """
    sep = set(C)
    left, right = set(L), set(R)
    hl, hr = hole_sides(H, F)
    hl_star, hr_star = set(hl[1:-1]), set(hr[1:-1])
    light = [c for c in sorted(sep) if c not in (F.c1, F.c2) and not is_heavy(G, H, F.c1, F.c2, c)]
    left_adjacent, right_adjacent = {}, {}
    for c3 in light:
        positions = build_butterfly(G, sep, left, right, H, c3).positions
        if L_ADJACENT in positions:
            left_adjacent[c3] = set(G.nbr_set(c3))
        if R_ADJACENT in positions:
            right_adjacent[c3] = set(G.nbr_set(c3))
    X = _minimal_hitting([v for v in neighborhood(G, hl_star) if v in left], left_adjacent)
    Y = _minimal_hitting([v for v in neighborhood(G, hr_star) if v in right], right_adjacent)
    if len(X) > 2:
        raise ClassViolationError("L-side hitting set larger than two", X)
    if len(Y) > 2:
        raise ClassViolationError("R-side hitting set larger than two", Y)
    return _pair_slots(X) + _pair_slots(Y)


def side_sets(G: Graph, H: Hole, F: Frame, M1: Slots) -> SideSets:
    """C_L = N(H_L* u X), C_R = N(H_R* u Y), C1 = C_L & C_R, D = V \\ (H u C_L u C_R)."""
    hl, hr = hole_sides(H, F)
    X = _filled(M1[:2])
    Y = _filled(M1[2:])
    C_L = set(neighborhood(G, set(hl[1:-1]) | set(X)))
    C_R = set(neighborhood(G, set(hr[1:-1]) | set(Y)))
    covered = set(H.cycle) | C_L | C_R
    D = [v for v in G.vertices if v not in covered]
    return SideSets(tuple(sorted(C_L)), tuple(sorted(C_R)), tuple(sorted(C_L & C_R)), tuple(D))


def _reaches(G: Graph, c: int, targets: Sequence[int], D: Iterable[int]) -> bool:
    if not targets or c in targets:
        return False
    return path_through(G, [c], targets, D) is not None


def compute_M2(G: Graph, C: Iterable[int], sides: SideSets) -> Slots:
    """
    T in C_L & L and S in C_R & R, minimal so every one-sided separator
    vertex reaches them through D; returned as (l_a, l_b, r_a, r_b).
    """
    sep = set(C)
    C_L, C_R, D = set(sides.C_L), set(sides.C_R), sides.D
    left_only = sorted((C_L - C_R) & sep)
    right_only = sorted((C_R - C_L) & sep)
    # C_L \ C is inside L and C_R \ C inside R
    s_pool = sorted(C_R - sep)
    t_pool = sorted(C_L - sep)
    S = _minimal_reach(G, s_pool, left_only, D, "R")
    T = _minimal_reach(G, t_pool, right_only, D, "L")
    return _pair_slots(T) + _pair_slots(S)


def _minimal_reach(G: Graph, pool: List[int], sources: List[int], D: Sequence[int], side: str) -> List[int]:
    def covers(chosen: List[int]) -> bool:
        return all(_reaches(G, z, chosen, D) for z in sources)

    if not covers(pool):
        raise ClassViolationError(f"some separator vertex reaches no {side}-side target through D", sources)
    chosen = list(pool)
    for v in list(pool):
        trial = [c for c in chosen if c != v]
        if covers(trial):
            chosen = trial
    if len(chosen) > 2:
        raise ClassViolationError(f"{side}-side reach set larger than two", chosen)
    return chosen


def _reached(G: Graph, candidates: Iterable[int], targets: Sequence[int], D: Sequence[int]) -> Set[int]:
    return {c for c in candidates if _reaches(G, c, targets, D)}


def _rebuild(G: Graph, F: Frame, M1: Slots, M2: Slots) -> Tuple[VertexSet, Hole, SideSets, Set[int], Set[int], VertexSet]:
    W = candidate_heavy_W(G, F)
    H = construct_F_hole(G, F, W)
    sides = side_sets(G, H, F, M1)
    T, S = _filled(M2[:2]), _filled(M2[2:])
    C2 = _reached(G, sides.C_L, S, sides.D)
    C3 = _reached(G, sides.C_R, T, sides.D)
    return W, H, sides, C2, C3, tuple(sorted(set(sides.C1) | C2 | C3))


def reconstruct_separator(G: Graph, F: Frame, M1: Slots, M2: Slots) -> VertexSet:
    """C1 u C2 u C3 computed from the key alone."""
    return _rebuild(G, F, M1, M2)[-1]


def verify_roundtrip(G: Graph, C: Iterable[int]) -> Dict[str, Any]:
    """
    Rebuild C from its own key and compare.

    Returns:
        report with every intermediate and ``equal``
    """
    sep = vertex_set(G, C)
    report: Dict[str, Any] = {"separator": list(sep), "equal": False}
    try:
        choice = optimal_frame_choice(G, sep)
        F = choice.frame
        L, R = separator_sides(G, sep)
        W = candidate_heavy_W(G, F)
        H = construct_F_hole(G, F, W)
        M1 = compute_M1(G, sep, L, R, H, F)
        sides = side_sets(G, H, F, M1)
        M2 = compute_M2(G, sep, sides)
        # decode from the key (F, M1, M2) only
        W, H, sides, C2, C3, rebuilt = _rebuild(G, F, M1, M2)
    except SeplabError as e:
        logger.warning(f"round-trip of {list(sep)} in {G!r} failed: {e}")
        report["error"] = str(e)
        return report
    report.update({
        "frame": F.to_list(),
        "potential": choice.potential,
        "rich": choice.richness.rich,
        "W": list(W),
        "hole": H.to_list(),
        "M1": list(M1),
        "M2": list(M2),
        **sides.to_dict(),
        "C2": sorted(C2),
        "C3": sorted(C3),
        "rebuilt": list(rebuilt),
        "equal": rebuilt == sep,
    })
    if not report["equal"]:
        report["missing"] = sorted(set(sep) - set(rebuilt))
        report["extra"] = sorted(set(rebuilt) - set(sep))
        logger.warning(f"round-trip mismatch for {list(sep)}: {report['missing']} / {report['extra']}")
    else:
        logger.debug(f"round-trip ok for {list(sep)} via frame {F.to_list()}")
    return report


def roundtrip_reports(G: Graph, separators: Optional[Iterable[Sequence[int]]] = None) -> List[Dict[str, Any]]:
    """verify_roundtrip over the given separators, or over every proper separator of G."""
    if separators is None:
        separators = [S for S in expand_enumerate(G) if not is_clique(G, S)]
    return [verify_roundtrip(G, S) for S in separators]


# ---------------------------------------------------------------------------
# enumeration from keys

def _half_candidates(G: Graph, c1: int, c2: int) -> List[Tuple[int, int, int, int]]:
    """Every (x1', x1, x2', x2) meeting the frame adjacency invariants."""
    out = []
    for x1 in G.neighbors(c1):
        for x2 in G.neighbors(c2):
            if {x1, x2} & {c1, c2}:
                continue
            if x1 == x2:
                out.append((x1, x1, x1, x1))
                continue
            for x1p in G.neighbors(x1):
                if x1p == c1:
                    continue
                for x2p in G.neighbors(x2):
                    if x2p != c2:
                        out.append((x1p, x1, x2p, x2))
    return out


def candidate_frames(G: Graph) -> List[Frame]:
    frames = []
    for c1, c2 in itertools.combinations(G.vertices, 2):
        if G.has_edge(c1, c2):
            continue
        halves = _half_candidates(G, c1, c2)
        for (l1p, l1, l2p, l2), (r1p, r1, r2p, r2) in itertools.permutations(halves, 2):
            frames.append(Frame(c1, c2, l1p, l1, r1, r1p, l2p, l2, r2, r2p))
    return frames


def _slot_pairs(G: Graph) -> List[Tuple[int, ...]]:
    """Normalized optional pairs: (), (a,), (a, b) with a < b."""
    verts = list(G.vertices)
    return [()] + [(v,) for v in verts] + list(itertools.combinations(verts, 2))


def _frame_context(G: Graph, F: Frame) -> Optional[Tuple[Hole, Tuple[int, ...], Tuple[int, ...]]]:
    try:
        H = construct_F_hole(G, F)
    except SeplabError:
        return None
    hl, hr = hole_sides(H, F)
    return H, hl[1:-1], hr[1:-1]


def _candidates_for_frame(G: Graph, F: Frame, pairs: List[Tuple[int, ...]]) -> Set[VertexSet]:
    """All C(F, M1, M2) over every normalized M1 and M2, with shared subresults."""
    context = _frame_context(G, F)
    if context is None:
        return set()
    H, hl_star, hr_star = context
    on_hole = set(H.cycle)
    out = set()
    c_left = {X: set(neighborhood(G, set(hl_star) | set(X))) for X in pairs}
    c_right = {Y: set(neighborhood(G, set(hr_star) | set(Y))) for Y in pairs}
    for X in pairs:
        for Y in pairs:
            C_L, C_R = c_left[X], c_right[Y]
            D = [v for v in G.vertices if v not in on_hole and v not in C_L and v not in C_R]
            C1 = C_L & C_R
            by_S = {S: _reached(G, C_L, S, D) for S in pairs}
            by_T = {T: _reached(G, C_R, T, D) for T in pairs}
            for C2 in {frozenset(s) for s in by_S.values()}:
                for C3 in {frozenset(t) for t in by_T.values()}:
                    out.add(tuple(sorted(C1 | C2 | C3)))
    return out


def enumerate_all(G: Graph, mode: str = "verified_roundtrip", n_cap: int = DEFAULT_FULL_TUPLES_CAP,
                  sample_count: int = 1000, seed: int = 0) -> List[VertexSet]:
    """
    Clique minimal separators plus proper separators obtained from keys.

    Args:
        mode: "full_tuples" (every key, n <= n_cap), "verified_roundtrip"
            (proper separators that rebuild from their own key) or
            "budgeted" (``sample_count`` seeded random keys)
    """
    result = set(clique_minimal_separators(G))
    if mode == "full_tuples":
        if G.n > n_cap:
            raise CapExceededError("full 18-tuple enumeration", G.n, n_cap)
        pairs = _slot_pairs(G)
        candidates = set()
        for F in candidate_frames(G):
            candidates |= _candidates_for_frame(G, F, pairs)
        result |= {C for C in candidates if C and is_minimal_separator(G, C)}
    elif mode == "verified_roundtrip":
        for report in roundtrip_reports(G):
            if report["equal"]:
                result.add(tuple(report["separator"]))
    elif mode == "budgeted":
        frames = candidate_frames(G)
        if frames:
            rng = np.random.default_rng(seed)
            slots = [None] + list(G.vertices)
            for _ in range(sample_count):
                F = frames[int(rng.integers(len(frames)))]
                key = [slots[int(i)] for i in rng.integers(len(slots), size=8)]
                try:
                    C = reconstruct_separator(G, F, tuple(key[:4]), tuple(key[4:]))
                except SeplabError:
                    continue
                if C and is_minimal_separator(G, C):
                    result.add(C)
    else:
        raise ContractError(f"unknown enumeration mode {mode!r}")
    return sorted(result)


def class_lemma_checks(G: Graph, C: Iterable[int], report: Dict[str, Any]) -> Dict[str, bool]:
    """Sandwich, soundness and W containment checks on a successful round-trip report."""
    sep = set(C)
    C_L, C_R = set(report["C_L"]), set(report["C_R"])
    F = Frame(*report["frame"])
    H = Hole(tuple(report["hole"]))
    heavy = set(heavy_vertices(G, H, F.c1, F.c2))
    GF = restricted_graph(G, F)
    majors_in_gf = {v for v in GF.vertices if v in sep and v not in H and classify_vertex(G, H, v).is_major}
    return {
        "sandwich": (C_L & C_R) <= sep <= (C_L | C_R),
        "parts_sound": set(report["C2"]) | set(report["C3"]) <= sep,
        "W_in_C": set(report["W"]) <= sep,
        "W_has_heavy": (heavy & set(GF.vertices) & sep) <= set(report["W"]),
        "majors_heavy": majors_in_gf <= heavy,
    }
