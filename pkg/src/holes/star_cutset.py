"""
Star cutsets around major vertices of long holes.

The search for a significant path avoiding N(w) is a reachability question
in G \\ N[w] between the vertices attached to a and those attached to b.
"""
import logging
from typing import Any, Dict, Optional

from forbidden.detector import DEFAULT_DETECTION_CAP, is_class_member
from graph_core.graph import Graph, components, shortest_path
from holes.classifier import Hole, are_distant, classify_vertex, major_vertices

logger = logging.getLogger(__name__)


def theorem_eligibility(G: Graph, H: Hole, w: int) -> Optional[str]:
    """Reason (H, w) falls outside the theorem's hypothesis, or None when eligible."""
    if H.length <= 6:
        return f"hole length {H.length} is at most six"
    if w in H:
        return f"vertex {w} lies on the hole"
    role = classify_vertex(G, H, w)
    if not role.is_major:
        return f"vertex {w} is not major ({role.variant})"
    if role.is_hub and not all(classify_vertex(G, H, m).is_hub for m in major_vertices(G, H)):
        return f"vertex {w} is a hub but not every major vertex is"
    return None


def corollary_eligibility(G: Graph, H: Hole, w: int) -> Optional[str]:
    """Reason the star-cutset corollary does not apply, or None."""
    reason = theorem_eligibility(G, H, w)
    if reason:
        return reason
    role = classify_vertex(G, H, w)
    if len(role.neighbors) == H.length:
        return f"vertex {w} is complete to the hole"
    if role.is_gem_center:
        return f"vertex {w} is a gem-center"
    return None


def verify_major_neighbor_theorem(G: Graph, H: Hole, w: int, member: Optional[bool] = None,
                                  cap: int = DEFAULT_DETECTION_CAP) -> Dict[str, Any]:
    """
    Look for a significant path of (H, w) that w does not see.

    Args:
        G: host graph
        H: hole of length greater than six
        w: major vertex for H
        member: known class membership of G; computed when None
        cap: detection cap used when membership must be computed

    Returns:
        report with status "passed", "violated" or "skipped"
    """
    report = {"hole": H.to_list(), "w": w, "pairs_checked": 0, "violations": []}
    if member is None:
        member = is_class_member(G, cap).is_member
    if not member:
        report.update(status="skipped", reason="graph is not a verified class member")
        return report
    reason = theorem_eligibility(G, H, w)
    if reason:
        report.update(status="skipped", reason=reason)
        return report
    wn = set(G.nbr_set(w)) | {w}
    free = [v for v in G.vertices if v not in wn]
    for a in H.cycle:
        if a in wn:
            continue
        sources = [p for p in free if G.has_edge(p, a)]
        for b in H.cycle:
            if not are_distant(G, H, w, a, b):
                continue
            report["pairs_checked"] += 1
            targets = [q for q in free if G.has_edge(q, b)]
            path = shortest_path(G, sources, targets, free)
            if path is not None:
                logger.warning(f"significant path {path} for ({a}, {b}) avoids N({w})")
                report["violations"].append({"a": a, "b": b, "path": list(path)})
    report["status"] = "violated" if report["violations"] else "passed"
    return report


def star_cutset_witness(G: Graph, w: int) -> Optional[Dict[str, Any]]:
    """
    A star cutset X with center w separating u from v, found by testing
    X = N[w] \\ {u, v} for non-adjacent pairs in ascending order.

    Both u and v are taken out of N[w], not just v, so either may be a
    neighbor of w. X is still w plus a subset of N(w), hence a star cutset at w.
    """
    closed = set(G.nbr_set(w)) | {w}
    for u in G.vertices:
        if u == w:
            continue
        for v in G.vertices:
            if v <= u or v == w or G.has_edge(u, v):
                continue
            X = closed - {u, v}
            rest = [x for x in G.vertices if x not in X]
            comp = next(c for c in components(G, rest) if u in c)
            if v not in comp:
                return {"X": sorted(X), "center": w, "u": u, "v": v}
    return None
