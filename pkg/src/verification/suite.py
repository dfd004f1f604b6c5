"""
Corpus-wide property suite behind ``verify-lemmas``.

Each property runs per graph and reports how many instances it checked and
which ones failed; per-graph results are merged in corpus order so the report
does not depend on worker scheduling.
"""
import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from forbidden.detector import find_3creature, find_immature_kcreature, is_class_member
from frames.frame import (butterflies, heavy_vertices, is_heavy, optimal_frame_choice,
                          separator_sides, Frame)
from graph_core.graph import Graph
from holes.classifier import (CLONE, CROSS, MAJOR, NESTED, NO_NEIGHBOR, SPLIT_MINOR, Hole, are_distant,
                              classify_vertex, complete_edge, enumerate_holes,
                              extended_neighborhoods, mnc_classify, nesting)
from holes.star_cutset import (corollary_eligibility, star_cutset_witness, theorem_eligibility,
                               verify_major_neighbor_theorem)
from reconstruct.pipeline import (class_lemma_checks, construct_F_hole, hole_sides,
                                  verify_roundtrip)
from separators.enumerator import (creature_bound_enumerate, expand_enumerate, full_components,
                                   oracle_enumerate, proper_separators)
from utils.config import Caps

logger = logging.getLogger(__name__)

MAX_STORED_VIOLATIONS = 20
IMMATURE_K = 3

PASSED = "passed"
VIOLATED = "violated"
SKIPPED = "skipped"


@dataclass
class PropertyRecord:
    name: str
    statement: str
    checked: int = 0
    violation_count: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def status(self) -> str:
        if self.violation_count:
            return VIOLATED
        return PASSED if self.checked else SKIPPED

    def absorb(self, checked: int, violations: Sequence[Dict[str, Any]]):
        self.checked += checked
        self.violation_count += len(violations)
        room = MAX_STORED_VIOLATIONS - len(self.violations)
        self.violations.extend(list(violations)[:max(room, 0)])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "statement": self.statement,
            "checked": self.checked,
            "violation_count": self.violation_count,
            "violations": self.violations,
            "status": self.status,
        }


class _Tally:
    """Per-graph accumulator: name -> [checked, violations]."""

    def __init__(self, graph_name: str):
        self.graph_name = graph_name
        self.data: Dict[str, List[Any]] = {}

    def check(self, name: str, ok: bool, **detail):
        entry = self.data.setdefault(name, [0, []])
        entry[0] += 1
        if not ok:
            entry[1].append({"graph": self.graph_name, **detail})


STATEMENTS: Dict[str, str] = {
    "oracle_equivalence": "expansion enumeration equals the subset oracle",
    "creature_bound_equivalence": "creature-bound enumeration at k = n + 1 equals the oracle",
    "immature_boundary": "without an immature k-creature the creature-bound enumeration equals the oracle",
    "two_full_components": "every proper separator of a class member has exactly two full components",
    "minor_classification": "no vertex of a class member sees exactly two non-adjacent hole vertices and nothing else",
    "major_degree": "a major vertex has at least four hole neighbors or three pairwise non-adjacent ones",
    "distant_symmetric": "distance with respect to a major vertex is symmetric",
    "mnc_totality": "crossing non-adjacent major pairs realize an MNC configuration",
    "extended_or_mnc6": "a vertex non-adjacent to a major w on a long hole sees one extended neighborhood of w, or the pair forms MNC configuration 6",
    "major_neighbor_theorem": "no significant path avoids the neighborhood of an eligible major vertex",
    "star_cutset": "eligible major vertices center a star cutset",
    "clone_major_share": "a clone adjacent to a major vertex not adjacent to its anchor shares a hole neighbor with it",
    "nested_adjacent_share": "nested adjacent major-or-clone pairs share a hole neighbor",
    "adjacent_majors_cross_or_share": "adjacent major pairs cross or share a hole neighbor",
    "crossing_complete_edge": "non-adjacent crossing majors on holes longer than six have a hole edge complete to both",
    "no_3creature": "class members contain no 3-creature",
    "round_trip": "every proper separator is rebuilt exactly from its own key",
    "butterfly_noncentral": "no light separator vertex is central for an optimal frame",
    "interior_both_sides_heavy": "a vertex with interior hole neighbors on both sides is heavy",
    "heavy_in_C": "heavy vertices lie in the separator",
    "heavy_set_invariance": "two holes with the same frame have the same heavy set",
    "W_in_C": "the computed heavy candidates lie in the separator",
    "W_has_heavy": "the computed heavy candidates contain every heavy separator vertex kept in G_F",
    "majors_heavy": "major separator vertices kept in G_F are heavy",
    "sandwich": "C_L & C_R <= C <= C_L | C_R",
    "parts_sound": "the reach-selected parts lie in the separator",
}

PROPERTIES: Tuple[str, ...] = tuple(STATEMENTS)


def _check_enumerators(G: Graph, caps: Caps, tally: _Tally):
    if G.n > caps.oracle:
        return
    oracle = oracle_enumerate(G, caps.oracle)
    expanded = expand_enumerate(G)
    tally.check("oracle_equivalence", expanded == oracle,
                missing=[list(c) for c in set(oracle) - set(expanded)],
                extra=[list(c) for c in set(expanded) - set(oracle)])
    tally.check("creature_bound_equivalence", creature_bound_enumerate(G, G.n + 1) == oracle)
    immature = find_immature_kcreature(G, IMMATURE_K)
    if immature.exhaustive and not immature.found:
        tally.check("immature_boundary", creature_bound_enumerate(G, IMMATURE_K) == oracle, k=IMMATURE_K)


def _check_hole(G: Graph, H: Hole, caps: Caps, tally: _Tally):
    outside = [v for v in G.vertices if v not in H]
    roles = {v: classify_vertex(G, H, v) for v in outside}
    majors = [v for v in outside if roles[v].is_major]
    where = {"hole": H.to_list()}
    for v in outside:
        role = roles[v]
        if role.variant == NO_NEIGHBOR:
            continue
        tally.check("minor_classification", role.variant != SPLIT_MINOR, vertex=v, **where)
        if role.is_major and len(role.neighbors) == 3:
            independent = not any(G.has_edge(a, b) for a, b in itertools.combinations(role.neighbors, 2))
            tally.check("major_degree", independent, vertex=v, **where)
    for w in majors:
        for a, b in itertools.combinations(H.cycle, 2):
            tally.check("distant_symmetric", are_distant(G, H, w, a, b) == are_distant(G, H, w, b, a),
                        w=w, a=a, b=b, **where)
    for u, v in itertools.combinations(outside, 2):
        ru, rv = roles[u], roles[v]
        if NO_NEIGHBOR in (ru.variant, rv.variant):
            continue
        adjacent = G.has_edge(u, v)
        if ru.is_major and rv.is_major:
            kind = nesting(G, H, u, v)
            if adjacent:
                shares = bool(set(ru.neighbors) & set(rv.neighbors))
                tally.check("adjacent_majors_cross_or_share", kind == CROSS or shares, u=u, v=v, **where)
            elif kind == CROSS:
                tally.check("mnc_totality", mnc_classify(G, H, u, v) is not None, u=u, v=v, **where)
                if H.length > 6:
                    tally.check("crossing_complete_edge", complete_edge(G, H, u, v) is not None,
                                u=u, v=v, **where)
        if adjacent and {ru.variant, rv.variant} <= {CLONE, MAJOR} and nesting(G, H, u, v) != CROSS:
            tally.check("nested_adjacent_share", nesting(G, H, u, v) == NESTED, u=u, v=v, **where)
        for clone, other in ((u, v), (v, u)):
            rc, ro = roles[clone], roles[other]
            if adjacent and rc.variant == CLONE and ro.is_major and not G.has_edge(rc.anchor[0], other):
                shares = bool(set(rc.neighbors) & set(ro.neighbors))
                tally.check("clone_major_share", shares, clone=clone, major=other, **where)
    if H.length <= 6:
        return
    for w in majors:
        extended = [set(e) for e in extended_neighborhoods(G, H, w)]
        for v in outside:
            if v == w or G.has_edge(v, w) or not roles[v].neighbors:
                continue
            nv = set(roles[v].neighbors)
            inside = any(nv <= e for e in extended)
            if not inside and roles[v].is_major:
                config = mnc_classify(G, H, w, v)
                inside = config is not None and config.config_id == 6
            tally.check("extended_or_mnc6", inside, w=w, v=v, **where)
        if theorem_eligibility(G, H, w) is None:
            report = verify_major_neighbor_theorem(G, H, w, member=True)
            tally.check("major_neighbor_theorem", report["status"] != VIOLATED, w=w,
                        violations=report["violations"][:3], **where)
        if corollary_eligibility(G, H, w) is None:
            tally.check("star_cutset", star_cutset_witness(G, w) is not None, w=w, **where)


def _check_separator(G: Graph, C: Tuple[int, ...], tally: _Tally):
    where = {"separator": list(C)}
    tally.check("two_full_components", len(full_components(G, C)) == 2, **where)
    report = verify_roundtrip(G, C)
    tally.check("round_trip", report["equal"], error=report.get("error"),
                missing=report.get("missing"), extra=report.get("extra"), **where)
    if "frame" not in report:
        return
    F = Frame(*report["frame"])
    H = Hole(tuple(report["hole"]))
    L, R = separator_sides(G, C)
    heavy = set(heavy_vertices(G, H, F.c1, F.c2))
    tally.check("heavy_in_C", heavy <= set(C), heavy=sorted(heavy), **where)
    for bf in butterflies(G, C, L, R, H, F.c1, F.c2):
        tally.check("butterfly_noncentral", not bf.is_central, vertex=bf.center, **where)
    hl, hr = hole_sides(H, F)
    left_inner = set(hl[1:-1]) - {F.l1, F.l2}
    right_inner = set(hr[1:-1]) - {F.r1, F.r2}
    for v in G.vertices:
        if v in H:
            continue
        nbrs = G.nbr_set(v)
        if nbrs & left_inner and nbrs & right_inner:
            tally.check("interior_both_sides_heavy", is_heavy(G, H, F.c1, F.c2, v), vertex=v, **where)
    choice = optimal_frame_choice(G, C)
    other = construct_F_hole(G, F)
    tally.check("heavy_set_invariance",
                set(heavy_vertices(G, choice.hole, F.c1, F.c2)) == set(heavy_vertices(G, other, F.c1, F.c2)),
                frame=F.to_list(), **where)
    for name, ok in class_lemma_checks(G, C, report).items():
        tally.check(name, ok, **where)


def check_graph(G: Graph, caps: Caps) -> Dict[str, List[Any]]:
    """Every property on one graph; class-only properties run on verified members."""
    tally = _Tally(G.name or repr(G))
    _check_enumerators(G, caps, tally)
    verdict = is_class_member(G, caps.detection)
    if not verdict.is_member:
        logger.debug(f"{G!r}: {verdict.status}, class properties skipped")
        return tally.data
    holes = enumerate_holes(G, max_len=caps.hole_max_len, limit=caps.hole_limit)
    if holes.truncated:
        logger.warning(f"{G!r}: hole enumeration truncated at {caps.hole_limit}")
    for H in holes.holes:
        _check_hole(G, H, caps, tally)
    tally.check("no_3creature", not find_3creature(G, caps.detection).found)
    for C in proper_separators(G):
        _check_separator(G, C, tally)
    return tally.data


def run_suite(graphs: Iterable[Graph], caps: Optional[Caps] = None, jobs: int = 1,
              quiet: bool = True, only: Optional[Sequence[str]] = None) -> List[PropertyRecord]:
    """
    Run the property suite over ``graphs`` with ``jobs`` joblib workers.

    Args:
        only: restrict the report to these property names
    """
    caps = caps or Caps()
    graphs = list(graphs)
    names = list(only) if only else list(PROPERTIES)
    unknown = set(names) - set(PROPERTIES)
    if unknown:
        raise ValueError(f"unknown properties: {sorted(unknown)}")
    logger.info(f"verifying {len(names)} properties over {len(graphs)} graphs with {jobs} worker(s)")
    per_graph = Parallel(n_jobs=jobs)(
        delayed(check_graph)(G, caps) for G in tqdm(graphs, desc="verify", disable=quiet)
    )
    records = {name: PropertyRecord(name, STATEMENTS[name]) for name in names}
    for data in per_graph:
        for name in names:
            if name in data:
                checked, violations = data[name]
                records[name].absorb(checked, violations)
    result = [records[name] for name in names]
    for rec in result:
        if rec.status == VIOLATED:
            logger.warning(f"property {rec.name} violated {rec.violation_count} time(s)")
    return result


def suite_report(records: Sequence[PropertyRecord], corpus: Sequence[str], graph_count: int) -> Dict[str, Any]:
    return {
        "corpus": list(corpus),
        "graphs": graph_count,
        "properties": [r.to_dict() for r in records],
        "violated": any(r.status == VIOLATED for r in records),
    }
