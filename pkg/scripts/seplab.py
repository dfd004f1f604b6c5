#!/usr/bin/env python
"""
Command-line front end for the minimal separator lab.

Exit codes: 0 success, 1 a verified property failed, 2 usage or input error.
"""
import argparse
import json
import logging
import math
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

# Add src to path for development
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..', 'src')))

import pandas as pd
from joblib import Parallel, delayed
from pydantic import ValidationError
from tqdm import tqdm

from forbidden.detector import KINDS, find_kcreature, find_immature_kcreature, find_structure, is_class_member
from frames.frame import (butterflies, classify_richness, heavy_vertices, optimal_frame_choice,
                          separator_sides)
from generators.corpus import CORPORA, build_corpus
from generators.families import FAMILIES, FamilySpec, generate
from graph_core.graph import Graph, is_clique
from graph_core.io import FORMATS, load_graph, write_graph
from holes.classifier import (CROSS, Hole, classify_vertex, extended_neighborhoods, mnc_classify,
                              nesting, sectors)
from holes.star_cutset import corollary_eligibility, star_cutset_witness, verify_major_neighbor_theorem
from reconstruct.pipeline import enumerate_all, roundtrip_reports
from separators.enumerator import (classify_separator, clique_minimal_separators, creature_bound_enumerate,
                                   expand_enumerate, oracle_enumerate, proper_separators)
from utils.config import RunConfig, load_config
from utils.exceptions import SeplabError
from verification.suite import PROPERTIES, run_suite, suite_report

logger = logging.getLogger("seplab")

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

SEPARATOR_METHODS = ("oracle", "expand", "creature", "clique", "proper")
ENUMERATION_MODES = ("full_tuples", "verified_roundtrip", "budgeted")
STATS_COLUMNS = ["graph", "n", "m", "member", "min_seps", "proper", "clique", "max_exponent_estimate"]


class UsageError(Exception):
    """Bad command-line usage; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _vertex_list(text: str) -> List[int]:
    try:
        return sorted({int(tok) for tok in text.replace(",", " ").split()})
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}")


def _cycle_list(text: str) -> List[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated vertex ids, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="seplab", description="Minimal separator lab")
    parser.add_argument("--config", help="YAML config file (default config/config.yaml)")
    parser.add_argument("--format", dest="graph_format", choices=FORMATS, help="input graph format")
    parser.add_argument("--out", help="write output here instead of stdout")
    parser.add_argument("--output-format", choices=("json", "csv"), help="report format")
    parser.add_argument("--seed", type=int, help="seed for sampling")
    parser.add_argument("--jobs", type=int, help="joblib workers for corpus fan-out")
    parser.add_argument("--verbose", action="store_true", help="debug logging")
    parser.add_argument("--quiet", action="store_true", help="no progress bars")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a named family")
    gen.add_argument("family")
    gen.add_argument("k", nargs="?", type=int)
    gen.add_argument("--p1-len", type=int)
    gen.add_argument("--p2-len", type=int)
    gen.add_argument("--write-format", choices=FORMATS, default="edge-list")

    detect = sub.add_parser("detect", help="class membership or one forbidden structure")
    detect.add_argument("graph")
    detect.add_argument("--kind", choices=KINDS, help="search one structure instead of membership")
    detect.add_argument("--k", type=int, default=3, help="k for creature kinds")

    seps = sub.add_parser("seps", help="enumerate minimal separators")
    seps.add_argument("graph")
    seps.add_argument("--method", choices=SEPARATOR_METHODS, default="expand")
    seps.add_argument("--k", type=int, help="k for --method creature (default n + 1)")

    frames = sub.add_parser("frames", help="richness, optimal frame and butterflies")
    frames.add_argument("graph")
    frames.add_argument("--separator", type=_vertex_list, help="one separator; default every proper one")

    hole = sub.add_parser("analyze-hole", help="vertex roles and lemmas around one hole")
    hole.add_argument("graph")
    hole.add_argument("--hole", type=_cycle_list, required=True, help="the hole in cyclic order")

    rec = sub.add_parser("reconstruct", help="rebuild separators from their keys")
    rec.add_argument("graph")
    group = rec.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="every proper separator (default)")
    group.add_argument("--separator", type=_vertex_list)
    group.add_argument("--enumerate", choices=ENUMERATION_MODES, help="enumerate separators from keys")
    rec.add_argument("--samples", type=int, default=1000, help="keys drawn in budgeted mode")

    verify = sub.add_parser("verify-lemmas", help="run the property suite")
    verify.add_argument("graphs", nargs="*", help="graph files added to the corpora")
    verify.add_argument("--corpus", nargs="*", choices=CORPORA, default=None)
    verify.add_argument("--only", nargs="*", choices=PROPERTIES, help="restrict to these properties")

    stats = sub.add_parser("stats", help="separator counts per graph")
    stats.add_argument("graphs", nargs="*")
    stats.add_argument("--corpus", nargs="*", choices=CORPORA, default=None)
    return parser


def configure_logging(config: RunConfig, verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, config.logging.level.upper(), logging.INFO)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if config.logging.file:
        handlers.append(logging.FileHandler(config.logging.file))
    logging.basicConfig(level=level, format=config.logging.format, handlers=handlers, force=True)


def _emit(text: str, config: RunConfig, stdout):
    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as f:
            f.write(text)
        logger.info(f"wrote {config.output_path}")
    else:
        stdout.write(text)


def _json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


def _load(path: str, config: RunConfig) -> Graph:
    return load_graph(path, config.format)


def _corpus(args, config: RunConfig) -> Tuple[List[Graph], List[str]]:
    """Graph files plus named corpora; the fixtures corpus when neither is given."""
    graphs = [_load(p, config) for p in args.graphs]
    names = args.corpus if args.corpus is not None else ([] if graphs else ["fixtures"])
    for name in names:
        size = getattr(config.corpus, name, None)
        graphs += build_corpus(name, size, config.seed, config.corpus.max_n)
    return graphs, list(args.graphs) + list(names)


def cmd_gen(args, config: RunConfig) -> Tuple[int, str]:
    extras = {k: v for k, v in (("p1_len", args.p1_len), ("p2_len", args.p2_len)) if v is not None}
    family = args.family.replace("-", "_")
    family = next((f for f in FAMILIES if f.lower() == family.lower()), family)
    G = generate(FamilySpec(family, args.k, extras))
    return EXIT_OK, write_graph(G, args.write_format)


def cmd_detect(args, config: RunConfig) -> Tuple[int, str]:
    G = _load(args.graph, config)
    cap = config.caps.detection
    if args.kind is None:
        body = is_class_member(G, cap).to_dict()
    elif args.kind in ("creature", "creature3"):
        body = find_kcreature(G, 3 if args.kind == "creature3" else args.k, cap).to_dict()
    elif args.kind == "immature_creature":
        body = find_immature_kcreature(G, args.k).to_dict()
    else:
        body = find_structure(G, args.kind, cap).to_dict()
    return EXIT_OK, _json({"graph": G.name, **body})


def cmd_seps(args, config: RunConfig) -> Tuple[int, str]:
    G = _load(args.graph, config)
    if args.method == "oracle":
        found = oracle_enumerate(G, config.caps.oracle)
    elif args.method == "creature":
        found = creature_bound_enumerate(G, args.k if args.k else G.n + 1)
    elif args.method == "clique":
        found = clique_minimal_separators(G)
    elif args.method == "proper":
        found = proper_separators(G)
    else:
        found = expand_enumerate(G)
    records = [classify_separator(G, C).to_dict() for C in found]
    return EXIT_OK, _json({"graph": G.name, "method": args.method, "count": len(records), "separators": records})


def _frame_entry(G: Graph, C: Sequence[int]) -> Dict[str, Any]:
    L, R = separator_sides(G, C)
    choice = optimal_frame_choice(G, C)
    F = choice.frame
    return {
        "separator": list(C),
        "L": list(L),
        "R": list(R),
        "richness": classify_richness(G, C).to_dict(),
        "frame": F.to_list(),
        "hole": choice.hole.to_list(),
        "potential": choice.potential,
        "heavy": list(heavy_vertices(G, choice.hole, F.c1, F.c2)),
        "butterflies": [b.to_dict() for b in butterflies(G, C, L, R, choice.hole, F.c1, F.c2)],
    }


def cmd_frames(args, config: RunConfig) -> Tuple[int, str]:
    G = _load(args.graph, config)
    targets = [tuple(args.separator)] if args.separator else proper_separators(G)
    return EXIT_OK, _json({"graph": G.name, "frames": [_frame_entry(G, C) for C in targets]})


def cmd_analyze_hole(args, config: RunConfig) -> Tuple[int, str]:
    G = _load(args.graph, config)
    H = Hole.of(G, args.hole)
    member = is_class_member(G, config.caps.detection).is_member
    outside = [v for v in G.vertices if v not in H]
    roles = {v: classify_vertex(G, H, v) for v in outside}
    majors = [v for v in outside if roles[v].is_major]
    pairs = []
    for i, u in enumerate(majors):
        for v in majors[i + 1:]:
            entry = {"u": u, "v": v, "adjacent": G.has_edge(u, v), "nesting": nesting(G, H, u, v)}
            if not entry["adjacent"] and entry["nesting"] == CROSS:
                config_found = mnc_classify(G, H, u, v)
                entry["mnc"] = config_found.to_dict() if config_found else None
            pairs.append(entry)
    body = {
        "graph": G.name,
        "hole": H.to_list(),
        "member": member,
        "roles": {str(v): roles[v].to_dict() for v in outside if roles[v].neighbors},
        "majors": {
            str(w): {
                "sectors": [list(s) for s in sectors(G, H, w)],
                "extended": [list(e) for e in extended_neighborhoods(G, H, w)],
                "theorem": verify_major_neighbor_theorem(G, H, w, member=member),
                "star_cutset": (star_cutset_witness(G, w)
                                if corollary_eligibility(G, H, w) is None else None),
            }
            for w in majors
        },
        "pairs": pairs,
    }
    violated = any(m["theorem"]["status"] == "violated" for m in body["majors"].values())
    return (EXIT_VIOLATION if violated else EXIT_OK), _json(body)


def cmd_reconstruct(args, config: RunConfig) -> Tuple[int, str]:
    G = _load(args.graph, config)
    if args.enumerate:
        found = enumerate_all(G, args.enumerate, n_cap=config.caps.full_tuples,
                              sample_count=args.samples, seed=config.seed)
        body = {"graph": G.name, "mode": args.enumerate, "count": len(found), "separators": [list(C) for C in found]}
        return EXIT_OK, _json(body)
    targets = [tuple(args.separator)] if args.separator else None
    reports = roundtrip_reports(G, targets)
    all_equal = all(r["equal"] for r in reports)
    body = {"graph": G.name, "reports": reports, "all_equal": all_equal}
    return (EXIT_OK if all_equal else EXIT_VIOLATION), _json(body)


def cmd_verify(args, config: RunConfig, quiet: bool) -> Tuple[int, str]:
    graphs, names = _corpus(args, config)
    records = run_suite(graphs, config.caps, jobs=config.jobs, quiet=quiet, only=args.only)
    report = suite_report(records, names, len(graphs))
    if config.output_format == "csv":
        frame = pd.DataFrame([{k: v for k, v in r.to_dict().items() if k != "violations"} for r in records])
        text = frame.to_csv(index=False)
    else:
        text = _json(report)
    return (EXIT_VIOLATION if report["violated"] else EXIT_OK), text


def graph_stats(G: Graph, detection_cap: int) -> Dict[str, Any]:
    seps = expand_enumerate(G)
    clique = sum(1 for C in seps if is_clique(G, C))
    estimate = math.log(len(seps)) / math.log(G.n) if len(seps) > 0 and G.n > 1 else 0.0
    return {
        "graph": G.name,
        "n": G.n,
        "m": G.m,
        "member": is_class_member(G, detection_cap).status,
        "min_seps": len(seps),
        "proper": len(seps) - clique,
        "clique": clique,
        "max_exponent_estimate": round(estimate, 6),
    }


def cmd_stats(args, config: RunConfig, quiet: bool) -> Tuple[int, str]:
    graphs, _ = _corpus(args, config)
    rows = Parallel(n_jobs=config.jobs)(
        delayed(graph_stats)(G, config.caps.detection) for G in tqdm(graphs, desc="stats", disable=quiet)
    )
    frame = pd.DataFrame(rows, columns=STATS_COLUMNS)
    if config.output_format == "json":
        return EXIT_OK, _json(frame.to_dict(orient="records"))
    return EXIT_OK, frame.to_csv(index=False)


def run(argv: Optional[Sequence[str]] = None, stdout=None) -> int:
    """Parse ``argv``, run the subcommand and write its output; returns the exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        overrides = {
            "command": args.command,
            "format": args.graph_format,
            "output_path": args.out,
            "output_format": args.output_format,
            "seed": args.seed,
            "jobs": args.jobs,
        }
        if args.command == "stats" and args.output_format is None:
            overrides["output_format"] = "csv"
        config = load_config(args.config, overrides)
    except (UsageError, argparse.ArgumentTypeError, ValueError, ValidationError) as e:
        sys.stderr.write(f"seplab: {e}\n")
        return EXIT_USAGE

    configure_logging(config, args.verbose)
    quiet = args.quiet or not sys.stderr.isatty()
    handlers = {
        "gen": lambda: cmd_gen(args, config),
        "detect": lambda: cmd_detect(args, config),
        "seps": lambda: cmd_seps(args, config),
        "frames": lambda: cmd_frames(args, config),
        "analyze-hole": lambda: cmd_analyze_hole(args, config),
        "reconstruct": lambda: cmd_reconstruct(args, config),
        "verify-lemmas": lambda: cmd_verify(args, config, quiet),
        "stats": lambda: cmd_stats(args, config, quiet),
    }
    try:
        code, text = handlers[args.command]()
    except (SeplabError, OSError) as e:
        logger.error(f"{args.command} failed: {e}")
        sys.stderr.write(f"seplab: {e}\n")
        return EXIT_USAGE
    _emit(text, config, stdout)
    return code


if __name__ == '__main__':
    sys.exit(run())
