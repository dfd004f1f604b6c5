"""
Graph file formats: whitespace edge lists ("n m" header, one "u v" per line,
'#' comments) and graph6 (one graph per line).
"""
import logging
import os
from typing import List

import networkx as nx

from graph_core.graph import Graph
from utils.exceptions import ParseError

logger = logging.getLogger(__name__)

FORMATS = ("edge-list", "graph6")


def parse_graph(text: str, fmt: str = "edge-list", name: str = "") -> Graph:
    """
    Parse one graph.

    Args:
        text: file contents
        fmt: "edge-list" or "graph6"; for graph6 the first graph is returned
        name: label for the resulting graph

    Returns:
        the parsed Graph
    """
    if fmt == "edge-list":
        return _parse_edge_list(text, name)
    if fmt == "graph6":
        graphs = parse_graph6_lines(text, name)
        if not graphs:
            raise ParseError("no graph6 record found")
        return graphs[0]
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _parse_edge_list(text: str, name: str) -> Graph:
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno)
        if header is None:
            if a < 0 or b < 0:
                raise ParseError(f"malformed header {line!r}", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex id out of range 0..{n - 1} in {line!r}", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ParseError(f"parallel edge {key}", lineno)
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError("missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph(header[0], edges, name=name)


def parse_graph6_lines(text: str, name: str = "") -> List[Graph]:
    """All graph6 records in ``text``, one per non-empty line."""
    graphs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(">>graph6<<"):
            line = line[len(">>graph6<<"):]
        if not line:
            continue
        try:
            g = nx.from_graph6_bytes(line.encode("ascii"))
        except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
            raise ParseError(f"bad graph6 record: {e}", lineno)
        label = name if len(graphs) == 0 else f"{name}#{len(graphs)}"
        graphs.append(Graph.from_networkx(g, name=label))
    return graphs


def write_graph(G: Graph, fmt: str = "edge-list") -> str:
    """Canonical text form; graphs with non-dense ids are relabelled first."""
    dense, _ = G.relabelled()
    if fmt == "edge-list":
        lines = [f"{dense.n} {dense.m}"]
        lines.extend(f"{u} {v}" for u, v in dense.edges())
        return "\n".join(lines) + "\n"
    if fmt == "graph6":
        return nx.to_graph6_bytes(dense.to_networkx(), nodes=list(dense.vertices),
                                  header=False).decode("ascii")
    raise ParseError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def infer_format(path: str) -> str:
    return "graph6" if path.endswith((".g6", ".graph6")) else "edge-list"


def load_graph(path: str, fmt: str = None) -> Graph:
    """Read a graph file; the graph is named after the file stem."""
    fmt = fmt or infer_format(path)
    name = os.path.splitext(os.path.basename(path))[0]
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        logger.error(f"Error reading {path}: {e}")
        raise
    graph = parse_graph(text, fmt, name=name)
    logger.info(f"Loaded {graph!r} from {path}")
    return graph
