"""Local optima networks: basin-transition and escape variants, monotonic
filtering, plateau compression, and graph export.

Edge weight conventions are recorded in graph metadata because published
network figures rarely say which one they used:

* basin_transition: weight(i -> j) counts ordered neighbor pairs (b, b')
  with b in basin i, b' in basin j, i != j.
* escape: weight(i -> j) counts solutions b with d_H(b_i, b) <= D whose
  best-improvement descent lands in j != i.
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .bitspace import Bitstring, neighbors
from .errors import DomainError
from .graphio import write_dot, write_graphml
from .optima import OptimaReport

BASIN_TRANSITION = "basin_transition"
ESCAPE = "escape"

EXPORT_FORMATS = ("graphml", "dot")


@dataclass(frozen=True)
class LonNode:
    bits: Bitstring
    fitness: float
    basin_size: int
    is_global: bool


@dataclass(frozen=True)
class LonEdge:
    source: Bitstring
    target: Bitstring
    weight: float
    kind: str


@dataclass(frozen=True)
class LonGraph:
    """Directed network over local optima.

    Nodes are sorted by ascending decimal value and edges by (source,
    target) decimal pair; there is at most one edge per ordered pair.
    ``source`` is the provenance token of the landscape the census came
    from, carried along so plots built from this graph can detect
    composition conflicts.
    """

    nodes: tuple[LonNode, ...]
    edges: tuple[LonEdge, ...]
    kind: str
    metadata: dict[str, str]
    source: str = field(default="", compare=False)

    def node_by_value(self, value: int) -> LonNode:
        for node in self.nodes:
            if node.bits.value == value:
                return node
        raise DomainError(f"no node with decimal value {value}")

    def out_edges(self, source: Bitstring) -> tuple[LonEdge, ...]:
        return tuple(e for e in self.edges if e.source == source)


def _nodes_from_report(report: OptimaReport) -> tuple[LonNode, ...]:
    return tuple(
        LonNode(bits=o.bits, fitness=o.fitness, basin_size=o.basin_size, is_global=o.is_global)
        for o in report.optima
    )


def build_basin_transition_lon(report: OptimaReport, landscape=None) -> LonGraph:
    """LON whose edges count basin-boundary neighbor pairs.

    ``landscape`` is accepted for symmetry with the escape builder but the
    census in ``report`` already carries everything needed.
    """
    n = report.n
    size = 1 << n
    m = len(report.optima)
    src = report.basin_table
    idx = np.arange(size, dtype=np.int64)
    counts = np.zeros(m * m, dtype=np.int64)
    for k in range(n):
        dst = report.basin_table[idx ^ (1 << k)]
        mask = src != dst
        if mask.any():
            counts += np.bincount(src[mask] * m + dst[mask], minlength=m * m)
    nodes = _nodes_from_report(report)
    edges = []
    for key in np.flatnonzero(counts):
        i, j = divmod(int(key), m)
        edges.append(
            LonEdge(
                source=nodes[i].bits,
                target=nodes[j].bits,
                weight=float(counts[key]),
                kind=BASIN_TRANSITION,
            )
        )
    metadata = {
        "landscape": report.landscape.name,
        "edge_kind": BASIN_TRANSITION,
        "weight_convention": "ordered boundary neighbor pairs",
    }
    return LonGraph(
        nodes=nodes,
        edges=tuple(edges),
        kind=BASIN_TRANSITION,
        metadata=metadata,
        source=report.landscape.source,
    )


def build_escape_lon(report: OptimaReport, D: int, landscape=None) -> LonGraph:
    """LON whose edges count escaping perturbations within D flips."""
    if D < 1:
        raise DomainError(f"escape radius must be >= 1, got {D}")
    n = report.n
    masks = []
    for d in range(1, min(D, n) + 1):
        for positions in combinations(range(n), d):
            masks.append(sum(1 << p for p in positions))
    nodes = _nodes_from_report(report)
    edges = []
    for i, node in enumerate(nodes):
        v = node.bits.value
        counts: dict[int, int] = {}
        for mask in masks:
            j = int(report.basin_table[v ^ mask])
            if j != i:
                counts[j] = counts.get(j, 0) + 1
        for j in sorted(counts):
            edges.append(
                LonEdge(
                    source=node.bits,
                    target=nodes[j].bits,
                    weight=float(counts[j]),
                    kind=ESCAPE,
                )
            )
    metadata = {
        "landscape": report.landscape.name,
        "edge_kind": ESCAPE,
        "escape_radius": str(D),
        "weight_convention": "perturbation source count",
    }
    return LonGraph(
        nodes=nodes,
        edges=tuple(edges),
        kind=ESCAPE,
        metadata=metadata,
        source=report.landscape.source,
    )


def to_mlon(g: LonGraph) -> LonGraph:
    """Keep only non-deteriorating edges: fitness(target) <= fitness(source)."""
    fitness = {node.bits: node.fitness for node in g.nodes}
    kept = tuple(e for e in g.edges if fitness[e.target] <= fitness[e.source])
    metadata = dict(g.metadata)
    metadata["monotonic"] = "true"
    return LonGraph(nodes=g.nodes, edges=kept, kind=g.kind, metadata=metadata, source=g.source)


def compress_plateaus(g: LonGraph, report: OptimaReport, landscape=None) -> LonGraph:
    """Merge optima connected through Hamming-1 chains of local optima.

    Adjacent local optima necessarily share a fitness value (each bounds
    the other from below), so such chains are exactly the flat plateaus.
    The merged node keeps the smallest member's bits, sums basin sizes,
    and absorbs parallel edges by weight; self-loops created by a merge
    are dropped.
    """
    values = [node.bits.value for node in g.nodes]
    index = {v: i for i, v in enumerate(values)}
    parent = list(range(len(values)))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            if ri < rj:
                parent[rj] = ri
            else:
                parent[ri] = rj

    for i, node in enumerate(g.nodes):
        for w in neighbors(node.bits):
            j = index.get(w.value)
            if j is not None:
                union(i, j)

    roots = sorted({find(i) for i in range(len(values))})
    rep_of = {i: find(i) for i in range(len(values))}
    merged_nodes = []
    node_of_root = {}
    for root in roots:
        members = [g.nodes[i] for i in range(len(values)) if rep_of[i] == root]
        rep = min(members, key=lambda node: node.bits.value)
        merged = LonNode(
            bits=rep.bits,
            fitness=rep.fitness,
            basin_size=sum(node.basin_size for node in members),
            is_global=rep.is_global,
        )
        node_of_root[root] = merged
        merged_nodes.append(merged)
    merged_nodes.sort(key=lambda node: node.bits.value)

    weights: dict[tuple[int, int], float] = {}
    for e in g.edges:
        ri = rep_of[index[e.source.value]]
        rj = rep_of[index[e.target.value]]
        if ri == rj:
            continue
        key = (node_of_root[ri].bits.value, node_of_root[rj].bits.value)
        weights[key] = weights.get(key, 0.0) + e.weight
    by_value = {node.bits.value: node for node in merged_nodes}
    edges = tuple(
        LonEdge(source=by_value[sv].bits, target=by_value[tv].bits, weight=w, kind=g.kind)
        for (sv, tv), w in sorted(weights.items())
    )
    metadata = dict(g.metadata)
    metadata["compressed"] = "true"
    return LonGraph(
        nodes=tuple(merged_nodes), edges=edges, kind=g.kind, metadata=metadata, source=g.source
    )


NODE_SCHEMA = [
    ("bits", "string"),
    ("fitness", "double"),
    ("basin_size", "long"),
    ("is_global", "boolean"),
]
EDGE_SCHEMA = [
    ("weight", "double"),
    ("kind", "string"),
]


def export_graph(g: LonGraph, path, format: str) -> None:
    """Write the graph as GraphML or DOT; node ids are n<decimal value>."""
    if format not in EXPORT_FORMATS:
        raise DomainError(f"format must be one of {EXPORT_FORMATS}, got {format!r}")
    nodes = [
        (
            f"n{node.bits.value}",
            {
                "bits": str(node.bits),
                "fitness": node.fitness,
                "basin_size": node.basin_size,
                "is_global": node.is_global,
            },
        )
        for node in g.nodes
    ]
    edges = [
        (
            f"n{e.source.value}",
            f"n{e.target.value}",
            {"weight": e.weight, "kind": e.kind},
        )
        for e in g.edges
    ]
    graph_attrs = dict(sorted(g.metadata.items()))
    if format == "graphml":
        write_graphml(
            path,
            nodes,
            edges,
            node_schema=NODE_SCHEMA,
            edge_schema=EDGE_SCHEMA,
            directed=True,
            graph_attrs=graph_attrs,
        )
    else:
        write_dot(path, nodes, edges, directed=True, graph_attrs=graph_attrs, name="lon")
