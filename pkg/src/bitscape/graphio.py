"""Deterministic GraphML and DOT writers.

Both serializers are intentionally hand-rolled: output must be byte-stable
across platforms and runs, so nothing here depends on dict ordering beyond
the caller's explicit attribute declarations, and no timestamps or library
version strings are ever emitted.

Nodes are (id, attrs) pairs and edges are (source id, target id, attrs)
triples; attribute schemas declare names and types up front so GraphML
keys come out typed and DOT output stays uniform even when a value is
missing (missing values are simply omitted).
"""

from xml.sax.saxutils import escape, quoteattr

GRAPHML_TYPES = ("string", "double", "long", "boolean")


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_graphml(
    path,
    nodes: list[tuple[str, dict]],
    edges: list[tuple[str, str, dict]],
    node_schema: list[tuple[str, str]],
    edge_schema: list[tuple[str, str]],
    directed: bool = True,
    graph_attrs: dict | None = None,
) -> None:
    """Write a GraphML document with typed attribute keys.

    ``node_schema`` and ``edge_schema`` list (name, type) pairs with type
    in {string, double, long, boolean}; graph-level attributes are always
    strings.
    """
    for name, typ in list(node_schema) + list(edge_schema):
        if typ not in GRAPHML_TYPES:
            raise ValueError(f"unsupported GraphML type {typ!r} for attribute {name!r}")
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
    ]
    key_ids: dict[tuple[str, str], str] = {}
    counter = 0
    for domain, schema in (("graph", [(k, "string") for k in (graph_attrs or {})]),
                           ("node", node_schema),
                           ("edge", edge_schema)):
        for name, typ in schema:
            kid = f"d{counter}"
            counter += 1
            key_ids[(domain, name)] = kid
            lines.append(
                f'  <key id="{kid}" for="{domain}" attr.name={quoteattr(name)} attr.type="{typ}"/>'
            )
    edgedefault = "directed" if directed else "undirected"
    lines.append(f'  <graph id="G" edgedefault="{edgedefault}">')
    for name, value in (graph_attrs or {}).items():
        kid = key_ids[("graph", name)]
        lines.append(f'    <data key="{kid}">{escape(_format_value(value))}</data>')
    node_names = [name for name, _ in node_schema]
    for node_id, attrs in nodes:
        lines.append(f"    <node id={quoteattr(node_id)}>")
        for name in node_names:
            if name in attrs:
                kid = key_ids[("node", name)]
                lines.append(
                    f'      <data key="{kid}">{escape(_format_value(attrs[name]))}</data>'
                )
        lines.append("    </node>")
    edge_names = [name for name, _ in edge_schema]
    for src, dst, attrs in edges:
        lines.append(f"    <edge source={quoteattr(src)} target={quoteattr(dst)}>")
        for name in edge_names:
            if name in attrs:
                kid = key_ids[("edge", name)]
                lines.append(
                    f'      <data key="{kid}">{escape(_format_value(attrs[name]))}</data>'
                )
        lines.append("    </edge>")
    lines.append("  </graph>")
    lines.append("</graphml>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def _dot_quote(value) -> str:
    text = _format_value(value)
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def write_dot(
    path,
    nodes: list[tuple[str, dict]],
    edges: list[tuple[str, str, dict]],
    directed: bool = True,
    graph_attrs: dict | None = None,
    name: str = "G",
) -> None:
    """Write a DOT document; every attribute value is double-quoted."""
    kind = "digraph" if directed else "graph"
    arrow = "->" if directed else "--"
    lines = [f"{kind} {_dot_quote(name)} {{"]
    for key, value in (graph_attrs or {}).items():
        lines.append(f"  graph [{key}={_dot_quote(value)}];")
    for node_id, attrs in nodes:
        attr_text = ", ".join(f"{k}={_dot_quote(v)}" for k, v in attrs.items())
        suffix = f" [{attr_text}]" if attr_text else ""
        lines.append(f"  {_dot_quote(node_id)}{suffix};")
    for src, dst, attrs in edges:
        attr_text = ", ".join(f"{k}={_dot_quote(v)}" for k, v in attrs.items())
        suffix = f" [{attr_text}]" if attr_text else ""
        lines.append(f"  {_dot_quote(src)} {arrow} {_dot_quote(dst)}{suffix};")
    lines.append("}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
