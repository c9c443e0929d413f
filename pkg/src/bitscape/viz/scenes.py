"""Ready-made scenes for the four plot families.

Each builder returns a single-panel :class:`~bitscape.viz.scene.Scene`
whose channel bindings follow the registry, so scenes compose without any
extra wiring. Mark coordinates are data-space; graph scenes start from a
seeded force layout in the unit square and stay re-anchorable because
every mark remembers its bitstring.
"""

from ..bitspace import DEFAULT_SPACE_CAP, enumerate_space, hinge, hinge_shape
from ..errors import DomainError, EmptySceneError
from ..lon import LonGraph
from ..optima import HEX_AXES, DistanceFitnessRecord, HexBinGrid, OptimaReport
from ..problems import FitnessLandscape
from ..stn import ROLE_BEST, ROLE_END, ROLE_SHARED, ROLE_START, StnGraph
from .aesthetics import Binding, Channel, Geom
from .layout import fruchterman_reingold
from .scales import PALETTES
from .scene import Layer, Panel, Scene

POINT_FRAC = 0.32
RING_FACTOR = 1.4

HBM_COLOR_FEATURES = ("fitness", "feasibility")


def _space_bindings(n: int) -> dict[Channel, Binding]:
    h, _ = hinge_shape(n)
    return {
        Channel.POSITION_X: Binding("solution", f"B^{n}", f"Dec(bits 0..{h - 1})"),
        Channel.POSITION_Y: Binding("solution", f"B^{n}", f"Dec(bits {h}..{n - 1})"),
    }


def scene_hbm(
    landscape: FitnessLandscape,
    report: OptimaReport | None = None,
    color_feature: str = "fitness",
    cap: int = DEFAULT_SPACE_CAP,
) -> Scene:
    """Hinged map of the whole space: one circle per solution at hinge(b).

    Color carries fitness (sequential scale) or feasibility (two colors).
    With a report, local optima get a blue ring and global optima a red
    one, drawn at 1.4x the point radius.
    """
    if color_feature not in HBM_COLOR_FEATURES:
        raise DomainError(
            f"color feature must be one of {HBM_COLOR_FEATURES}, got {color_feature!r}"
        )
    n = landscape.n
    marks = []
    for b in enumerate_space(n, cap=cap):
        x, y = hinge(b)
        if color_feature == "fitness":
            cv = landscape.f(b)
        else:
            cv = "feasible" if landscape.violation_of(b) == 0.0 else "infeasible"
        marks.append({"x": float(x), "y": float(y), "color_value": cv, "bits": str(b)})
    bindings = _space_bindings(n)
    bindings[Channel.COLOR] = Binding(color_feature, landscape.source, color_feature)
    layers = [
        Layer(
            name="hbm-points",
            geom=Geom.CIRCLE,
            marks=tuple(marks),
            bindings=bindings,
            style={"radius_frac": POINT_FRAC},
        )
    ]
    if report is not None:
        ring_marks = []
        for o in report.optima:
            x, y = hinge(o.bits)
            ring_marks.append(
                {
                    "x": float(x),
                    "y": float(y),
                    "outline_value": "global" if o.is_global else "local",
                    "bits": str(o.bits),
                }
            )
        ring_bindings = _space_bindings(n)
        ring_bindings[Channel.OUTLINE] = Binding("optimum_kind", landscape.source, "optimum")
        layers.append(
            Layer(
                name="hbm-rings",
                geom=Geom.RING,
                marks=tuple(ring_marks),
                bindings=ring_bindings,
                style={"radius_frac": POINT_FRAC * RING_FACTOR},
            )
        )
    h, _ = hinge_shape(n)
    panel = Panel(
        layers=tuple(layers),
        title=landscape.name,
        x_label=f"Dec(bits 0..{h - 1})",
        y_label=f"Dec(bits {h}..{n - 1})",
        show_axes=True,
    )
    return Scene(panels=(panel,))


def scene_lon(g: LonGraph, layout_seed: int) -> Scene:
    """Force-laid-out optima network; color and size carry basin size."""
    index = {node.bits.value: i for i, node in enumerate(g.nodes)}
    coords = fruchterman_reingold(
        len(g.nodes),
        [(index[e.source.value], index[e.target.value]) for e in g.edges],
        seed=layout_seed,
    )
    edge_marks = []
    for e in g.edges:
        x1, y1 = coords[index[e.source.value]]
        x2, y2 = coords[index[e.target.value]]
        edge_marks.append(
            {
                "x1": x1,
                "y1": y1,
                "x2": x2,
                "y2": y2,
                "width_value": e.weight,
                "src_bits": str(e.source),
                "dst_bits": str(e.target),
            }
        )
    node_marks = []
    for i, node in enumerate(g.nodes):
        x, y = coords[i]
        node_marks.append(
            {
                "x": x,
                "y": y,
                "color_value": float(node.basin_size),
                "size_value": float(node.basin_size),
                "bits": str(node.bits),
            }
        )
    layers = (
        Layer(
            name="lon-edges",
            geom=Geom.LINE,
            marks=tuple(edge_marks),
            position_free=True,
            legend=False,
        ),
        Layer(
            name="lon-nodes",
            geom=Geom.CIRCLE,
            marks=tuple(node_marks),
            bindings={
                Channel.COLOR: Binding("basin_size", g.source, "basin size"),
                Channel.SIZE: Binding("basin_size", g.source, "basin size"),
            },
            position_free=True,
        ),
    )
    title = f"{g.metadata.get('landscape', 'landscape')} ({g.kind} LON)"
    return Scene(panels=(Panel(layers=layers, title=title),))


def scene_stn(g: StnGraph, layout_seed: int) -> Scene:
    """Trajectory network: color by algorithm, size by visit frequency,
    role markers for start/end/best, gray fill for shared nodes."""
    index = {node.key: i for i, node in enumerate(g.nodes)}
    coords = fruchterman_reingold(
        len(g.nodes),
        [(index[e.source], index[e.target]) for e in g.edges],
        seed=layout_seed,
    )

    def node_mark(node, i):
        x, y = coords[i]
        mark = {
            "x": x,
            "y": y,
            "size_value": float(node.visit_count),
            "bits": str(node.bits) if node.bits is not None else "",
        }
        if ROLE_SHARED in node.roles:
            mark["color_value"] = None
            mark["fill"] = PALETTES["neutral"]["shared_fill"]
        else:
            mark["color_value"] = node.algorithms[0]
        return mark

    edge_marks = []
    for e in g.edges:
        x1, y1 = coords[index[e.source]]
        x2, y2 = coords[index[e.target]]
        src = g.nodes[index[e.source]]
        dst = g.nodes[index[e.target]]
        edge_marks.append(
            {
                "x1": x1,
                "y1": y1,
                "x2": x2,
                "y2": y2,
                "width_value": float(e.weight),
                "src_bits": str(src.bits) if src.bits is not None else "",
                "dst_bits": str(dst.bits) if dst.bits is not None else "",
            }
        )
    node_marks = tuple(node_mark(node, i) for i, node in enumerate(g.nodes))

    def role_marks(role):
        out = []
        for i, node in enumerate(g.nodes):
            if role in node.roles:
                x, y = coords[i]
                out.append(
                    {"x": x, "y": y, "bits": str(node.bits) if node.bits is not None else ""}
                )
        return tuple(out)

    layers = (
        Layer(
            name="stn-edges",
            geom=Geom.ARROW,
            marks=tuple(edge_marks),
            position_free=True,
            legend=False,
        ),
        Layer(
            name="stn-nodes",
            geom=Geom.CIRCLE,
            marks=node_marks,
            bindings={
                Channel.COLOR: Binding("algorithm", g.source, "algorithm"),
                Channel.SIZE: Binding("frequency", g.source, "visits"),
            },
            position_free=True,
        ),
        Layer(
            name="stn-start",
            geom=Geom.SQUARE,
            marks=role_marks(ROLE_START),
            position_free=True,
            legend=False,
            style={"radius": 15.0},
        ),
        Layer(
            name="stn-end",
            geom=Geom.TRIANGLE,
            marks=role_marks(ROLE_END),
            position_free=True,
            legend=False,
            style={"radius": 15.0},
        ),
        Layer(
            name="stn-best",
            geom=Geom.RING,
            marks=role_marks(ROLE_BEST),
            position_free=True,
            legend=False,
            style={"radius": 18.0},
        ),
    )
    return Scene(panels=(Panel(layers=layers, title="search trajectory network"),))


def scene_scatter(records: list[DistanceFitnessRecord], axis: str) -> Scene:
    """One circle per optimum: x = chosen distance statistic, y = fitness."""
    if axis not in HEX_AXES:
        raise DomainError(f"axis must be one of {HEX_AXES}, got {axis!r}")
    if not records:
        raise EmptySceneError("no records to plot")
    marks = tuple(
        {
            "x": float(getattr(rec, axis)),
            "y": rec.fitness,
            "fill": PALETTES["neutral"]["point"],
            "bits": str(rec.optimum),
        }
        for rec in records
    )
    layer = Layer(
        name="scatter-points",
        geom=Geom.CIRCLE,
        marks=marks,
        bindings={
            Channel.POSITION_X: Binding("distance", axis, axis),
            Channel.POSITION_Y: Binding("fitness", "records", "fitness"),
        },
        style={"radius": 4.0},
    )
    panel = Panel(layers=(layer,), title="", x_label=axis, y_label="fitness", show_axes=True)
    return Scene(panels=(panel,))


def scene_hexbin(grid: HexBinGrid) -> Scene:
    """One hexagon per bin; fill darkness grows with the bin count."""
    if not grid.bins:
        raise EmptySceneError("no bins to plot")
    marks = []
    for (q, r) in sorted(grid.bins, key=lambda key: (key[1], key[0])):
        cx, cy = grid.center(q, r)
        marks.append({"x": cx, "y": cy, "color_value": float(grid.bins[(q, r)])})
    layer = Layer(
        name="hexbin-bins",
        geom=Geom.HEXAGON,
        marks=tuple(marks),
        bindings={
            Channel.POSITION_X: Binding("distance", grid.axis, grid.axis),
            Channel.POSITION_Y: Binding("fitness", "records", "fitness"),
            Channel.COLOR: Binding("count", f"hexbin:{grid.axis}", "optima per bin"),
        },
        style={"radius_data": grid.radius},
    )
    panel = Panel(layers=(layer,), title="", x_label=grid.axis, y_label="fitness", show_axes=True)
    return Scene(panels=(panel,))
