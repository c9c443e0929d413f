"""Layered scene model and the two composition operators.

A scene is a list of panels; a panel is a list of layers; a layer is one
geom plus its marks (dicts of raw data values) and its channel bindings.
Everything stays in data coordinates until rendering, so composition can
reason about bindings without touching pixels.

Composition rules
-----------------
Juxtaposition concatenates panels; the renderer unifies scales wherever
two panels bind a channel to the same feature kind.

Superimposition merges two single-panel scenes into one panel. A channel
is in conflict when the two sides both bind it and either (a) they bind
the same feature kind computed from different data sources, or (b) the
two kinds need different scale families (categorical vs continuous), or
(c) for position channels, the (kind, source) pairs differ at all.
Distinct continuous kinds coexist on one channel with separate scales;
constant bindings never conflict. Layers with free positions re-anchor to
the merged panel's solution coordinate system when one exists.
"""

from dataclasses import dataclass, field, replace

from ..bitspace import Bitstring, hinge
from ..errors import CompositionConflictError, DomainError
from .aesthetics import CONSTANT, Binding, Channel, Geom, scale_class

ARRANGEMENTS = ("single", "horizontal", "vertical")

POSITION_CHANNELS = (Channel.POSITION_X, Channel.POSITION_Y)


@dataclass(frozen=True)
class Layer:
    """One geom with raw-valued marks and channel bindings.

    Marks are dicts; the renderer understands these keys: x, y (circle,
    ring, triangle, square, hexagon), x1/y1/x2/y2 (line, arrow),
    color_value, size_value, outline_value, width_value, fill, label,
    bits, src_bits, dst_bits.
    """

    name: str
    geom: Geom
    marks: tuple[dict, ...]
    bindings: dict[Channel, Binding] = field(default_factory=dict)
    position_free: bool = False
    legend: bool = True
    style: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Panel:
    layers: tuple[Layer, ...]
    title: str = ""
    x_label: str = ""
    y_label: str = ""
    show_axes: bool = False


@dataclass(frozen=True)
class Scene:
    panels: tuple[Panel, ...]
    arrangement: str = "single"

    def __post_init__(self):
        if self.arrangement not in ARRANGEMENTS:
            raise DomainError(f"arrangement must be one of {ARRANGEMENTS}")
        if not self.panels:
            raise DomainError("a scene needs at least one panel")


def juxtapose(a: Scene, b: Scene, orientation: str = "horizontal") -> Scene:
    """Place two scenes next to one another; scale unification happens at
    render time based on shared feature kinds."""
    if orientation not in ("horizontal", "vertical"):
        raise DomainError(f"orientation must be horizontal or vertical, got {orientation!r}")
    return Scene(panels=a.panels + b.panels, arrangement=orientation)


def _bindings_on(layers: tuple[Layer, ...], channel: Channel) -> list[Binding]:
    out = []
    for layer in layers:
        binding = layer.bindings.get(channel)
        if binding is not None and binding.feature != CONSTANT:
            out.append(binding)
    return out


def _pair_conflicts(channel: Channel, a: Binding, b: Binding) -> bool:
    if channel in POSITION_CHANNELS:
        return (a.feature, a.source) != (b.feature, b.source)
    if a.feature == b.feature:
        return a.source != b.source
    return scale_class(a.feature) != scale_class(b.feature)


def find_conflicts(
    left: tuple[Layer, ...], right: tuple[Layer, ...]
) -> dict[str, tuple[list[str], list[str]]]:
    """Channel conflicts between two layer stacks; symmetric by
    construction (every cross pair is examined)."""
    conflicts: dict[str, tuple[list[str], list[str]]] = {}
    for channel in Channel:
        lbs = _bindings_on(left, channel)
        rbs = _bindings_on(right, channel)
        if not lbs or not rbs:
            continue
        if any(_pair_conflicts(channel, a, b) for a in lbs for b in rbs):
            conflicts[channel.value] = (
                sorted({b.describe() for b in lbs}),
                sorted({b.describe() for b in rbs}),
            )
    return conflicts


def _solution_system(layers: tuple[Layer, ...]) -> str | None:
    """Source token of the solution coordinate system bound by these
    layers, if any."""
    for layer in layers:
        bx = layer.bindings.get(Channel.POSITION_X)
        if bx is not None and bx.feature == "solution":
            return bx.source
    return None


def _reanchor(layer: Layer) -> Layer:
    """Recompute a free-position layer's coordinates at hinge(bits)."""
    marks = []
    for mark in layer.marks:
        mark = dict(mark)
        if "bits" in mark and mark["bits"]:
            x, y = hinge(Bitstring(mark["bits"]))
            mark["x"], mark["y"] = float(x), float(y)
        if "src_bits" in mark and mark["src_bits"]:
            x, y = hinge(Bitstring(mark["src_bits"]))
            mark["x1"], mark["y1"] = float(x), float(y)
        if "dst_bits" in mark and mark["dst_bits"]:
            x, y = hinge(Bitstring(mark["dst_bits"]))
            mark["x2"], mark["y2"] = float(x), float(y)
        marks.append(mark)
    return replace(layer, marks=tuple(marks), position_free=False)


def superimpose(base: Scene, overlay: Scene) -> Scene:
    """Merge two single-panel scenes into one panel, or raise on channel
    conflicts.

    The side that binds position supplies the coordinate system and its
    layers are drawn first; free-position layers from the other side are
    re-anchored to hinge(bits) when the system is the solution map, then
    drawn on top.
    """
    if len(base.panels) != 1 or len(overlay.panels) != 1:
        raise DomainError("superimpose needs two single-panel scenes")
    pa, pb = base.panels[0], overlay.panels[0]
    conflicts = find_conflicts(pa.layers, pb.layers)
    if conflicts:
        raise CompositionConflictError(conflicts)

    system = _solution_system(pa.layers + pb.layers)
    anchored: list[Layer] = []
    floating: list[Layer] = []
    for layer in pa.layers + pb.layers:
        if layer.position_free and system is not None:
            floating.append(_reanchor(layer))
        elif layer.position_free:
            floating.append(layer)
        else:
            anchored.append(layer)

    if _solution_system(pa.layers) is not None:
        host = pa
    elif _solution_system(pb.layers) is not None:
        host = pb
    elif pb.show_axes and not pa.show_axes:
        host = pb
    else:
        host = pa
    merged = Panel(
        layers=tuple(anchored + floating),
        title=host.title,
        x_label=host.x_label,
        y_label=host.y_label,
        show_axes=host.show_axes,
    )
    return Scene(panels=(merged,), arrangement="single")
