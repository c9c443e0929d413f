"""Aesthetic channels, feature bindings, and the plot-type registry.

A binding records which landscape feature drives a visual channel and
which concrete data object the feature was computed from (the ``source``
token). Composition treats two bindings as the same feature only when
both the feature kind and the source agree; the kind alone decides which
scale family (categorical or sequential) a channel would need.
"""

from dataclasses import dataclass
from enum import Enum


class Channel(Enum):
    POSITION_X = "position_x"
    POSITION_Y = "position_y"
    COLOR = "color"
    SIZE = "size"
    SHAPE = "shape"
    OUTLINE = "outline"
    LABEL = "label"


class Geom(Enum):
    CIRCLE = "circle"
    LINE = "line"
    ARROW = "arrow"
    HEXAGON = "hexagon"
    RING = "ring"
    TRIANGLE = "triangle"
    SQUARE = "square"


# Feature kinds that need a categorical scale; everything else bindable to
# color or size is treated as continuous. Constants never enter scales.
CATEGORICAL_KINDS = frozenset({"algorithm", "feasibility", "optimum_kind", "role"})

# Continuous kinds whose color scale runs dark-for-high instead of
# dark-for-low (bin counts read better when dense means dark).
DARK_HIGH_KINDS = frozenset({"count"})

CONSTANT = "constant"


def scale_class(kind: str) -> str:
    return "categorical" if kind in CATEGORICAL_KINDS else "continuous"


@dataclass(frozen=True)
class Binding:
    """Feature kind + provenance token + human label for one channel."""

    feature: str
    source: str = ""
    label: str = ""

    def describe(self) -> str:
        return f"{self.feature}[{self.source}]" if self.source else self.feature


@dataclass(frozen=True)
class BindingTemplate:
    """One registry row: geoms plus channel-to-feature assignments.

    ``None`` marks a free (unused) channel, available to carry information
    from another plot when superimposing. ``visibility`` is descriptive
    only: it names which subset of the space the plot shows.
    """

    plot_type: str
    primary_geoms: tuple[Geom, ...]
    secondary_geoms: tuple[Geom, ...]
    color: str | None
    size: str | None
    position: str | None
    visibility: str


_REGISTRY = {
    "lon": BindingTemplate(
        plot_type="lon",
        primary_geoms=(Geom.CIRCLE,),
        secondary_geoms=(Geom.LINE,),
        color="basin_size",
        size="basin_size",
        position=None,
        visibility="local_optima",
    ),
    "hbm": BindingTemplate(
        plot_type="hbm",
        primary_geoms=(Geom.CIRCLE,),
        secondary_geoms=(Geom.RING,),
        color="fitness",
        size=None,
        position="solution",
        visibility="full_space",
    ),
    "stn": BindingTemplate(
        plot_type="stn",
        primary_geoms=(Geom.CIRCLE, Geom.TRIANGLE, Geom.SQUARE),
        secondary_geoms=(Geom.ARROW,),
        color="algorithm",
        size="frequency",
        position=None,
        visibility="explored_space",
    ),
}


def registry_for(plot_type: str) -> BindingTemplate:
    """Channel registry row for one of the three plot families."""
    try:
        return _REGISTRY[plot_type]
    except KeyError:
        raise KeyError(
            f"unknown plot type {plot_type!r}; choose from {tuple(sorted(_REGISTRY))}"
        ) from None
