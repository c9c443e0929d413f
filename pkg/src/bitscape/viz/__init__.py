"""Grammar-of-graphics scenes for landscape analysis artifacts."""

from .aesthetics import Binding, BindingTemplate, Channel, Geom, registry_for
from .scene import Layer, Panel, Scene, find_conflicts, juxtapose, superimpose
from .scenes import scene_hbm, scene_hexbin, scene_lon, scene_scatter, scene_stn
from .svg import render_svg

__all__ = [
    "Binding",
    "BindingTemplate",
    "Channel",
    "Geom",
    "registry_for",
    "Layer",
    "Panel",
    "Scene",
    "find_conflicts",
    "juxtapose",
    "superimpose",
    "scene_hbm",
    "scene_hexbin",
    "scene_lon",
    "scene_scatter",
    "scene_stn",
    "render_svg",
]
