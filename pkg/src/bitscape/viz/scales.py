"""Linear, size, and color scales with deterministic tick placement."""

import json
import math
from dataclasses import dataclass
from pathlib import Path

from ..errors import DomainError

PALETTES = json.loads(Path(__file__).with_name("palettes.json").read_text(encoding="utf-8"))

MAX_CATEGORIES = 8


def nice_ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Round tick positions covering [lo, hi], at most ~target of them."""
    if hi < lo:
        lo, hi = hi, lo
    if hi == lo:
        return [lo]
    raw = (hi - lo) / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if step >= raw:
            break
    base = math.ceil(lo / step - 1e-9)
    ticks = []
    i = 0
    while True:
        t = round((base + i) * step, 10)
        if t > hi + step * 1e-9:
            break
        ticks.append(0.0 if t == 0 else t)
        i += 1
    return ticks


@dataclass(frozen=True)
class LinearScale:
    """Affine map from a data interval onto a pixel interval."""

    domain_lo: float
    domain_hi: float
    range_lo: float
    range_hi: float

    def __call__(self, v: float) -> float:
        span = self.domain_hi - self.domain_lo
        if span == 0:
            return (self.range_lo + self.range_hi) / 2.0
        t = (v - self.domain_lo) / span
        return self.range_lo + t * (self.range_hi - self.range_lo)


@dataclass(frozen=True)
class SizeScale:
    """Maps values to radii so that radius (hence area) is monotone in
    the value."""

    domain_lo: float
    domain_hi: float
    r_min: float = 4.0
    r_max: float = 13.0

    def __call__(self, v: float) -> float:
        span = self.domain_hi - self.domain_lo
        if span == 0:
            return (self.r_min + self.r_max) / 2.0
        t = (v - self.domain_lo) / span
        t = min(max(t, 0.0), 1.0)
        return self.r_min + (self.r_max - self.r_min) * math.sqrt(t)


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    color = color.lstrip("#")
    return tuple(int(color[i : i + 2], 16) for i in (0, 2, 4))


def _rgb_to_hex(rgb: tuple[int, int, int]) -> str:
    return "#%02x%02x%02x" % rgb


def luminance(color: str) -> float:
    """Relative luminance of an sRGB hex color, in [0, 1]."""

    def channel(c: int) -> float:
        c = c / 255.0
        return c / 12.92 if c <= 0.04045 else ((c + 0.055) / 1.055) ** 2.4

    r, g, b = (_hex_to_rgb(color))
    return 0.2126 * channel(r) + 0.7152 * channel(g) + 0.0722 * channel(b)


def interpolate_stops(stops: list[str], t: float) -> str:
    """Piecewise-linear interpolation through a list of hex stops."""
    t = min(max(t, 0.0), 1.0)
    if len(stops) == 1:
        return stops[0]
    pos = t * (len(stops) - 1)
    i = min(int(pos), len(stops) - 2)
    frac = pos - i
    a = _hex_to_rgb(stops[i])
    b = _hex_to_rgb(stops[i + 1])
    mixed = tuple(round(a[j] + (b[j] - a[j]) * frac) for j in range(3))
    return _rgb_to_hex(mixed)


@dataclass(frozen=True)
class SequentialColorScale:
    """Continuous color scale over committed palette stops.

    Stops run dark to light, so by default the domain minimum is darkest;
    ``dark_high=True`` flips that (used for bin counts, where dense bins
    should read dark).
    """

    domain_lo: float
    domain_hi: float
    stops: tuple[str, ...] = tuple(PALETTES["sequential"])
    dark_high: bool = False

    def color(self, v: float) -> str:
        span = self.domain_hi - self.domain_lo
        t = 0.5 if span == 0 else (v - self.domain_lo) / span
        if self.dark_high:
            t = 1.0 - t
        return interpolate_stops(list(self.stops), t)


@dataclass(frozen=True)
class CategoricalColorScale:
    """Fixed palette over an ordered category tuple (at most 8)."""

    categories: tuple[str, ...]
    palette: tuple[str, ...] = tuple(PALETTES["categorical"])

    def __post_init__(self):
        if len(self.categories) > min(MAX_CATEGORIES, len(self.palette)):
            raise DomainError(
                f"categorical scale supports at most {MAX_CATEGORIES} categories, "
                f"got {len(self.categories)}"
            )
        if len(set(self.categories)) != len(self.categories):
            raise DomainError("categories must be distinct")

    def color(self, category: str) -> str:
        try:
            return self.palette[self.categories.index(category)]
        except ValueError:
            raise DomainError(f"unknown category {category!r}") from None


def feasibility_color(label: str) -> str:
    try:
        return PALETTES["feasibility"][label]
    except KeyError:
        raise DomainError(f"feasibility label must be feasible/infeasible, got {label!r}") from None
