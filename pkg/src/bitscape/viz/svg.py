"""Deterministic SVG 1.1 rendering of scenes.

Every coordinate is emitted with two decimals and every iteration order is
fixed by the scene structure, so rendering the same scene twice produces
byte-identical files. Legends cover color and outline channels and are
drawn with rect swatches only, keeping circle elements in one-to-one
correspondence with circle and ring marks.
"""

import math
from xml.sax.saxutils import escape

from ..errors import DomainError
from .aesthetics import CATEGORICAL_KINDS, CONSTANT, DARK_HIGH_KINDS, Channel, Geom
from .scales import (
    PALETTES,
    CategoricalColorScale,
    LinearScale,
    SequentialColorScale,
    SizeScale,
    feasibility_color,
    nice_ticks,
)
from .scene import Scene

FONT = "font-family=\"sans-serif\""
AXIS_COLOR = PALETTES["neutral"]["axis"]
EDGE_COLOR = PALETTES["neutral"]["edge"]
POINT_COLOR = PALETTES["neutral"]["point"]

LEGEND_WIDTH = 160.0
MARGIN = 8.0

_HEX_ANGLES = tuple(math.radians(a) for a in (90, 150, 210, 270, 330, 30))


def _fmt(v) -> str:
    return f"{float(v):.2f}"


def _num(v) -> str:
    return f"{float(v):g}"


class _ColorGroup:
    def __init__(self, kind: str, label: str):
        self.kind = kind
        self.label = label or kind
        self.values: list = []
        self.legend = False
        self.scale = None

    def finish(self) -> None:
        if self.kind == "feasibility":
            self.scale = None
        elif self.kind in CATEGORICAL_KINDS:
            cats = tuple(sorted({str(v) for v in self.values}))
            self.scale = CategoricalColorScale(categories=cats)
        else:
            values = [float(v) for v in self.values]
            lo = min(values) if values else 0.0
            hi = max(values) if values else 1.0
            self.scale = SequentialColorScale(
                domain_lo=lo, domain_hi=hi, dark_high=self.kind in DARK_HIGH_KINDS
            )

    def color(self, value) -> str:
        if self.kind == "feasibility":
            return feasibility_color(str(value))
        if self.kind in CATEGORICAL_KINDS:
            return self.scale.color(str(value))
        return self.scale.color(float(value))


def _collect_groups(scene: Scene):
    colors: dict[str, _ColorGroup] = {}
    sizes: dict[str, list] = {}
    outline_used = False
    for panel in scene.panels:
        for layer in panel.layers:
            cb = layer.bindings.get(Channel.COLOR)
            if cb is not None and cb.feature != CONSTANT:
                group = colors.setdefault(cb.feature, _ColorGroup(cb.feature, cb.label))
                group.values.extend(
                    m["color_value"] for m in layer.marks if m.get("color_value") is not None
                )
                group.legend = group.legend or layer.legend
            sb = layer.bindings.get(Channel.SIZE)
            if sb is not None and sb.feature != CONSTANT:
                sizes.setdefault(sb.feature, []).extend(
                    m["size_value"] for m in layer.marks if m.get("size_value") is not None
                )
            ob = layer.bindings.get(Channel.OUTLINE)
            if ob is not None and ob.feature == "optimum_kind":
                outline_used = True
    for group in colors.values():
        group.finish()
    size_scales = {}
    for kind, values in sizes.items():
        values = [float(v) for v in values]
        lo = min(values) if values else 0.0
        hi = max(values) if values else 1.0
        size_scales[kind] = SizeScale(domain_lo=lo, domain_hi=hi)
    return colors, size_scales, outline_used


def _position_key(panel, channel):
    for layer in panel.layers:
        b = layer.bindings.get(channel)
        if b is not None and b.feature != CONSTANT:
            return (b.feature, b.source)
    return None


def _panel_extent(panel):
    xs: list[float] = []
    ys: list[float] = []
    for layer in panel.layers:
        pad = float(layer.style.get("radius_data", 0.0))
        for m in layer.marks:
            if "x" in m:
                xs.extend((m["x"] - pad, m["x"] + pad))
                ys.extend((m["y"] - pad, m["y"] + pad))
            if "x1" in m:
                xs.extend((m["x1"], m["x2"]))
                ys.extend((m["y1"], m["y2"]))
    if not xs:
        return (0.0, 1.0, 0.0, 1.0)
    return (min(xs), max(xs), min(ys), max(ys))


def _padded(lo: float, hi: float) -> tuple[float, float]:
    span = hi - lo
    pad = 0.05 * span if span > 0 else 1.0
    return lo - pad, hi + pad


def _axis_domains(scene: Scene):
    """Per-panel (x_lo, x_hi, y_lo, y_hi), unified across panels that bind
    position to the same (feature, source)."""
    extents = [_panel_extent(p) for p in scene.panels]
    xkeys = [_position_key(p, Channel.POSITION_X) for p in scene.panels]
    ykeys = [_position_key(p, Channel.POSITION_Y) for p in scene.panels]
    domains = []
    for i, panel in enumerate(scene.panels):
        ex = list(extents[i])
        if xkeys[i] is not None:
            for j in range(len(scene.panels)):
                if j != i and xkeys[j] == xkeys[i]:
                    ex[0] = min(ex[0], extents[j][0])
                    ex[1] = max(ex[1], extents[j][1])
        if ykeys[i] is not None:
            for j in range(len(scene.panels)):
                if j != i and ykeys[j] == ykeys[i]:
                    ex[2] = min(ex[2], extents[j][2])
                    ex[3] = max(ex[3], extents[j][3])
        xlo, xhi = _padded(ex[0], ex[1])
        ylo, yhi = _padded(ex[2], ex[3])
        domains.append((xlo, xhi, ylo, yhi))
    return domains


def _mark_fill(layer, mark, colors):
    binding = layer.bindings.get(Channel.COLOR)
    value = mark.get("color_value")
    if binding is not None and binding.feature != CONSTANT and value is not None:
        return colors[binding.feature].color(value)
    return mark.get("fill") or layer.style.get("fill") or POINT_COLOR


def _mark_radius(layer, mark, sizes, pitch_px: float) -> float:
    binding = layer.bindings.get(Channel.SIZE)
    value = mark.get("size_value")
    if binding is not None and binding.feature != CONSTANT and value is not None:
        return sizes[binding.feature](float(value))
    if "radius_frac" in layer.style:
        return layer.style["radius_frac"] * pitch_px
    return float(layer.style.get("radius", 5.0))


def _bits_attr(mark) -> str:
    bits = mark.get("bits")
    return f' data-bits="{escape(str(bits))}"' if bits else ""


def _line_width(layer, mark) -> float:
    wmax = max((float(m.get("width_value", 0.0) or 0.0) for m in layer.marks), default=0.0)
    if wmax <= 0:
        return 1.2
    w = float(mark.get("width_value", 0.0) or 0.0)
    return 0.8 + 2.4 * (w / wmax)


def _arrow_path(x1, y1, x2, y2) -> str:
    head = 7.0
    half = 3.0
    dx, dy = x2 - x1, y2 - y1
    length = math.hypot(dx, dy)
    d = f"M {_fmt(x1)} {_fmt(y1)} L {_fmt(x2)} {_fmt(y2)}"
    if length > 1e-9:
        ux, uy = dx / length, dy / length
        bx, by = x2 - head * ux, y2 - head * uy
        px, py = -uy, ux
        d += (
            f" M {_fmt(x2)} {_fmt(y2)}"
            f" L {_fmt(bx + half * px)} {_fmt(by + half * py)}"
            f" L {_fmt(bx - half * px)} {_fmt(by - half * py)} Z"
        )
    return d


def _render_layer(out, layer, sx, sy, colors, sizes, pitch_px):
    cls = escape(layer.name)
    for mark in layer.marks:
        if layer.geom in (Geom.CIRCLE, Geom.RING):
            cx, cy = sx(mark["x"]), sy(mark["y"])
            r = _mark_radius(layer, mark, sizes, pitch_px)
            if layer.geom is Geom.CIRCLE:
                fill = _mark_fill(layer, mark, colors)
                out.append(
                    f'<circle class="{cls}"{_bits_attr(mark)} cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                    f'r="{_fmt(r)}" fill="{fill}"/>'
                )
            else:
                kind = mark.get("outline_value")
                stroke = PALETTES["outline"].get(kind, AXIS_COLOR)
                out.append(
                    f'<circle class="{cls}"{_bits_attr(mark)} cx="{_fmt(cx)}" cy="{_fmt(cy)}" '
                    f'r="{_fmt(r)}" fill="none" stroke="{stroke}" stroke-width="1.60"/>'
                )
        elif layer.geom in (Geom.LINE, Geom.ARROW):
            x1, y1 = sx(mark["x1"]), sy(mark["y1"])
            x2, y2 = sx(mark["x2"]), sy(mark["y2"])
            width = _line_width(layer, mark)
            if layer.geom is Geom.LINE:
                out.append(
                    f'<line class="{cls}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" x2="{_fmt(x2)}" '
                    f'y2="{_fmt(y2)}" stroke="{EDGE_COLOR}" stroke-width="{_fmt(width)}" '
                    f'stroke-opacity="0.60"/>'
                )
            else:
                out.append(
                    f'<path class="{cls}" d="{_arrow_path(x1, y1, x2, y2)}" '
                    f'fill="{EDGE_COLOR}" stroke="{EDGE_COLOR}" stroke-width="{_fmt(width)}" '
                    f'stroke-opacity="0.60"/>'
                )
        elif layer.geom is Geom.HEXAGON:
            s = float(layer.style.get("radius_data", 1.0))
            points = " ".join(
                f"{_fmt(sx(mark['x'] + s * math.cos(a)))},{_fmt(sy(mark['y'] + s * math.sin(a)))}"
                for a in _HEX_ANGLES
            )
            fill = _mark_fill(layer, mark, colors)
            out.append(
                f'<polygon class="{cls}" points="{points}" fill="{fill}" '
                f'stroke="#ffffff" stroke-width="0.50"/>'
            )
        elif layer.geom is Geom.SQUARE:
            cx, cy = sx(mark["x"]), sy(mark["y"])
            r = _mark_radius(layer, mark, sizes, pitch_px)
            out.append(
                f'<rect class="{cls}"{_bits_attr(mark)} x="{_fmt(cx - r)}" y="{_fmt(cy - r)}" '
                f'width="{_fmt(2 * r)}" height="{_fmt(2 * r)}" fill="none" '
                f'stroke="{AXIS_COLOR}" stroke-width="1.80"/>'
            )
        elif layer.geom is Geom.TRIANGLE:
            cx, cy = sx(mark["x"]), sy(mark["y"])
            r = _mark_radius(layer, mark, sizes, pitch_px)
            w = 0.866 * r
            points = (
                f"{_fmt(cx)},{_fmt(cy - r)} {_fmt(cx - w)},{_fmt(cy + 0.5 * r)} "
                f"{_fmt(cx + w)},{_fmt(cy + 0.5 * r)}"
            )
            out.append(
                f'<polygon class="{cls}"{_bits_attr(mark)} points="{points}" fill="none" '
                f'stroke="{AXIS_COLOR}" stroke-width="1.80"/>'
            )
        else:
            raise DomainError(f"geom {layer.geom} has no renderer")
        if mark.get("label"):
            cx, cy = sx(mark["x"]), sy(mark["y"])
            out.append(
                f'<text class="{cls}-label" x="{_fmt(cx)}" y="{_fmt(cy - 8)}" {FONT} '
                f'font-size="10" text-anchor="middle" fill="{AXIS_COLOR}">'
                f"{escape(str(mark['label']))}</text>"
            )


def _render_axes(out, panel, sx, sy, rect):
    x0, y0, x1, y1 = rect
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y1)}" x2="{_fmt(x1)}" y2="{_fmt(y1)}" '
        f'stroke="{AXIS_COLOR}" stroke-width="1.00"/>'
    )
    out.append(
        f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" y2="{_fmt(y1)}" '
        f'stroke="{AXIS_COLOR}" stroke-width="1.00"/>'
    )
    for t in nice_ticks(sx.domain_lo, sx.domain_hi):
        px = sx(t)
        out.append(
            f'<line x1="{_fmt(px)}" y1="{_fmt(y1)}" x2="{_fmt(px)}" y2="{_fmt(y1 + 4)}" '
            f'stroke="{AXIS_COLOR}" stroke-width="1.00"/>'
        )
        out.append(
            f'<text x="{_fmt(px)}" y="{_fmt(y1 + 15)}" {FONT} font-size="10" '
            f'text-anchor="middle" fill="{AXIS_COLOR}">{_num(t)}</text>'
        )
    for t in nice_ticks(sy.domain_lo, sy.domain_hi):
        py = sy(t)
        out.append(
            f'<line x1="{_fmt(x0 - 4)}" y1="{_fmt(py)}" x2="{_fmt(x0)}" y2="{_fmt(py)}" '
            f'stroke="{AXIS_COLOR}" stroke-width="1.00"/>'
        )
        out.append(
            f'<text x="{_fmt(x0 - 6)}" y="{_fmt(py + 3)}" {FONT} font-size="10" '
            f'text-anchor="end" fill="{AXIS_COLOR}">{_num(t)}</text>'
        )
    if panel.x_label:
        out.append(
            f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(y1 + 30)}" {FONT} font-size="11" '
            f'text-anchor="middle" fill="{AXIS_COLOR}">{escape(panel.x_label)}</text>'
        )
    if panel.y_label:
        cx, cy = x0 - 34, (y0 + y1) / 2
        out.append(
            f'<text x="{_fmt(cx)}" y="{_fmt(cy)}" {FONT} font-size="11" text-anchor="middle" '
            f'fill="{AXIS_COLOR}" transform="rotate(-90 {_fmt(cx)} {_fmt(cy)})">'
            f"{escape(panel.y_label)}</text>"
        )


def _render_legend(out, colors, outline_used, x: float, y: float) -> None:
    swatch = 12.0
    for kind in colors:
        group = colors[kind]
        if not group.legend:
            continue
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" {FONT} font-size="11" font-weight="bold" '
            f'fill="{AXIS_COLOR}">{escape(group.label)}</text>'
        )
        y += 8
        if group.kind == "feasibility":
            for label in ("feasible", "infeasible"):
                out.append(
                    f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(swatch)}" '
                    f'height="{_fmt(swatch)}" fill="{feasibility_color(label)}"/>'
                )
                out.append(
                    f'<text x="{_fmt(x + swatch + 6)}" y="{_fmt(y + 10)}" {FONT} '
                    f'font-size="10" fill="{AXIS_COLOR}">{label}</text>'
                )
                y += swatch + 5
        elif group.kind in CATEGORICAL_KINDS:
            for cat in group.scale.categories:
                out.append(
                    f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(swatch)}" '
                    f'height="{_fmt(swatch)}" fill="{group.scale.color(cat)}"/>'
                )
                out.append(
                    f'<text x="{_fmt(x + swatch + 6)}" y="{_fmt(y + 10)}" {FONT} '
                    f'font-size="10" fill="{AXIS_COLOR}">{escape(cat)}</text>'
                )
                y += swatch + 5
        else:
            steps = 8
            bar_h = 14.0
            lo, hi = group.scale.domain_lo, group.scale.domain_hi
            for i in range(steps):
                frac = 1.0 - (i + 0.5) / steps
                v = lo + frac * (hi - lo)
                out.append(
                    f'<rect x="{_fmt(x)}" y="{_fmt(y + i * bar_h)}" width="{_fmt(swatch)}" '
                    f'height="{_fmt(bar_h)}" fill="{group.color(v)}"/>'
                )
            out.append(
                f'<text x="{_fmt(x + swatch + 6)}" y="{_fmt(y + 10)}" {FONT} font-size="10" '
                f'fill="{AXIS_COLOR}">{_num(round(hi, 6))}</text>'
            )
            out.append(
                f'<text x="{_fmt(x + swatch + 6)}" y="{_fmt(y + steps * bar_h)}" {FONT} '
                f'font-size="10" fill="{AXIS_COLOR}">{_num(round(lo, 6))}</text>'
            )
            y += steps * bar_h + 5
        y += 16
    if outline_used:
        out.append(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" {FONT} font-size="11" font-weight="bold" '
            f'fill="{AXIS_COLOR}">optima</text>'
        )
        y += 8
        for kind, label in (("local", "local optimum"), ("global", "global optimum")):
            out.append(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(swatch)}" '
                f'height="{_fmt(swatch)}" fill="none" stroke="{PALETTES["outline"][kind]}" '
                f'stroke-width="1.60"/>'
            )
            out.append(
                f'<text x="{_fmt(x + swatch + 6)}" y="{_fmt(y + 10)}" {FONT} font-size="10" '
                f'fill="{AXIS_COLOR}">{label}</text>'
            )
            y += swatch + 5


def render_svg(scene: Scene, path, width_px: float = 840.0, height_px: float = 600.0) -> None:
    """Render a scene to a standalone SVG file.

    One shape element per mark; color and outline legends on the right;
    axes only on panels that bind positions to data.
    """
    if width_px <= 0 or height_px <= 0:
        raise DomainError(f"dimensions must be positive, got {width_px} x {height_px}")
    colors, sizes, outline_used = _collect_groups(scene)
    has_legend = outline_used or any(g.legend for g in colors.values())
    gutter = LEGEND_WIDTH if has_legend else 0.0
    domains = _axis_domains(scene)

    count = len(scene.panels)
    if scene.arrangement == "vertical":
        panel_w = width_px - gutter - 2 * MARGIN
        panel_h = (height_px - 2 * MARGIN) / count
        origins = [(MARGIN, MARGIN + i * panel_h) for i in range(count)]
    else:
        panel_w = (width_px - gutter - 2 * MARGIN) / count
        panel_h = height_px - 2 * MARGIN
        origins = [(MARGIN + i * panel_w, MARGIN) for i in range(count)]

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width_px)}" '
        f'height="{_fmt(height_px)}" viewBox="0 0 {_fmt(width_px)} {_fmt(height_px)}">',
        f'<rect x="0" y="0" width="{_fmt(width_px)}" height="{_fmt(height_px)}" fill="#ffffff"/>',
    ]
    for i, panel in enumerate(scene.panels):
        ox, oy = origins[i]
        left = 48.0 if panel.show_axes else 16.0
        bottom = 38.0 if panel.show_axes else 16.0
        top = 26.0 if panel.title else 14.0
        right = 12.0
        x0, y0 = ox + left, oy + top
        x1, y1 = ox + panel_w - right, oy + panel_h - bottom
        xlo, xhi, ylo, yhi = domains[i]
        sx = LinearScale(xlo, xhi, x0, x1)
        sy = LinearScale(ylo, yhi, y1, y0)
        pitch_px = min(abs(sx(1.0) - sx(0.0)), abs(sy(0.0) - sy(1.0)))
        if panel.title:
            out.append(
                f'<text x="{_fmt((x0 + x1) / 2)}" y="{_fmt(oy + 14)}" {FONT} font-size="12" '
                f'text-anchor="middle" fill="{AXIS_COLOR}">{escape(panel.title)}</text>'
            )
        if panel.show_axes:
            _render_axes(out, panel, sx, sy, (x0, y0, x1, y1))
        for layer in panel.layers:
            _render_layer(out, layer, sx, sy, colors, sizes, pitch_px)
    if has_legend:
        _render_legend(out, colors, outline_used, width_px - gutter + 10, MARGIN + 18)
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
