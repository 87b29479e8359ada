"""Standalone SVG rendering of chart geometries.

Output is byte-deterministic: fixed 2-decimal pixel coordinates, no
timestamps or generated ids, so charts can be golden-tested and diffed.
Markers carry data-kind / data-label / data-x / data-y attributes as a
stable machine-readable contract.
"""

from dataclasses import dataclass
import math
from typing import Optional, Sequence
from xml.sax.saxutils import escape, quoteattr

from .errors import CapacityError, RenderError, ValidationError
from .geometry import ChartGeometry, log2_map

MAX_COMPARISON = 4  # legibility cap for overlaid datasets

DEFAULT_PALETTE = ("#1F77B4", "#2CA02C", "#D62728", "#9467BD", "#8C564B", "#17BECF")


@dataclass(frozen=True)
class RenderStyle:
    width_px: int = 960
    height_px: int = 640
    margin_px: int = 60
    top_color: str = "#FFA500"
    ceiling_palette: tuple[str, ...] = DEFAULT_PALETTE
    font_family: str = "Helvetica, Arial, sans-serif"
    show_labels: bool = True

    def __post_init__(self):
        if self.margin_px < 0:
            raise ValidationError("margin_px must be >= 0")
        if self.width_px <= 2 * self.margin_px or self.height_px <= 2 * self.margin_px:
            raise ValidationError("width_px and height_px must exceed twice the margin")


def _px(v: float) -> str:
    return f"{v:.2f}"


def _num(v: float) -> str:
    """Shortest faithful decimal for data-* attributes."""
    f = float(v)
    if f.is_integer() and abs(f) <= 2.0 ** 53:
        return str(int(f))
    return repr(f)


def _tick_label(exponent: int) -> str:
    """Plain decimal below 1024, 2^n notation from 1024 up."""
    if exponent >= 10:
        return f"2^{exponent}"
    if exponent >= 0:
        return str(2 ** exponent)
    # 2**-n has exactly n decimal digits, so fixed formatting is exact
    return format(2.0 ** exponent, f".{-exponent}f")


class _Mapper:
    """Data coordinates -> pixel coordinates for one chart domain."""

    def __init__(self, geometry: ChartGeometry, style: RenderStyle):
        d = geometry.domain
        if not (d.x_min < d.x_max and d.y_min < d.y_max):
            raise RenderError(f"degenerate chart domain {d}")
        self.domain = d
        self.margin = style.margin_px
        self.extent_x = style.width_px - 2 * style.margin_px
        self.extent_y = style.height_px - 2 * style.margin_px
        self._lx = (math.log2(d.x_min), math.log2(d.x_max))
        self._ly = (math.log2(d.y_min), math.log2(d.y_max))

    def x(self, value: float) -> float:
        return self.margin + log2_map(value, self.domain.x_min, self.domain.x_max, self.extent_x)

    def y(self, value: float) -> float:
        # reversed bounds invert the axis: y_max at the top edge
        return self.margin + log2_map(value, self.domain.y_max, self.domain.y_min, self.extent_y)

    def x_log2(self, l2: float) -> float:
        lo, hi = self._lx
        return self.margin + self.extent_x * (l2 - lo) / (hi - lo)

    def y_log2(self, l2: float) -> float:
        lo, hi = self._ly
        return self.margin + self.extent_y * (hi - l2) / (hi - lo)


def _line(x1: float, y1: float, x2: float, y2: float, cls: str, stroke: str,
          width: float, extra: str = "") -> str:
    return (f'<line class="{cls}" x1="{_px(x1)}" y1="{_px(y1)}" x2="{_px(x2)}" '
            f'y2="{_px(y2)}" stroke="{stroke}" stroke-width="{width:g}"{extra}/>')


def _axes(m: _Mapper, g: ChartGeometry, style: RenderStyle) -> list[str]:
    left, top = m.margin, m.margin
    right = m.margin + m.extent_x
    bottom = m.margin + m.extent_y
    parts = ['<g class="axes">']
    for n in g.x_ticks:
        x = m.x(2.0 ** n)
        parts.append(_line(x, top, x, bottom, "grid", "#DDDDDD", 0.5))
        parts.append(_line(x, bottom, x, bottom + 5, "tick", "#333333", 1))
        parts.append(f'<text class="tick-label" x="{_px(x)}" y="{_px(bottom + 18)}" '
                     f'text-anchor="middle">{escape(_tick_label(n))}</text>')
    for n in g.y_ticks:
        y = m.y(2.0 ** n)
        parts.append(_line(left, y, right, y, "grid", "#DDDDDD", 0.5))
        parts.append(_line(left - 5, y, left, y, "tick", "#333333", 1))
        parts.append(f'<text class="tick-label" x="{_px(left - 9)}" y="{_px(y + 4)}" '
                     f'text-anchor="end">{escape(_tick_label(n))}</text>')
    parts.append(f'<rect class="frame" x="{_px(left)}" y="{_px(top)}" '
                 f'width="{_px(m.extent_x)}" height="{_px(m.extent_y)}" '
                 f'fill="none" stroke="#333333" stroke-width="1"/>')
    parts.append(f'<text class="axis-title" x="{_px((left + right) / 2)}" '
                 f'y="{_px(bottom + 40)}" text-anchor="middle">'
                 'Arithmetic intensity (FLOPs/Byte)</text>')
    parts.append(f'<text class="axis-title" x="{_px(left - 42)}" '
                 f'y="{_px((top + bottom) / 2)}" text-anchor="middle" '
                 f'transform="rotate(-90 {_px(left - 42)} {_px((top + bottom) / 2)})">'
                 'Performance (GFLOP/s)</text>')
    parts.append("</g>")
    return parts


def _first_visible_point(seg, domain) -> Optional[tuple[float, float]]:
    """Lowest-x point of the segment whose y lies inside the domain, log2 coords."""
    (x0, y0), (x1, y1) = seg.p0, seg.p1
    ly_min, ly_max = math.log2(domain.y_min), math.log2(domain.y_max)
    if y0 == y1:  # horizontal: visible iff the level is inside
        return seg.p0 if ly_min <= y0 <= ly_max else None
    t_enter = (ly_min - y0) / (y1 - y0)
    if t_enter >= 1.0:
        return None
    t = max(0.0, t_enter)
    return (x0 + t * (x1 - x0), y0 + t * (y1 - y0))


def _segment_lines(m: _Mapper, g: ChartGeometry, style: RenderStyle,
                   color_for_ceiling) -> tuple[list[str], list[str], list[str]]:
    """(ceiling lines, envelope lines, ceiling labels) for one geometry."""
    ceiling_lines, envelope_lines, labels = [], [], []
    ceiling_index = 0
    for seg in g.segments:
        x1, y1 = m.x_log2(seg.p0[0]), m.y_log2(seg.p0[1])
        x2, y2 = m.x_log2(seg.p1[0]), m.y_log2(seg.p1[1])
        name_attr = f" data-ceiling={quoteattr(seg.ceiling_name)}"
        if seg.is_top:
            envelope_lines.append(_line(x1, y1, x2, y2, "envelope", style.top_color,
                                        3.5, extra=name_attr))
            continue
        color = color_for_ceiling(ceiling_index)
        ceiling_index += 1
        ceiling_lines.append(_line(x1, y1, x2, y2, "ceiling", color, 1.5, extra=name_attr))
        if style.show_labels:
            anchor = _first_visible_point(seg, m.domain)
            if anchor is None:
                continue
            ax, ay = m.x_log2(anchor[0]), m.y_log2(anchor[1])
            if seg.kind == "compute":
                labels.append(f'<text class="ceiling-label" x="{_px(x2 - 4)}" '
                              f'y="{_px(y2 - 5)}" text-anchor="end" fill="{color}">'
                              f'{escape(seg.ceiling_name)}</text>')
            else:
                labels.append(f'<text class="ceiling-label" x="{_px(ax + 5)}" '
                              f'y="{_px(ay - 7)}" fill="{color}">'
                              f'{escape(seg.ceiling_name)}</text>')
    return ceiling_lines, envelope_lines, labels


def _markers(m: _Mapper, g: ChartGeometry, style: RenderStyle,
             kernel_color: str) -> list[str]:
    parts = []
    for p in g.points:
        cx, cy = m.x(p.x), m.y(p.y)
        data = (f' data-kind="{p.kind}" data-label={quoteattr(p.label)}'
                f' data-x="{_num(p.x)}" data-y="{_num(p.y)}"')
        if p.kind == "envelope_corner":
            parts.append(f'<circle class="marker" cx="{_px(cx)}" cy="{_px(cy)}" r="5" '
                         f'fill="{style.top_color}" stroke="#333333" '
                         f'stroke-width="1"{data}/>')
        elif p.kind == "kernel":
            parts.append(f'<circle class="marker" cx="{_px(cx)}" cy="{_px(cy)}" r="4.5" '
                         f'fill="{kernel_color}" stroke="#FFFFFF" '
                         f'stroke-width="1"{data}/>')
            if style.show_labels:
                parts.append(f'<text class="kernel-label" x="{_px(cx + 8)}" '
                             f'y="{_px(cy + 4)}">{escape(p.label)}</text>')
        else:
            parts.append(f'<circle class="marker" cx="{_px(cx)}" cy="{_px(cy)}" r="4" '
                         f'fill="#FFFFFF" stroke="#333333" stroke-width="1.2"{data}/>')
    return parts


def _render(geometries: Sequence[ChartGeometry], style: RenderStyle,
            title: Optional[str], with_legend: bool) -> str:
    m = _Mapper(geometries[0], style)
    palette = style.ceiling_palette
    single = len(geometries) == 1

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{style.width_px}" '
        f'height="{style.height_px}" '
        f'viewBox="0 0 {style.width_px} {style.height_px}">',
        '<defs><clipPath id="plot-area">'
        f'<rect x="{_px(m.margin)}" y="{_px(m.margin)}" '
        f'width="{_px(m.extent_x)}" height="{_px(m.extent_y)}"/>'
        '</clipPath></defs>',
        f'<g class="chart" font-family={quoteattr(style.font_family)} font-size="12">',
        f'<rect width="{style.width_px}" height="{style.height_px}" fill="#FFFFFF"/>',
    ]
    parts.extend(_axes(m, geometries[0], style))

    all_envelopes: list[str] = []
    all_markers: list[str] = []
    all_labels: list[str] = []
    parts.append('<g class="lines" clip-path="url(#plot-area)">')
    for d_idx, g in enumerate(geometries):
        if single:
            color_for = lambda i: palette[i % len(palette)]
            kernel_color = "#D62728"
        else:
            color_for = lambda i, _c=palette[d_idx % len(palette)]: _c
            kernel_color = palette[d_idx % len(palette)]
        lines, envelopes, labels = _segment_lines(m, g, style, color_for)
        parts.extend(lines)
        all_envelopes.extend(envelopes)
        all_labels.extend(labels)
        all_markers.extend(_markers(m, g, style, kernel_color))
    parts.extend(all_envelopes)  # envelope drawn last, on top of the ceilings
    parts.append("</g>")
    parts.extend(all_markers)
    parts.extend(all_labels)

    if with_legend:
        parts.append('<g class="legend">')
        for d_idx, g in enumerate(geometries):
            color = palette[d_idx % len(palette)]
            y = style.margin_px + 16 + 18 * d_idx
            x = style.margin_px + 12
            parts.append(f'<g class="legend-entry">'
                         f'<line x1="{_px(x)}" y1="{_px(y - 4)}" x2="{_px(x + 22)}" '
                         f'y2="{_px(y - 4)}" stroke="{color}" stroke-width="3"/>'
                         f'<text x="{_px(x + 28)}" y="{_px(y)}">'
                         f'{escape(g.dataset_id)}</text></g>')
        parts.append("</g>")

    if title:
        parts.append(f'<text class="title" x="{_px(style.width_px / 2)}" '
                     f'y="{_px(style.margin_px / 2 + 6)}" text-anchor="middle" '
                     f'font-size="16">{escape(title)}</text>')

    parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def render(geometry: ChartGeometry, style: Optional[RenderStyle] = None,
           title: Optional[str] = None) -> str:
    """One dataset's chart as a standalone SVG document (UTF-8 text)."""
    return _render([geometry], style or RenderStyle(), title, with_legend=False)


def render_comparison(geometries: Sequence[ChartGeometry],
                      style: Optional[RenderStyle] = None,
                      title: Optional[str] = None) -> str:
    """Overlay up to four datasets sharing one domain, with a legend.

    With a single geometry the line content matches render() exactly; with
    several, each dataset keeps one palette color for all its ceilings.
    """
    if not 1 <= len(geometries) <= MAX_COMPARISON:
        raise CapacityError(
            f"comparison charts take 1-{MAX_COMPARISON} datasets, got {len(geometries)}")
    first = geometries[0].domain
    for g in geometries[1:]:
        if g.domain != first:
            raise ValidationError("comparison geometries must share one merged domain")
    return _render(list(geometries), style or RenderStyle(), title, with_legend=True)
