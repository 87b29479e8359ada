"""Chart geometry: resolve profiles and trials into log2-space primitives.

Rooflines are straight lines in log2/log2 space, so every ceiling becomes a
single two-point segment; bandwidth segments have slope exactly 1 and
compute segments slope exactly 0 by construction.  The renderer and the web
UI consume this module's output without redoing any roofline math.
"""

from dataclasses import dataclass
import math
from typing import Sequence, Union

from .errors import DomainError, ValidationError
from .model import KernelTrial, MachineProfile, ridge_point

INTERSECTION = "intersection"
KERNEL = "kernel"
ENVELOPE_CORNER = "envelope_corner"

ENVELOPE = "envelope"

# Default x-range (exponents of 2) when no ridge or trial constrains a side.
FALLBACK_X_EXPONENTS = (-4, 6)


def _floor_log2(x: float) -> int:
    # frexp gives x = m * 2**e with 0.5 <= m < 1, so floor(log2 x) = e - 1
    # without trusting log() rounding at exact powers of two.
    m, e = math.frexp(x)
    return e - 1


def _ceil_log2(x: float) -> int:
    m, e = math.frexp(x)
    return e - 1 if m == 0.5 else e


@dataclass(frozen=True)
class ChartDomain:
    """Axis bounds: x in FLOPs/Byte, y in GFLOP/s."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float

    def __post_init__(self):
        for name in ("x_min", "x_max", "y_min", "y_max"):
            v = float(getattr(self, name))
            if not math.isfinite(v) or v <= 0.0:
                raise ValidationError(f"{name} must be > 0 and finite, got {v!r}")
            object.__setattr__(self, name, v)
        if not self.x_min < self.x_max:
            raise ValidationError(f"x_min must be < x_max, got [{self.x_min}, {self.x_max}]")
        if not self.y_min < self.y_max:
            raise ValidationError(f"y_min must be < y_max, got [{self.y_min}, {self.y_max}]")


@dataclass(frozen=True)
class Segment:
    """One chart line, endpoints in (log2 x, log2 y) coordinates."""

    ceiling_name: str
    kind: str  # "compute", "bandwidth" or "envelope"
    p0: tuple[float, float]
    p1: tuple[float, float]
    is_top: bool = False

    def y_at(self, log2_x: float) -> float:
        """Linear interpolation along the segment at a log2 abscissa."""
        (x0, y0), (x1, y1) = self.p0, self.p1
        return y0 + (log2_x - x0) * (y1 - y0) / (x1 - x0)


@dataclass(frozen=True)
class MarkedPoint:
    """A selectable chart point in data coordinates (FLOPs/Byte, GFLOP/s)."""

    x: float
    y: float
    label: str
    kind: str  # "intersection", "kernel" or "envelope_corner"
    source: Union[tuple[str, str], str]


@dataclass(frozen=True)
class ChartGeometry:
    domain: ChartDomain
    segments: tuple[Segment, ...]
    points: tuple[MarkedPoint, ...]
    x_ticks: tuple[int, ...]  # exponents of 2
    y_ticks: tuple[int, ...]
    dataset_id: str = ""


def _expanded_exponents(values: list[float]) -> tuple[int, int]:
    """Outward power-of-two bounds with one extra octave of margin each side."""
    lo = _floor_log2(min(values)) - 1
    hi = _ceil_log2(max(values)) + 1
    return lo, hi


def default_domain(profiles: Sequence[MachineProfile],
                   trials: Sequence[KernelTrial] = ()) -> ChartDomain:
    """Power-of-two domain covering all ridge points, intensities, ceilings
    and achieved values of the given datasets, one octave of margin per side.
    """
    if not profiles:
        raise ValidationError("default_domain needs at least one machine profile")

    xs: list[float] = []
    ys: list[float] = []
    for profile in profiles:
        for c in profile.compute_ceilings:
            ys.append(c.value)
            for b in profile.bandwidth_ceilings:
                xs.append(ridge_point(c.value, b.value))
        # a bandwidth roof passes through y = B at intensity 1, which is the
        # value the chart must keep visible
        ys.extend(b.value for b in profile.bandwidth_ceilings)
    for t in trials:
        xs.append(t.arithmetic_intensity)
        ys.append(t.achieved_gflops)

    if xs:
        x_lo, x_hi = _expanded_exponents(xs)
    else:
        x_lo, x_hi = FALLBACK_X_EXPONENTS
    y_lo, y_hi = _expanded_exponents(ys)
    return ChartDomain(x_min=2.0 ** x_lo, x_max=2.0 ** x_hi,
                       y_min=2.0 ** y_lo, y_max=2.0 ** y_hi)


def power_of_two_ticks(lo: float, hi: float) -> tuple[int, ...]:
    """Exponents n with lo <= 2**n <= hi."""
    return tuple(range(_ceil_log2(lo), _floor_log2(hi) + 1))


def build_segments(profile: MachineProfile, domain: ChartDomain) -> list[Segment]:
    """Per-ceiling segments plus the two-part top envelope.

    Bandwidth lines run from the left edge to where they meet the highest
    compute roof; compute lines start where the highest bandwidth line
    reaches them and run to the right edge.  That clipping reproduces the
    overlapped look of hardware rooflines sharing a chart.  The top envelope
    (max bandwidth then max compute) is emitted again as two wider segments
    flagged is_top so it can be drawn on top.
    """
    p_top = profile.top_compute
    b_top = profile.top_bandwidth
    lx_min = math.log2(domain.x_min)
    lx_max = math.log2(domain.x_max)
    segments: list[Segment] = []

    for b in profile.bandwidth_ceilings:
        x_end = min(ridge_point(p_top.value, b.value), domain.x_max)
        lx_end = math.log2(x_end)
        if lx_end <= lx_min:
            continue  # entirely left of the domain
        y0 = math.log2(b.value) + lx_min
        # slope kept exactly 1: y advances by exactly the x advance
        segments.append(Segment(b.name, "bandwidth",
                                (lx_min, y0), (lx_end, y0 + (lx_end - lx_min))))

    for c in profile.compute_ceilings:
        x_start = max(ridge_point(c.value, b_top.value), domain.x_min)
        lx_start = math.log2(x_start)
        if lx_start >= lx_max:
            continue
        ly = math.log2(c.value)
        segments.append(Segment(c.name, "compute", (lx_start, ly), (lx_max, ly)))

    # top envelope: both parts share the corner vertex so they meet exactly
    ridge = ridge_point(p_top.value, b_top.value)
    l_ridge = math.log2(min(max(ridge, domain.x_min), domain.x_max))
    l_p_top = math.log2(p_top.value)
    corner = (l_ridge, l_p_top)
    if l_ridge > lx_min:
        segments.append(Segment(b_top.name, ENVELOPE,
                                (lx_min, math.log2(b_top.value) + lx_min), corner,
                                is_top=True))
    if l_ridge < lx_max:
        segments.append(Segment(p_top.name, ENVELOPE, corner, (lx_max, l_p_top),
                                is_top=True))
    return segments


def intersection_points(profile: MachineProfile, domain: ChartDomain) -> list[MarkedPoint]:
    """Ridge corners of every ceiling pair inside the domain, plus the top corner.

    Every pair is emitted even when its corner lies strictly under the
    envelope; presentation layers decide what to show.
    """
    points: list[MarkedPoint] = []
    for c in profile.compute_ceilings:
        for b in profile.bandwidth_ceilings:
            x = ridge_point(c.value, b.value)
            if domain.x_min <= x <= domain.x_max:
                points.append(MarkedPoint(x=x, y=c.value,
                                          label=f"{c.name} × {b.name}",
                                          kind=INTERSECTION, source=(c.name, b.name)))
    p_top = profile.top_compute
    b_top = profile.top_bandwidth
    x = ridge_point(p_top.value, b_top.value)
    if domain.x_min <= x <= domain.x_max:
        points.append(MarkedPoint(x=x, y=p_top.value,
                                  label=f"{p_top.name} × {b_top.name}",
                                  kind=ENVELOPE_CORNER, source=(p_top.name, b_top.name)))
    return points


def kernel_markers(trials: Sequence[KernelTrial]) -> list[MarkedPoint]:
    """One kernel marker per trial, input order preserved (no dedup)."""
    return [
        MarkedPoint(x=t.arithmetic_intensity, y=t.achieved_gflops,
                    label=t.name, kind=KERNEL, source=t.name)
        for t in trials
    ]


def build_geometry(profile: MachineProfile, trials: Sequence[KernelTrial] = (),
                   domain: ChartDomain | None = None,
                   dataset_id: str = "") -> ChartGeometry:
    """Resolve one dataset into a complete chart geometry.

    Pass a shared ``domain`` (e.g. a merged default_domain) when several
    datasets must be drawn on the same axes.
    """
    if domain is None:
        domain = default_domain([profile], trials)
    segments = build_segments(profile, domain)
    points = intersection_points(profile, domain) + kernel_markers(trials)
    return ChartGeometry(
        domain=domain,
        segments=tuple(segments),
        points=tuple(points),
        x_ticks=power_of_two_ticks(domain.x_min, domain.x_max),
        y_ticks=power_of_two_ticks(domain.y_min, domain.y_max),
        dataset_id=dataset_id,
    )


def log2_map(value: float, lo: float, hi: float, extent: float) -> float:
    """Map a value onto [0, extent] with lo -> 0 and hi -> extent, log2 scale.

    Values outside the bounds map outside [0, extent]; nothing is clamped.
    Passing lo > hi reverses the axis, which is how the renderer inverts y.
    """
    for name, v in (("value", value), ("lo", lo), ("hi", hi), ("extent", extent)):
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"{name} must be > 0 and finite, got {v!r}")
    if lo == hi:
        raise DomainError("lo and hi must differ")
    return extent * math.log2(value / lo) / math.log2(hi / lo)
