"""Core roofline math: attainable bounds, ridge points, kernel classification.

The attainable performance of a kernel with arithmetic intensity A on a
machine with peak compute P (GFLOP/s) and peak bandwidth B (GB/s) is
min(P, B*A).  Everything here is a pure function of its inputs; all values
are plain doubles.
"""

from dataclasses import dataclass, field
import math
from typing import Mapping, Sequence

from .errors import DomainError, ValidationError

COMPUTE = "compute"
BANDWIDTH = "bandwidth"

MEMORY_BOUND = "memory_bound"
COMPUTE_BOUND = "compute_bound"
AT_RIDGE = "at_ridge"

# Relative tolerance for calling a kernel "at the ridge": the corner has no
# natural width, so equality is pinned to double-precision noise.
RIDGE_REL_TOL = 1e-12


def _require_positive(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0.0:
        raise DomainError(f"{name} must be a positive finite number, got {value!r}")
    return value


@dataclass(frozen=True)
class Ceiling:
    """One benchmarked upper bound: GFLOP/s if compute, GB/s if bandwidth."""

    name: str
    kind: str
    value: float

    def __post_init__(self):
        if not self.name:
            raise ValidationError("ceiling name must be non-empty")
        if self.kind not in (COMPUTE, BANDWIDTH):
            raise ValidationError(f"ceiling kind must be 'compute' or 'bandwidth', got {self.kind!r}")
        v = float(self.value)
        if not math.isfinite(v) or v <= 0.0:
            raise ValidationError(f"ceiling value must be > 0 and finite, got {self.value!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class KernelTrial:
    """One measured kernel: intensity in FLOPs/Byte, achieved rate in GFLOP/s."""

    name: str
    arithmetic_intensity: float
    achieved_gflops: float
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name:
            raise ValidationError("trial name must be non-empty")
        ai = float(self.arithmetic_intensity)
        gf = float(self.achieved_gflops)
        if not math.isfinite(ai) or ai <= 0.0:
            raise ValidationError(f"arithmetic_intensity must be > 0 and finite, got {self.arithmetic_intensity!r}")
        if not math.isfinite(gf) or gf <= 0.0:
            raise ValidationError(f"achieved_gflops must be > 0 and finite, got {self.achieved_gflops!r}")
        object.__setattr__(self, "arithmetic_intensity", ai)
        object.__setattr__(self, "achieved_gflops", gf)
        object.__setattr__(self, "metadata", dict(self.metadata))


@dataclass(frozen=True)
class MachineProfile:
    """A named machine characterized by its compute and bandwidth ceilings."""

    name: str
    compute_ceilings: Sequence[Ceiling]
    bandwidth_ceilings: Sequence[Ceiling]
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.name:
            raise ValidationError("machine name must be non-empty")
        compute = tuple(self.compute_ceilings)
        bandwidth = tuple(self.bandwidth_ceilings)
        if not compute:
            raise ValidationError("machine needs at least one compute ceiling")
        if not bandwidth:
            raise ValidationError("machine needs at least one bandwidth ceiling")
        for group, kind in ((compute, COMPUTE), (bandwidth, BANDWIDTH)):
            names = [c.name for c in group]
            if len(set(names)) != len(names):
                raise ValidationError(f"duplicate {kind} ceiling names: {sorted(names)}")
            for c in group:
                if c.kind != kind:
                    raise ValidationError(f"ceiling {c.name!r} has kind {c.kind!r}, expected {kind!r}")
        object.__setattr__(self, "compute_ceilings", compute)
        object.__setattr__(self, "bandwidth_ceilings", bandwidth)
        object.__setattr__(self, "metadata", dict(self.metadata))

    @property
    def top_compute(self) -> Ceiling:
        return max(self.compute_ceilings, key=lambda c: c.value)

    @property
    def top_bandwidth(self) -> Ceiling:
        return max(self.bandwidth_ceilings, key=lambda c: c.value)


@dataclass(frozen=True)
class BoundAnalysis:
    """A kernel's position against one (compute, bandwidth) ceiling pair."""

    ceiling_pair: tuple[str, str]
    ridge_point: float
    attainable_gflops: float
    classification: str
    efficiency: float
    is_top: bool = False


@dataclass(frozen=True)
class WhatIfProjection:
    """Bound movement when a kernel's intensity changes from its measured value."""

    old_bound: float
    new_bound: float
    bound_ratio: float


def attainable(compute_gflops: float, bandwidth_gbs: float, intensity: float) -> float:
    """Upper bound on performance: min(compute, bandwidth * intensity), GFLOP/s.

    At or beyond the ridge point the compute roof is returned exactly.
    Rounding of bandwidth * (compute / bandwidth) lands one ulp below the
    compute value for ~5% of random ceiling pairs, so the corner is decided
    by comparing against the ridge rather than by the min of two products.
    """
    p = _require_positive("compute_gflops", compute_gflops)
    b = _require_positive("bandwidth_gbs", bandwidth_gbs)
    a = _require_positive("intensity", intensity)
    if a >= p / b:
        return p
    mem = b * a
    return mem if mem < p else p


def ridge_point(compute_gflops: float, bandwidth_gbs: float) -> float:
    """Intensity (FLOPs/Byte) where the bandwidth line meets the compute roof."""
    p = _require_positive("compute_gflops", compute_gflops)
    b = _require_positive("bandwidth_gbs", bandwidth_gbs)
    return p / b


def classify(intensity: float, ridge: float) -> str:
    """memory_bound / compute_bound / at_ridge for an intensity vs a ridge point."""
    a = _require_positive("intensity", intensity)
    r = _require_positive("ridge", ridge)
    if abs(a - r) <= RIDGE_REL_TOL * r:
        return AT_RIDGE
    return MEMORY_BOUND if a < r else COMPUTE_BOUND


def _analyze_pair(trial: KernelTrial, compute: Ceiling, bandwidth: Ceiling,
                  is_top: bool = False) -> BoundAnalysis:
    ridge = ridge_point(compute.value, bandwidth.value)
    bound = attainable(compute.value, bandwidth.value, trial.arithmetic_intensity)
    return BoundAnalysis(
        ceiling_pair=(compute.name, bandwidth.name),
        ridge_point=ridge,
        attainable_gflops=bound,
        classification=classify(trial.arithmetic_intensity, ridge),
        efficiency=trial.achieved_gflops / bound,
        is_top=is_top,
    )


def analyze_kernel(trial: KernelTrial, profile: MachineProfile) -> list[BoundAnalysis]:
    """Analyze a trial against every compute x bandwidth pair plus the top envelope.

    Pairs come out in declaration order (compute-major); the final entry is
    the top envelope (max compute ceiling vs max bandwidth ceiling), flagged
    with is_top.  Efficiency above 1.0 is reported as-is: measured data can
    legitimately beat a stale machine characterization.
    """
    rows = [
        _analyze_pair(trial, c, b)
        for c in profile.compute_ceilings
        for b in profile.bandwidth_ceilings
    ]
    rows.append(_analyze_pair(trial, profile.top_compute, profile.top_bandwidth, is_top=True))
    return rows


def what_if(trial: KernelTrial, new_intensity: float,
            pair: tuple[float, float]) -> WhatIfProjection:
    """Project the bound change if the trial's intensity moved to new_intensity.

    ``pair`` is (compute GFLOP/s, bandwidth GB/s).
    """
    compute_gflops, bandwidth_gbs = pair
    old = attainable(compute_gflops, bandwidth_gbs, trial.arithmetic_intensity)
    new = attainable(compute_gflops, bandwidth_gbs, new_intensity)
    return WhatIfProjection(old_bound=old, new_bound=new, bound_ratio=new / old)
