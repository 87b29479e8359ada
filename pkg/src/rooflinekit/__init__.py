"""Roofline performance-model toolkit.

Compute attainable-performance bounds, manage .roofline.json datasets,
sync them from remote repositories, and render log2/log2 charts as SVG
or serve them over HTTP.
"""

from .datafile import (Dataset, canonical_json, find_duplicates, fingerprint,
                       load_dataset, save_dataset, search)
from .geometry import (ChartDomain, ChartGeometry, MarkedPoint, Segment,
                       build_geometry, build_segments, default_domain,
                       intersection_points, kernel_markers, log2_map)
from .model import (AT_RIDGE, COMPUTE_BOUND, MEMORY_BOUND, BoundAnalysis,
                    Ceiling, KernelTrial, MachineProfile, WhatIfProjection,
                    analyze_kernel, attainable, classify, ridge_point, what_if)
from .svg import RenderStyle, render, render_comparison

__version__ = "0.1.0"

__all__ = [
    "AT_RIDGE", "COMPUTE_BOUND", "MEMORY_BOUND",
    "BoundAnalysis", "Ceiling", "ChartDomain", "ChartGeometry", "Dataset",
    "KernelTrial", "MachineProfile", "MarkedPoint", "RenderStyle", "Segment",
    "WhatIfProjection",
    "analyze_kernel", "attainable", "build_geometry", "build_segments",
    "canonical_json", "classify", "default_domain", "find_duplicates",
    "fingerprint", "intersection_points", "kernel_markers", "load_dataset",
    "log2_map", "render", "render_comparison", "ridge_point", "save_dataset",
    "search", "what_if",
]
