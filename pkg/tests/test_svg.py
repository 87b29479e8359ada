import math
import xml.etree.ElementTree as ET

import pytest

from rooflinekit.errors import CapacityError, ValidationError
from rooflinekit.geometry import build_geometry, default_domain, log2_map
from rooflinekit.model import Ceiling, KernelTrial, MachineProfile
from rooflinekit.svg import RenderStyle, render, render_comparison

SVG_NS = "{http://www.w3.org/2000/svg}"


def toy_geometry(toy_profile, trials=()):
    return build_geometry(toy_profile, trials, dataset_id="toy")


def parse(svg_text: str) -> ET.Element:
    return ET.fromstring(svg_text)


def elements_by_class(root: ET.Element, cls: str) -> list:
    return [el for el in root.iter() if el.get("class") == cls]


class TestRender:
    def test_well_formed_xml(self, toy_profile, stencil_trial):
        svg = render(toy_geometry(toy_profile, [stencil_trial]))
        root = parse(svg)
        assert root.tag == f"{SVG_NS}svg"

    def test_toy_element_counts(self, toy_profile):
        root = parse(render(toy_geometry(toy_profile)))
        assert len(elements_by_class(root, "ceiling")) == 4
        envelopes = elements_by_class(root, "envelope")
        assert len(envelopes) == 2
        markers = elements_by_class(root, "marker")
        assert sum(1 for m in markers if m.get("data-kind") == "intersection") == 4

    def test_envelope_is_orange_and_wider(self, toy_profile):
        root = parse(render(toy_geometry(toy_profile)))
        for line in elements_by_class(root, "envelope"):
            assert line.get("stroke") == "#FFA500"
            assert float(line.get("stroke-width")) > 1.5
        for line in elements_by_class(root, "ceiling"):
            assert line.get("stroke") != "#FFA500"

    def test_envelope_drawn_after_ceilings(self, toy_profile):
        svg = render(toy_geometry(toy_profile))
        assert svg.rindex('class="ceiling"') < svg.index('class="envelope"')

    def test_kernel_markers_present_with_labels(self, toy_profile, stencil_trial):
        root = parse(render(toy_geometry(toy_profile, [stencil_trial])))
        kernels = [m for m in elements_by_class(root, "marker")
                   if m.get("data-kind") == "kernel"]
        assert len(kernels) == 1
        assert kernels[0].get("data-label") == "stencil"
        assert kernels[0].get("data-x") == "2"
        assert kernels[0].get("data-y") == "40"

    def test_empty_trials_still_valid(self, toy_profile):
        root = parse(render(toy_geometry(toy_profile)))
        kernels = [m for m in elements_by_class(root, "marker")
                   if m.get("data-kind") == "kernel"]
        assert kernels == []

    def test_deterministic_bytes(self, toy_profile, stencil_trial):
        g = toy_geometry(toy_profile, [stencil_trial])
        assert render(g) == render(g)

    def test_title_and_labels_are_escaped(self):
        profile = MachineProfile("a<b&c", [Ceiling('q"x', "compute", 4.0)],
                                 [Ceiling("b<y", "bandwidth", 2.0)])
        svg = render(build_geometry(profile), title='ti<tle & "quotes"')
        parse(svg)  # must stay well-formed

    def test_marker_pixels_match_log2_map(self, toy_profile, stencil_trial):
        style = RenderStyle()
        g = toy_geometry(toy_profile, [stencil_trial])
        root = parse(render(g, style))
        extent_x = style.width_px - 2 * style.margin_px
        extent_y = style.height_px - 2 * style.margin_px
        markers = elements_by_class(root, "marker")
        assert markers
        for m in markers:
            x, y = float(m.get("data-x")), float(m.get("data-y"))
            expected_cx = style.margin_px + log2_map(x, g.domain.x_min, g.domain.x_max, extent_x)
            expected_cy = style.margin_px + log2_map(y, g.domain.y_max, g.domain.y_min, extent_y)
            assert abs(float(m.get("cx")) - expected_cx) <= 0.5
            assert abs(float(m.get("cy")) - expected_cy) <= 0.5

    def test_segment_pixels_match_log2_map(self, toy_profile):
        style = RenderStyle()
        g = toy_geometry(toy_profile)
        root = parse(render(g, style))
        extent_x = style.width_px - 2 * style.margin_px
        lx_min = math.log2(g.domain.x_min)
        lx_max = math.log2(g.domain.x_max)
        lines = elements_by_class(root, "ceiling") + elements_by_class(root, "envelope")
        seen = set()
        for line in lines:
            name = line.get("data-ceiling")
            seg = next(s for s in g.segments
                       if s.ceiling_name == name and (s.is_top == (line.get("class") == "envelope")))
            expected_x1 = style.margin_px + extent_x * (seg.p0[0] - lx_min) / (lx_max - lx_min)
            assert abs(float(line.get("x1")) - expected_x1) <= 0.5
            seen.add(name)
        assert seen == {"FMA", "NoFMA", "L1", "DRAM"}

    def test_tick_labels_decimal_below_1024_power_notation_above(self):
        profile = MachineProfile("big", [Ceiling("peak", "compute", 3000.0)],
                                 [Ceiling("mem", "bandwidth", 100.0)])
        trial = KernelTrial("tiny", arithmetic_intensity=0.1, achieved_gflops=1.0)
        svg = render(build_geometry(profile, [trial]))
        assert ">0.125<" in svg  # fractional ticks as plain decimals
        assert ">2^12<" in svg   # 4096 rendered as a power
        assert ">512<" in svg
        assert ">1024<" not in svg

    def test_style_invariant(self):
        with pytest.raises(ValidationError):
            RenderStyle(width_px=100, height_px=640, margin_px=60)


class TestRenderComparison:
    def test_two_datasets_two_envelopes_two_legend_rows(self, toy_profile):
        mini = MachineProfile("mini", [Ceiling("peak", "compute", 120.0)],
                              [Ceiling("mem", "bandwidth", 60.0)])
        domain = default_domain([toy_profile, mini])
        geoms = [build_geometry(toy_profile, domain=domain, dataset_id="toy"),
                 build_geometry(mini, domain=domain, dataset_id="mini")]
        root = parse(render_comparison(geoms))
        assert len(elements_by_class(root, "envelope")) == 4  # 2 parts per dataset
        legend_rows = elements_by_class(root, "legend-entry")
        assert len(legend_rows) == 2
        texts = [t.text for row in legend_rows for t in row.iter(f"{SVG_NS}text")]
        assert texts == ["toy", "mini"]

    def test_single_geometry_matches_render_line_content(self, toy_profile, stencil_trial):
        g = toy_geometry(toy_profile, [stencil_trial])
        single = render(g)
        compared = render_comparison([g])
        single_lines = [ln for ln in single.splitlines() if "<line" in ln or "<circle" in ln]
        compared_lines = [ln for ln in compared.splitlines() if "<line" in ln or "<circle" in ln]
        # legend swatch lines are extra; every chart line must be identical
        assert [ln for ln in compared_lines if 'class="legend' not in ln and
                "legend" not in ln][:len(single_lines)] == single_lines

    def test_capacity_cap(self, toy_profile):
        g = toy_geometry(toy_profile)
        with pytest.raises(CapacityError):
            render_comparison([g] * 5)
        with pytest.raises(CapacityError):
            render_comparison([])

    def test_mismatched_domains_rejected(self, toy_profile):
        mini = MachineProfile("mini", [Ceiling("peak", "compute", 120.0)],
                              [Ceiling("mem", "bandwidth", 60.0)])
        g1 = build_geometry(toy_profile, dataset_id="a")
        g2 = build_geometry(mini, dataset_id="b")
        with pytest.raises(ValidationError):
            render_comparison([g1, g2])

    def test_datasets_use_distinct_colors(self, toy_profile):
        mini = MachineProfile("mini", [Ceiling("peak", "compute", 120.0)],
                              [Ceiling("mem", "bandwidth", 60.0)])
        domain = default_domain([toy_profile, mini])
        geoms = [build_geometry(toy_profile, domain=domain, dataset_id="toy"),
                 build_geometry(mini, domain=domain, dataset_id="mini")]
        root = parse(render_comparison(geoms))
        strokes = {line.get("data-ceiling"): line.get("stroke")
                   for line in elements_by_class(root, "ceiling")}
        assert strokes["FMA"] == strokes["DRAM"]  # same dataset, one color
        assert strokes["FMA"] != strokes["peak"]  # different datasets differ
