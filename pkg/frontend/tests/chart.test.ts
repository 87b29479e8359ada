import { describe, expect, it } from 'vitest';

import { RooflineChart } from '../src/chart.js';
import type { GeometryPayload } from '../src/types.js';

import toyGeometry from './fixtures/geometry_toy.json';
import miniGeometry from './fixtures/geometry_mini.json';

function makeChart(): RooflineChart {
  const host = document.createElement('div');
  document.body.appendChild(host);
  return new RooflineChart(host);
}

function envelopeLines(chart: RooflineChart) {
  return [...chart.svg.querySelectorAll('line.envelope')];
}

describe('RooflineChart', () => {
  it('draws ceilings, an orange envelope, and data-tagged markers', () => {
    const chart = makeChart();
    chart.render(toyGeometry as GeometryPayload);
    expect(chart.svg.querySelectorAll('line.ceiling')).toHaveLength(4);
    const envelope = envelopeLines(chart);
    expect(envelope).toHaveLength(2);
    for (const line of envelope) expect(line.getAttribute('stroke')).toBe('#FFA500');
    const corners = chart.svg.querySelectorAll('circle[data-kind="intersection"]');
    expect(corners).toHaveLength(4);
    expect(chart.svg.querySelectorAll('circle[data-kind="kernel"]')).toHaveLength(1);
  });

  it('re-rendering the same payload yields identical markup', () => {
    const chart = makeChart();
    chart.render(toyGeometry as GeometryPayload);
    const first = chart.svg.innerHTML;
    chart.render(toyGeometry as GeometryPayload);
    expect(chart.svg.innerHTML).toBe(first);
  });

  it('marker pixels are the log2 projection of payload coordinates', () => {
    const chart = makeChart();
    chart.render(toyGeometry as GeometryPayload);
    const corner = chart.markers().find((m) => m.point.x === 4 && m.point.kind === 'intersection');
    expect(corner).toBeDefined();
    const [cx, cy] = chart.toPixel(4, 160);
    expect(corner?.cx).toBeCloseTo(cx, 10);
    expect(corner?.cy).toBeCloseTo(cy, 10);
    // toy domain x [0.125, 8], y [16, 1024]: x=4 sits 5/6 across the 840px extent
    expect(cx).toBeCloseTo(60 + (840 * 5) / 6, 10);
  });

  it('switching payloads replaces the envelope', () => {
    const chart = makeChart();
    chart.render(toyGeometry as GeometryPayload);
    const toyEnvelope = envelopeLines(chart).map((l) => l.getAttribute('data-ceiling'));
    chart.render(miniGeometry as GeometryPayload);
    const miniEnvelope = envelopeLines(chart).map((l) => l.getAttribute('data-ceiling'));
    expect(toyEnvelope).toEqual(['L1', 'FMA']);
    expect(miniEnvelope).toEqual(['mem', 'peak']);
  });

  it('ghost marker can be moved and cleared', () => {
    const chart = makeChart();
    chart.render(toyGeometry as GeometryPayload);
    chart.setGhost(2, 40);
    const ghost = chart.svg.querySelector('.ghost-marker');
    expect(ghost?.getAttribute('data-x')).toBe('2');
    chart.setGhost(4, 40);
    expect(chart.svg.querySelectorAll('.ghost-marker')).toHaveLength(1);
    chart.clearGhost();
    expect(chart.svg.querySelector('.ghost-marker')).toBeNull();
  });
});
