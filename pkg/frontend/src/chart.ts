import { Log2Scale, tickLabel } from './scale.js';
import type { GeometryPayload, PointPayload } from './types.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

const TOP_COLOR = '#FFA500';
const PALETTE = ['#1F77B4', '#2CA02C', '#D62728', '#9467BD', '#8C564B', '#17BECF'];

export interface ChartOptions {
  width: number;
  height: number;
  margin: number;
}

const DEFAULTS: ChartOptions = { width: 960, height: 640, margin: 60 };

export interface RenderedMarker {
  point: PointPayload;
  cx: number;
  cy: number;
  el: SVGCircleElement;
}

function svgEl<K extends keyof SVGElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const el = doc.createElementNS(SVG_NS, tag);
  for (const [key, value] of Object.entries(attrs)) el.setAttribute(key, value);
  return el;
}

/**
 * Renders one geometry payload into an SVG element. All coordinates come
 * from the payload; the chart only projects log2 values onto pixels.
 */
export class RooflineChart {
  readonly svg: SVGSVGElement;
  private readonly opts: ChartOptions;
  private readonly doc: Document;
  private renderedMarkers: RenderedMarker[] = [];
  private ghost: SVGCircleElement | null = null;
  private xScale: Log2Scale | null = null;
  private yScale: Log2Scale | null = null;
  private geometry: GeometryPayload | null = null;

  constructor(host: Element, opts: Partial<ChartOptions> = {}) {
    this.opts = { ...DEFAULTS, ...opts };
    this.doc = host.ownerDocument ?? document;
    this.svg = svgEl(this.doc, 'svg', {
      viewBox: `0 0 ${this.opts.width} ${this.opts.height}`,
      width: String(this.opts.width),
      height: String(this.opts.height),
      class: 'roofline-chart',
    });
    host.appendChild(this.svg);
  }

  get currentGeometry(): GeometryPayload | null {
    return this.geometry;
  }

  toPixel(x: number, y: number): [number, number] {
    if (!this.xScale || !this.yScale) throw new Error('chart has no geometry yet');
    const { margin } = this.opts;
    return [margin + this.xScale.map(x), margin + this.yScale.extent - this.yScale.map(y)];
  }

  markers(): readonly RenderedMarker[] {
    return this.renderedMarkers;
  }

  render(geometry: GeometryPayload): void {
    const { width, height, margin } = this.opts;
    const extentX = width - 2 * margin;
    const extentY = height - 2 * margin;
    this.geometry = geometry;
    this.xScale = new Log2Scale(geometry.domain.x_min, geometry.domain.x_max, extentX);
    this.yScale = new Log2Scale(geometry.domain.y_min, geometry.domain.y_max, extentY);
    this.svg.replaceChildren();
    this.renderedMarkers = [];
    this.ghost = null;

    this.svg.appendChild(svgEl(this.doc, 'rect', {
      width: String(width), height: String(height), fill: '#FFFFFF',
    }));
    this.renderAxes(geometry, extentX, extentY);
    this.renderSegments(geometry, extentY);
    this.renderMarkers(geometry);
  }

  private px(l2x: number): number {
    return this.opts.margin + (this.xScale as Log2Scale).mapLog2(l2x);
  }

  private py(l2y: number): number {
    const scale = this.yScale as Log2Scale;
    return this.opts.margin + scale.extent - scale.mapLog2(l2y);
  }

  private renderAxes(geometry: GeometryPayload, extentX: number, extentY: number): void {
    const { margin } = this.opts;
    const axes = svgEl(this.doc, 'g', { class: 'axes', 'font-size': '12' });
    for (const exp of geometry.x_ticks) {
      const x = this.px(exp);
      axes.appendChild(svgEl(this.doc, 'line', {
        class: 'grid', x1: String(x), y1: String(margin),
        x2: String(x), y2: String(margin + extentY), stroke: '#DDDDDD', 'stroke-width': '0.5',
      }));
      const label = svgEl(this.doc, 'text', {
        class: 'tick-label', x: String(x), y: String(margin + extentY + 18),
        'text-anchor': 'middle',
      });
      label.textContent = tickLabel(exp);
      axes.appendChild(label);
    }
    for (const exp of geometry.y_ticks) {
      const y = this.py(exp);
      axes.appendChild(svgEl(this.doc, 'line', {
        class: 'grid', x1: String(margin), y1: String(y),
        x2: String(margin + extentX), y2: String(y), stroke: '#DDDDDD', 'stroke-width': '0.5',
      }));
      const label = svgEl(this.doc, 'text', {
        class: 'tick-label', x: String(margin - 9), y: String(y + 4),
        'text-anchor': 'end',
      });
      label.textContent = tickLabel(exp);
      axes.appendChild(label);
    }
    axes.appendChild(svgEl(this.doc, 'rect', {
      class: 'frame', x: String(margin), y: String(margin),
      width: String(extentX), height: String(extentY),
      fill: 'none', stroke: '#333333', 'stroke-width': '1',
    }));
    this.svg.appendChild(axes);
  }

  private renderSegments(geometry: GeometryPayload, extentY: number): void {
    const lines = svgEl(this.doc, 'g', { class: 'lines' });
    const envelope: SVGElement[] = [];
    let ceilingIndex = 0;
    for (const seg of geometry.segments) {
      const attrs = {
        x1: String(this.px(seg.p0[0])), y1: String(this.py(seg.p0[1])),
        x2: String(this.px(seg.p1[0])), y2: String(this.py(seg.p1[1])),
        'data-ceiling': seg.ceiling_name,
      };
      if (seg.is_top) {
        envelope.push(svgEl(this.doc, 'line', {
          ...attrs, class: 'envelope', stroke: TOP_COLOR, 'stroke-width': '3.5',
        }));
      } else {
        const color = PALETTE[ceilingIndex % PALETTE.length] as string;
        ceilingIndex += 1;
        lines.appendChild(svgEl(this.doc, 'line', {
          ...attrs, class: 'ceiling', stroke: color, 'stroke-width': '1.5',
        }));
      }
    }
    for (const el of envelope) lines.appendChild(el); // envelope on top
    this.svg.appendChild(lines);
  }

  private renderMarkers(geometry: GeometryPayload): void {
    const group = svgEl(this.doc, 'g', { class: 'markers' });
    for (const point of geometry.points) {
      const [cx, cy] = this.toPixel(point.x, point.y);
      const styles: Record<string, Record<string, string>> = {
        envelope_corner: { r: '5', fill: TOP_COLOR, stroke: '#333333' },
        kernel: { r: '4.5', fill: '#D62728', stroke: '#FFFFFF' },
        intersection: { r: '4', fill: '#FFFFFF', stroke: '#333333' },
      };
      const el = svgEl(this.doc, 'circle', {
        class: 'marker', cx: String(cx), cy: String(cy),
        'data-kind': point.kind, 'data-label': point.label,
        'data-x': String(point.x), 'data-y': String(point.y),
        'stroke-width': '1.2',
        ...styles[point.kind],
      });
      group.appendChild(el);
      this.renderedMarkers.push({ point, cx, cy, el });
    }
    this.svg.appendChild(group);
  }

  highlight(point: PointPayload | null): void {
    for (const marker of this.renderedMarkers) {
      marker.el.setAttribute('data-selected', marker.point === point ? 'true' : 'false');
    }
  }

  /** Dashed projection marker for the what-if overlay. */
  setGhost(x: number, y: number): void {
    const [cx, cy] = this.toPixel(x, y);
    if (!this.ghost) {
      this.ghost = svgEl(this.doc, 'circle', {
        class: 'ghost-marker', r: '6', fill: 'none',
        stroke: '#D62728', 'stroke-width': '2', 'stroke-dasharray': '3 2',
      });
      this.svg.appendChild(this.ghost);
    }
    this.ghost.setAttribute('cx', String(cx));
    this.ghost.setAttribute('cy', String(cy));
    this.ghost.setAttribute('data-x', String(x));
    this.ghost.setAttribute('data-y', String(y));
  }

  clearGhost(): void {
    this.ghost?.remove();
    this.ghost = null;
  }
}
