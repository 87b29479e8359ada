import type { BoundAnalysisPayload, ChartDomain, PointPayload } from './types.js';

/** The top-envelope row of an analyze response. */
export function topEnvelope(rows: BoundAnalysisPayload[]): BoundAnalysisPayload | undefined {
  return rows.find((r) => r.is_top);
}

/** Slider values released outside the chart clamp to the domain edges. */
export function clampToDomain(intensity: number, domain: ChartDomain): number {
  return Math.min(Math.max(intensity, domain.x_min), domain.x_max);
}

/** Ghost marker position: projected intensity at the kernel's achieved rate. */
export function ghostFor(kernel: PointPayload, intensity: number): { x: number; y: number } {
  return { x: intensity, y: kernel.y };
}

function show(value: number): string {
  return String(value);
}

/**
 * Human-readable bound readout. Every number is a verbatim payload field;
 * the client never recomputes roofline arithmetic.
 */
export function describeBound(rows: BoundAnalysisPayload[]): string {
  const top = topEnvelope(rows);
  if (!top) return 'no analysis available';
  const [compute, bandwidth] = top.ceiling_pair;
  return (
    `attainable ${show(top.attainable_gflops)} GFLOP/s, ` +
    `${top.classification.replace('_', '-')}, ` +
    `efficiency ${show(top.efficiency)} ` +
    `(top envelope ${compute} × ${bandwidth})`
  );
}

/** Tooltip text for a selected marked point: payload values verbatim. */
export function describePoint(point: PointPayload): string {
  const source = Array.isArray(point.source)
    ? `${point.source[0]} × ${point.source[1]}`
    : point.source;
  return `${point.label}: ${show(point.x)} FLOPs/Byte, ${show(point.y)} GFLOP/s (${source})`;
}
