/** Wire types of the /api/v1 payloads. The UI displays these values as-is. */

export interface MachineSummary {
  id: string;
  machine_name: string;
  created: string;
  n_trials: number;
  fingerprint: string;
}

export interface ChartDomain {
  x_min: number;
  x_max: number;
  y_min: number;
  y_max: number;
}

export type SegmentKind = 'compute' | 'bandwidth' | 'envelope';

export interface SegmentPayload {
  ceiling_name: string;
  kind: SegmentKind;
  /** endpoints in (log2 x, log2 y) space */
  p0: [number, number];
  p1: [number, number];
  is_top: boolean;
}

export type PointKind = 'intersection' | 'kernel' | 'envelope_corner';

export interface PointPayload {
  x: number;
  y: number;
  label: string;
  kind: PointKind;
  source: [string, string] | string;
}

export interface GeometryPayload {
  dataset_id: string;
  domain: ChartDomain;
  segments: SegmentPayload[];
  points: PointPayload[];
  x_ticks: number[];
  y_ticks: number[];
}

export interface BoundAnalysisPayload {
  ceiling_pair: [string, string];
  ridge_point: number;
  attainable_gflops: number;
  classification: string;
  efficiency: number;
  is_top: boolean;
}
