import { describe, expect, it } from 'vitest';

import { ApiClient, ApiError } from '../src/api.js';
import { describeBound, describePoint, topEnvelope } from '../src/whatif.js';

import analyzeAi4 from './fixtures/analyze_toy_ai4.json';
import type { BoundAnalysisPayload, PointPayload } from '../src/types.js';

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { 'content-type': 'application/json' },
  });
}

describe('ApiClient', () => {
  it('builds the documented endpoint URLs', async () => {
    const seen: string[] = [];
    const client = new ApiClient('http://svc:8080', async (url) => {
      seen.push(url);
      return jsonResponse([]);
    });
    await client.listMachines();
    await client.fetchGeometry('abcd1234', { xMin: 1, xMax: 2 });
    await client.analyze('abcd1234', 2, 40);
    expect(seen).toEqual([
      'http://svc:8080/api/v1/machines',
      'http://svc:8080/api/v1/machines/abcd1234/geometry?x_min=1&x_max=2',
      'http://svc:8080/api/v1/machines/abcd1234/analyze?ai=2&gflops=40',
    ]);
  });

  it('surfaces the error envelope message', async () => {
    const client = new ApiClient('', async () =>
      jsonResponse({ error: { code: 'not_found', message: "no dataset with id 'x'" } }, 404),
    );
    await expect(client.listMachines()).rejects.toThrowError(/no dataset with id/);
    await expect(client.listMachines()).rejects.toMatchObject({ status: 404 });
  });

  it('wraps network failures as ApiError with status 0', async () => {
    const client = new ApiClient('', async () => {
      throw new TypeError('fetch failed');
    });
    await expect(client.listMachines()).rejects.toBeInstanceOf(ApiError);
    await expect(client.listMachines()).rejects.toMatchObject({ status: 0 });
  });
});

describe('analyze payload helpers', () => {
  const rows = analyzeAi4 as BoundAnalysisPayload[];

  it('finds the top-envelope row', () => {
    const top = topEnvelope(rows);
    expect(top?.is_top).toBe(true);
    expect(top?.attainable_gflops).toBe(160);
  });

  it('readout text carries the payload values verbatim', () => {
    const text = describeBound(rows);
    expect(text).toContain('attainable 160 GFLOP/s');
    expect(text).toContain('FMA × L1');
  });

  it('tooltip text formats a marked point from its payload fields', () => {
    const point: PointPayload = {
      x: 4, y: 160, label: 'FMA × DRAM', kind: 'intersection', source: ['FMA', 'DRAM'],
    };
    expect(describePoint(point)).toBe('FMA × DRAM: 4 FLOPs/Byte, 160 GFLOP/s (FMA × DRAM)');
  });
});
