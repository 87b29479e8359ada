import type { BoundAnalysisPayload, GeometryPayload, MachineSummary } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
    this.name = 'ApiError';
  }
}

/** Thin typed client for the roofline service; no roofline math happens here. */
export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(readonly baseUrl: string = '', fetchFn?: FetchLike) {
    this.fetchFn = fetchFn ?? ((input, init) => globalThis.fetch(input, init));
  }

  private async getJson<T>(path: string): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`);
    } catch (err) {
      throw new ApiError(`service unreachable: ${String(err)}`, 0);
    }
    if (!response.ok) {
      let message = `HTTP ${response.status}`;
      try {
        const body = (await response.json()) as { error?: { message?: string } };
        if (body.error?.message) message = body.error.message;
      } catch {
        /* non-JSON error body: keep the status text */
      }
      throw new ApiError(message, response.status);
    }
    return (await response.json()) as T;
  }

  listMachines(): Promise<MachineSummary[]> {
    return this.getJson('/api/v1/machines');
  }

  fetchGeometry(id: string, domain?: { xMin: number; xMax: number }): Promise<GeometryPayload> {
    const query = domain
      ? `?x_min=${encodeURIComponent(domain.xMin)}&x_max=${encodeURIComponent(domain.xMax)}`
      : '';
    return this.getJson(`/api/v1/machines/${encodeURIComponent(id)}/geometry${query}`);
  }

  analyze(id: string, ai: number, gflops: number): Promise<BoundAnalysisPayload[]> {
    return this.getJson(
      `/api/v1/machines/${encodeURIComponent(id)}/analyze` +
        `?ai=${encodeURIComponent(ai)}&gflops=${encodeURIComponent(gflops)}`,
    );
  }
}
