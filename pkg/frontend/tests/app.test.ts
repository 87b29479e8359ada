import { beforeEach, describe, expect, it } from 'vitest';

import { ApiClient } from '../src/api.js';
import { RooflineApp } from '../src/app.js';

import machines from './fixtures/machines.json';
import geometryToy from './fixtures/geometry_toy.json';
import geometryMini from './fixtures/geometry_mini.json';
import analyzeAi2 from './fixtures/analyze_toy_ai2.json';
import analyzeAi4 from './fixtures/analyze_toy_ai4.json';

const TOY = 'aaaa1111';
const MINI = 'bbbb2222';

class StubService {
  offline = false;
  requests: string[] = [];

  fetch = async (url: string): Promise<Response> => {
    this.requests.push(url);
    if (this.offline) throw new TypeError('fetch failed');
    const body = this.route(url);
    if (body === undefined) {
      return new Response(
        JSON.stringify({ error: { code: 'not_found', message: `no route ${url}` } }),
        { status: 404, headers: { 'content-type': 'application/json' } },
      );
    }
    return new Response(JSON.stringify(body), {
      status: 200,
      headers: { 'content-type': 'application/json' },
    });
  };

  private route(url: string): unknown {
    const { pathname, searchParams } = new URL(url, 'http://stub');
    if (pathname === '/api/v1/machines') return machines;
    if (pathname === `/api/v1/machines/${TOY}/geometry`) return geometryToy;
    if (pathname === `/api/v1/machines/${MINI}/geometry`) return geometryMini;
    if (pathname === `/api/v1/machines/${TOY}/analyze`) {
      return searchParams.get('ai') === '4' ? analyzeAi4 : analyzeAi2;
    }
    return undefined;
  }
}

function clickAt(app: RooflineApp, cx: number, cy: number): void {
  app.chart.svg.dispatchEvent(new MouseEvent('click', { clientX: cx, clientY: cy }));
}

async function freshApp(): Promise<{ app: RooflineApp; stub: StubService; root: HTMLElement }> {
  const stub = new StubService();
  const root = document.createElement('div');
  document.body.appendChild(root);
  const app = new RooflineApp(root, new ApiClient('', stub.fetch));
  await app.init();
  return { app, stub, root };
}

beforeEach(() => {
  document.body.replaceChildren();
});

describe('point inspector (acceptance 11)', () => {
  it('shows exactly the geometry payload values for the toy corner (4, 160)', async () => {
    const { app, root } = await freshApp();
    const corner = app.chart.markers().find(
      (m) => m.point.kind === 'intersection' && m.point.x === 4,
    );
    expect(corner).toBeDefined();
    clickAt(app, corner!.cx, corner!.cy);

    const tooltip = root.querySelector('.tooltip') as HTMLElement;
    expect(tooltip.hidden).toBe(false);
    expect(tooltip.textContent).toContain('FMA × DRAM');
    expect(tooltip.textContent).toContain('4 FLOPs/Byte');
    expect(tooltip.textContent).toContain('160 GFLOP/s');
  });

  it('clicking empty space clears the selection', async () => {
    const { app, root } = await freshApp();
    const corner = app.chart.markers()[0]!;
    clickAt(app, corner.cx, corner.cy);
    clickAt(app, 10, 10); // top-left margin: nothing within 8 px
    expect((root.querySelector('.tooltip') as HTMLElement).hidden).toBe(true);
    expect(app.state?.selectedPoint).toBeNull();
  });

  it('ties within the pick radius go to the nearest, then payload order', async () => {
    const { app } = await freshApp();
    // the toy envelope corner coincides with the FMA x L1 intersection; the
    // intersection comes first in the payload and must win the exact tie
    const twins = app.chart.markers().filter((m) => m.point.x === 0.5 && m.point.y === 160);
    expect(twins.length).toBe(2);
    clickAt(app, twins[0]!.cx, twins[0]!.cy);
    expect(app.state?.selectedPoint?.kind).toBe('intersection');
  });
});

describe('dataset switcher (acceptance 12)', () => {
  it('swaps envelopes without replacing the page or chart element', async () => {
    const { app, root } = await freshApp();
    const svgBefore = app.chart.svg;
    const envelope = () =>
      [...app.chart.svg.querySelectorAll('line.envelope')].map((l) =>
        l.getAttribute('data-ceiling'),
      );
    expect(envelope()).toEqual(['L1', 'FMA']);

    const tabs = [...root.querySelectorAll('.dataset-tab')] as HTMLButtonElement[];
    expect(tabs.map((t) => t.textContent)).toEqual(['toy', 'mini']);
    tabs[1]!.click();
    await new Promise((resolve) => setTimeout(resolve, 0));

    expect(envelope()).toEqual(['mem', 'peak']); // the other dataset's envelope
    expect(app.chart.svg).toBe(svgBefore); // same element: no reload, no rebuild
    expect(app.state?.activeDatasetId).toBe(MINI);
  });

  it('keeps the prior chart and shows a banner when the service is down', async () => {
    const { app, stub, root } = await freshApp();
    await app.switchTo(MINI);
    const before = app.chart.svg.innerHTML;

    stub.offline = true;
    await app.switchTo(TOY);

    const banner = root.querySelector('.banner') as HTMLElement;
    expect(banner.hidden).toBe(false);
    expect(banner.textContent).toContain('cannot load dataset');
    expect(app.chart.svg.innerHTML).toBe(before); // prior chart intact
    expect(app.state?.activeDatasetId).toBe(MINI);
  });
});

describe('what-if slider (acceptance 13)', () => {
  async function selectStencil(app: RooflineApp) {
    const kernel = app.chart.markers().find((m) => m.point.kind === 'kernel');
    expect(kernel).toBeDefined();
    clickAt(app, kernel!.cx, kernel!.cy);
    return kernel!;
  }

  it('moving intensity 2 -> 4 shows the analyze payload top-envelope bound', async () => {
    const { app, root } = await freshApp();
    const kernel = await selectStencil(app);
    expect(kernel.point.label).toBe('stencil');

    const panel = root.querySelector('.whatif') as HTMLElement;
    expect(panel.hidden).toBe(false);

    await app.handleSlider(Math.log2(4));

    const readout = root.querySelector('.whatif-readout') as HTMLElement;
    expect(readout.textContent).toContain('attainable 160 GFLOP/s');
    const ghost = app.chart.svg.querySelector('.ghost-marker');
    expect(ghost?.getAttribute('data-x')).toBe('4');
    expect(ghost?.getAttribute('data-y')).toBe('40'); // achieved rate unchanged
  });

  it('slider at the current intensity keeps the ghost on the real marker', async () => {
    const { app } = await freshApp();
    const kernel = await selectStencil(app);
    await app.handleSlider(Math.log2(kernel.point.x));
    const ghost = app.chart.svg.querySelector('.ghost-marker');
    expect(ghost?.getAttribute('cx')).toBe(String(kernel.cx));
    expect(ghost?.getAttribute('cy')).toBe(String(kernel.cy));
  });

  it('clamps off-domain slider values to the chart edges', async () => {
    const { app, stub } = await freshApp();
    await selectStencil(app);
    await app.handleSlider(12); // 2^12 is far beyond x_max = 8
    const analyzed = stub.requests.filter((u) => u.includes('/analyze'));
    expect(analyzed.at(-1)).toContain('ai=8');
  });

  it('service errors replace the readout but keep the ghost', async () => {
    const { app, stub, root } = await freshApp();
    await selectStencil(app);
    stub.offline = true;
    await app.handleSlider(Math.log2(4));
    const readout = root.querySelector('.whatif-readout') as HTMLElement;
    expect(readout.textContent).toContain('analysis unavailable');
    expect(app.chart.svg.querySelector('.ghost-marker')).not.toBeNull();
  });
});
