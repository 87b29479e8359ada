import { ApiClient } from './api.js';
import { RooflineChart } from './chart.js';
import { nearestMarker } from './picking.js';
import { createViewState, selectPoint, setActive, setWhatIf, ViewState } from './state.js';
import type { GeometryPayload, MachineSummary, PointPayload } from './types.js';
import { clampToDomain, describeBound, describePoint, ghostFor } from './whatif.js';

/**
 * The explorer page: dataset switcher, selectable chart points, and the
 * what-if intensity slider. All numbers shown come from service payloads.
 */
export class RooflineApp {
  readonly chart: RooflineChart;
  state: ViewState | null = null;
  machines: MachineSummary[] = [];

  private readonly doc: Document;
  private readonly banner: HTMLElement;
  private readonly switcher: HTMLElement;
  private readonly tooltip: HTMLElement;
  private readonly whatifPanel: HTMLElement;
  private readonly slider: HTMLInputElement;
  private readonly readout: HTMLElement;
  private geometrySeq = 0;
  private analyzeSeq = 0;

  constructor(readonly root: HTMLElement, readonly api: ApiClient) {
    this.doc = root.ownerDocument;
    root.replaceChildren();

    this.banner = this.el('div', 'banner');
    this.banner.hidden = true;
    this.switcher = this.el('nav', 'switcher');
    const chartHost = this.el('div', 'chart-host');
    this.tooltip = this.el('div', 'tooltip');
    this.tooltip.hidden = true;

    this.whatifPanel = this.el('div', 'whatif');
    this.whatifPanel.hidden = true;
    const sliderLabel = this.el('label', 'whatif-label');
    sliderLabel.textContent = 'What-if intensity (log2):';
    this.slider = this.el('input', 'whatif-slider') as HTMLInputElement;
    this.slider.type = 'range';
    this.slider.step = '0.01';
    this.readout = this.el('div', 'whatif-readout');
    this.whatifPanel.append(sliderLabel, this.slider, this.readout);

    root.append(this.banner, this.switcher, chartHost, this.tooltip, this.whatifPanel);

    this.chart = new RooflineChart(chartHost);
    this.chart.svg.addEventListener('click', (evt) => this.handleChartClick(evt as MouseEvent));
    this.slider.addEventListener('input', () => {
      void this.handleSlider(Number(this.slider.value));
    });
  }

  private el(tag: string, cls: string): HTMLElement {
    const node = this.doc.createElement(tag) as HTMLElement;
    node.className = cls;
    return node;
  }

  private showBanner(message: string): void {
    this.banner.textContent = message;
    this.banner.hidden = false;
  }

  private clearBanner(): void {
    this.banner.hidden = true;
    this.banner.textContent = '';
  }

  async init(): Promise<void> {
    try {
      this.machines = await this.api.listMachines();
    } catch (err) {
      this.showBanner(`cannot load machine list: ${(err as Error).message}`);
      return;
    }
    if (this.machines.length === 0) {
      this.showBanner('no datasets in the store yet');
      return;
    }
    const ids = this.machines.slice(0, 4).map((m) => m.id);
    this.state = createViewState(ids);
    this.renderSwitcher();
    await this.switchTo(this.state.activeDatasetId);
  }

  private renderSwitcher(): void {
    this.switcher.replaceChildren();
    if (!this.state) return;
    for (const id of this.state.selectedDatasetIds) {
      const machine = this.machines.find((m) => m.id === id);
      const button = this.el('button', 'dataset-tab') as HTMLButtonElement;
      button.dataset.id = id;
      button.textContent = machine ? machine.machine_name : id;
      button.dataset.active = String(id === this.state.activeDatasetId);
      button.addEventListener('click', () => {
        void this.switchTo(id);
      });
      this.switcher.appendChild(button);
    }
  }

  /** Fetch and draw a dataset; on failure the previous chart stays up. */
  async switchTo(id: string): Promise<void> {
    if (!this.state) return;
    const seq = ++this.geometrySeq;
    let geometry: GeometryPayload;
    try {
      geometry = await this.api.fetchGeometry(id);
    } catch (err) {
      this.showBanner(`cannot load dataset ${id}: ${(err as Error).message}`);
      return;
    }
    if (seq !== this.geometrySeq) return; // superseded by a later switch
    this.clearBanner();
    this.state = setActive(this.state, id);
    this.chart.render(geometry);
    this.tooltip.hidden = true;
    this.whatifPanel.hidden = true;
    this.chart.clearGhost();
    this.renderSwitcher();
  }

  handleChartClick(evt: MouseEvent): void {
    if (!this.state || !this.chart.currentGeometry) return;
    const rect = this.chart.svg.getBoundingClientRect();
    const px = evt.clientX - rect.left;
    const py = evt.clientY - rect.top;
    const markers = this.chart.markers();
    const hit = nearestMarker(markers, px, py);
    if (hit === -1) {
      this.state = selectPoint(this.state, null);
      this.chart.highlight(null);
      this.tooltip.hidden = true;
      this.whatifPanel.hidden = true;
      this.chart.clearGhost();
      return;
    }
    const point = (markers[hit] as { point: PointPayload }).point;
    this.state = selectPoint(this.state, point);
    this.chart.highlight(point);
    this.tooltip.textContent = describePoint(point);
    this.tooltip.hidden = false;
    if (point.kind === 'kernel') {
      this.openWhatIf(point);
    } else {
      this.whatifPanel.hidden = true;
      this.chart.clearGhost();
    }
  }

  private openWhatIf(kernel: PointPayload): void {
    const domain = (this.chart.currentGeometry as GeometryPayload).domain;
    this.slider.min = String(Math.log2(domain.x_min));
    this.slider.max = String(Math.log2(domain.x_max));
    this.slider.value = String(Math.log2(kernel.x));
    this.readout.textContent = '';
    this.whatifPanel.hidden = false;
    this.chart.setGhost(kernel.x, kernel.y);
  }

  /** Slider position is log2 intensity; re-queries /analyze on every move. */
  async handleSlider(log2Intensity: number): Promise<void> {
    if (!this.state?.selectedPoint || !this.chart.currentGeometry) return;
    const kernel = this.state.selectedPoint;
    const domain = this.chart.currentGeometry.domain;
    const intensity = clampToDomain(2 ** log2Intensity, domain);
    this.state = setWhatIf(this.state, intensity);
    const ghost = ghostFor(kernel, intensity);
    this.chart.setGhost(ghost.x, ghost.y);

    const seq = ++this.analyzeSeq;
    try {
      const rows = await this.api.analyze(this.state.activeDatasetId, intensity, kernel.y);
      if (seq !== this.analyzeSeq) return; // a newer slider move is in flight
      this.readout.textContent = describeBound(rows);
    } catch (err) {
      if (seq !== this.analyzeSeq) return;
      // ghost stays: only the numeric readout is replaced by the error
      this.readout.textContent = `analysis unavailable: ${(err as Error).message}`;
    }
  }
}
