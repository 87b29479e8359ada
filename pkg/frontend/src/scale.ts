/** log2 pixel mapping and tick labels, matching the server-side SVG policy. */

export class Log2Scale {
  private readonly logLo: number;
  private readonly logSpan: number;

  constructor(readonly lo: number, readonly hi: number, readonly extent: number) {
    if (!(lo > 0) || !(hi > 0) || lo === hi) {
      throw new RangeError(`invalid log2 scale bounds [${lo}, ${hi}]`);
    }
    this.logLo = Math.log2(lo);
    this.logSpan = Math.log2(hi) - this.logLo;
  }

  map(value: number): number {
    return (this.extent * (Math.log2(value) - this.logLo)) / this.logSpan;
  }

  mapLog2(l2: number): number {
    return (this.extent * (l2 - this.logLo)) / this.logSpan;
  }
}

/** Plain decimal below 1024, 2^n notation from 1024 up (same as the SVG renderer). */
export function tickLabel(exponent: number): string {
  if (exponent >= 10) return `2^${exponent}`;
  if (exponent >= 0) return String(2 ** exponent);
  // 2^-n has exactly n decimal digits, so toFixed is exact
  return (2 ** exponent).toFixed(-exponent);
}
