/**
 * Minimal deterministic SVG chart primitives.
 *
 * Everything is rendered from fixed styles and fixed-precision coordinates,
 * so identical inputs produce byte-identical files.
 */

export interface Extent {
  min: number;
  max: number;
}

export interface AxisSpec {
  label: string;
  extent: Extent;
  log?: boolean;
}

export const PALETTE = ['#1f77b4', '#d62728', '#2ca02c', '#9467bd', '#ff7f0e', '#8c564b'];
export const DASHES = ['', '6,3', '2,2', '8,3,2,3', '4,4', '1,3'];
export const MARKERS = ['circle', 'square', 'diamond', 'triangle', 'cross', 'plus'] as const;
export type Marker = (typeof MARKERS)[number];

const WIDTH = 640;
const HEIGHT = 420;
const MARGIN = { left: 64, right: 16, top: 34, bottom: 46 };

export function fmt(x: number): string {
  if (!Number.isFinite(x)) throw new Error(`non-finite coordinate: ${x}`);
  return x.toFixed(2);
}

function fmtTick(x: number): string {
  const a = Math.abs(x);
  if (a !== 0 && (a >= 1e4 || a < 1e-3)) return x.toExponential(0);
  return String(Number(x.toPrecision(6)));
}

export class Panel {
  private parts: string[] = [];
  readonly x0 = MARGIN.left;
  readonly x1 = WIDTH - MARGIN.right;
  readonly y0 = HEIGHT - MARGIN.bottom;
  readonly y1 = MARGIN.top;

  constructor(
    readonly xAxis: AxisSpec,
    readonly yAxis: AxisSpec,
    readonly title: string,
  ) {}

  private scale(v: number, axis: AxisSpec, p0: number, p1: number): number {
    let { min, max } = axis.extent;
    let t = v;
    if (axis.log) {
      if (v <= 0 || min <= 0) throw new Error(`log axis '${axis.label}' needs positive values`);
      t = Math.log10(v);
      min = Math.log10(min);
      max = Math.log10(max);
    }
    const span = max - min || 1;
    return p0 + ((t - min) / span) * (p1 - p0);
  }

  px(v: number): number {
    return this.scale(v, this.xAxis, this.x0, this.x1);
  }

  py(v: number): number {
    return this.scale(v, this.yAxis, this.y0, this.y1);
  }

  private ticks(axis: AxisSpec): number[] {
    const { min, max } = axis.extent;
    if (axis.log) {
      const lo = Math.ceil(Math.log10(min) - 1e-9);
      const hi = Math.floor(Math.log10(max) + 1e-9);
      const out: number[] = [];
      for (let e = lo; e <= hi; e++) out.push(Math.pow(10, e));
      return out.length >= 2 ? out : [min, max];
    }
    const span = max - min || 1;
    const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
    const mult = span / step > 8 ? 2 : 1;
    const out: number[] = [];
    for (let v = Math.ceil(min / (step * mult)) * step * mult; v <= max + 1e-12 * span; v += step * mult) {
      out.push(Number(v.toPrecision(12)));
    }
    return out;
  }

  frame(): void {
    const p = this.parts;
    p.push(`<rect x="${fmt(this.x0)}" y="${fmt(this.y1)}" width="${fmt(this.x1 - this.x0)}" height="${fmt(this.y0 - this.y1)}" fill="none" stroke="#333" stroke-width="1"/>`);
    p.push(`<text x="${fmt((this.x0 + this.x1) / 2)}" y="18" text-anchor="middle" font-size="13" font-family="sans-serif">${this.title}</text>`);
    for (const v of this.ticks(this.xAxis)) {
      const x = this.px(v);
      p.push(`<line x1="${fmt(x)}" y1="${fmt(this.y0)}" x2="${fmt(x)}" y2="${fmt(this.y0 + 4)}" stroke="#333"/>`);
      p.push(`<text x="${fmt(x)}" y="${fmt(this.y0 + 17)}" text-anchor="middle" font-size="10" font-family="sans-serif">${fmtTick(v)}</text>`);
    }
    for (const v of this.ticks(this.yAxis)) {
      const y = this.py(v);
      p.push(`<line x1="${fmt(this.x0 - 4)}" y1="${fmt(y)}" x2="${fmt(this.x0)}" y2="${fmt(y)}" stroke="#333"/>`);
      p.push(`<text x="${fmt(this.x0 - 7)}" y="${fmt(y + 3)}" text-anchor="end" font-size="10" font-family="sans-serif">${fmtTick(v)}</text>`);
    }
    p.push(`<text x="${fmt((this.x0 + this.x1) / 2)}" y="${fmt(HEIGHT - 10)}" text-anchor="middle" font-size="12" font-family="sans-serif">${this.xAxis.label}</text>`);
    p.push(`<text x="16" y="${fmt((this.y0 + this.y1) / 2)}" text-anchor="middle" font-size="12" font-family="sans-serif" transform="rotate(-90 16 ${fmt((this.y0 + this.y1) / 2)})">${this.yAxis.label}</text>`);
  }

  polyline(xs: number[], ys: number[], color: string, dash: string): void {
    const pts: string[] = [];
    for (let i = 0; i < xs.length; i++) {
      pts.push(`${fmt(this.px(xs[i]))},${fmt(this.py(ys[i]))}`);
    }
    const dashAttr = dash ? ` stroke-dasharray="${dash}"` : '';
    this.parts.push(`<polyline points="${pts.join(' ')}" fill="none" stroke="${color}" stroke-width="1.4"${dashAttr}/>`);
  }

  marker(x: number, y: number, color: string, kind: Marker): void {
    const cx = this.px(x);
    const cy = this.py(y);
    const r = 3.2;
    switch (kind) {
      case 'circle':
        this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${fmt(r)}" fill="${color}"/>`);
        break;
      case 'square':
        this.parts.push(`<rect x="${fmt(cx - r)}" y="${fmt(cy - r)}" width="${fmt(2 * r)}" height="${fmt(2 * r)}" fill="${color}"/>`);
        break;
      case 'diamond':
        this.parts.push(`<path d="M ${fmt(cx)} ${fmt(cy - r - 1)} L ${fmt(cx + r + 1)} ${fmt(cy)} L ${fmt(cx)} ${fmt(cy + r + 1)} L ${fmt(cx - r - 1)} ${fmt(cy)} Z" fill="${color}"/>`);
        break;
      case 'triangle':
        this.parts.push(`<path d="M ${fmt(cx)} ${fmt(cy - r - 1)} L ${fmt(cx + r + 1)} ${fmt(cy + r)} L ${fmt(cx - r - 1)} ${fmt(cy + r)} Z" fill="${color}"/>`);
        break;
      case 'cross':
        this.parts.push(`<path d="M ${fmt(cx - r)} ${fmt(cy - r)} L ${fmt(cx + r)} ${fmt(cy + r)} M ${fmt(cx - r)} ${fmt(cy + r)} L ${fmt(cx + r)} ${fmt(cy - r)}" stroke="${color}" stroke-width="1.6"/>`);
        break;
      case 'plus':
        this.parts.push(`<path d="M ${fmt(cx - r)} ${fmt(cy)} L ${fmt(cx + r)} ${fmt(cy)} M ${fmt(cx)} ${fmt(cy - r)} L ${fmt(cx)} ${fmt(cy + r)}" stroke="${color}" stroke-width="1.6"/>`);
        break;
    }
  }

  legend(entries: { label: string; color: string; dash?: string; marker?: Marker }[]): void {
    let y = this.y1 + 14;
    for (const e of entries) {
      const x = this.x1 - 150;
      if (e.marker) {
        this.markerAtPixels(x + 10, y - 3, e.color, e.marker);
      } else {
        const dashAttr = e.dash ? ` stroke-dasharray="${e.dash}"` : '';
        this.parts.push(`<line x1="${fmt(x)}" y1="${fmt(y - 3)}" x2="${fmt(x + 22)}" y2="${fmt(y - 3)}" stroke="${e.color}" stroke-width="1.4"${dashAttr}/>`);
      }
      this.parts.push(`<text x="${fmt(x + 28)}" y="${fmt(y)}" font-size="10" font-family="sans-serif">${e.label}</text>`);
      y += 14;
    }
  }

  private markerAtPixels(cx: number, cy: number, color: string, kind: Marker): void {
    if (kind === 'circle') {
      this.parts.push(`<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="3.20" fill="${color}"/>`);
    } else {
      this.parts.push(`<rect x="${fmt(cx - 3.2)}" y="${fmt(cy - 3.2)}" width="6.40" height="6.40" fill="${color}"/>`);
    }
  }

  render(): string {
    return this.parts.join('\n');
  }
}

export function svgDocument(panels: Panel[]): string {
  const width = WIDTH * panels.length;
  const body = panels
    .map((panel, i) => `<g transform="translate(${i * WIDTH} 0)">\n${panel.render()}\n</g>`)
    .join('\n');
  return `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${HEIGHT}" viewBox="0 0 ${width} ${HEIGHT}">\n<rect width="${width}" height="${HEIGHT}" fill="white"/>\n${body}\n</svg>\n`;
}
