/**
 * Log-log efficiency figure: L1 error against wall-clock seconds, one
 * marker-and-line series per scheme, optionally using the trimmed error.
 */

import { writeFileSync } from 'fs';

import { ErrorRow, parseErrors } from './csv.js';
import { MARKERS, PALETTE, Panel, svgDocument } from './svg.js';

function logExtent(values: number[]): { min: number; max: number } {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (!(v > 0)) {
      throw new Error(`efficiency plot needs positive values, got ${v}`);
    }
    if (v < min) min = v;
    if (v > max) max = v;
  }
  return { min: min / 1.5, max: max * 1.5 };
}

export function plotEfficiency(errorsCsv: string, outPath: string, trimmed = false): void {
  const rows = parseErrors(errorsCsv);
  if (rows.length === 0) {
    throw new Error(`${errorsCsv}: no data rows`);
  }
  const pick = (r: ErrorRow) => (trimmed ? r.e_m_trimmed : r.e_m);
  const usable = rows.filter((r) => Number.isFinite(pick(r)) && pick(r) > 0 && r.seconds > 0);
  if (usable.length === 0) {
    throw new Error(`${errorsCsv}: no positive (error, seconds) pairs to plot`);
  }
  const schemes: string[] = [];
  for (const r of usable) {
    if (!schemes.includes(r.scheme)) schemes.push(r.scheme);
  }
  const panel = new Panel(
    { label: 'wall-clock seconds', extent: logExtent(usable.map((r) => r.seconds)), log: true },
    { label: trimmed ? 'trimmed L1 error' : 'L1 error', extent: logExtent(usable.map(pick)), log: true },
    trimmed ? 'efficiency (2% largest errors discarded)' : 'efficiency',
  );
  panel.frame();
  const legend: { label: string; color: string; marker: (typeof MARKERS)[number] }[] = [];
  schemes.forEach((scheme, s) => {
    const color = PALETTE[s % PALETTE.length];
    const marker = MARKERS[s % MARKERS.length];
    const series = usable
      .filter((r) => r.scheme === scheme)
      .sort((a, b) => a.m - b.m);
    panel.polyline(series.map((r) => r.seconds), series.map(pick), color, '2,2');
    for (const r of series) {
      panel.marker(r.seconds, pick(r), color, marker);
    }
    legend.push({ label: scheme, color, marker });
  });
  panel.legend(legend);
  writeFileSync(outPath, svgDocument([panel]));
}
