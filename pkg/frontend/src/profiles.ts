/**
 * Concentration-profile overlays: one curve per (input file, component), with
 * color keyed to the file (scheme) and dash pattern to the component, plus an
 * optional enlarged view of a z-window.
 */

import { writeFileSync } from 'fs';
import { basename } from 'path';

import { parseProfile, ProfileData } from './csv.js';
import { DASHES, PALETTE, Panel, svgDocument } from './svg.js';

export interface ProfileInput {
  path: string;
  label?: string;
}

export interface ZoomWindow {
  zMin: number;
  zMax: number;
  /** 1-based component numbers to include; default all */
  components?: number[];
}

function inferLabel(path: string): string {
  return basename(path).replace(/\.csv$/, '');
}

function extent(values: number[]): { min: number; max: number } {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min === max) {
    min -= 0.5;
    max += 0.5;
  }
  return { min, max };
}

function buildPanel(
  datasets: { label: string; data: ProfileData }[],
  title: string,
  zWindow: { min: number; max: number },
  components: number[],
): Panel {
  const ys: number[] = [0];
  for (const { data } of datasets) {
    for (const comp of components) {
      for (let j = 0; j < data.z.length; j++) {
        if (data.z[j] >= zWindow.min && data.z[j] <= zWindow.max) {
          ys.push(data.c[comp - 1][j]);
        }
      }
    }
  }
  const yExt = extent(ys);
  const pad = 0.05 * (yExt.max - yExt.min);
  const panel = new Panel(
    { label: 'z', extent: zWindow },
    { label: 'concentration', extent: { min: yExt.min - pad, max: yExt.max + pad } },
    title,
  );
  panel.frame();
  const legend: { label: string; color: string; dash?: string }[] = [];
  datasets.forEach(({ label, data }, d) => {
    const color = PALETTE[d % PALETTE.length];
    for (const comp of components) {
      const dash = DASHES[(comp - 1) % DASHES.length];
      const xs: number[] = [];
      const vals: number[] = [];
      for (let j = 0; j < data.z.length; j++) {
        if (data.z[j] >= zWindow.min && data.z[j] <= zWindow.max) {
          xs.push(data.z[j]);
          vals.push(data.c[comp - 1][j]);
        }
      }
      if (xs.length > 1) panel.polyline(xs, vals, color, dash);
      legend.push({ label: `${label} c${comp}`, color, dash });
    }
  });
  if (legend.length <= 8) panel.legend(legend);
  return panel;
}

export function plotProfiles(inputs: ProfileInput[], outPath: string, zoom?: ZoomWindow): void {
  if (inputs.length === 0) {
    throw new Error('plotProfiles needs at least one CSV');
  }
  const datasets = inputs.map((input) => ({
    label: input.label ?? inferLabel(input.path),
    data: parseProfile(input.path),
  }));
  const n = datasets[0].data.nComponents;
  for (const d of datasets) {
    if (d.data.nComponents !== n) {
      throw new Error(`component count mismatch: ${d.label} has ${d.data.nComponents}, expected ${n}`);
    }
  }
  const all = Array.from({ length: n }, (_, i) => i + 1);
  const panels = [buildPanel(datasets, 'concentration profiles', { min: 0, max: 1 }, all)];
  if (zoom) {
    const comps = zoom.components ?? all;
    for (const comp of comps) {
      if (comp < 1 || comp > n) {
        throw new Error(`zoom component ${comp} out of range 1..${n}`);
      }
    }
    panels.push(
      buildPanel(datasets, `enlarged view z in [${zoom.zMin}, ${zoom.zMax}]`,
        { min: zoom.zMin, max: zoom.zMax }, comps),
    );
  }
  writeFileSync(outPath, svgDocument(panels));
}
