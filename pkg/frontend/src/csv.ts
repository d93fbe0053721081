/**
 * Readers for the solver's CSV artifacts.
 *
 * Profile files carry `z,c1..cN,w1..wN` with one row per cell; errors.csv
 * carries `scheme,nu,Da,m,e_m,e_m_trimmed,theta_m,seconds`.  Both are plain
 * comma-separated numerics (no quoting), so parsing is done by hand and any
 * schema mismatch is reported with the offending column.
 */

import { readFileSync } from 'fs';

export interface ProfileData {
  /** cell-center positions */
  z: number[];
  /** concentrations per component, c[i][j] */
  c: number[][];
  /** conserved variables per component */
  w: number[][];
  nComponents: number;
}

export interface ErrorRow {
  scheme: string;
  nu: number;
  Da: number;
  m: number;
  e_m: number;
  e_m_trimmed: number;
  theta_m: number | null;
  seconds: number;
}

function splitLines(text: string): string[] {
  return text.split(/\r?\n/).filter((line) => line.length > 0);
}

export function parseProfile(path: string): ProfileData {
  const lines = splitLines(readFileSync(path, 'utf8'));
  if (lines.length === 0) {
    throw new Error(`${path}: empty file, nothing to plot`);
  }
  const header = lines[0].split(',');
  if (header[0] !== 'z') {
    throw new Error(`${path}: expected first column 'z', got '${header[0]}'`);
  }
  const n = (header.length - 1) / 2;
  if (!Number.isInteger(n) || n < 1) {
    throw new Error(`${path}: header must be z,c1..cN,w1..wN (got ${header.length} columns)`);
  }
  for (let i = 0; i < n; i++) {
    if (header[1 + i] !== `c${i + 1}`) {
      throw new Error(`${path}: expected column 'c${i + 1}', got '${header[1 + i]}'`);
    }
    if (header[1 + n + i] !== `w${i + 1}`) {
      throw new Error(`${path}: expected column 'w${i + 1}', got '${header[1 + n + i]}'`);
    }
  }
  if (lines.length === 1) {
    throw new Error(`${path}: no data rows`);
  }
  const z: number[] = [];
  const c: number[][] = Array.from({ length: n }, () => []);
  const w: number[][] = Array.from({ length: n }, () => []);
  for (let r = 1; r < lines.length; r++) {
    const parts = lines[r].split(',');
    if (parts.length !== header.length) {
      throw new Error(`${path}:${r + 1}: expected ${header.length} fields, got ${parts.length}`);
    }
    const nums = parts.map((p, k) => {
      const v = Number(p);
      if (!Number.isFinite(v)) {
        throw new Error(`${path}:${r + 1}: column '${header[k]}' is not a number: '${p}'`);
      }
      return v;
    });
    z.push(nums[0]);
    for (let i = 0; i < n; i++) {
      c[i].push(nums[1 + i]);
      w[i].push(nums[1 + n + i]);
    }
  }
  return { z, c, w, nComponents: n };
}

const ERROR_COLUMNS = ['scheme', 'nu', 'Da', 'm', 'e_m', 'e_m_trimmed', 'theta_m', 'seconds'];

export function parseErrors(path: string): ErrorRow[] {
  const lines = splitLines(readFileSync(path, 'utf8'));
  if (lines.length === 0) {
    throw new Error(`${path}: empty file`);
  }
  const header = lines[0].split(',');
  for (let k = 0; k < ERROR_COLUMNS.length; k++) {
    if (header[k] !== ERROR_COLUMNS[k]) {
      throw new Error(`${path}: missing or misplaced column '${ERROR_COLUMNS[k]}' (got '${header[k] ?? ''}')`);
    }
  }
  const rows: ErrorRow[] = [];
  for (let r = 1; r < lines.length; r++) {
    const p = lines[r].split(',');
    if (p.length !== ERROR_COLUMNS.length) {
      throw new Error(`${path}:${r + 1}: expected ${ERROR_COLUMNS.length} fields, got ${p.length}`);
    }
    const num = (k: number): number => {
      const v = Number(p[k]);
      if (!Number.isFinite(v)) {
        throw new Error(`${path}:${r + 1}: column '${ERROR_COLUMNS[k]}' is not a number: '${p[k]}'`);
      }
      return v;
    };
    rows.push({
      scheme: p[0],
      nu: num(1),
      Da: num(2),
      m: num(3),
      e_m: num(4),
      e_m_trimmed: num(5),
      theta_m: p[6] === '' ? null : num(6),
      seconds: num(7),
    });
  }
  return rows;
}
