import { mkdtempSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { describe, expect, it } from 'vitest';

import { parseErrors, parseProfile } from '../src/csv.js';

const SAMPLES = join(__dirname, '..', 'samples');

function tmpFile(name: string, content: string): string {
  const dir = mkdtempSync(join(tmpdir(), 'edchrom-plots-'));
  const path = join(dir, name);
  writeFileSync(path, content);
  return path;
}

describe('parseProfile', () => {
  it('reads the shipped sample', () => {
    const data = parseProfile(join(SAMPLES, 'profile_t8_CHR-UPW.csv'));
    expect(data.nComponents).toBe(3);
    expect(data.z.length).toBe(200);
    expect(data.c).toHaveLength(3);
    expect(data.z[0]).toBeCloseTo(0.0025, 10);
    expect(Math.max(...data.c[2])).toBeGreaterThan(0.9);
  });

  it('rejects a wrong header naming the offending column', () => {
    const path = tmpFile('bad.csv', 'z,c1,q2,w1,w2\n0.5,1,2,3,4\n');
    expect(() => parseProfile(path)).toThrow(/c2/);
  });

  it('rejects empty files and files with only a header', () => {
    expect(() => parseProfile(tmpFile('empty.csv', ''))).toThrow(/empty/);
    expect(() => parseProfile(tmpFile('headonly.csv', 'z,c1,w1\n'))).toThrow(/no data rows/);
  });

  it('rejects non-numeric fields with position info', () => {
    const path = tmpFile('nan.csv', 'z,c1,w1\n0.5,oops,1\n');
    expect(() => parseProfile(path)).toThrow(/c1.*oops/);
  });
});

describe('parseErrors', () => {
  it('reads the shipped sweep table', () => {
    const rows = parseErrors(join(SAMPLES, 'errors.csv'));
    expect(rows.length).toBe(9);
    const schemes = new Set(rows.map((r) => r.scheme));
    expect(schemes).toContain('COMP-UPW5');
    const finest = rows.filter((r) => r.m === 100);
    expect(finest.every((r) => r.theta_m === null)).toBe(true);
    for (const r of rows) {
      expect(r.e_m_trimmed).toBeLessThanOrEqual(r.e_m);
    }
  });

  it('rejects a table with a missing column', () => {
    const path = tmpFile('bad.csv', 'scheme,nu,Da,m,e_m,seconds\nMUSCL,1,0,10,0.1,0.2\n');
    expect(() => parseErrors(path)).toThrow(/e_m_trimmed/);
  });
});
