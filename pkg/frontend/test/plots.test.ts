import { mkdtempSync, readFileSync, writeFileSync } from 'fs';
import { tmpdir } from 'os';
import { join } from 'path';
import { describe, expect, it } from 'vitest';

import { plotEfficiency } from '../src/efficiency.js';
import { plotProfiles } from '../src/profiles.js';

const SAMPLES = join(__dirname, '..', 'samples');
const PROFILE_CHR = join(SAMPLES, 'profile_t8_CHR-UPW.csv');
const PROFILE_COMP = join(SAMPLES, 'profile_t8_COMP-UPW5.csv');
const ERRORS = join(SAMPLES, 'errors.csv');

function tmp(name: string): string {
  return join(mkdtempSync(join(tmpdir(), 'edchrom-fig-')), name);
}

describe('plotProfiles', () => {
  it('renders one figure with N curves from a single CSV', () => {
    const out = tmp('single.svg');
    plotProfiles([{ path: PROFILE_CHR }], out);
    const svg = readFileSync(out, 'utf8');
    expect(svg.startsWith('<svg')).toBe(true);
    expect((svg.match(/<polyline/g) ?? []).length).toBe(3);
  });

  it('renders a scheme overlay with an enlarged view of components 1-2', () => {
    const out = tmp('overlay.svg');
    plotProfiles(
      [{ path: PROFILE_CHR, label: 'CHR-UPW' }, { path: PROFILE_COMP, label: 'COMP-UPW5' }],
      out,
      { zMin: 0.3, zMax: 0.6, components: [1, 2] },
    );
    const svg = readFileSync(out, 'utf8');
    // two panels: full view (2 schemes x 3 comps) + zoom (2 schemes x 2 comps)
    expect((svg.match(/<g transform/g) ?? []).length).toBe(2);
    expect((svg.match(/<polyline/g) ?? []).length).toBe(6 + 4);
    expect(svg).toContain('enlarged view');
  });

  it('is byte-stable across repeated runs', () => {
    const out1 = tmp('a.svg');
    const out2 = tmp('b.svg');
    const zoom = { zMin: 0.3, zMax: 0.6 };
    plotProfiles([{ path: PROFILE_CHR }, { path: PROFILE_COMP }], out1, zoom);
    plotProfiles([{ path: PROFILE_CHR }, { path: PROFILE_COMP }], out2, zoom);
    expect(readFileSync(out1)).toEqual(readFileSync(out2));
  });

  it('refuses empty input sets and empty CSVs', () => {
    expect(() => plotProfiles([], tmp('x.svg'))).toThrow(/at least one/);
    const empty = tmp('empty.csv');
    writeFileSync(empty, '');
    expect(() => plotProfiles([{ path: empty }], tmp('y.svg'))).toThrow(/empty/);
  });

  it('rejects out-of-range zoom components', () => {
    expect(() =>
      plotProfiles([{ path: PROFILE_CHR }], tmp('z.svg'), { zMin: 0, zMax: 1, components: [7] }),
    ).toThrow(/out of range/);
  });
});

describe('plotEfficiency', () => {
  it('renders one marker series per scheme', () => {
    const out = tmp('eff.svg');
    plotEfficiency(ERRORS, out);
    const svg = readFileSync(out, 'utf8');
    // 3 schemes x 3 grids = 9 markers (circles/squares/diamonds) + legend glyphs
    expect((svg.match(/<polyline/g) ?? []).length).toBe(3);
    expect(svg).toContain('COMP-UPW1');
    expect(svg).toContain('MUSCL');
  });

  it('uses the trimmed column when asked', () => {
    const out1 = tmp('e1.svg');
    const out2 = tmp('e2.svg');
    plotEfficiency(ERRORS, out1, false);
    plotEfficiency(ERRORS, out2, true);
    expect(readFileSync(out1, 'utf8')).not.toEqual(readFileSync(out2, 'utf8'));
    expect(readFileSync(out2, 'utf8')).toContain('trimmed');
  });

  it('is byte-stable across repeated runs', () => {
    const out1 = tmp('s1.svg');
    const out2 = tmp('s2.svg');
    plotEfficiency(ERRORS, out1, true);
    plotEfficiency(ERRORS, out2, true);
    expect(readFileSync(out1)).toEqual(readFileSync(out2));
  });

  it('reports missing columns', () => {
    const bad = tmp('bad.csv');
    writeFileSync(bad, 'scheme,nu,Da,m\nMUSCL,1,0,10\n');
    expect(() => plotEfficiency(bad, tmp('o.svg'))).toThrow(/e_m/);
  });
});
