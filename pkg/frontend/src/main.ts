/**
 * CLI:
 *   node dist/main.js profiles <out.svg> <profile.csv...> [--zoom zmin,zmax[,comp1,comp2]]
 *   node dist/main.js efficiency <out.svg> <errors.csv> [--trimmed]
 */

import { plotEfficiency } from './efficiency.js';
import { plotProfiles, ZoomWindow } from './profiles.js';

function usage(): never {
  console.error('usage: main.js profiles <out.svg> <profile.csv...> [--zoom zmin,zmax[,components...]]');
  console.error('       main.js efficiency <out.svg> <errors.csv> [--trimmed]');
  process.exit(2);
}

export function main(argv: string[]): number {
  if (argv.length < 1) usage();
  const [mode, ...rest] = argv;
  if (mode === 'profiles') {
    if (rest.length < 2) usage();
    const out = rest[0];
    const files: string[] = [];
    let zoom: ZoomWindow | undefined;
    for (let i = 1; i < rest.length; i++) {
      if (rest[i] === '--zoom') {
        const spec = rest[++i];
        if (!spec) usage();
        const parts = spec.split(',').map(Number);
        if (parts.length < 2 || parts.some((v) => !Number.isFinite(v))) usage();
        zoom = { zMin: parts[0], zMax: parts[1] };
        if (parts.length > 2) zoom.components = parts.slice(2);
      } else {
        files.push(rest[i]);
      }
    }
    plotProfiles(files.map((path) => ({ path })), out, zoom);
    console.log(`wrote ${out}`);
    return 0;
  }
  if (mode === 'efficiency') {
    if (rest.length < 2) usage();
    const trimmed = rest.includes('--trimmed');
    const args = rest.filter((a) => a !== '--trimmed');
    plotEfficiency(args[1], args[0], trimmed);
    console.log(`wrote ${args[0]}`);
    return 0;
  }
  usage();
}

if (process.argv[1] && import.meta.url === new URL(`file://${process.argv[1]}`).href) {
  main(process.argv.slice(2));
}
