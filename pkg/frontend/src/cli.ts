#!/usr/bin/env node
/**
 * `plot <kind> --in ... --out ...` entry point.  Reads simulator CSV/JSON
 * outputs and writes an SVG figure; any read or schema problem exits 1.
 */

import { writeFileSync } from "node:fs";
import { extname } from "node:path";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { renderDensityGrid } from "./densityGrid.js";
import { readExpectations, readManifest, readManifestSnapshots, readMaxima } from "./io.js";
import { renderPendulum } from "./pendulum.js";
import { renderSphereTracks } from "./sphereTracks.js";

function writeFigure(outPath: string, svg: string): void {
  if (extname(outPath).toLowerCase() !== ".svg") {
    console.error(`note: output is SVG markup regardless of the ${extname(outPath) || "missing"} extension`);
  }
  writeFileSync(outPath, svg);
  console.log(`wrote ${outPath}`);
}

function run(render: () => string, outPath: string): void {
  try {
    writeFigure(outPath, render());
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    process.exitCode = 1;
  }
}

const commonOptions = {
  in: { type: "string", demandOption: true, describe: "input file from the simulator CLI" },
  out: { type: "string", demandOption: true, describe: "output figure path (SVG)" },
} as const;

void yargs(hideBin(process.argv))
  .scriptName("plot")
  .command(
    "pendulum",
    "3D <s>/<l> expectation curves from expectations.csv",
    {
      ...commonOptions,
      stride: { type: "number", default: 10, describe: "marker every k-th sample" },
      elev: { type: "number", default: 18, describe: "view elevation in degrees" },
      azim: { type: "number", default: -55, describe: "view azimuth in degrees" },
    } as const,
    (argv) => {
      run(
        () =>
          renderPendulum(readExpectations(argv.in), {
            stride: argv.stride,
            elevDeg: argv.elev,
            azimDeg: argv.azim,
          }),
        argv.out,
      );
    },
  )
  .command(
    "density-grid",
    "polar heatmap grid from a density manifest.json",
    {
      ...commonOptions,
      colormap: { type: "string", default: "viridis", describe: "viridis or gray" },
    } as const,
    (argv) => {
      run(() => {
        const manifest = readManifest(argv.in);
        const snapshots = readManifestSnapshots(manifest);
        return renderDensityGrid(manifest, snapshots, { colormap: argv.colormap }).svg;
      }, argv.out);
    },
  )
  .command(
    "sphere-tracks",
    "subpacket maxima tracks on the orbit sphere from maxima.csv",
    {
      ...commonOptions,
      elev: { type: "number", default: 18, describe: "view elevation in degrees" },
      azim: { type: "number", default: -55, describe: "view azimuth in degrees" },
    } as const,
    (argv) => {
      run(
        () => renderSphereTracks(readMaxima(argv.in), { elevDeg: argv.elev, azimDeg: argv.azim }),
        argv.out,
      );
    },
  )
  .demandCommand(1, "choose a figure kind: pendulum, density-grid, or sphere-tracks")
  .strict()
  .help()
  .parse();
