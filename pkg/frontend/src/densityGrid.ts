/**
 * Snapshot-grid figure: one polar heatmap of d_total per snapshot, shared
 * color scale across panels, classical-orbit circle overlaid on each.
 */

import { Colormap, colormapByName, toByte } from "./color.js";
import { DensitySnapshot, Manifest, SchemaError } from "./io.js";
import { encodePng, pngDataUri } from "./png.js";
import { el, svgDoc, text } from "./svg.js";

export interface DensityGridOptions {
  colormap?: string;
  /** Panel edge length in pixels (default 220). */
  panelSize?: number;
  /** Heatmap raster edge length in pixels (default 180). */
  rasterSize?: number;
  columns?: number;
}

export interface DensityGridResult {
  svg: string;
  /** Color-scale maximum: the global d_total maximum across all panels. */
  paletteMax: number;
}

/** Index i with grid[i] <= value < grid[i+1], clamped to valid cells. */
function cellIndex(grid: readonly number[], value: number): number {
  let lo = 0;
  let hi = grid.length - 1;
  while (hi - lo > 1) {
    const mid = (lo + hi) >> 1;
    if (grid[mid]! <= value) lo = mid;
    else hi = mid;
  }
  return lo;
}

/** Bilinear interpolation on the polar grid; phi wraps modulo 2*pi. */
function sampleField(snapshot: DensitySnapshot, r: number, phi: number): number {
  const { r: rs, phi: phis, dTotal } = snapshot;
  const i = cellIndex(rs, r);
  const tr = Math.min(Math.max((r - rs[i]!) / (rs[i + 1]! - rs[i]!), 0), 1);
  const nPhi = phis.length;
  const last = phis[nPhi - 1]!;
  let j: number;
  let j2: number;
  let tp: number;
  if (phi >= last) {
    j = nPhi - 1;
    j2 = 0;
    tp = (phi - last) / (2 * Math.PI - last);
  } else if (phi < phis[0]!) {
    j = nPhi - 1;
    j2 = 0;
    tp = (phi + 2 * Math.PI - last) / (2 * Math.PI - last);
  } else {
    j = cellIndex(phis, phi);
    j2 = j + 1;
    tp = (phi - phis[j]!) / (phis[j2]! - phis[j]!);
  }
  const row0 = dTotal[i]!;
  const row1 = dTotal[i + 1]!;
  const a = row0[j]! + tp * (row0[j2]! - row0[j]!);
  const b = row1[j]! + tp * (row1[j2]! - row1[j]!);
  return a + tr * (b - a);
}

function rasterize(
  snapshot: DensitySnapshot,
  size: number,
  scaleMax: number,
  cmap: Colormap,
): Buffer {
  const rMax = snapshot.r[snapshot.r.length - 1]!;
  const rgb = new Uint8Array(3 * size * size);
  let k = 0;
  for (let row = 0; row < size; row++) {
    const y = (1 - ((row + 0.5) / size) * 2) * rMax;
    for (let col = 0; col < size; col++) {
      const x = (((col + 0.5) / size) * 2 - 1) * rMax;
      const r = Math.hypot(x, y);
      if (r > rMax) {
        rgb[k++] = 255;
        rgb[k++] = 255;
        rgb[k++] = 255;
        continue;
      }
      let phi = Math.atan2(y, x);
      if (phi < 0) phi += 2 * Math.PI;
      const [cr, cg, cb] = cmap(sampleField(snapshot, r, phi) / scaleMax);
      rgb[k++] = toByte(cr);
      rgb[k++] = toByte(cg);
      rgb[k++] = toByte(cb);
    }
  }
  return encodePng(size, size, rgb);
}

function formatTimeLabel(tOverTls: number): string {
  const rounded = Math.round(tOverTls * 1e6) / 1e6;
  return `t = ${rounded} T_ls`;
}

function formatScale(value: number): string {
  return value === 0 ? "0" : value.toExponential(3);
}

/** Render the snapshot grid; snapshots must come from `readManifestSnapshots`. */
export function renderDensityGrid(
  manifest: Manifest,
  snapshots: readonly DensitySnapshot[],
  opts: DensityGridOptions = {},
): DensityGridResult {
  if (snapshots.length !== manifest.files.length) {
    throw new SchemaError(
      `manifest lists ${manifest.files.length} snapshots but ${snapshots.length} were given`,
    );
  }
  const first = snapshots[0]!;
  for (const snap of snapshots) {
    const sameGrid =
      snap.r.length === first.r.length &&
      snap.phi.length === first.phi.length &&
      snap.r.every((v, i) => v === first.r[i]) &&
      snap.phi.every((v, i) => v === first.phi[i]);
    if (!sameGrid) throw new SchemaError("snapshot grids differ; cannot share one panel layout");
  }
  const cmap = colormapByName(opts.colormap ?? "viridis");
  const panelSize = opts.panelSize ?? 220;
  const rasterSize = opts.rasterSize ?? 180;
  const columns = opts.columns ?? 3;
  const gap = 12;
  const labelBand = 22;
  const rows = Math.ceil(snapshots.length / columns);
  const colorbarBand = 64;
  const width = columns * (panelSize + gap) + gap + colorbarBand;
  const height = rows * (panelSize + labelBand + gap) + gap;

  let paletteMax = 0;
  for (const snap of snapshots) {
    for (const row of snap.dTotal) {
      for (const v of row) paletteMax = Math.max(paletteMax, v);
    }
  }
  const scaleMax = paletteMax > 0 ? paletteMax : 1;
  const rMax = first.r[first.r.length - 1]!;

  const children: string[] = [];
  snapshots.forEach((snap, k) => {
    const col = k % columns;
    const rowIdx = Math.floor(k / columns);
    const x0 = gap + col * (panelSize + gap);
    const y0 = gap + rowIdx * (panelSize + labelBand + gap) + labelBand;
    const cx = x0 + panelSize / 2;
    const cy = y0 + panelSize / 2;
    children.push(
      text(cx, y0 - 7, formatTimeLabel(manifest.snapshotTimes[k]! / manifest.tLs), {
        "font-size": 12,
        "text-anchor": "middle",
        fill: "#222222",
      }),
    );
    children.push(
      el("image", {
        x: x0,
        y: y0,
        width: panelSize,
        height: panelSize,
        href: pngDataUri(rasterize(snap, rasterSize, scaleMax, cmap)),
        preserveAspectRatio: "none",
        "image-rendering": "optimizeQuality",
      }),
    );
    // domain boundary r = r_max, then the classical-orbit radius r_cl
    children.push(
      el("circle", {
        cx,
        cy,
        r: panelSize / 2,
        fill: "none",
        stroke: "#c8cdd2",
        "stroke-width": 1,
      }),
    );
    children.push(
      el("circle", {
        class: "rcl",
        cx,
        cy,
        r: (manifest.rCl / rMax) * (panelSize / 2),
        fill: "none",
        stroke: "#ffffff",
        "stroke-width": 2.2,
      }),
    );
  });

  // shared-scale colorbar
  const barX = columns * (panelSize + gap) + gap + 10;
  const barY = gap + labelBand;
  const barH = panelSize;
  const steps = 64;
  for (let s = 0; s < steps; s++) {
    const frac = 1 - s / (steps - 1);
    const [cr, cg, cb] = cmap(frac);
    children.push(
      el("rect", {
        class: "colorbar",
        x: barX,
        y: barY + (s * barH) / steps,
        width: 14,
        height: barH / steps + 0.5,
        fill: `rgb(${toByte(cr)},${toByte(cg)},${toByte(cb)})`,
      }),
    );
  }
  children.push(
    text(barX + 18, barY + 10, formatScale(paletteMax), { "font-size": 10, fill: "#222222" }),
  );
  children.push(text(barX + 18, barY + barH, "0", { "font-size": 10, fill: "#222222" }));

  return { svg: svgDoc(width, height, children), paletteMax };
}
