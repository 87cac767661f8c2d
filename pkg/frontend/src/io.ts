/**
 * Readers for the simulator CLI's file outputs.
 *
 * These are pure consumers of the CSV/JSON formats; nothing here recomputes
 * physics.  Every reader validates the exact header (order included) and
 * rejects non-finite numbers, so a malformed input fails loudly instead of
 * producing an empty-looking figure.
 */

import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import Papa from "papaparse";

export const EXPECTATIONS_HEADER = [
  "t", "t_over_Tls", "sx", "sy", "sz", "lx", "ly", "lz", "jx", "jy", "jz", "norm",
] as const;
export const DENSITY_HEADER = ["r", "phi", "d_up", "d_down", "d_total"] as const;
export const MAXIMA_HEADER = [
  "t", "t_over_Tls", "component", "theta_star", "phi_star", "value",
] as const;

/** Raised for any unreadable, misheadered, or inconsistent input file. */
export class SchemaError extends Error {
  override name = "SchemaError";
}

type RawRow = Record<string, string>;

function parseTable(
  path: string,
  expected: readonly string[],
  opts: { allowEmpty?: boolean } = {},
): RawRow[] {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const parsed = Papa.parse<RawRow>(text, { header: true, skipEmptyLines: true });
  const firstError = parsed.errors[0];
  if (firstError !== undefined) {
    throw new SchemaError(`${path}: ${firstError.message} (row ${firstError.row})`);
  }
  const fields = parsed.meta.fields ?? [];
  if (fields.length !== expected.length || expected.some((h, i) => fields[i] !== h)) {
    throw new SchemaError(
      `${path}: header [${fields.join(",")}] does not match expected [${expected.join(",")}]`,
    );
  }
  if (parsed.data.length === 0 && !opts.allowEmpty) {
    throw new SchemaError(`${path}: no data rows`);
  }
  return parsed.data;
}

function num(row: RawRow, key: string, path: string, line: number): number {
  const value = Number(row[key]);
  if (!Number.isFinite(value)) {
    throw new SchemaError(`${path}: non-numeric ${key}=${row[key]} at data row ${line}`);
  }
  return value;
}

export interface ExpectationsRow {
  t: number;
  tOverTls: number;
  s: [number, number, number];
  l: [number, number, number];
  j: [number, number, number];
  norm: number;
}

/** Read an expectations.csv time series; rows keep file order. */
export function readExpectations(path: string): ExpectationsRow[] {
  return parseTable(path, EXPECTATIONS_HEADER).map((row, i) => ({
    t: num(row, "t", path, i),
    tOverTls: num(row, "t_over_Tls", path, i),
    s: [num(row, "sx", path, i), num(row, "sy", path, i), num(row, "sz", path, i)],
    l: [num(row, "lx", path, i), num(row, "ly", path, i), num(row, "lz", path, i)],
    j: [num(row, "jx", path, i), num(row, "jy", path, i), num(row, "jz", path, i)],
    norm: num(row, "norm", path, i),
  }));
}

export interface DensitySnapshot {
  /** Radial grid, strictly increasing. */
  r: number[];
  /** Azimuthal grid, strictly increasing, endpoint 2*pi excluded. */
  phi: number[];
  /** Row-major [i_r][j_phi] grids matching r x phi. */
  dUp: number[][];
  dDown: number[][];
  dTotal: number[][];
}

/**
 * Read one density snapshot CSV.  Rows must arrive r-major (phi fastest),
 * exactly as the writer emits them; anything else is a schema error.
 */
export function readDensity(path: string): DensitySnapshot {
  const rows = parseTable(path, DENSITY_HEADER);
  const r0 = num(rows[0]!, "r", path, 0);
  const phi: number[] = [];
  for (let i = 0; i < rows.length; i++) {
    if (num(rows[i]!, "r", path, i) !== r0) break;
    phi.push(num(rows[i]!, "phi", path, i));
  }
  const nPhi = phi.length;
  if (nPhi < 4 || rows.length % nPhi !== 0) {
    throw new SchemaError(`${path}: ${rows.length} rows do not form an r x phi grid`);
  }
  const nR = rows.length / nPhi;
  const r: number[] = [];
  const dUp: number[][] = [];
  const dDown: number[][] = [];
  const dTotal: number[][] = [];
  for (let i = 0; i < nR; i++) {
    const rowUp: number[] = [];
    const rowDown: number[] = [];
    const rowTotal: number[] = [];
    const ri = num(rows[i * nPhi]!, "r", path, i * nPhi);
    r.push(ri);
    for (let j = 0; j < nPhi; j++) {
      const line = i * nPhi + j;
      const row = rows[line]!;
      if (num(row, "r", path, line) !== ri || num(row, "phi", path, line) !== phi[j]) {
        throw new SchemaError(`${path}: rows not in r-major grid order at data row ${line}`);
      }
      rowUp.push(num(row, "d_up", path, line));
      rowDown.push(num(row, "d_down", path, line));
      rowTotal.push(num(row, "d_total", path, line));
    }
    dUp.push(rowUp);
    dDown.push(rowDown);
    dTotal.push(rowTotal);
  }
  for (let i = 1; i < nR; i++) {
    if (r[i]! <= r[i - 1]!) throw new SchemaError(`${path}: r grid not strictly increasing`);
  }
  for (let j = 1; j < nPhi; j++) {
    if (phi[j]! <= phi[j - 1]!) throw new SchemaError(`${path}: phi grid not strictly increasing`);
  }
  return { r, phi, dUp, dDown, dTotal };
}

export interface Manifest {
  command: string;
  kappa: number;
  omegaLs: number;
  tLs: number;
  lMax: number;
  rCl: number;
  snapshotTimes: number[];
  files: string[];
  /** Directory of the manifest file; snapshot names resolve against it. */
  dir: string;
  config: Record<string, unknown>;
}

function requireNumber(obj: Record<string, unknown>, key: string, path: string): number {
  const value = obj[key];
  if (typeof value !== "number" || !Number.isFinite(value)) {
    throw new SchemaError(`${path}: missing or non-numeric "${key}"`);
  }
  return value;
}

/** Read and validate a density manifest.json. */
export function readManifest(path: string): Manifest {
  let obj: unknown;
  try {
    obj = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new SchemaError(`${path}: manifest is not a JSON object`);
  }
  const m = obj as Record<string, unknown>;
  if (m["command"] !== "density") {
    throw new SchemaError(`${path}: "command" is ${JSON.stringify(m["command"])}, expected "density"`);
  }
  const files = m["files"];
  if (!Array.isArray(files) || files.length === 0 || files.some((f) => typeof f !== "string")) {
    throw new SchemaError(`${path}: "files" must be a non-empty array of file names`);
  }
  const snapshotTimes = m["snapshot_times"];
  if (
    !Array.isArray(snapshotTimes) ||
    snapshotTimes.length !== files.length ||
    snapshotTimes.some((t) => typeof t !== "number" || !Number.isFinite(t))
  ) {
    throw new SchemaError(`${path}: "snapshot_times" must be numbers, one per file`);
  }
  const config = m["config"];
  if (typeof config !== "object" || config === null) {
    throw new SchemaError(`${path}: missing "config" object`);
  }
  return {
    command: "density",
    kappa: requireNumber(m, "kappa", path),
    omegaLs: requireNumber(m, "omega_ls", path),
    tLs: requireNumber(m, "t_ls", path),
    lMax: requireNumber(m, "l_max", path),
    rCl: requireNumber(m, "r_cl", path),
    snapshotTimes: snapshotTimes as number[],
    files: files as string[],
    dir: dirname(resolve(path)),
    config: config as Record<string, unknown>,
  };
}

/** Load every snapshot listed in a manifest, in manifest order. */
export function readManifestSnapshots(manifest: Manifest): DensitySnapshot[] {
  return manifest.files.map((name) => readDensity(resolve(manifest.dir, name)));
}

export interface TrackPoint {
  t: number;
  tOverTls: number;
  theta: number;
  phi: number;
  value: number;
}

export interface MaximaTracks {
  up: TrackPoint[];
  down: TrackPoint[];
}

/**
 * Read a maxima.csv into per-component tracks.  A component with no rows
 * (e.g. Up before any up-density exists) yields an empty track, which is
 * valid input for the sphere renderer.
 */
export function readMaxima(path: string): MaximaTracks {
  const rows = parseTable(path, MAXIMA_HEADER, { allowEmpty: true });
  const tracks: MaximaTracks = { up: [], down: [] };
  rows.forEach((row, i) => {
    const component = row["component"];
    if (component !== "up" && component !== "down") {
      throw new SchemaError(`${path}: unknown component ${JSON.stringify(component)} at data row ${i}`);
    }
    tracks[component].push({
      t: num(row, "t", path, i),
      tOverTls: num(row, "t_over_Tls", path, i),
      theta: num(row, "theta_star", path, i),
      phi: num(row, "phi_star", path, i),
      value: num(row, "value", path, i),
    });
  });
  for (const component of ["up", "down"] as const) {
    const track = tracks[component];
    for (let i = 1; i < track.length; i++) {
      if (track[i]!.t <= track[i - 1]!.t) {
        throw new SchemaError(`${path}: ${component} track times not strictly increasing`);
      }
    }
  }
  return tracks;
}
