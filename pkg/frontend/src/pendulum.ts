/**
 * Expectation-value figure: the tips of <s>(t) and <l>(t) as 3D curves in
 * orthographic projection, one panel per vector, markers at equidistant
 * sample strides.
 */

import { fitToView, orthographic, Projected, Vec3 } from "./geometry.js";
import { ExpectationsRow } from "./io.js";
import { el, polyline, svgDoc, text } from "./svg.js";

export interface PendulumOptions {
  /** Draw a marker every `stride`-th sample (default 10). */
  stride?: number;
  width?: number;
  height?: number;
  elevDeg?: number;
  azimDeg?: number;
}

const AXIS_COLOR = "#9aa2ab";
const AXIS_LABELS: readonly string[] = ["x", "y", "z"];

function panel(
  vectors: readonly Vec3[],
  title: string,
  color: string,
  classSuffix: string,
  x0: number,
  panelWidth: number,
  height: number,
  stride: number,
  project: (p: Vec3) => Projected,
): string[] {
  let radius = 0;
  for (const [x, y, z] of vectors) {
    radius = Math.max(radius, Math.hypot(x, y, z));
  }
  if (radius === 0) radius = 1;
  const axes: [Vec3, Vec3][] = [
    [[-radius, 0, 0], [radius, 0, 0]],
    [[0, -radius, 0], [0, radius, 0]],
    [[0, 0, -radius], [0, 0, radius]],
  ];
  const projected = vectors.map(project);
  const frame = axes.flat().map(project);
  const view = fitToView([...projected, ...frame], panelWidth, height, 46);
  const place = (p: Projected): [number, number] => {
    const [x, y] = view.toPixel(p);
    return [x + x0, y + 26];
  };

  const parts: string[] = [];
  axes.forEach(([a, b], i) => {
    const [xa, ya] = place(project(a));
    const [xb, yb] = place(project(b));
    parts.push(
      el("line", { x1: xa, y1: ya, x2: xb, y2: yb, stroke: AXIS_COLOR, "stroke-width": 1 }),
    );
    parts.push(text(xb + 4, yb + 4, AXIS_LABELS[i]!, { "font-size": 11, fill: AXIS_COLOR }));
  });
  parts.push(
    polyline(projected.map(place), {
      class: `curve curve-${classSuffix}`,
      stroke: color,
      "stroke-width": 1.8,
    }),
  );
  for (let i = 0; i < projected.length; i += stride) {
    const [x, y] = place(projected[i]!);
    parts.push(
      el("circle", {
        class: "marker",
        cx: x,
        cy: y,
        r: 2.8,
        fill: i === 0 ? color : "#ffffff",
        stroke: color,
        "stroke-width": 1.2,
      }),
    );
  }
  parts.push(
    text(x0 + panelWidth / 2, 18, title, {
      "font-size": 14,
      "text-anchor": "middle",
      fill: "#222222",
    }),
  );
  return parts;
}

/** Render the two-panel expectation figure as an SVG string. */
export function renderPendulum(rows: readonly ExpectationsRow[], opts: PendulumOptions = {}): string {
  const stride = opts.stride ?? 10;
  if (!Number.isInteger(stride) || stride < 1) {
    throw new Error(`stride must be a positive integer, got ${stride}`);
  }
  const width = opts.width ?? 900;
  const height = opts.height ?? 470;
  const project = orthographic(opts.elevDeg ?? 18, opts.azimDeg ?? -55);
  const panelWidth = width / 2;
  const panelHeight = height - 30;
  const spin = rows.map((row) => row.s as Vec3);
  const orbital = rows.map((row) => row.l as Vec3);
  const children = [
    ...panel(spin, "spin  ⟨s⟩(t)", "#c0392b", "s", 0, panelWidth, panelHeight, stride, project),
    ...panel(orbital, "orbital  ⟨l⟩(t)", "#1f4e9c", "l", panelWidth, panelWidth, panelHeight, stride, project),
  ];
  return svgDoc(width, height, children);
}
